"""
Weighted finite-state transducer over the tropical semiring.

Each tape is either word-level (one symbol per word) or character-level
(one symbol per character, words separated by the ``<space>`` symbol).
Compiled ITN grammars read words and write characters; inverting a machine
swaps the tape kinds along with the labels.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from ..utils.exceptions import SymbolTableMismatchError
from . import semiring
from .symbols import SPACE, SymbolTable


class TapeKind(str, Enum):
    WORD = "word"
    CHAR = "char"


class Arc(NamedTuple):
    ilabel: int
    olabel: int
    weight: float
    nextstate: int


@dataclass
class Fst:
    """Mutable while being built; treated as immutable once compiled."""

    symbols: SymbolTable
    input_kind: TapeKind = TapeKind.WORD
    output_kind: TapeKind = TapeKind.CHAR
    start: int = 0
    finals: Dict[int, float] = field(default_factory=dict)
    arcs: List[List[Arc]] = field(default_factory=list)
    _input_index: Optional[List[Dict[int, List[Arc]]]] = field(
        default=None, init=False, repr=False, compare=False
    )

    # ---- construction -------------------------------------------------

    def add_state(self) -> int:
        self.arcs.append([])
        self._input_index = None
        return len(self.arcs) - 1

    def add_arc(self, state: int, ilabel: int, olabel: int, weight: float, nextstate: int) -> None:
        self.arcs[state].append(Arc(ilabel, olabel, float(weight), nextstate))
        self._input_index = None

    def set_final(self, state: int, weight: float = semiring.ONE) -> None:
        self.finals[state] = float(weight)

    # ---- inspection ---------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.arcs)

    @property
    def num_arcs(self) -> int:
        return sum(len(out) for out in self.arcs)

    def states(self) -> range:
        return range(len(self.arcs))

    def is_final(self, state: int) -> bool:
        return state in self.finals

    def final_weight(self, state: int) -> float:
        return self.finals.get(state, semiring.ZERO)

    def iter_arcs(self) -> Iterator[Tuple[int, Arc]]:
        for state, out in enumerate(self.arcs):
            for arc in out:
                yield state, arc

    def arcs_by_input(self, state: int) -> Dict[int, List[Arc]]:
        """Outgoing arcs of ``state`` grouped by input label (0 = epsilon)."""
        if self._input_index is None:
            index: List[Dict[int, List[Arc]]] = []
            for out in self.arcs:
                grouped: Dict[int, List[Arc]] = defaultdict(list)
                for arc in out:
                    grouped[arc.ilabel].append(arc)
                index.append(dict(grouped))
            self._input_index = index
        return self._input_index[state]

    def check_valid(self) -> None:
        """Raise ValueError if an arc or the start state points outside the machine."""
        n = self.num_states
        if n == 0:
            return
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        for state, arc in self.iter_arcs():
            if not 0 <= arc.nextstate < n:
                raise ValueError(f"arc from {state} targets missing state {arc.nextstate}")
        for state in self.finals:
            if not 0 <= state < n:
                raise ValueError(f"final state {state} out of range")

    def copy(self) -> "Fst":
        return Fst(
            symbols=self.symbols,
            input_kind=self.input_kind,
            output_kind=self.output_kind,
            start=self.start,
            finals=dict(self.finals),
            arcs=[list(out) for out in self.arcs],
        )

    def __repr__(self) -> str:
        return (
            f"Fst(states={self.num_states}, arcs={self.num_arcs}, finals={len(self.finals)}, "
            f"{self.input_kind.value}->{self.output_kind.value})"
        )


def check_same_symbols(a: Fst, b: Fst) -> None:
    if a.symbols is not b.symbols and a.symbols != b.symbols:
        raise SymbolTableMismatchError(
            "machines use different symbol tables",
            {"left_size": len(a.symbols), "right_size": len(b.symbols)},
        )


def tape_words(symbols: SymbolTable, labels: Tuple[int, ...], kind: TapeKind) -> List[str]:
    """Render a label sequence from one tape as words."""
    if kind == TapeKind.WORD:
        return [symbols.symbol(label) for label in labels if label != 0]
    text = "".join(
        " " if symbols.symbol(label) == SPACE else symbols.symbol(label)
        for label in labels
        if label != 0
    )
    return text.split()
