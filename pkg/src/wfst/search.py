"""
Path search: best path with word alignment, and exhaustive enumeration.
"""

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..utils.exceptions import NoParse, SearchLimitError
from .fst import Arc, Fst, TapeKind, tape_words
from .symbols import SPACE, SymbolTable

DEFAULT_MAX_EXPANSIONS = 200_000

Range = Tuple[int, int]


@dataclass(frozen=True)
class TranslationResult:
    """Best path output with a monotone word alignment.

    ``alignment`` is a sequence of ``((in_start, in_end), (out_start, out_end))``
    blocks that tile both the input and the output words in order.
    """

    output: Tuple[str, ...]
    weight: float
    alignment: Tuple[Tuple[Range, Range], ...]

    @property
    def text(self) -> str:
        return " ".join(self.output)


class Path(NamedTuple):
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]
    weight: float


def input_labels(fst: Fst, words: Sequence[str]) -> Optional[List[int]]:
    """Encode words for the machine's input tape; None if a symbol is unknown."""
    symbols = fst.symbols
    labels: List[int] = []
    if fst.input_kind == TapeKind.WORD:
        for word in words:
            label = symbols.find(word)
            if label is None:
                return None
            labels.append(label)
        return labels

    space = symbols.find(SPACE)
    for position, word in enumerate(words):
        if position:
            if space is None:
                return None
            labels.append(space)
        for char in word:
            label = symbols.find(char)
            if label is None:
                return None
            labels.append(label)
    return labels


class _Node(NamedTuple):
    parent: Optional["_Node"]
    arc: Arc


def _unwind(node: Optional[_Node]) -> List[Arc]:
    arcs: List[Arc] = []
    while node is not None:
        arcs.append(node.arc)
        node = node.parent
    arcs.reverse()
    return arcs


def shortest_path(
    fst: Fst, words: Sequence[str], max_expansions: int = DEFAULT_MAX_EXPANSIONS
) -> TranslationResult:
    """Minimum-weight accepting path for ``words``.

    Ties are broken by the lexicographically smallest output label sequence.
    Raises NoParse when no path accepts the input.
    """
    labels = input_labels(fst, words)
    if labels is None or fst.num_states == 0:
        raise NoParse("input contains symbols outside the grammar", {"input": list(words)})

    n = len(labels)
    counter = itertools.count()
    # (weight, outputs, tiebreak, state, position, node, finished)
    heap: list = [(0.0, (), next(counter), fst.start, 0, None, False)]
    visited = set()
    expansions = 0

    while heap:
        weight, outputs, _, state, position, node, finished = heapq.heappop(heap)
        if finished:
            return _build_result(fst, words, _unwind(node), weight)

        key = (state, position, outputs)
        if key in visited:
            continue
        visited.add(key)
        expansions += 1
        if expansions > max_expansions:
            raise SearchLimitError(
                f"path search exceeded {max_expansions} expansions",
                {"input": list(words), "limit": max_expansions},
            )

        if position == n and state in fst.finals:
            heapq.heappush(
                heap,
                (weight + fst.finals[state], outputs, next(counter), state, position, node, True),
            )

        by_input = fst.arcs_by_input(state)
        candidates = list(by_input.get(0, ()))
        if position < n:
            candidates.extend(by_input.get(labels[position], ()))
        for arc in candidates:
            next_position = position + (1 if arc.ilabel else 0)
            next_outputs = outputs + (arc.olabel,) if arc.olabel else outputs
            if (arc.nextstate, next_position, next_outputs) in visited:
                continue
            heapq.heappush(
                heap,
                (
                    weight + arc.weight,
                    next_outputs,
                    next(counter),
                    arc.nextstate,
                    next_position,
                    _Node(node, arc),
                    False,
                ),
            )

    raise NoParse("no accepting path", {"input": list(words)})


class _TapeCursor:
    """Tracks which word a tape position belongs to."""

    def __init__(self, kind: TapeKind, symbols: SymbolTable):
        self.kind = kind
        self.space = symbols.find(SPACE)
        self.completed = 0
        self.open = False

    def advance(self, label: int) -> Optional[int]:
        """Consume one label; return the word index it belongs to, if any."""
        if self.kind == TapeKind.WORD:
            index = self.completed
            self.completed += 1
            return index
        if label == self.space:
            if self.open:
                self.completed += 1
                self.open = False
            return None
        self.open = True
        return self.completed

    @property
    def total(self) -> int:
        return self.completed + (1 if self.open else 0)


def _build_result(fst: Fst, words: Sequence[str], arcs: List[Arc], weight: float) -> TranslationResult:
    source = _TapeCursor(fst.input_kind, fst.symbols)
    target = _TapeCursor(fst.output_kind, fst.symbols)
    links: List[Tuple[int, int]] = []
    last_input: Optional[int] = None
    for arc in arcs:
        if arc.ilabel:
            index = source.advance(arc.ilabel)
            if index is not None:
                last_input = index
        if arc.olabel:
            index = target.advance(arc.olabel)
            if index is not None:
                links.append((last_input if last_input is not None else 0, index))

    output = tuple(tape_words(fst.symbols, tuple(a.olabel for a in arcs), fst.output_kind))
    alignment = monotone_blocks(links, len(words), len(output))
    return TranslationResult(output=output, weight=weight, alignment=alignment)


def monotone_blocks(
    links: Sequence[Tuple[int, int]], n_in: int, n_out: int
) -> Tuple[Tuple[Range, Range], ...]:
    """Coarsest-needed monotone tiling of input and output words from links.

    Crossing links are merged into one block; unlinked input words join the
    preceding block and unlinked output words join the following one.
    """
    if n_in == 0:
        return (((0, 0), (0, n_out)),) if n_out else ()

    low: List[Optional[int]] = [None] * n_in
    high: List[Optional[int]] = [None] * n_in
    for i, j in links:
        if i >= n_in or j >= n_out:
            continue
        low[i] = j if low[i] is None else min(low[i], j)
        high[i] = j if high[i] is None else max(high[i], j)

    blocks: List[List[int]] = []
    for i in range(n_in):
        if low[i] is None:
            if blocks:
                blocks[-1][1] = i + 1
            else:
                blocks.append([i, i + 1, 0, 0])
            continue
        current = [i, i + 1, blocks[-1][3] if blocks else 0, high[i] + 1]
        while blocks and low[i] < blocks[-1][3]:
            previous = blocks.pop()
            current = [previous[0], i + 1, previous[2], max(previous[3], high[i] + 1)]
        current[3] = max(current[3], current[2])
        blocks.append(current)

    blocks[-1][3] = max(blocks[-1][3], n_out)
    return tuple(((b[0], b[1]), (b[2], b[3])) for b in blocks)


def enumerate_paths(
    fst: Fst,
    inputs: Optional[Sequence[int]] = None,
    limit: int = 100_000,
    max_depth: int = 10_000,
) -> Iterator[Path]:
    """Every accepting path of an acyclic machine, optionally restricted to an input.

    Weights are accumulated in path order, exactly as :func:`shortest_path`
    does, so the two agree bit-for-bit.
    """
    if fst.num_states == 0:
        return
    target = tuple(inputs) if inputs is not None else None
    produced = 0
    stack = [(fst.start, (), (), 0.0, 0)]
    while stack:
        state, ins, outs, weight, depth = stack.pop()
        if depth > max_depth:
            raise SearchLimitError("path enumeration too deep; machine may be cyclic", {"depth": depth})
        if state in fst.finals and (target is None or ins == target):
            produced += 1
            if produced > limit:
                raise SearchLimitError(f"more than {limit} paths", {"limit": limit})
            yield Path(ins, outs, weight + fst.finals[state])
        for arc in reversed(fst.arcs[state]):
            next_ins = ins + (arc.ilabel,) if arc.ilabel else ins
            if target is not None and arc.ilabel:
                if len(ins) >= len(target) or target[len(ins)] != arc.ilabel:
                    continue
            next_outs = outs + (arc.olabel,) if arc.olabel else outs
            stack.append((arc.nextstate, next_ins, next_outs, weight + arc.weight, depth + 1))


def best_by_enumeration(fst: Fst, words: Sequence[str]) -> Optional[Tuple[float, Tuple[int, ...]]]:
    """(weight, output labels) of the best path found by brute force, or None."""
    labels = input_labels(fst, words)
    if labels is None:
        return None
    best = None
    for path in enumerate_paths(fst, labels):
        key = (path.weight, path.outputs)
        if best is None or key < best:
            best = key
    return best
