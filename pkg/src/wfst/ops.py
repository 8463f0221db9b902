"""
Construction and rational operations on Fst.

All operations return new machines and leave their arguments untouched.
Construction follows the usual epsilon-joined layout; ``trim`` removes the
dead states it leaves behind.
"""

from collections import deque
from typing import Dict, List, Sequence, Set, Tuple

from ..utils.exceptions import SymbolTableMismatchError
from . import semiring
from .fst import Arc, Fst, TapeKind, check_same_symbols
from .symbols import SymbolTable


def empty_like(symbols: SymbolTable, input_kind: TapeKind, output_kind: TapeKind) -> Fst:
    return Fst(symbols=symbols, input_kind=input_kind, output_kind=output_kind)


def epsilon_machine(
    symbols: SymbolTable,
    weight: float = semiring.ONE,
    input_kind: TapeKind = TapeKind.WORD,
    output_kind: TapeKind = TapeKind.CHAR,
) -> Fst:
    """Accepts only the empty string."""
    fst = empty_like(symbols, input_kind, output_kind)
    fst.start = fst.add_state()
    fst.set_final(fst.start, weight)
    return fst


def linear(
    symbols: SymbolTable,
    inputs: Sequence[int],
    outputs: Sequence[int],
    weight: float = semiring.ONE,
    input_kind: TapeKind = TapeKind.WORD,
    output_kind: TapeKind = TapeKind.CHAR,
) -> Fst:
    """Map one input label sequence to one output label sequence.

    Inputs are consumed first (one deleting arc each), then outputs are
    emitted (one inserting arc each), so ``one -> 1`` has three states.
    """
    fst = empty_like(symbols, input_kind, output_kind)
    state = fst.start = fst.add_state()
    for label in inputs:
        nxt = fst.add_state()
        fst.add_arc(state, label, 0, semiring.ONE, nxt)
        state = nxt
    for label in outputs:
        nxt = fst.add_state()
        fst.add_arc(state, 0, label, semiring.ONE, nxt)
        state = nxt
    fst.set_final(state, weight)
    return fst


def transducer(
    symbols: SymbolTable,
    pairs: Sequence[Tuple[int, int]],
    weight: float = semiring.ONE,
    input_kind: TapeKind = TapeKind.WORD,
    output_kind: TapeKind = TapeKind.WORD,
) -> Fst:
    """Chain of arcs with the given (input, output) label pairs."""
    fst = empty_like(symbols, input_kind, output_kind)
    state = fst.start = fst.add_state()
    for ilabel, olabel in pairs:
        nxt = fst.add_state()
        fst.add_arc(state, ilabel, olabel, semiring.ONE, nxt)
        state = nxt
    fst.set_final(state, weight)
    return fst


def _append(target: Fst, source: Fst) -> int:
    """Copy ``source`` states into ``target``; return the state offset."""
    offset = target.num_states
    for out in source.arcs:
        target.arcs.append(
            [Arc(a.ilabel, a.olabel, a.weight, a.nextstate + offset) for a in out]
        )
    target._input_index = None
    return offset


def concat(a: Fst, b: Fst) -> Fst:
    check_same_symbols(a, b)
    result = empty_like(a.symbols, a.input_kind, a.output_kind)
    _append(result, a)
    offset = _append(result, b)
    result.start = a.start
    for state, weight in a.finals.items():
        result.add_arc(state, 0, 0, weight, b.start + offset)
    for state, weight in b.finals.items():
        result.set_final(state + offset, weight)
    return result


def union(*machines: Fst) -> Fst:
    if not machines:
        raise ValueError("union of no machines")
    first = machines[0]
    result = empty_like(first.symbols, first.input_kind, first.output_kind)
    result.start = result.add_state()
    for machine in machines:
        check_same_symbols(first, machine)
        offset = _append(result, machine)
        result.add_arc(result.start, 0, 0, semiring.ONE, machine.start + offset)
        for state, weight in machine.finals.items():
            result.set_final(state + offset, weight)
    return result


def optional(fst: Fst) -> Fst:
    return union(fst, epsilon_machine(fst.symbols, semiring.ONE, fst.input_kind, fst.output_kind))


def repeat(fst: Fst, low: int, high: int) -> Fst:
    """Between ``low`` and ``high`` consecutive copies (bounded, so acyclic)."""
    if low < 0 or high < low:
        raise ValueError(f"bad repeat bounds {{{low},{high}}}")
    result = epsilon_machine(fst.symbols, semiring.ONE, fst.input_kind, fst.output_kind)
    for _ in range(low):
        result = concat(result, fst)
    if high > low:
        # Nested optionals: x (x (x)?)? avoids duplicate paths for each count.
        tail = optional(fst)
        for _ in range(high - low - 1):
            tail = optional(concat(fst, tail))
        result = concat(result, tail)
    return result


def add_weight(fst: Fst, weight: float) -> Fst:
    """Add ``weight`` to every accepting path."""
    result = fst.copy()
    for state in result.finals:
        result.finals[state] = semiring.times(result.finals[state], weight)
    return result


def _reachable(start: int, successors: Dict[int, List[int]]) -> Set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in successors.get(state, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def trim(fst: Fst) -> Fst:
    """Keep only states on some start-to-final path; state order is preserved."""
    if fst.num_states == 0:
        return fst.copy()
    forward: Dict[int, List[int]] = {}
    backward: Dict[int, List[int]] = {}
    for state, arc in fst.iter_arcs():
        forward.setdefault(state, []).append(arc.nextstate)
        backward.setdefault(arc.nextstate, []).append(state)

    accessible = _reachable(fst.start, forward)
    coaccessible: Set[int] = set()
    for final in fst.finals:
        if final not in coaccessible:
            coaccessible |= _reachable(final, backward)
    keep = sorted(accessible & coaccessible)

    result = empty_like(fst.symbols, fst.input_kind, fst.output_kind)
    if fst.start not in coaccessible:
        return result
    mapping = {old: new for new, old in enumerate(keep)}
    for old in keep:
        result.arcs.append(
            [
                Arc(a.ilabel, a.olabel, a.weight, mapping[a.nextstate])
                for a in fst.arcs[old]
                if a.nextstate in mapping
            ]
        )
        if old in fst.finals:
            result.finals[mapping[old]] = fst.finals[old]
    result.start = mapping[fst.start]
    return result


def invert(fst: Fst) -> Fst:
    """Swap input and output labels (and tape kinds); weights unchanged."""
    return Fst(
        symbols=fst.symbols,
        input_kind=fst.output_kind,
        output_kind=fst.input_kind,
        start=fst.start,
        finals=dict(fst.finals),
        arcs=[[Arc(a.olabel, a.ilabel, a.weight, a.nextstate) for a in out] for out in fst.arcs],
    )


def identity(symbols: SymbolTable, labels: Sequence[int], kind: TapeKind = TapeKind.WORD) -> Fst:
    """One-state machine copying any string over ``labels``."""
    fst = empty_like(symbols, kind, kind)
    fst.start = fst.add_state()
    fst.set_final(fst.start)
    for label in labels:
        fst.add_arc(fst.start, label, label, semiring.ONE, fst.start)
    return fst


def compose(a: Fst, b: Fst) -> Fst:
    """Weighted composition of ``a`` then ``b``.

    Epsilon handling uses a sequencing filter: after ``b`` takes an
    input-epsilon move, ``a`` may not take an output-epsilon move until the
    next matched label. Every (x, z) pair then has exactly one path per
    pair of underlying paths.
    """
    if a.symbols is not b.symbols and a.symbols != b.symbols:
        raise SymbolTableMismatchError(
            "cannot compose machines over different symbol tables",
            {"left_size": len(a.symbols), "right_size": len(b.symbols)},
        )
    result = empty_like(a.symbols, a.input_kind, b.output_kind)
    if a.num_states == 0 or b.num_states == 0:
        return result

    index: Dict[Tuple[int, int, int], int] = {}
    queue: deque = deque()

    def state_of(qa: int, qb: int, flag: int) -> int:
        key = (qa, qb, flag)
        found = index.get(key)
        if found is None:
            found = index[key] = result.add_state()
            queue.append(key)
        return found

    result.start = state_of(a.start, b.start, 0)
    while queue:
        qa, qb, flag = queue.popleft()
        source = index[(qa, qb, flag)]

        if qa in a.finals and qb in b.finals:
            result.set_final(source, semiring.times(a.finals[qa], b.finals[qb]))

        b_by_input = b.arcs_by_input(qb)
        for arc_a in a.arcs[qa]:
            if arc_a.olabel == 0:
                if flag == 0:
                    target = state_of(arc_a.nextstate, qb, 0)
                    result.add_arc(source, arc_a.ilabel, 0, arc_a.weight, target)
                continue
            for arc_b in b_by_input.get(arc_a.olabel, ()):
                target = state_of(arc_a.nextstate, arc_b.nextstate, 0)
                result.add_arc(
                    source,
                    arc_a.ilabel,
                    arc_b.olabel,
                    semiring.times(arc_a.weight, arc_b.weight),
                    target,
                )
        for arc_b in b_by_input.get(0, ()):
            target = state_of(qa, arc_b.nextstate, 1)
            result.add_arc(source, 0, arc_b.olabel, arc_b.weight, target)

    return trim(result)
