"""
Tests for the transducer core: symbols, semiring, rational operations,
composition, path search and the binary archive.
"""

import math

import numpy as np
import pytest

from src.utils.exceptions import ArchiveFormatError, NoParse, SearchLimitError, SymbolTableMismatchError
from src.wfst import (
    Fst,
    SymbolTable,
    TapeKind,
    compile_grammar,
    compose,
    concat,
    enumerate_paths,
    invert,
    optional,
    repeat,
    shortest_path,
    trim,
    union,
)
from src.wfst import archive, semiring
from src.wfst.ops import linear, transducer
from src.wfst.search import best_by_enumeration, monotone_blocks
from tests.utils.oracles import all_paths, best_translation, joined_relation, random_acyclic_fst, relation


@pytest.fixture
def abc():
    return SymbolTable(["a", "b", "c"])


def word_machine(symbols, pairs, weight=0.0):
    ids = [(symbols.add(i) if i else 0, symbols.add(o) if o else 0) for i, o in pairs]
    return transducer(symbols, ids, weight)


def as_words(symbols, labels):
    return tuple(symbols.symbol(label) for label in labels)


class TestSymbolTable:
    def test_epsilon_is_zero(self):
        table = SymbolTable()
        assert table.find("<eps>") == 0
        assert len(table) == 1

    def test_add_is_idempotent(self):
        table = SymbolTable()
        first = table.add("x")
        assert table.add("x") == first
        assert table.symbol(first) == "x"
        assert "x" in table

    def test_equality_by_content(self):
        assert SymbolTable(["a", "b"]) == SymbolTable(["a", "b"])
        assert SymbolTable(["a", "b"]) != SymbolTable(["b", "a"])

    def test_empty_symbol_rejected(self):
        with pytest.raises(ValueError):
            SymbolTable().add("")


class TestSemiring:
    def test_plus_is_min(self):
        assert semiring.plus(2.0, 1.5) == 1.5
        assert semiring.sum_weights([]) == semiring.ZERO

    def test_times_is_addition(self):
        assert semiring.times(1.0, 2.5) == 3.5
        assert semiring.times(semiring.ZERO, 1.0) == semiring.ZERO

    def test_valid_weights(self):
        assert semiring.is_valid_weight(0.0)
        assert not semiring.is_valid_weight(-0.5)
        assert not semiring.is_valid_weight(math.inf)

    @staticmethod
    def random_weights(seed, n=300):
        """Triples of dyadic weights, about one in eight of them infinite."""
        rng = np.random.default_rng(seed)
        values = rng.integers(0, 64, size=(n, 3)) / 4.0
        values[rng.random((n, 3)) < 0.125] = math.inf
        return [tuple(float(v) for v in row) for row in values]

    def test_plus_is_associative_and_commutative(self):
        plus = semiring.plus
        for a, b, c in self.random_weights(11):
            assert plus(plus(a, b), c) == plus(a, plus(b, c))
            assert plus(a, b) == plus(b, a)

    def test_times_is_associative_and_commutative(self):
        times = semiring.times
        for a, b, c in self.random_weights(12):
            assert times(times(a, b), c) == times(a, times(b, c))
            assert times(a, b) == times(b, a)

    def test_identities_and_annihilator(self):
        for a, _, _ in self.random_weights(13):
            assert semiring.plus(a, semiring.ZERO) == a
            assert semiring.times(a, semiring.ONE) == a
            assert semiring.times(a, semiring.ZERO) == semiring.ZERO
            assert semiring.times(semiring.ZERO, a) == semiring.ZERO

    def test_times_distributes_over_plus(self):
        plus, times = semiring.plus, semiring.times
        for a, b, c in self.random_weights(14):
            assert times(a, plus(b, c)) == plus(times(a, b), times(a, c))
            assert times(plus(b, c), a) == plus(times(b, a), times(c, a))

    def test_sum_weights_ignores_order(self):
        rng = np.random.default_rng(15)
        for a, b, c in self.random_weights(15, n=50):
            weights = [a, b, c]
            shuffled = list(rng.permutation(weights))
            assert semiring.sum_weights(weights) == semiring.sum_weights(shuffled) == min(weights)


class TestConstruction:
    def test_linear_layout(self, abc):
        """one -> 1 is one deleting arc then one inserting arc."""
        fst = linear(abc, [1], [2])
        assert fst.num_states == 3
        assert [a.olabel for _, a in fst.iter_arcs()] == [0, 2]
        assert [a.ilabel for _, a in fst.iter_arcs()] == [1, 0]

    def test_union_relation(self, abc):
        a = word_machine(abc, [("a", "b")])
        b = word_machine(abc, [("a", "c")], 1.0)
        assert relation(union(a, b)) == {((1,), (2,)): 0.0, ((1,), (3,)): 1.0}

    def test_concat_relation(self, abc):
        a = word_machine(abc, [("a", "b")], 0.5)
        b = word_machine(abc, [("b", "c")], 0.5)
        assert relation(concat(a, b)) == {((1, 2), (2, 3)): 1.0}

    def test_optional_accepts_empty(self, abc):
        fst = optional(word_machine(abc, [("a", "a")]))
        assert set(relation(fst)) == {((), ()), ((1,), (1,))}

    def test_repeat_counts_without_duplicates(self, abc):
        fst = repeat(word_machine(abc, [("a", "b")]), 1, 3)
        paths = all_paths(fst)
        assert sorted(len(ins) for ins, _, _ in paths) == [1, 2, 3]

    def test_repeat_bad_bounds(self, abc):
        with pytest.raises(ValueError):
            repeat(word_machine(abc, [("a", "a")]), 2, 1)

    def test_invert_swaps(self, abc):
        fst = linear(abc, [1], [2], input_kind=TapeKind.WORD, output_kind=TapeKind.CHAR)
        inverted = invert(fst)
        assert inverted.input_kind == TapeKind.CHAR
        assert relation(inverted) == {((2,), (1,)): 0.0}

    def test_trim_removes_dead_states(self, abc):
        fst = word_machine(abc, [("a", "b")])
        dead = fst.add_state()
        fst.add_arc(fst.start, 1, 1, 0.0, dead)
        trimmed = trim(fst)
        assert trimmed.num_states == fst.num_states - 1
        assert relation(trimmed) == relation(fst)

    def test_trim_of_empty_language(self, abc):
        fst = Fst(symbols=abc)
        fst.start = fst.add_state()
        assert trim(fst).num_states == 0

    def test_mismatched_symbols(self, abc):
        a = word_machine(abc, [("a", "b")])
        b = word_machine(SymbolTable(["z"]), [("z", "z")])
        with pytest.raises(SymbolTableMismatchError):
            concat(a, b)
        with pytest.raises(SymbolTableMismatchError):
            compose(a, b)

    def test_operations_do_not_mutate(self, abc):
        a = word_machine(abc, [("a", "b")])
        before = (a.num_states, a.num_arcs, dict(a.finals))
        union(a, a)
        concat(a, a)
        optional(a)
        assert (a.num_states, a.num_arcs, dict(a.finals)) == before


class TestCompose:
    def test_simple_chain(self, abc):
        a = word_machine(abc, [("a", "b")], 0.5)
        b = word_machine(abc, [("b", "c")], 0.25)
        assert relation(compose(a, b)) == {((1,), (3,)): 0.75}

    def test_epsilon_on_both_sides(self, abc):
        a = word_machine(abc, [("a", None), (None, "b")])
        b = word_machine(abc, [(None, "c"), ("b", "a")])
        composed = compose(a, b)
        assert relation(composed) == joined_relation(a, b)
        # The sequencing filter leaves one path per pair of paths.
        assert len(all_paths(composed)) == 1

    def test_no_match_is_empty(self, abc):
        a = word_machine(abc, [("a", "b")])
        b = word_machine(abc, [("c", "c")])
        assert compose(a, b).num_states == 0

    def test_random_machines_match_path_join(self, abc):
        """compose equals the brute-force join of both path relations."""
        rng = np.random.default_rng(2024)
        for _ in range(200):
            a = random_acyclic_fst(rng, abc, [1, 2, 3])
            b = random_acyclic_fst(rng, abc, [1, 2, 3])
            assert relation(compose(a, b)) == joined_relation(a, b)

    def test_composition_is_associative(self, abc):
        """(a o b) o c and a o (b o c) denote the same weighted relation."""
        rng = np.random.default_rng(2025)
        nonempty = 0
        for _ in range(120):
            a, b, c = (random_acyclic_fst(rng, abc, [1, 2, 3], max_states=5) for _ in range(3))
            left = compose(compose(a, b), c)
            right = compose(a, compose(b, c))
            expected = joined_relation(compose(a, b), c)
            assert relation(left) == expected
            assert relation(right) == joined_relation(a, compose(b, c))
            assert relation(left) == relation(right)
            nonempty += bool(expected)
        assert nonempty > 10


class TestShortestPath:
    def test_prefers_lower_weight(self):
        fst = compile_grammar('x = "a" : "1" / 1.0 | "a" : "2" ;')
        result = shortest_path(fst, ["a"])
        assert result.output == ("2",)
        assert result.weight == 0.0

    def test_ties_go_to_smaller_label_sequence(self):
        # "2" is interned before "1", so it has the smaller label.
        fst = compile_grammar('x = "a" : "2" | "a" : "1" ;')
        assert shortest_path(fst, ["a"]).output == ("2",)

    def test_unknown_symbol(self):
        fst = compile_grammar('x = "a" : "1" ;')
        with pytest.raises(NoParse):
            shortest_path(fst, ["zebra"])

    def test_known_symbol_without_path(self):
        fst = compile_grammar('x = "a" : "1" | "b" "a" : "2" ;')
        with pytest.raises(NoParse):
            shortest_path(fst, ["a", "a"])

    def test_expansion_limit(self):
        fst = compile_grammar('d = "a" : "1" | "a" : "2" ; x = d{6} ;')
        with pytest.raises(SearchLimitError):
            shortest_path(fst, ["a"] * 6, max_expansions=3)

    def test_char_output_words(self):
        fst = compile_grammar('x = "twenty" : "2" "" : "0" "dollars" : " USD" ;')
        assert shortest_path(fst, ["twenty", "dollars"]).output == ("20", "USD")

    def test_random_machines_match_enumeration(self, abc):
        """Best weight and output equal exhaustive enumeration on random acyclic machines."""
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(200):
            fst = random_acyclic_fst(rng, abc, [1, 2, 3])
            paths = all_paths(fst)
            if not paths:
                continue
            inputs = paths[int(rng.integers(len(paths)))][0]
            expected = best_translation(fst, inputs)
            result = shortest_path(fst, as_words(abc, inputs))
            assert result.weight == expected[0]
            assert result.output == as_words(abc, expected[1])
            assert best_by_enumeration(fst, as_words(abc, inputs)) == expected
            checked += 1
        assert checked > 100

    def test_enumerate_paths_respects_input(self, abc):
        fst = union(word_machine(abc, [("a", "b")]), word_machine(abc, [("b", "c")]))
        paths = list(enumerate_paths(fst, [2]))
        assert [(p.inputs, p.outputs) for p in paths] == [((2,), (3,))]

    def test_enumerate_paths_limit(self, abc):
        fst = repeat(union(word_machine(abc, [("a", "b")]), word_machine(abc, [("a", "c")])), 4, 4)
        with pytest.raises(SearchLimitError):
            list(enumerate_paths(fst, limit=10))


class TestAlignment:
    def test_one_to_one(self):
        assert monotone_blocks([(0, 0), (1, 1)], 2, 2) == (((0, 1), (0, 1)), ((1, 2), (1, 2)))

    def test_crossing_links_merge(self):
        assert monotone_blocks([(0, 1), (1, 0)], 2, 2) == (((0, 2), (0, 2)),)

    def test_unlinked_input_joins_previous_block(self):
        assert monotone_blocks([(0, 0)], 3, 1) == (((0, 3), (0, 1)),)

    def test_empty_input(self):
        assert monotone_blocks([], 0, 2) == (((0, 0), (0, 2)),)
        assert monotone_blocks([], 0, 0) == ()

    def test_blocks_tile_both_sides(self, grammars):
        from src.core import EntityType

        result = grammars.format(EntityType.TIME, ["four", "thirty", "p", "m"])
        assert result.output == ("4:30", "PM")
        blocks = result.alignment
        assert blocks[0][0][0] == 0 and blocks[0][1][0] == 0
        assert blocks[-1][0][1] == 4 and blocks[-1][1][1] == 2
        for (left, right) in zip(blocks, blocks[1:]):
            assert left[0][1] == right[0][0]
            assert left[1][1] == right[1][0]


class TestArchive:
    def test_round_trip(self, abc):
        fst = union(word_machine(abc, [("a", "b")], 0.5), word_machine(abc, [("c", None)]))
        data = archive.dumps(abc, {"entry": fst})
        symbols, entries = archive.loads(data)
        assert symbols == abc
        assert relation(entries["entry"]) == relation(fst)
        assert archive.dumps(symbols, entries) == data

    def test_bad_magic(self):
        with pytest.raises(ArchiveFormatError):
            archive.loads(b"NOPE\x01")

    def test_bad_version(self, abc):
        data = bytearray(archive.dumps(abc, {}))
        data[4] = 99
        with pytest.raises(ArchiveFormatError) as exc_info:
            archive.loads(bytes(data))
        assert exc_info.value.details["version"] == 99

    def test_truncated(self, abc):
        data = archive.dumps(abc, {"entry": word_machine(abc, [("a", "b")])})
        with pytest.raises(ArchiveFormatError):
            archive.loads(data[:-3])

    def test_trailing_bytes(self, abc):
        with pytest.raises(ArchiveFormatError):
            archive.loads(archive.dumps(abc, {}) + b"\x00")
