"""
Tests for the grammar rule language and its compiler.
"""

import pytest

from src.utils.exceptions import EmptyGrammarError, GrammarSyntaxError
from src.wfst import GrammarCompiler, compile_grammar, parse_rules, shortest_path
from src.wfst.compiler import Alternation, Concat, Cross, Literal, Optional_, Reference, Repeat, Weighted


def translate(source, words, entry=None):
    return shortest_path(compile_grammar(source, entry), words).text


class TestParser:
    def test_rule_structure(self):
        rules = parse_rules('pair = digit digit? / 0.5 ; digit = "one" : "1" | "two" : "2" ;')
        assert [rule.name for rule in rules] == ["pair", "digit"]
        pair = rules[0].expr
        assert isinstance(pair, Concat)
        assert isinstance(pair.items[0], Reference)
        assert isinstance(pair.items[1], Weighted)
        assert isinstance(pair.items[1].item, Optional_)
        digit = rules[1].expr
        assert isinstance(digit, Alternation)
        assert digit.items[0] == Cross("one", "1")

    def test_literals_and_repeat(self):
        (rule,) = parse_rules('x = "a b" {2,3} ;')
        assert rule.expr == Repeat(Literal("a b"), 2, 3)

    def test_exact_repeat(self):
        (rule,) = parse_rules('x = "a" {4} ;')
        assert rule.expr == Repeat(Literal("a"), 4, 4)

    def test_comments_and_escapes(self):
        source = '# leading comment\nq = "\\"" : "x" ; # trailing\n'
        (rule,) = parse_rules(source)
        assert rule.expr == Cross('"', "x")

    def test_positions_recorded(self):
        rules = parse_rules('a = "x" ;\n\n  b = "y" ;', origin="demo.grm")
        assert (rules[1].line, rules[1].column, rules[1].origin) == (3, 3, "demo.grm")

    def test_missing_semicolon(self):
        with pytest.raises(GrammarSyntaxError) as exc_info:
            parse_rules('a = "x"\nb = "y" ;', origin="bad.grm")
        details = exc_info.value.details
        assert details["file"] == "bad.grm"
        assert details["line"] == 2
        assert "bad.grm:2:" in exc_info.value.message

    def test_unexpected_character(self):
        with pytest.raises(GrammarSyntaxError) as exc_info:
            parse_rules('a = "x" & "y" ;')
        assert exc_info.value.details["column"] == 9

    def test_bad_repeat_bounds(self):
        with pytest.raises(GrammarSyntaxError):
            parse_rules('a = "x"{3,1} ;')

    def test_empty_expression(self):
        with pytest.raises(GrammarSyntaxError):
            parse_rules("a = ;")

    def test_unterminated_group(self):
        with pytest.raises(GrammarSyntaxError) as exc_info:
            parse_rules('a = ("x" | "y" ;')
        assert "expected" in exc_info.value.message


class TestCompiler:
    def test_cross_and_union(self):
        source = 'd = "one" : "1" | "two" : "2" ;'
        assert translate(source, ["two"]) == "2"

    def test_literal_copies_words(self):
        assert translate('x = "hello world" ;', ["hello", "world"]) == "hello world"

    def test_references_across_sources(self):
        compiler = GrammarCompiler()
        compiler.add_source('unit = "one" : "1" ;', "a.grm")
        compiler.add_source('itn_pair = unit unit ;', "b.grm")
        assert compiler.entry_points() == ["itn_pair"]
        assert shortest_path(compiler.compile("itn_pair"), ["one", "one"]).text == "11"

    def test_optional_and_weights(self):
        source = 'x = "a" : "1" ("b" : "2")? ;'
        assert translate(source, ["a"]) == "1"
        assert translate(source, ["a", "b"]) == "12"

    def test_weighted_alternative_loses(self):
        source = 'x = "oh" : "0" / 0.5 | "oh" : "o" ;'
        assert translate(source, ["oh"]) == "o"

    def test_bounded_repeat(self):
        source = 'd = "one" : "1" ; x = d{2,3} ;'
        assert translate(source, ["one", "one", "one"]) == "111"

    def test_entry_defaults_to_last_rule(self):
        source = 'a = "x" : "1" ; b = "y" : "2" ;'
        assert translate(source, ["y"]) == "2"
        assert translate(source, ["x"], entry="a") == "1"

    def test_recursion_rejected(self):
        with pytest.raises(GrammarSyntaxError) as exc_info:
            compile_grammar('a = "x" b ; b = "y" a ;', entry="a")
        assert "recursive" in exc_info.value.message

    def test_undefined_reference(self):
        with pytest.raises(GrammarSyntaxError) as exc_info:
            compile_grammar('a = "x" missing ;', origin="m.grm")
        assert exc_info.value.details["file"] == "m.grm"
        assert "missing" in exc_info.value.message

    def test_duplicate_rule(self):
        compiler = GrammarCompiler()
        compiler.add_source('a = "x" ;', "first.grm")
        with pytest.raises(GrammarSyntaxError) as exc_info:
            compiler.add_source('a = "y" ;', "second.grm")
        assert "first.grm:1" in exc_info.value.message

    def test_no_rules(self):
        with pytest.raises(EmptyGrammarError):
            compile_grammar("# only a comment\n")

    def test_undefined_entry(self):
        compiler = GrammarCompiler()
        compiler.add_source('a = "x" ;')
        with pytest.raises(GrammarSyntaxError):
            compiler.compile("nope")

    def test_shared_symbol_table(self):
        compiler = GrammarCompiler()
        compiler.add_source('a = "one" : "1" ; b = "one" : "2" ;')
        assert compiler.compile("a").symbols is compiler.compile("b").symbols
