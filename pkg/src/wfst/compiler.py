"""
Grammar rule language and its compiler.

Source files hold one rule per statement::

    # comment
    digit = "one" : "1" | "two" : "2" ;
    pair  = digit digit? / 0.5 ;

Expressions support string literals (a bare literal copies its words
through), crosses ``"in" : "out"``, concatenation by juxtaposition, union
``|``, optionality ``?``, bounded repetition ``{n}`` / ``{n,m}``, weights
``/ w`` and references to other rules. References may point into other
files of the same grammar set; recursion is rejected.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from ..utils.exceptions import EmptyGrammarError, GrammarSyntaxError
from . import ops
from .fst import Fst, TapeKind
from .semiring import is_valid_weight
from .symbols import SPACE, SymbolTable

ENTRY_PREFIX = "itn_"

_TOKEN_SPEC = [
    ("SKIP", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("COMMENT", r"#[^\n]*"),
    ("STRING", r'"(?:[^"\\\n]|\\.)*"'),
    ("NUMBER", r"\d+(?:\.\d+)?"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[=;|()?{},:/]"),
    ("ERROR", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


# ---- syntax tree -----------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Cross:
    source: str
    target: str


@dataclass(frozen=True)
class Reference:
    name: str
    line: int
    column: int


@dataclass(frozen=True)
class Concat:
    items: Tuple["Expr", ...]


@dataclass(frozen=True)
class Alternation:
    items: Tuple["Expr", ...]


@dataclass(frozen=True)
class Optional_:
    item: "Expr"


@dataclass(frozen=True)
class Repeat:
    item: "Expr"
    low: int
    high: int


@dataclass(frozen=True)
class Weighted:
    item: "Expr"
    weight: float


Expr = Union[Literal, Cross, Reference, Concat, Alternation, Optional_, Repeat, Weighted]


@dataclass(frozen=True)
class Rule:
    name: str
    expr: Expr
    origin: str
    line: int
    column: int


# ---- lexing and parsing ----------------------------------------------------


def _unescape(raw: str) -> str:
    return re.sub(r"\\(.)", r"\1", raw[1:-1])


def tokenize(source: str, origin: str = "<string>") -> List[Token]:
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(source):
        kind, text = match.lastgroup, match.group()
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line, line_start = line + 1, match.end()
        elif kind in ("SKIP", "COMMENT"):
            continue
        elif kind == "ERROR":
            raise _syntax_error(f"unexpected character {text!r}", origin, line, column)
        else:
            tokens.append(Token(kind, text, line, column))
    return tokens


def _syntax_error(message: str, origin: str, line: int, column: int) -> GrammarSyntaxError:
    return GrammarSyntaxError(
        f"{origin}:{line}:{column}: {message}",
        {"file": origin, "line": line, "column": column},
    )


class _Parser:
    def __init__(self, tokens: List[Token], origin: str):
        self.tokens = tokens
        self.origin = origin
        self.pos = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str, token: Optional[Token] = None) -> GrammarSyntaxError:
        token = token or self.peek()
        if token is None:
            last = self.tokens[-1] if self.tokens else Token("EOF", "", 1, 1)
            return _syntax_error(f"{message} at end of input", self.origin, last.line, last.column)
        return _syntax_error(f"{message}, found {token.text!r}", self.origin, token.line, token.column)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.peek()
        if token is None or token.kind != kind or (text is not None and token.text != text):
            raise self.error(f"expected {text or kind.lower()}")
        self.pos += 1
        return token

    def accept(self, text: str) -> Optional[Token]:
        token = self.peek()
        if token is not None and token.kind == "OP" and token.text == text:
            self.pos += 1
            return token
        return None

    def rules(self) -> List[Rule]:
        rules: List[Rule] = []
        while self.peek() is not None:
            name = self.expect("IDENT")
            self.expect("OP", "=")
            expr = self.alternation()
            self.expect("OP", ";")
            rules.append(Rule(name.text, expr, self.origin, name.line, name.column))
        return rules

    def alternation(self) -> Expr:
        items = [self.concatenation()]
        while self.accept("|"):
            items.append(self.concatenation())
        return items[0] if len(items) == 1 else Alternation(tuple(items))

    def concatenation(self) -> Expr:
        items = []
        while True:
            token = self.peek()
            if token is None or not (
                token.kind in ("STRING", "IDENT") or (token.kind == "OP" and token.text == "(")
            ):
                break
            items.append(self.postfix())
        if not items:
            raise self.error("expected an expression")
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def postfix(self) -> Expr:
        expr = self.atom()
        while True:
            if self.accept("?"):
                expr = Optional_(expr)
            elif self.accept("{"):
                low = int(self.expect("NUMBER").text)
                high = int(self.expect("NUMBER").text) if self.accept(",") else low
                closing = self.expect("OP", "}")
                if high < low:
                    raise self.error(f"bad repeat bounds {{{low},{high}}}", closing)
                expr = Repeat(expr, low, high)
            elif self.accept("/"):
                token = self.expect("NUMBER")
                weight = float(token.text)
                if not is_valid_weight(weight):
                    raise self.error("weight must be finite and non-negative", token)
                expr = Weighted(expr, weight)
            else:
                return expr

    def atom(self) -> Expr:
        token = self.peek()
        if token is None:
            raise self.error("expected an expression")
        if token.kind == "STRING":
            self.pos += 1
            if self.accept(":"):
                target = self.expect("STRING")
                return Cross(_unescape(token.text), _unescape(target.text))
            return Literal(_unescape(token.text))
        if token.kind == "IDENT":
            self.pos += 1
            return Reference(token.text, token.line, token.column)
        if self.accept("("):
            expr = self.alternation()
            self.expect("OP", ")")
            return expr
        raise self.error("expected an expression")


def parse_rules(source: str, origin: str = "<string>") -> List[Rule]:
    """Parse rule source into rules (no name resolution)."""
    return _Parser(tokenize(source, origin), origin).rules()


# ---- compilation -----------------------------------------------------------


@dataclass
class GrammarCompiler:
    """Compiles rules from any number of sources that share one namespace."""

    symbols: SymbolTable = field(default_factory=SymbolTable)
    rules: Dict[str, Rule] = field(default_factory=dict)
    _cache: Dict[str, Fst] = field(default_factory=dict)

    def add_source(self, source: str, origin: str = "<string>") -> List[Rule]:
        parsed = parse_rules(source, origin)
        for rule in parsed:
            if rule.name in self.rules:
                first = self.rules[rule.name]
                raise _syntax_error(
                    f"rule {rule.name!r} already defined at {first.origin}:{first.line}",
                    rule.origin,
                    rule.line,
                    rule.column,
                )
            self.rules[rule.name] = rule
        return parsed

    def add_sources(self, sources: Iterable[Tuple[str, str]]) -> None:
        for origin, source in sources:
            self.add_source(source, origin)

    def entry_points(self) -> List[str]:
        return [name for name in self.rules if name.startswith(ENTRY_PREFIX)]

    def compile(self, name: str) -> Fst:
        """Compile rule ``name`` to a trimmed machine."""
        if name not in self.rules:
            raise GrammarSyntaxError(f"undefined rule {name!r}", {"rule": name})
        return self._resolve(name, ())

    def _resolve(self, name: str, stack: Tuple[str, ...]) -> Fst:
        cached = self._cache.get(name)
        if cached is not None:
            return cached
        rule = self.rules[name]
        fst = ops.trim(self._build(rule.expr, rule, stack + (name,)))
        if fst.num_states == 0:
            raise EmptyGrammarError(
                f"rule {name!r} has no accepting path",
                {"rule": name, "file": rule.origin, "line": rule.line},
            )
        self._cache[name] = fst
        return fst

    def _build(self, expr: Expr, rule: Rule, stack: Tuple[str, ...]) -> Fst:
        if isinstance(expr, Literal):
            words = self._words(expr.text)
            return self._linear(words, self._chars(" ".join(expr.text.split())))
        if isinstance(expr, Cross):
            return self._linear(self._words(expr.source), self._chars(expr.target))
        if isinstance(expr, Reference):
            if expr.name in stack:
                raise _syntax_error(
                    f"recursive reference to {expr.name!r}", rule.origin, expr.line, expr.column
                )
            if expr.name not in self.rules:
                raise _syntax_error(
                    f"undefined rule {expr.name!r}", rule.origin, expr.line, expr.column
                )
            return self._resolve(expr.name, stack)
        if isinstance(expr, Concat):
            result = self._build(expr.items[0], rule, stack)
            for item in expr.items[1:]:
                result = ops.concat(result, self._build(item, rule, stack))
            return result
        if isinstance(expr, Alternation):
            return ops.union(*(self._build(item, rule, stack) for item in expr.items))
        if isinstance(expr, Optional_):
            return ops.optional(self._build(expr.item, rule, stack))
        if isinstance(expr, Repeat):
            return ops.repeat(self._build(expr.item, rule, stack), expr.low, expr.high)
        if isinstance(expr, Weighted):
            return ops.add_weight(self._build(expr.item, rule, stack), expr.weight)
        raise TypeError(f"unknown expression {expr!r}")

    def _words(self, text: str) -> List[int]:
        return [self.symbols.add(word) for word in text.split()]

    def _chars(self, text: str) -> List[int]:
        return [self.symbols.add(SPACE if char == " " else char) for char in text]

    def _linear(self, inputs: List[int], outputs: List[int]) -> Fst:
        return ops.linear(self.symbols, inputs, outputs, 0.0, TapeKind.WORD, TapeKind.CHAR)


def compile_grammar(
    source: str,
    entry: Optional[str] = None,
    symbols: Optional[SymbolTable] = None,
    origin: str = "<string>",
) -> Fst:
    """Compile ``source`` and return the machine for ``entry``.

    Without an explicit entry the last rule in the source is compiled.
    """
    compiler = GrammarCompiler(symbols=symbols or SymbolTable())
    parsed = compiler.add_source(source, origin)
    if not parsed:
        raise EmptyGrammarError("grammar source defines no rules", {"file": origin})
    return compiler.compile(entry or parsed[-1].name)
