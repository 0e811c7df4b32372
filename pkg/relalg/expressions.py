"""
A small expression language for relations.

    expr := term { ("o" | "∘") term }*      composition, left-associative
    term := atom [ "^" integer ]            nonnegative power
    atom := name | "e" | "(" expr ")"        "e" is the identity relation

Whitespace is ignored. "o" and "e" are reserved and cannot name relations.
Parse errors report the UTF-8 byte offset of the offending token.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import List, Mapping, NamedTuple, Union

from relalg.errors import ExpressionError
from relalg.relations import Relation, Universe, compose, identity, power

logger = logging.getLogger(__name__)

COMPOSE_KEYWORD = "o"
IDENTITY_LITERAL = "e"
RESERVED = frozenset({COMPOSE_KEYWORD, IDENTITY_LITERAL})

_TOKEN = re.compile(
    r"(?P<space>\s+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)"
    r"|(?P<compose>∘)|(?P<caret>\^)|(?P<lparen>\()|(?P<rparen>\))"
)


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class IdentityLiteral:
    pass


@dataclass(frozen=True)
class Compose:
    left: "RelationExpr"
    right: "RelationExpr"


@dataclass(frozen=True)
class Power:
    base: "RelationExpr"
    exponent: int


RelationExpr = Union[Name, IdentityLiteral, Compose, Power]


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    offset = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ExpressionError(f"Unexpected character {text[position]!r}", offset)
        kind = match.lastgroup
        lexeme = match.group()
        if kind == "name" and lexeme == COMPOSE_KEYWORD:
            kind = "compose"
        if kind != "space":
            tokens.append(Token(kind, lexeme, offset))
        position = match.end()
        offset += len(lexeme.encode("utf-8"))
    tokens.append(Token("end", "", offset))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def expect(self, kind: str, description: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise ExpressionError(f"Expected {description}, found {found!r}", self.current.offset)
        return self.advance()

    def parse(self) -> RelationExpr:
        expr = self.expr()
        self.expect("end", "end of input")
        return expr

    def expr(self) -> RelationExpr:
        node = self.term()
        while self.current.kind == "compose":
            self.advance()
            node = Compose(node, self.term())
        return node

    def term(self) -> RelationExpr:
        node = self.atom()
        if self.current.kind == "caret":
            self.advance()
            exponent = self.expect("int", "a nonnegative integer exponent")
            node = Power(node, int(exponent.text))
        return node

    def atom(self) -> RelationExpr:
        token = self.current
        if token.kind == "name":
            self.advance()
            if token.text == IDENTITY_LITERAL:
                return IdentityLiteral()
            return Name(token.text)
        if token.kind == "lparen":
            self.advance()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        found = token.text or "end of input"
        raise ExpressionError(f"Expected a relation name, 'e' or '(', found {found!r}", token.offset)


def parse_relation_expr(text: str) -> RelationExpr:
    return _Parser(text).parse()


def format_expr(expr: RelationExpr) -> str:
    """Render an expression so that parsing the text gives the same tree back."""
    if isinstance(expr, Name):
        return expr.name
    if isinstance(expr, IdentityLiteral):
        return IDENTITY_LITERAL
    if isinstance(expr, Power):
        base = format_expr(expr.base)
        if not isinstance(expr.base, (Name, IdentityLiteral)):
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    right = format_expr(expr.right)
    if isinstance(expr.right, Compose):
        right = f"({right})"
    return f"{format_expr(expr.left)} {COMPOSE_KEYWORD} {right}"


def names_in(expr: RelationExpr) -> List[str]:
    if isinstance(expr, Name):
        return [expr.name]
    if isinstance(expr, Power):
        return names_in(expr.base)
    if isinstance(expr, Compose):
        return names_in(expr.left) + names_in(expr.right)
    return []


def evaluate(expr: RelationExpr, relations: Mapping[str, Relation], universe: Universe) -> Relation:
    """Evaluate against named relations; every name must resolve before any work is done."""
    for name in names_in(expr):
        if name not in relations:
            raise ExpressionError(f"Unknown relation name: {name!r}")
    return _evaluate(expr, relations, universe)


def _evaluate(expr: RelationExpr, relations: Mapping[str, Relation], universe: Universe) -> Relation:
    if isinstance(expr, Name):
        return relations[expr.name]
    if isinstance(expr, IdentityLiteral):
        return identity(universe)
    if isinstance(expr, Power):
        return power(_evaluate(expr.base, relations, universe), expr.exponent)
    return compose(_evaluate(expr.left, relations, universe), _evaluate(expr.right, relations, universe))


def evaluate_text(text: str, relations: Mapping[str, Relation], universe: Universe) -> Relation:
    expr = parse_relation_expr(text)
    logger.debug(f"Parsed {text!r} as {format_expr(expr)!r}")
    return evaluate(expr, relations, universe)


__all__ = [
    "COMPOSE_KEYWORD",
    "IDENTITY_LITERAL",
    "RESERVED",
    "Name",
    "IdentityLiteral",
    "Compose",
    "Power",
    "RelationExpr",
    "Token",
    "tokenize",
    "parse_relation_expr",
    "format_expr",
    "names_in",
    "evaluate",
    "evaluate_text",
]
