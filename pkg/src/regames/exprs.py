"""Generalized regular expression ASTs: metrics, dialects, parsing and matching.

The expression language has seven node kinds: the empty language, the empty
word, single-symbol atoms, union, catenation, Kleene star and complement.
Intersection is accepted by the parser as sugar (`&`) and expanded to
``!(!l|!r)``; it is never a node.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union as TyUnion


class Dialect(Enum):
    """Expression classes, ordered by inclusion: RE < RESF < GRE.

    RE has no complement.  RESF (RE over star-free) allows complement but
    never a star beneath one.  GRE is unrestricted.
    """

    RE = "re"
    RESF = "resf"
    GRE = "gre"

    @property
    def rank(self) -> int:
        return _DIALECT_RANK[self]

    def admits(self, other: "Dialect") -> bool:
        """True if expressions of class `other` are also of class `self`."""
        return other.rank <= self.rank


_DIALECT_RANK = {Dialect.RE: 0, Dialect.RESF: 1, Dialect.GRE: 2}


@dataclass(frozen=True, slots=True)
class Alphabet:
    """An ordered set of distinct single-character symbols."""

    symbols: tuple[str, ...]

    def __init__(self, symbols) -> None:
        syms = tuple(symbols)
        if not syms:
            raise ValueError("alphabet must be non-empty")
        seen = set()
        for s in syms:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"alphabet symbol must be a single character: {s!r}")
            if s in seen:
                raise ValueError(f"duplicate alphabet symbol: {s!r}")
            seen.add(s)
        object.__setattr__(self, "symbols", syms)

    def __contains__(self, ch: str) -> bool:
        return ch in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def validate_word(self, word: str) -> None:
        for ch in word:
            if ch not in self.symbols:
                raise ValueError(f"symbol {ch!r} not in alphabet {''.join(self.symbols)!r}")


@dataclass(frozen=True, slots=True)
class EmptySet:
    def __repr__(self) -> str:
        return "EmptySet()"


@dataclass(frozen=True, slots=True)
class Epsilon:
    def __repr__(self) -> str:
        return "Epsilon()"


@dataclass(frozen=True, slots=True)
class Atom:
    symbol: str

    def __post_init__(self) -> None:
        if len(self.symbol) != 1:
            raise ValueError(f"atom symbol must be a single character: {self.symbol!r}")


@dataclass(frozen=True, slots=True)
class Union:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Cat:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Star:
    inner: "Expr"


@dataclass(frozen=True, slots=True)
class Not:
    inner: "Expr"


Expr = TyUnion[EmptySet, Epsilon, Atom, Union, Cat, Star, Not]

EMPTY = EmptySet()
EPS = Epsilon()

_BINARY = (Union, Cat)
_UNARY = (Star, Not)


def intersect(left: Expr, right: Expr) -> Expr:
    """The `&` sugar: l & r expands to !(!l | !r)."""
    return Not(Union(Not(left), Not(right)))


def size(e: Expr) -> int:
    """Syntax-tree node count: leaves are 1, unary adds 1, binary adds 1 to the sum."""
    total = 0
    stack = [e]
    while stack:
        node = stack.pop()
        total += 1
        if isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, _UNARY):
            stack.append(node.inner)
    return total


def star_count(e: Expr) -> int:
    """Number of star nodes (not star height)."""
    total = 0
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Star):
            total += 1
            stack.append(node.inner)
        elif isinstance(node, Not):
            stack.append(node.inner)
        elif isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
    return total


def _has_not(e: Expr) -> bool:
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Not):
            return True
        if isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Star):
            stack.append(node.inner)
    return False


def _star_under_not(e: Expr) -> bool:
    stack = [(e, False)]
    while stack:
        node, complemented = stack.pop()
        if isinstance(node, Star):
            if complemented:
                return True
            stack.append((node.inner, complemented))
        elif isinstance(node, Not):
            stack.append((node.inner, True))
        elif isinstance(node, _BINARY):
            stack.append((node.left, complemented))
            stack.append((node.right, complemented))
    return False


def dialect_of(e: Expr) -> Dialect:
    """Smallest dialect containing `e`.

    GRE if a star occurs beneath a complement, RESF if complement occurs
    without that, RE if there is no complement at all.
    """
    if _star_under_not(e):
        return Dialect.GRE
    if _has_not(e):
        return Dialect.RESF
    return Dialect.RE


def atoms_of(e: Expr) -> frozenset[str]:
    out = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.symbol)
        elif isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, _UNARY):
            stack.append(node.inner)
    return frozenset(out)


def splits2(w: str) -> list[tuple[str, str]]:
    """All |w|+1 ordered 2-splits of w; empty pieces allowed."""
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def compositions(w: str) -> list[tuple[str, ...]]:
    """All splits of w into nonempty pieces, 2^(|w|-1) of them; none for w = ''.

    Ordered by the cut set read as a binary number, so the trivial one-piece
    composition comes first.
    """
    n = len(w)
    if n == 0:
        return []
    out = []
    for mask in range(1 << (n - 1)):
        pieces = []
        start = 0
        for i in range(1, n):
            if mask & (1 << (i - 1)):
                pieces.append(w[start:i])
                start = i
        pieces.append(w[start:])
        out.append(tuple(pieces))
    return out


def factors(w: str) -> set[str]:
    """All contiguous substrings of w, including the empty word."""
    out = {""}
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            out.add(w[i:j])
    return out


# --- Matching -------------------------------------------------------------
#
# Membership is span-indexed dynamic programming directly on the AST; no
# automaton is built.  Complement negates the inner span table, which keeps
# generalized membership polynomial.  The heavy lifting lives in the
# selectable backend (compiled or pure Python).


def matches(e: Expr, w: str) -> bool:
    """True iff w is in the language of e."""
    from . import backend

    return backend.get().match_word(backend.encode_program(e), w)


def separates(e: Expr, a_words, b_words) -> bool:
    """True iff every word of A matches e and no word of B does."""
    from . import backend

    prog = backend.encode_program(e)
    match = backend.get().match_word
    return all(match(prog, w) for w in a_words) and not any(match(prog, w) for w in b_words)


# --- Concrete syntax ------------------------------------------------------
#
# `|` union (lowest, left-assoc); `&` intersection sugar; juxtaposition for
# catenation; prefix `!`; postfix `*` (tightest); `( )` grouping; `\0` and
# `\e` for the empty language and empty word; backslash escapes the
# reserved characters ( ) | * ! & \ so they can be alphabet symbols.

RESERVED_CHARS = frozenset("()|*!&\\")


class ExprSyntaxError(ValueError):
    """Raised on malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(ExprSyntaxError):
    pass


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet) -> None:
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Expr:
        if not self.text:
            raise ExprSyntaxError("empty expression", 0)
        e = self.union()
        if self.pos != len(self.text):
            raise ExprSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return e

    def union(self) -> Expr:
        e = self.inter()
        while self.peek() == "|":
            self.pos += 1
            e = Union(e, self.inter())
        return e

    def inter(self) -> Expr:
        e = self.concat()
        while self.peek() == "&":
            self.pos += 1
            e = intersect(e, self.concat())
        return e

    def concat(self) -> Expr:
        e = self.prefix()
        while True:
            c = self.peek()
            if c is None or c in "|&)":
                return e
            e = Cat(e, self.prefix())

    def prefix(self) -> Expr:
        if self.peek() == "!":
            self.pos += 1
            if self.peek() is None:
                raise ExprSyntaxError("dangling '!'", self.pos)
            return Not(self.prefix())
        return self.postfix()

    def postfix(self) -> Expr:
        e = self.primary()
        while self.peek() == "*":
            self.pos += 1
            e = Star(e)
        return e

    def primary(self) -> Expr:
        c = self.peek()
        if c is None:
            raise ExprSyntaxError("unexpected end of expression", self.pos)
        if c == "(":
            start = self.pos
            self.pos += 1
            e = self.union()
            if self.peek() != ")":
                raise ExprSyntaxError("unclosed '('", start)
            self.pos += 1
            return e
        if c == "\\":
            if self.pos + 1 >= len(self.text):
                raise ExprSyntaxError("dangling escape", self.pos)
            esc = self.text[self.pos + 1]
            self.pos += 2
            if esc == "0":
                return EMPTY
            if esc == "e":
                return EPS
            return self.atom(esc, self.pos - 1)
        if c in RESERVED_CHARS:
            raise ExprSyntaxError(f"unexpected {c!r}", self.pos)
        self.pos += 1
        return self.atom(c, self.pos - 1)

    def atom(self, ch: str, at: int) -> Expr:
        if ch not in self.alphabet:
            raise UnknownSymbolError(f"symbol {ch!r} not in alphabet", at)
        return Atom(ch)


def parse_expr(text: str, alphabet: Alphabet) -> Expr:
    """Parse expression text over the given alphabet.

    Raises ExprSyntaxError (with position) on malformed input and
    UnknownSymbolError for atoms outside the alphabet.
    """
    return _Parser(text, alphabet).parse()


# Precedence levels used by the renderer; higher binds tighter.
_LVL_UNION, _LVL_CAT, _LVL_NOT, _LVL_STAR = 0, 1, 2, 3


def _render(e: Expr, level: int) -> str:
    if isinstance(e, EmptySet):
        return "\\0"
    if isinstance(e, Epsilon):
        return "\\e"
    if isinstance(e, Atom):
        return "\\" + e.symbol if e.symbol in RESERVED_CHARS else e.symbol
    if isinstance(e, Union):
        body = _render(e.left, _LVL_UNION) + "|" + _render(e.right, _LVL_UNION + 1)
        return f"({body})" if level > _LVL_UNION else body
    if isinstance(e, Cat):
        body = _render(e.left, _LVL_CAT) + _render(e.right, _LVL_CAT + 1)
        return f"({body})" if level > _LVL_CAT else body
    if isinstance(e, Not):
        body = "!" + _render(e.inner, _LVL_NOT)
        return f"({body})" if level > _LVL_NOT else body
    if isinstance(e, Star):
        return _render(e.inner, _LVL_STAR) + "*"
    raise TypeError(f"not an expression node: {e!r}")


def render_expr(e: Expr) -> str:
    """Canonical text form; parse_expr(render_expr(e)) reproduces e exactly."""
    return _render(e, _LVL_UNION)
