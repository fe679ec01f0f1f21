"""Brute-force expression enumeration: the ground truth the game is checked against.

Enumeration is purely structural; two expressions with the same language both
appear.  Optional algebraic pruning exists behind a flag but is never used in
theorem cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import backend
from .exprs import (
    EMPTY, EPS, Alphabet, Atom, Cat, Dialect, Expr, Not, Star, Union,
    size, star_count,
)


@dataclass(frozen=True)
class EnumSpec:
    """Bounds for an enumeration: alphabet, dialect, size and stars."""

    alphabet: Alphabet
    dialect: Dialect = Dialect.RE
    max_size: int = 5
    max_stars: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.max_stars is not None and self.max_stars < 0:
            raise ValueError("max_stars must be nonnegative")

    @property
    def star_cap(self) -> int:
        # stars never reach the size, so the size bound caps them anyway
        return self.max_size if self.max_stars is None else self.max_stars


def enumerate_exprs(spec: EnumSpec, algebraic_pruning: bool = False) -> Iterator[Expr]:
    """Every dialect-conforming AST within bounds, in canonical order.

    The order is: nondecreasing size; within a size, stars, then
    complements, then unions, then catenations, children ordered by
    (left size ascending, left order, right order); size-1 leaves come as
    the empty language, the empty word, then atoms in alphabet order.
    Each AST appears exactly once (structural identity).

    With `algebraic_pruning` (excluded from theorem cross-checks) unions
    with an empty-language operand are skipped.
    """
    for e, _stars, _sf in _pools(spec, algebraic_pruning):
        yield e


def _pools(spec: EnumSpec, algebraic_pruning: bool):
    """Yields (expr, stars, star_free) in canonical order, keeping per-size pools."""
    dialect = spec.dialect
    star_cap = spec.star_cap
    pools: list[list[tuple[Expr, int, bool]]] = [[]]

    leaves: list[tuple[Expr, int, bool]] = [(EMPTY, 0, True), (EPS, 0, True)]
    leaves += [(Atom(ch), 0, True) for ch in spec.alphabet]

    for n in range(1, spec.max_size + 1):
        current: list[tuple[Expr, int, bool]] = []
        if n == 1:
            current.extend(leaves)
        else:
            for inner, st, _sf in pools[n - 1]:
                if st + 1 <= star_cap:
                    current.append((Star(inner), st + 1, False))
            if dialect is not Dialect.RE:
                for inner, st, sf in pools[n - 1]:
                    if dialect is Dialect.RESF and not sf:
                        continue
                    current.append((Not(inner), st, sf))
            for ctor in (Union, Cat):
                for i in range(1, n - 1):
                    for left, lst, lsf in pools[i]:
                        if algebraic_pruning and ctor is Union and left is EMPTY:
                            continue
                        for right, rst, rsf in pools[n - 1 - i]:
                            if lst + rst > star_cap:
                                continue
                            if algebraic_pruning and ctor is Union and right is EMPTY:
                                continue
                            current.append((ctor(left, right), lst + rst, lsf and rsf))
        pools.append(current)
        yield from current


def count_exprs(spec: EnumSpec) -> int:
    """Number of expressions enumerate_exprs yields for these bounds."""
    return sum(1 for _ in enumerate_exprs(spec))


@dataclass
class SeparatorReport:
    expr: Expr
    size: int
    stars: int


def min_separating(a_words, b_words, spec: EnumSpec) -> Optional[SeparatorReport]:
    """The least (size, stars, canonical order) separator within bounds.

    Returns None when A and B overlap (no separator can exist) or when no
    in-bounds expression separates them.
    """
    a_words = sorted(set(a_words), key=lambda w: (len(w), w))
    b_words = set(b_words)
    if b_words.intersection(a_words):
        return None
    kern = backend.get()
    b_words = sorted(b_words, key=lambda w: (len(w), w))

    best: Optional[SeparatorReport] = None
    for e in enumerate_exprs(spec):
        sz = size(e)
        if best is not None and sz > best.size:
            return best
        prog = backend.encode_program(e)
        if not all(kern.match_word(prog, w) for w in a_words):
            continue
        if any(kern.match_word(prog, w) for w in b_words):
            continue
        st = star_count(e)
        if best is None or st < best.stars:
            best = SeparatorReport(e, sz, st)
    return best


@dataclass
class CrosscheckReport:
    """Outcome of one game-vs-oracle comparison."""

    game_winner: str
    oracle_separator: Optional[SeparatorReport]
    agree: bool
    solve_stats: dict = field(default_factory=dict)


def crosscheck(position, limits=None) -> CrosscheckReport:
    """Solve a position and compare against oracle existence at the same bounds."""
    from .solver import Solver

    solver = Solver(limits=limits) if limits is not None else Solver()
    result = solver.solve(position)
    spec = EnumSpec(
        alphabet=position.alphabet,
        dialect=position.dialect,
        max_size=max(position.k, 1),
        max_stars=position.s,
    )
    sep = None
    if position.k >= 1:
        sep = min_separating(position.a_words, position.b_words, spec)
    agree = (result.winner == "S") == (sep is not None)
    return CrosscheckReport(result.winner, sep, agree, result.stats)
