"""Shared fixtures and the independent language oracle used against the matcher."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from regames.exprs import (
    EMPTY, EPS, Alphabet, Atom, Cat, Expr, Not, Star, Union,
)


@pytest.fixture(scope="session")
def ab() -> Alphabet:
    return Alphabet("ab")


def all_words(alphabet, max_len: int) -> list[str]:
    return ["".join(t) for L in range(max_len + 1)
            for t in itertools.product(tuple(alphabet), repeat=L)]


def naive_language(e: Expr, alphabet, max_len: int) -> frozenset[str]:
    """Language of e within words of bounded length, by naive set semantics.

    Complements are taken inside the bounded universe and star closures are
    truncated at the bound, which is exact for deciding membership of words
    within the bound (membership only ever consults factors).
    """
    universe = frozenset(all_words(alphabet, max_len))

    def go(node) -> frozenset[str]:
        if node == EMPTY:
            return frozenset()
        if node == EPS:
            return frozenset({""})
        if isinstance(node, Atom):
            return frozenset({node.symbol})
        if isinstance(node, Union):
            return go(node.left) | go(node.right)
        if isinstance(node, Cat):
            left, right = go(node.left), go(node.right)
            return frozenset(u + v for u in left for v in right
                             if len(u) + len(v) <= max_len)
        if isinstance(node, Star):
            inner = frozenset(w for w in go(node.inner) if w)
            acc = {""}
            frontier = {""}
            while frontier:
                nxt = set()
                for u in frontier:
                    for v in inner:
                        w = u + v
                        if len(w) <= max_len and w not in acc:
                            nxt.add(w)
                acc |= nxt
                frontier = nxt
            return frozenset(acc)
        if isinstance(node, Not):
            return universe - go(node.inner)
        raise TypeError(node)

    return go(e)


def expr_strategy(symbols: str = "ab", max_leaves: int = 5) -> st.SearchStrategy[Expr]:
    leaves = st.sampled_from(
        [EMPTY, EPS] + [Atom(c) for c in symbols])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(Star, inner),
            st.builds(Not, inner),
            st.builds(Union, inner, inner),
            st.builds(Cat, inner, inner),
        ),
        max_leaves=max_leaves,
    )
