"""Fast separator synthesis over finite word sets.

Candidate expressions are compared by their behavior on every factor of the
evaluation words (membership of a word depends only on its factors), so the
search space collapses under observational equivalence.  The search is exact
for bounded existence and returns a smallest separator, but unlike
`oracle.min_separating` it does not promise the canonically first witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import backend
from .exprs import Alphabet, Dialect, Expr, factors

_DIALECT_CODE = {Dialect.RE: 0, Dialect.RESF: 1, Dialect.GRE: 2}


class SearchLimitError(RuntimeError):
    """The entry budget ran out before the bounded search completed."""


@dataclass(frozen=True)
class FactorTables:
    """Factor universe of a word set plus precomputed split indices."""

    factor_list: tuple[str, ...]
    index: dict[str, int]
    kernel_tables: tuple

    @property
    def full_mask(self) -> int:
        return (1 << len(self.factor_list)) - 1

    def mask_of(self, words) -> int:
        out = 0
        for w in words:
            out |= 1 << self.index[w]
        return out


def build_tables(words, alphabet: Alphabet) -> FactorTables:
    universe: set[str] = {""}
    for w in words:
        universe |= factors(w)
    factor_list = tuple(sorted(universe, key=lambda f: (len(f), f)))
    index = {f: i for i, f in enumerate(factor_list)}
    split_pairs = []
    nonempty_pairs = []
    for f in factor_list:
        pairs = []
        inner = []
        for cut in range(len(f) + 1):
            g, h = f[:cut], f[cut:]
            pair = (index[g], index[h])
            pairs.append(pair)
            if g and h:
                inner.append(pair)
        split_pairs.append(tuple(pairs))
        nonempty_pairs.append(tuple(inner))
    atoms = tuple((ord(ch), index.get(ch, -1)) for ch in alphabet)
    kernel_tables = (len(factor_list), index[""], atoms,
                     tuple(split_pairs), tuple(nonempty_pairs))
    return FactorTables(factor_list, index, kernel_tables)


def behavior_of(e: Expr, tables: FactorTables) -> int:
    """Membership bitmask of e over the factor table (test/cross-check aid)."""
    kern = backend.get()
    prog = backend.encode_program(e)
    out = 0
    for i, f in enumerate(tables.factor_list):
        if kern.match_word(prog, f):
            out |= 1 << i
    return out


def find_separator(
    a_words,
    b_words,
    alphabet: Alphabet,
    dialect: Dialect,
    max_size: int,
    max_stars: int | None = None,
    max_entries: int = 2_000_000,
) -> Expr | None:
    """A smallest-size separator of A from B within the bounds, else None.

    `max_stars=None` leaves the star count unconstrained (it is then only
    limited by the size bound).  Raises SearchLimitError when the candidate
    store exceeds `max_entries` before the bounds are exhausted; that is a
    resource failure, never a verdict.
    """
    a_words = sorted(set(a_words), key=lambda w: (len(w), w))
    b_words = sorted(set(b_words), key=lambda w: (len(w), w))
    overlap = set(a_words) & set(b_words)
    if overlap:
        return None
    tables = build_tables(list(a_words) + list(b_words), alphabet)
    pos_mask = tables.mask_of(a_words)
    neg_mask = tables.mask_of(b_words)
    stars_cap = max_size if max_stars is None else max_stars
    status, prog, _ = backend.get().search_separator(
        tables.kernel_tables, _DIALECT_CODE[dialect], max_size, stars_cap,
        pos_mask, neg_mask, max_entries,
    )
    if status == backend.SEARCH_LIMIT:
        raise SearchLimitError(
            f"separator search exceeded {max_entries} stored candidates"
        )
    if status == backend.SEARCH_NONE:
        return None
    return backend.decode_program(prog)
