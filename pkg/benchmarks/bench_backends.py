#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Two workloads: span-table matching over a word batch, and the bounded
separator search that powers the lower-bound certifier.  Run from the
repository root:

    python benchmarks/bench_backends.py
"""

from __future__ import annotations

import itertools
import time

from regames import _ops_py, backend, langs, synth
from regames.exprs import Alphabet, Dialect, parse_expr

try:
    from regames import _ops_cy
except ImportError:
    _ops_cy = None


def bench_match(kernel, prog, words, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        hits = 0
        for w in words:
            if kernel.match_word(prog, w):
                hits += 1
        best = min(best, time.perf_counter() - t0)
    return best, hits

def bench_search(kernel, tables, pos_mask, neg_mask, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel.search_separator(tables, 1, 9, 1, pos_mask, neg_mask, 2_000_000)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ab = Alphabet("ab")
    kernels = [("pure", _ops_py)] + ([("compiled", _ops_cy)] if _ops_cy else [])
    print(f"active backend: {backend.get().NAME}")

    expr = langs.even_chain_expr(2)
    prog = backend.encode_program(expr)
    words = ["".join(t) for L in range(13) for t in itertools.product("ab", repeat=L)]
    print(f"\nmatch workload: {len(words)} words (length <= 12) against "
          f"a size-13 two-star expression")
    base = None
    for name, kernel in kernels:
        dt, hits = bench_match(kernel, prog, words)
        speed = f"  ({base / dt:4.1f}x)" if base else ""
        base = base or dt
        print(f"  {name:>8}: {dt * 1e3:8.1f} ms  ({hits} matches){speed}")

    a_words = langs.make_lnk(2, 2)
    b_words = ("ab", "ba", "aaaaabbbbb", "aab", "abab", "babab", "aabbab")
    tables = synth.build_tables(list(a_words) + list(b_words), ab)
    pos_mask = tables.mask_of(a_words)
    neg_mask = tables.mask_of(b_words)
    print(f"\nsearch workload: star-free-over-RE separator, size <= 9, "
          f"stars <= 1, {len(tables.factor_list)} factors")
    base = None
    for name, kernel in kernels:
        dt, (status, _prog, entries) = bench_search(
            kernel, tables.kernel_tables, pos_mask, neg_mask)
        verdict = {0: "found", 1: "none", 2: "limit"}[status]
        speed = f"  ({base / dt:4.1f}x)" if base else ""
        base = base or dt
        print(f"  {name:>8}: {dt * 1e3:8.1f} ms  ({verdict}, {entries} stored"
              f" candidates){speed}")


if __name__ == "__main__":
    main()
