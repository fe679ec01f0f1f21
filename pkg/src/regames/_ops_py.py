"""Pure-Python kernel: span-table matching and the bottom-up separator search.

This is the fallback twin of the compiled kernel in `_ops_cy.pyx`; both
must stay observably identical (same results, same witness, same entry
order).  Span sets are packed into Python ints: for a word of length n the
span (i, j), 0 <= i <= j <= n, occupies bit i*(n+1)+j.
"""

from __future__ import annotations

NAME = "pure"

_OP_EMPTY, _OP_EPS, _OP_ATOM, _OP_STAR, _OP_NOT, _OP_UNION, _OP_CAT = range(7)

_DIALECT_RE = 0
_DIALECT_RESF = 1

_FOUND, _NONE, _LIMIT = 0, 1, 2


def _cat_spans(a: int, b: int, width: int) -> int:
    # (i, j) is in ab iff some m splits it with (i, m) in a and (m, j) in b.
    row_mask = (1 << width) - 1
    out = 0
    for i in range(width):
        row = (a >> (i * width)) & row_mask
        if not row:
            continue
        acc = 0
        while row:
            low = row & -row
            row ^= low
            acc |= (b >> ((low.bit_length() - 1) * width)) & row_mask
        out |= acc << (i * width)
    return out


def _star_spans(a: int, width: int) -> int:
    # Chains of nonempty a-spans; empty-piece steps never extend a chain.
    row_mask = (1 << width) - 1
    reach = [0] * width
    out = 0
    for i in range(width - 1, -1, -1):
        row = (a >> (i * width)) & row_mask & ~((1 << (i + 1)) - 1)
        acc = 1 << i
        while row:
            low = row & -row
            row ^= low
            acc |= reach[low.bit_length() - 1]
        reach[i] = acc
        out |= acc << (i * width)
    return out


def _span_table(prog, word: str) -> int:
    n = len(word)
    width = n + 1
    eps = 0
    for i in range(width):
        eps |= 1 << (i * width + i)
    full = eps
    for i in range(width):
        for j in range(i + 1, width):
            full |= 1 << (i * width + j)
    stack: list[int] = []
    for op, arg in prog:
        if op == _OP_EMPTY:
            stack.append(0)
        elif op == _OP_EPS:
            stack.append(eps)
        elif op == _OP_ATOM:
            ch = chr(arg)
            v = 0
            for i in range(n):
                if word[i] == ch:
                    v |= 1 << (i * width + i + 1)
            stack.append(v)
        elif op == _OP_STAR:
            stack.append(_star_spans(stack.pop(), width))
        elif op == _OP_NOT:
            stack.append(stack.pop() ^ full)
        elif op == _OP_UNION:
            b = stack.pop()
            stack[-1] |= b
        elif op == _OP_CAT:
            b = stack.pop()
            stack.append(_cat_spans(stack.pop(), b, width))
        else:
            raise ValueError(f"bad opcode {op}")
    if len(stack) != 1:
        raise ValueError("malformed program")
    return stack[0]


def match_word(prog, word: str) -> bool:
    """True iff the full span (0, len(word)) is in the program's language."""
    n = len(word)
    return bool((_span_table(prog, word) >> n) & 1)


# --- Separator search ------------------------------------------------------
#
# Candidates are explored in nondecreasing size; behaviorally equal
# candidates are kept only while they strictly improve the star count
# (a Pareto front over (size, stars) per behavior vector), which preserves
# bounded existence exactly.  Vectors are membership bitmasks over the
# factor table of the evaluation words.


class _Limit(Exception):
    pass


def vec_of_program(tables, prog) -> int:
    """Fold a postfix program over the factor-table vector ops (diagnostics)."""
    factor_count, eps_index, atoms, split_pairs, nonempty_pairs = tables
    full = (1 << factor_count) - 1
    atom_vec = {code: ((1 << idx) if idx >= 0 else 0) for code, idx in atoms}
    stack: list[int] = []
    for op, arg in prog:
        if op == _OP_EMPTY:
            stack.append(0)
        elif op == _OP_EPS:
            stack.append(1 << eps_index)
        elif op == _OP_ATOM:
            stack.append(atom_vec[arg])
        elif op == _OP_STAR:
            stack.append(_vec_star(stack.pop(), eps_index, nonempty_pairs))
        elif op == _OP_NOT:
            stack.append(stack.pop() ^ full)
        elif op == _OP_UNION:
            b = stack.pop()
            stack[-1] |= b
        elif op == _OP_CAT:
            b = stack.pop()
            stack.append(_vec_cat(stack.pop(), b, split_pairs))
        else:
            raise ValueError(f"bad opcode {op}")
    return stack[0]


def _vec_cat(x: int, y: int, split_pairs) -> int:
    out = 0
    bit = 1
    for pairs in split_pairs:
        for g, h in pairs:
            if (x >> g) & 1 and (y >> h) & 1:
                out |= bit
                break
        bit <<= 1
    return out


def _vec_star(x: int, eps_index: int, nonempty_pairs) -> int:
    # factors are length-sorted, so strict suffix pieces are already decided
    plus = 0
    for fi, pairs in enumerate(nonempty_pairs):
        bit = 1 << fi
        if x & bit:
            plus |= bit
        else:
            for g, h in pairs:
                if (x >> g) & 1 and (plus >> h) & 1:
                    plus |= bit
                    break
    return plus | (1 << eps_index)


def search_separator(tables, dialect, max_size, max_stars, pos_mask, neg_mask, max_entries):
    """Smallest-size separator within bounds, or proof that none exists.

    Returns (status, postfix_program | None, entries_created).
    """
    factor_count, eps_index, atoms, split_pairs, nonempty_pairs = tables
    full = (1 << factor_count) - 1

    vecs: list[int] = []
    stars: list[int] = []
    ops: list[int] = []
    arg1: list[int] = []
    arg2: list[int] = []
    by_size: list[list[int]] = [[] for _ in range(max_size + 1)]
    best_stars: dict[int, int] = {}

    def emit(idx: int):
        prog: list[tuple[int, int]] = []
        stack = [idx]
        while stack:
            e = stack.pop()
            if e < 0:
                prog.append((ops[-e - 1], 0))
                continue
            op = ops[e]
            if op in (_OP_UNION, _OP_CAT):
                stack.append(-e - 1)
                stack.append(arg2[e])
                stack.append(arg1[e])
            elif op in (_OP_STAR, _OP_NOT):
                stack.append(-e - 1)
                stack.append(arg1[e])
            else:
                prog.append((op, arg1[e]))
        return tuple(prog)

    def consider(vec, st, op, a1, a2, sz):
        if (vec & pos_mask) == pos_mask and (vec & neg_mask) == 0:
            vecs.append(vec)
            stars.append(st)
            ops.append(op)
            arg1.append(a1)
            arg2.append(a2)
            return len(vecs) - 1
        prev = best_stars.get(vec)
        if prev is not None and prev <= st:
            return None
        best_stars[vec] = st
        vecs.append(vec)
        stars.append(st)
        ops.append(op)
        arg1.append(a1)
        arg2.append(a2)
        by_size[sz].append(len(vecs) - 1)
        if len(vecs) > max_entries:
            raise _Limit
        return None

    atom_vec = {code: ((1 << idx) if idx >= 0 else 0) for code, idx in atoms}
    leaves = [(_OP_EMPTY, 0, 0), (_OP_EPS, 0, 1 << eps_index)]
    leaves += [(_OP_ATOM, code, atom_vec[code]) for code, _ in atoms]

    try:
        if max_size >= 1:
            for op, arg, vec in leaves:
                hit = consider(vec, 0, op, arg, 0, 1)
                if hit is not None:
                    return (_FOUND, emit(hit), len(vecs))
        for n in range(2, max_size + 1):
            for src in by_size[n - 1]:
                if stars[src] + 1 <= max_stars:
                    hit = consider(_vec_star(vecs[src], eps_index, nonempty_pairs),
                                   stars[src] + 1, _OP_STAR, src, 0, n)
                    if hit is not None:
                        return (_FOUND, emit(hit), len(vecs))
            if dialect != _DIALECT_RE:
                for src in by_size[n - 1]:
                    if dialect == _DIALECT_RESF and stars[src] != 0:
                        continue
                    hit = consider(vecs[src] ^ full, stars[src], _OP_NOT, src, 0, n)
                    if hit is not None:
                        return (_FOUND, emit(hit), len(vecs))
            # union is commutative on behaviors: only size pairs i <= j,
            # and within equal sizes only ordered entry pairs
            for i in range(1, n - 1):
                j = n - 1 - i
                if i > j:
                    break
                for apos, li in enumerate(by_size[i]):
                    xv = vecs[li]
                    xs = stars[li]
                    rlist = by_size[j][apos:] if i == j else by_size[j]
                    for ri in rlist:
                        if xs + stars[ri] > max_stars:
                            continue
                        hit = consider(xv | vecs[ri], xs + stars[ri], _OP_UNION, li, ri, n)
                        if hit is not None:
                            return (_FOUND, emit(hit), len(vecs))
            for i in range(1, n - 1):
                j = n - 1 - i
                for li in by_size[i]:
                    xv = vecs[li]
                    xs = stars[li]
                    for ri in by_size[j]:
                        if xs + stars[ri] > max_stars:
                            continue
                        hit = consider(_vec_cat(xv, vecs[ri], split_pairs),
                                       xs + stars[ri], _OP_CAT, li, ri, n)
                        if hit is not None:
                            return (_FOUND, emit(hit), len(vecs))
    except _Limit:
        return (_LIMIT, None, len(vecs))

    return (_NONE, None, len(vecs))
