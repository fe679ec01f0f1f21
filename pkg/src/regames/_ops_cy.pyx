# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: span-table matching and the bottom-up separator search.

Twin of `_ops_py`; the two must stay observably identical (same results,
same witness, same candidate order).  Behavior vectors are little-endian
bit strings over the factor table, stored as `bytes` so that they hash
cheaply in the dedup map.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int32_t, uint64_t
from libc.string cimport memset

NAME = "compiled"

DEF OP_EMPTY = 0
DEF OP_EPS = 1
DEF OP_ATOM = 2
DEF OP_STAR = 3
DEF OP_NOT = 4
DEF OP_UNION = 5
DEF OP_CAT = 6

DEF DIALECT_RE = 0
DEF DIALECT_RESF = 1

DEF ST_FOUND = 0
DEF ST_NONE = 1
DEF ST_LIMIT = 2


def match_word(prog, word):
    """True iff the full span (0, len(word)) is in the program's language."""
    cdef Py_ssize_t n = len(word)
    if n > 62:
        from . import _ops_py
        return _ops_py.match_word(prog, word)
    cdef int width = <int> n + 1
    cdef Py_ssize_t depth = len(prog) + 1
    cdef uint64_t *buf = <uint64_t *> PyMem_Malloc(depth * width * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError
    cdef int *codes = <int *> PyMem_Malloc((n + 1) * sizeof(int))
    if codes == NULL:
        PyMem_Free(buf)
        raise MemoryError
    cdef Py_ssize_t i
    for i in range(n):
        codes[i] = ord(word[i])

    cdef uint64_t all_cols = (<uint64_t> 1 << width) - 1
    cdef int sp = 0
    cdef int op, arg, m, j
    cdef uint64_t *a
    cdef uint64_t *b
    cdef uint64_t row, acc
    cdef bint ok = True
    try:
        for step in prog:
            op = step[0]
            arg = step[1]
            if op == OP_EMPTY:
                a = buf + sp * width
                for i in range(width):
                    a[i] = 0
                sp += 1
            elif op == OP_EPS:
                a = buf + sp * width
                for i in range(width):
                    a[i] = <uint64_t> 1 << i
                sp += 1
            elif op == OP_ATOM:
                a = buf + sp * width
                for i in range(width):
                    a[i] = 0
                for i in range(n):
                    if codes[i] == arg:
                        a[i] |= <uint64_t> 1 << (i + 1)
                sp += 1
            elif op == OP_STAR:
                a = buf + (sp - 1) * width
                for i in range(width - 1, -1, -1):
                    row = a[i] & ~(((<uint64_t> 1) << (i + 1)) - 1)
                    acc = <uint64_t> 1 << i
                    for m in range(i + 1, width):
                        if (row >> m) & 1:
                            acc |= a[m]
                    a[i] = acc
            elif op == OP_NOT:
                a = buf + (sp - 1) * width
                for i in range(width):
                    a[i] = (a[i] ^ all_cols) & (all_cols & ~(((<uint64_t> 1 << i)) - 1))
            elif op == OP_UNION:
                a = buf + (sp - 2) * width
                b = buf + (sp - 1) * width
                for i in range(width):
                    a[i] |= b[i]
                sp -= 1
            elif op == OP_CAT:
                a = buf + (sp - 2) * width
                b = buf + (sp - 1) * width
                for i in range(width):
                    row = a[i]
                    acc = 0
                    for m in range(i, width):
                        if (row >> m) & 1:
                            acc |= b[m]
                    a[i] = acc
                sp -= 1
            else:
                ok = False
                break
        if not ok or sp != 1:
            raise ValueError("malformed program")
        return bool((buf[0] >> n) & 1)
    finally:
        PyMem_Free(codes)
        PyMem_Free(buf)


# --- Separator search --------------------------------------------------------


cdef class _Tables:
    cdef int F, nbytes, eps_index, total, ne_total
    cdef int32_t *starts
    cdef int32_t *gs
    cdef int32_t *hs
    cdef int32_t *ne_starts
    cdef int32_t *ne_gs
    cdef int32_t *ne_hs

    def __cinit__(self, tables):
        factor_count, eps_index, _atoms, split_pairs, nonempty_pairs = tables
        self.F = factor_count
        self.nbytes = (factor_count + 7) >> 3
        self.eps_index = eps_index
        cdef int total = 0
        for pairs in split_pairs:
            total += len(pairs)
        self.total = total
        cdef int ne_total = 0
        for pairs in nonempty_pairs:
            ne_total += len(pairs)
        self.ne_total = ne_total
        self.starts = <int32_t *> PyMem_Malloc((self.F + 1) * sizeof(int32_t))
        self.gs = <int32_t *> PyMem_Malloc(max(total, 1) * sizeof(int32_t))
        self.hs = <int32_t *> PyMem_Malloc(max(total, 1) * sizeof(int32_t))
        self.ne_starts = <int32_t *> PyMem_Malloc((self.F + 1) * sizeof(int32_t))
        self.ne_gs = <int32_t *> PyMem_Malloc(max(ne_total, 1) * sizeof(int32_t))
        self.ne_hs = <int32_t *> PyMem_Malloc(max(ne_total, 1) * sizeof(int32_t))
        if (self.starts == NULL or self.gs == NULL or self.hs == NULL or
                self.ne_starts == NULL or self.ne_gs == NULL or self.ne_hs == NULL):
            raise MemoryError
        cdef int pos = 0, fi = 0
        for pairs in split_pairs:
            self.starts[fi] = pos
            for g, h in pairs:
                self.gs[pos] = g
                self.hs[pos] = h
                pos += 1
            fi += 1
        self.starts[fi] = pos
        pos = 0
        fi = 0
        for pairs in nonempty_pairs:
            self.ne_starts[fi] = pos
            for g, h in pairs:
                self.ne_gs[pos] = g
                self.ne_hs[pos] = h
                pos += 1
            fi += 1
        self.ne_starts[fi] = pos

    def __dealloc__(self):
        PyMem_Free(self.starts)
        PyMem_Free(self.gs)
        PyMem_Free(self.hs)
        PyMem_Free(self.ne_starts)
        PyMem_Free(self.ne_gs)
        PyMem_Free(self.ne_hs)


cdef inline bint _bit(const unsigned char *v, int i) noexcept:
    return (v[i >> 3] >> (i & 7)) & 1


cdef inline void _setbit(unsigned char *v, int i) noexcept:
    v[i >> 3] |= <unsigned char> (1 << (i & 7))


cdef bytes _vec_union(bytes x, bytes y, int nbytes):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, nbytes)
    cdef unsigned char *o = <unsigned char *> PyBytes_AS_STRING(out)
    cdef const unsigned char *a = <const unsigned char *> PyBytes_AS_STRING(x)
    cdef const unsigned char *b = <const unsigned char *> PyBytes_AS_STRING(y)
    cdef int i
    for i in range(nbytes):
        o[i] = a[i] | b[i]
    return out


cdef bytes _vec_not(bytes x, bytes full, int nbytes):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, nbytes)
    cdef unsigned char *o = <unsigned char *> PyBytes_AS_STRING(out)
    cdef const unsigned char *a = <const unsigned char *> PyBytes_AS_STRING(x)
    cdef const unsigned char *f = <const unsigned char *> PyBytes_AS_STRING(full)
    cdef int i
    for i in range(nbytes):
        o[i] = (a[i] ^ f[i]) & f[i]
    return out


cdef bytes _vec_cat(bytes x, bytes y, _Tables t):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, t.nbytes)
    cdef unsigned char *o = <unsigned char *> PyBytes_AS_STRING(out)
    cdef const unsigned char *a = <const unsigned char *> PyBytes_AS_STRING(x)
    cdef const unsigned char *b = <const unsigned char *> PyBytes_AS_STRING(y)
    memset(o, 0, t.nbytes)
    cdef int fi, p
    for fi in range(t.F):
        for p in range(t.starts[fi], t.starts[fi + 1]):
            if _bit(a, t.gs[p]) and _bit(b, t.hs[p]):
                _setbit(o, fi)
                break
    return out


cdef bytes _vec_star(bytes x, _Tables t):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, t.nbytes)
    cdef unsigned char *o = <unsigned char *> PyBytes_AS_STRING(out)
    cdef const unsigned char *a = <const unsigned char *> PyBytes_AS_STRING(x)
    memset(o, 0, t.nbytes)
    cdef int fi, p
    for fi in range(t.F):
        if _bit(a, fi):
            _setbit(o, fi)
            continue
        for p in range(t.ne_starts[fi], t.ne_starts[fi + 1]):
            if _bit(a, t.ne_gs[p]) and _bit(o, t.ne_hs[p]):
                _setbit(o, fi)
                break
    _setbit(o, t.eps_index)
    return out


cdef inline bint _accepts(bytes v, bytes pos, bytes neg, int nbytes) noexcept:
    cdef const unsigned char *a = <const unsigned char *> PyBytes_AS_STRING(v)
    cdef const unsigned char *p = <const unsigned char *> PyBytes_AS_STRING(pos)
    cdef const unsigned char *ng = <const unsigned char *> PyBytes_AS_STRING(neg)
    cdef int i
    for i in range(nbytes):
        if (a[i] & p[i]) != p[i]:
            return False
        if a[i] & ng[i]:
            return False
    return True


def vec_of_program(tables, prog):
    """Fold a postfix program over the factor-table vector ops (diagnostics)."""
    cdef _Tables t = _Tables(tables)
    cdef int nbytes = t.nbytes
    factor_count, eps_index, atoms, _sp, _np = tables
    # the shift must stay in Python-object arithmetic: factor counts beyond
    # the C int width would otherwise truncate the mask
    cdef bytes full = ((1 << factor_count) - 1).to_bytes(nbytes, "little")
    atom_vec = {code: (((1 << idx).to_bytes(nbytes, "little")) if idx >= 0
                       else bytes(nbytes)) for code, idx in atoms}
    stack = []
    for op, arg in prog:
        if op == OP_EMPTY:
            stack.append(bytes(nbytes))
        elif op == OP_EPS:
            stack.append((1 << eps_index).to_bytes(nbytes, "little"))
        elif op == OP_ATOM:
            stack.append(atom_vec[arg])
        elif op == OP_STAR:
            stack.append(_vec_star(stack.pop(), t))
        elif op == OP_NOT:
            stack.append(_vec_not(stack.pop(), full, nbytes))
        elif op == OP_UNION:
            b = stack.pop()
            stack.append(_vec_union(stack.pop(), b, nbytes))
        elif op == OP_CAT:
            b = stack.pop()
            stack.append(_vec_cat(stack.pop(), b, t))
        else:
            raise ValueError(f"bad opcode {op}")
    return int.from_bytes(stack[0], "little")


def search_separator(tables, int dialect, int max_size, int max_stars,
                     object pos_mask, object neg_mask, long long max_entries):
    """Smallest-size separator within bounds, or proof that none exists.

    Returns (status, postfix_program | None, entries_created).
    """
    cdef _Tables t = _Tables(tables)
    cdef int nbytes = t.nbytes
    factor_count, eps_index, atoms, _sp, _np = tables
    cdef bytes pos_b = int(pos_mask).to_bytes(nbytes, "little")
    cdef bytes neg_b = int(neg_mask).to_bytes(nbytes, "little")
    # Python-object shift: a C shift would truncate once factor_count
    # reaches the C int width
    cdef bytes full = ((1 << factor_count) - 1).to_bytes(nbytes, "little")

    vecs = []
    stars = []
    ops = []
    arg1 = []
    arg2 = []
    by_size = [[] for _ in range(max_size + 1)]
    best_stars = {}

    def emit(idx):
        prog = []
        stack = [idx]
        while stack:
            e = stack.pop()
            if e < 0:
                prog.append((ops[-e - 1], 0))
                continue
            op = ops[e]
            if op == OP_UNION or op == OP_CAT:
                stack.append(-e - 1)
                stack.append(arg2[e])
                stack.append(arg1[e])
            elif op == OP_STAR or op == OP_NOT:
                stack.append(-e - 1)
                stack.append(arg1[e])
            else:
                prog.append((op, arg1[e]))
        return tuple(prog)

    cdef long long limit = max_entries

    def consider(vec, int st, int op, int a1, int a2, int sz):
        # returns -1 while searching; a hit index otherwise; -2 on limit
        if _accepts(vec, pos_b, neg_b, nbytes):
            vecs.append(vec)
            stars.append(st)
            ops.append(op)
            arg1.append(a1)
            arg2.append(a2)
            return len(vecs) - 1
        prev = best_stars.get(vec)
        if prev is not None and prev <= st:
            return -1
        best_stars[vec] = st
        vecs.append(vec)
        stars.append(st)
        ops.append(op)
        arg1.append(a1)
        arg2.append(a2)
        by_size[sz].append(len(vecs) - 1)
        if len(vecs) > limit:
            return -2
        return -1

    cdef bytes zero = bytes(nbytes)
    cdef bytes epsv = (1 << eps_index).to_bytes(nbytes, "little")
    leaves = [(OP_EMPTY, 0, zero), (OP_EPS, 0, epsv)]
    for code, idx in atoms:
        leaves.append((OP_ATOM, code,
                       ((1 << idx).to_bytes(nbytes, "little")) if idx >= 0 else zero))

    cdef int n, i, j, hit, xs
    cdef Py_ssize_t apos, rpos
    if max_size >= 1:
        for op, arg, vec in leaves:
            hit = consider(vec, 0, <int> op, <int> arg, 0, 1)
            if hit >= 0:
                return (ST_FOUND, emit(hit), len(vecs))
            if hit == -2:
                return (ST_LIMIT, None, len(vecs))

    cdef list srcs, lefts, rights
    cdef bytes xv
    for n in range(2, max_size + 1):
        srcs = by_size[n - 1]
        for apos in range(len(srcs)):
            src = srcs[apos]
            if stars[src] + 1 <= max_stars:
                hit = consider(_vec_star(vecs[src], t), stars[src] + 1,
                               OP_STAR, src, 0, n)
                if hit >= 0:
                    return (ST_FOUND, emit(hit), len(vecs))
                if hit == -2:
                    return (ST_LIMIT, None, len(vecs))
        if dialect != DIALECT_RE:
            for apos in range(len(srcs)):
                src = srcs[apos]
                if dialect == DIALECT_RESF and stars[src] != 0:
                    continue
                hit = consider(_vec_not(vecs[src], full, nbytes), stars[src],
                               OP_NOT, src, 0, n)
                if hit >= 0:
                    return (ST_FOUND, emit(hit), len(vecs))
                if hit == -2:
                    return (ST_LIMIT, None, len(vecs))
        # union is commutative on behaviors: only size pairs i <= j,
        # and within equal sizes only ordered entry pairs
        for i in range(1, n - 1):
            j = n - 1 - i
            if i > j:
                break
            lefts = by_size[i]
            rights = by_size[j]
            for apos in range(len(lefts)):
                li = lefts[apos]
                xv = vecs[li]
                xs = stars[li]
                for rpos in range(apos if i == j else 0, len(rights)):
                    ri = rights[rpos]
                    if xs + stars[ri] > max_stars:
                        continue
                    hit = consider(_vec_union(xv, vecs[ri], nbytes),
                                   xs + stars[ri], OP_UNION, li, ri, n)
                    if hit >= 0:
                        return (ST_FOUND, emit(hit), len(vecs))
                    if hit == -2:
                        return (ST_LIMIT, None, len(vecs))
        for i in range(1, n - 1):
            j = n - 1 - i
            lefts = by_size[i]
            rights = by_size[j]
            for apos in range(len(lefts)):
                li = lefts[apos]
                xv = vecs[li]
                xs = stars[li]
                for rpos in range(len(rights)):
                    ri = rights[rpos]
                    if xs + stars[ri] > max_stars:
                        continue
                    hit = consider(_vec_cat(xv, vecs[ri], t),
                                   xs + stars[ri], OP_CAT, li, ri, n)
                    if hit >= 0:
                        return (ST_FOUND, emit(hit), len(vecs))
                    if hit == -2:
                        return (ST_LIMIT, None, len(vecs))

    return (ST_NONE, None, len(vecs))
