"""Kernel backend selection: compiled extension if available, pure Python otherwise.

The two hot kernels are span-table matching and the bottom-up separator
search.  Both exist twice with identical semantics: `_ops_cy` (Cython) and
`_ops_py` (plain Python).  Set REGAMES_BACKEND=pure|compiled to force one;
the default is the compiled kernel when it imported cleanly.
"""

from __future__ import annotations

import os
from typing import Protocol

from .exprs import Atom, Cat, EmptySet, Epsilon, Expr, Not, Star, Union

OP_EMPTY = 0
OP_EPS = 1
OP_ATOM = 2
OP_STAR = 3
OP_NOT = 4
OP_UNION = 5
OP_CAT = 6

# search_separator status codes
SEARCH_FOUND = 0
SEARCH_NONE = 1
SEARCH_LIMIT = 2

DIALECT_RE = 0
DIALECT_RESF = 1
DIALECT_GRE = 2


def encode_program(e: Expr) -> tuple[tuple[int, int], ...]:
    """Flatten an AST to the postfix opcode form the kernels evaluate."""
    out: list[tuple[int, int]] = []
    stack: list[tuple[Expr, bool]] = [(e, False)]
    while stack:
        node, emitted = stack.pop()
        if emitted:
            if isinstance(node, Union):
                out.append((OP_UNION, 0))
            elif isinstance(node, Cat):
                out.append((OP_CAT, 0))
            elif isinstance(node, Star):
                out.append((OP_STAR, 0))
            else:
                out.append((OP_NOT, 0))
            continue
        if isinstance(node, EmptySet):
            out.append((OP_EMPTY, 0))
        elif isinstance(node, Epsilon):
            out.append((OP_EPS, 0))
        elif isinstance(node, Atom):
            out.append((OP_ATOM, ord(node.symbol)))
        elif isinstance(node, (Union, Cat)):
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        elif isinstance(node, (Star, Not)):
            stack.append((node, True))
            stack.append((node.inner, False))
        else:
            raise TypeError(f"not an expression node: {node!r}")
    return tuple(out)


def decode_program(prog) -> Expr:
    """Inverse of encode_program; used to lift kernel witnesses back to ASTs."""
    stack: list[Expr] = []
    for op, arg in prog:
        if op == OP_EMPTY:
            stack.append(EmptySet())
        elif op == OP_EPS:
            stack.append(Epsilon())
        elif op == OP_ATOM:
            stack.append(Atom(chr(arg)))
        elif op == OP_STAR:
            stack.append(Star(stack.pop()))
        elif op == OP_NOT:
            stack.append(Not(stack.pop()))
        elif op == OP_UNION:
            right = stack.pop()
            stack.append(Union(stack.pop(), right))
        elif op == OP_CAT:
            right = stack.pop()
            stack.append(Cat(stack.pop(), right))
        else:
            raise ValueError(f"bad opcode {op}")
    if len(stack) != 1:
        raise ValueError("malformed program")
    return stack[0]


class Kernel(Protocol):
    NAME: str

    def match_word(self, prog, word: str) -> bool: ...

    def search_separator(
        self, tables, dialect: int, max_size: int, max_stars: int,
        pos_mask: int, neg_mask: int, max_entries: int,
    ) -> tuple[int, tuple | None, int]: ...


from . import _ops_py  # noqa: E402

_COMPILED = None
_COMPILED_ERROR: str | None = None
try:
    from . import _ops_cy as _COMPILED  # type: ignore[no-redef]
except ImportError as exc:  # pragma: no cover - depends on build environment
    _COMPILED_ERROR = str(exc)


def available() -> dict[str, object]:
    out: dict[str, object] = {"pure": _ops_py}
    if _COMPILED is not None:
        out["compiled"] = _COMPILED
    return out


def get() -> Kernel:
    """The active kernel, honoring REGAMES_BACKEND (auto|pure|compiled)."""
    choice = os.environ.get("REGAMES_BACKEND", "auto")
    if choice == "pure":
        return _ops_py
    if choice == "compiled":
        if _COMPILED is None:
            raise ImportError(
                f"compiled kernel requested but unavailable: {_COMPILED_ERROR}"
            )
        return _COMPILED
    if choice != "auto":
        raise ValueError(f"bad REGAMES_BACKEND value: {choice!r}")
    return _COMPILED if _COMPILED is not None else _ops_py
