"""First-order logic over word models with < and one unary letter predicate.

Word models view a parenthesis word as a finite linear order where the
predicate holds exactly at the opening parentheses.  The builders construct
the defining formulas for the nested-set encoding languages of `langs`:
a level-0 span is a single "()" pair, and a level-(i+1) span is a bracketed
sequence of level-i member spans with no repeated member (up to level-i
equality).  Size is the plain node count of the fully expanded tree; the
derived helpers (marks, successor, bounded quantifiers, membership) are
macros expanded before counting, and the truth constant counts 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union as TyUnion


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Pred:
    var: str


@dataclass(frozen=True, slots=True)
class Less:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class EqVar:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class FONot:
    inner: "FOFormula"


@dataclass(frozen=True, slots=True)
class FOAnd:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True, slots=True)
class FOOr:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "FOFormula"
    right: "FOFormula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "FOFormula"


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "FOFormula"


FOFormula = TyUnion[Top, Pred, Less, EqVar, FONot, FOAnd, FOOr, Implies, Exists, ForAll]

_QUANT = (Exists, ForAll)
_BIN = (FOAnd, FOOr, Implies)


def conj(*parts: FOFormula) -> FOFormula:
    out = parts[0]
    for p in parts[1:]:
        out = FOAnd(out, p)
    return out


def free_vars(f: FOFormula) -> frozenset[str]:
    if isinstance(f, Top):
        return frozenset()
    if isinstance(f, Pred):
        return frozenset((f.var,))
    if isinstance(f, (Less, EqVar)):
        return frozenset((f.left, f.right))
    if isinstance(f, FONot):
        return free_vars(f.inner)
    if isinstance(f, _BIN):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def fo_size(f: FOFormula) -> int:
    if isinstance(f, (Top, Pred, Less, EqVar)):
        return 1
    if isinstance(f, FONot):
        return 1 + fo_size(f.inner)
    if isinstance(f, _BIN):
        return 1 + fo_size(f.left) + fo_size(f.right)
    return 1 + fo_size(f.body)


def render_fo(f: FOFormula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Pred):
        return f"P({f.var})"
    if isinstance(f, Less):
        return f"{f.left}<{f.right}"
    if isinstance(f, EqVar):
        return f"{f.left}={f.right}"
    if isinstance(f, FONot):
        return f"~{render_fo(f.inner)}" if isinstance(f.inner, (Top, Pred, Less, EqVar)) \
            else f"~({render_fo(f.inner)})"
    if isinstance(f, FOAnd):
        return f"({render_fo(f.left)} & {render_fo(f.right)})"
    if isinstance(f, FOOr):
        return f"({render_fo(f.left)} | {render_fo(f.right)})"
    if isinstance(f, Implies):
        return f"({render_fo(f.left)} -> {render_fo(f.right)})"
    if isinstance(f, Exists):
        return f"E{f.var}.({render_fo(f.body)})"
    return f"A{f.var}.({render_fo(f.body)})"


@dataclass(frozen=True, slots=True)
class WordModel:
    """Positions 0..length-1; `marked` holds the opening-parenthesis positions."""

    length: int
    marked: frozenset[int]

    def __post_init__(self) -> None:
        if any(not 0 <= p < self.length for p in self.marked):
            raise ValueError("marked positions outside the word")


def word_model(word: str) -> WordModel:
    return WordModel(len(word), frozenset(i for i, c in enumerate(word) if c == "("))


_MISS = object()


class _Compiled:
    """A closed formula compiled to nested closures, reusable across models.

    Quantified subformulas carry memo tables keyed by the values of their
    free variables; structurally shared subformulas compile once and share
    their table.  The word model lives in a mutable holder so one compile
    serves every word.
    """

    def __init__(self, root: FOFormula) -> None:
        if free_vars(root):
            raise ValueError(
                f"formula is not closed; free: {sorted(free_vars(root))}")
        self.holder: list = [0, frozenset()]
        self.memos: list[dict] = []
        self._fv: dict[int, frozenset[str]] = {}
        self.fn = self._compile(root, {})

    def _free(self, node) -> frozenset[str]:
        got = self._fv.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Top):
            out = frozenset()
        elif isinstance(node, Pred):
            out = frozenset((node.var,))
        elif isinstance(node, (Less, EqVar)):
            out = frozenset((node.left, node.right))
        elif isinstance(node, FONot):
            out = self._free(node.inner)
        elif isinstance(node, _BIN):
            out = self._free(node.left) | self._free(node.right)
        else:
            out = self._free(node.body) - {node.var}
        self._fv[id(node)] = out
        return out

    def _compile(self, node, seen: dict):
        got = seen.get(id(node))
        if got is not None:
            return got
        tp = type(node)
        holder = self.holder
        if tp is Top:
            fn = lambda env: True
        elif tp is Pred:
            var = node.var
            fn = lambda env: env[var] in holder[1]
        elif tp is Less:
            a, b = node.left, node.right
            fn = lambda env: env[a] < env[b]
        elif tp is EqVar:
            a, b = node.left, node.right
            fn = lambda env: env[a] == env[b]
        elif tp is FONot:
            g = self._compile(node.inner, seen)
            fn = lambda env: not g(env)
        elif tp is FOAnd:
            l = self._compile(node.left, seen)
            r = self._compile(node.right, seen)
            fn = lambda env: l(env) and r(env)
        elif tp is FOOr:
            l = self._compile(node.left, seen)
            r = self._compile(node.right, seen)
            fn = lambda env: l(env) or r(env)
        elif tp is Implies:
            l = self._compile(node.left, seen)
            r = self._compile(node.right, seen)
            fn = lambda env: (not l(env)) or r(env)
        elif tp is Exists or tp is ForAll:
            body = self._compile(node.body, seen)
            fvs = tuple(sorted(self._free(node)))
            memo: dict = {}
            self.memos.append(memo)
            var = node.var
            if tp is Exists:
                def fn(env, memo=memo, var=var, fvs=fvs, body=body, get=_MISS):
                    key = tuple(map(env.__getitem__, fvs))
                    out = memo.get(key, get)
                    if out is not get:
                        return out
                    out = False
                    for p in range(holder[0]):
                        env[var] = p
                        if body(env):
                            out = True
                            break
                    memo[key] = out
                    return out
            else:
                def fn(env, memo=memo, var=var, fvs=fvs, body=body, get=_MISS):
                    key = tuple(map(env.__getitem__, fvs))
                    out = memo.get(key, get)
                    if out is not get:
                        return out
                    out = True
                    for p in range(holder[0]):
                        env[var] = p
                        if not body(env):
                            out = False
                            break
                    memo[key] = out
                    return out
        else:
            raise TypeError(f"not a formula node: {node!r}")
        seen[id(node)] = fn
        return fn

    def evaluate(self, model: WordModel) -> bool:
        self.holder[0] = model.length
        self.holder[1] = model.marked
        for m in self.memos:
            m.clear()
        return self.fn({})


_compiled_cache: dict[int, tuple[FOFormula, _Compiled]] = {}


def _compiled_for(f: FOFormula) -> _Compiled:
    got = _compiled_cache.get(id(f))
    if got is not None and got[0] is f:
        return got[1]
    if len(_compiled_cache) > 64:
        _compiled_cache.clear()
    compiled = _Compiled(f)
    _compiled_cache[id(f)] = (f, compiled)
    return compiled


def fo_eval(f: FOFormula, model: WordModel) -> bool:
    """Satisfaction of a closed formula, by recursion over assignments.

    Quantified subformulas are memoized per assignment of their free
    variables, which keeps the deeply nested builder output tractable on
    desk-scale words.
    """
    return _compiled_for(f).evaluate(model)


# --- Builders ---------------------------------------------------------------
#
# Quantified variable names are deterministic functions of the nesting level
# (u3, v3, p2, ...), and each helper is cached on (level, argument names).
# Repeated mentions of the same subformula therefore share one object, which
# the evaluator's memo exploits; levels never reuse each other's names, so
# no binder can capture a free variable passed down from an outer level.


class _Builder:
    def __init__(self) -> None:
        self.cache: dict[tuple, FOFormula] = {}

    def memo(self, key: tuple, make) -> FOFormula:
        got = self.cache.get(key)
        if got is None:
            got = make()
            self.cache[key] = got
        return got

    def encodes_set(self, i: int, x1: str, x2: str) -> FOFormula:
        """The span (x1, x2) encodes a level-i set with no repeated member."""
        return self.memo(("set", i, x1, x2), lambda: self._encodes_set(i, x1, x2))

    def _encodes_set(self, i: int, x1: str, x2: str) -> FOFormula:
        if i == 0:
            z = "z0"
            succ = FOAnd(Less(x1, x2),
                         FONot(Exists(z, FOAnd(Less(x1, z), Less(z, x2)))))
            return conj(_left(x1), _right(x2), succ)
        u, v = f"u{i}", f"v{i}"
        covered = ForAll(u, Implies(
            _between(x1, u, x2),
            Exists(v, FOAnd(
                _between(x1, v, x2),
                FOOr(self.encodes_set(i - 1, u, v), self.encodes_set(i - 1, v, u)),
            )),
        ))
        a1, a2, b1, b2 = f"p{i}", f"q{i}", f"r{i}", f"s{i}"
        no_repeat = ForAll(a1, ForAll(a2, ForAll(b1, ForAll(b2, Implies(
            conj(
                self.element_of(i - 1, a1, a2, x1, x2),
                self.element_of(i - 1, b1, b2, x1, x2),
                FONot(EqVar(a1, b1)),
            ),
            FONot(self.sets_equal(i - 1, a1, a2, b1, b2)),
        )))))
        return conj(Less(x1, x2), _left(x1), _right(x2), covered, no_repeat)

    def element_of(self, i: int, x1: str, x2: str, y1: str, y2: str) -> FOFormula:
        """(x1, x2) encodes a level-i set that is a top-level member of (y1, y2)."""
        return self.memo(("in", i, x1, x2, y1, y2),
                         lambda: self._element_of(i, x1, x2, y1, y2))

    def _element_of(self, i, x1, x2, y1, y2) -> FOFormula:
        u1, u2 = f"w{i}", f"o{i}"
        return conj(
            Less(y1, x1), Less(x1, x2), Less(x2, y2),
            self.encodes_set(i, x1, x2),
            FONot(Exists(u1, Exists(u2, conj(
                Less(y1, u1), Less(u1, x1), Less(x2, u2), Less(u2, y2),
                self.encodes_set(i, u1, u2),
            )))),
        )

    def sets_equal(self, i: int, x1: str, x2: str, y1: str, y2: str) -> FOFormula:
        """Extensional equality of two level-i set encodings."""
        return self.memo(("eq", i, x1, x2, y1, y2),
                         lambda: self._sets_equal(i, x1, x2, y1, y2))

    def _sets_equal(self, i, x1, x2, y1, y2) -> FOFormula:
        if i == 0:
            return Top()
        a1, a2, b1, b2 = f"e{i}", f"f{i}", f"g{i}", f"h{i}"
        fwd = ForAll(a1, ForAll(a2, Implies(
            self.element_of(i - 1, a1, a2, x1, x2),
            Exists(b1, Exists(b2, FOAnd(
                self.element_of(i - 1, b1, b2, y1, y2),
                self.sets_equal(i - 1, a1, a2, b1, b2),
            ))),
        )))
        bwd = ForAll(b1, ForAll(b2, Implies(
            self.element_of(i - 1, b1, b2, y1, y2),
            Exists(a1, Exists(a2, FOAnd(
                self.element_of(i - 1, a1, a2, x1, x2),
                self.sets_equal(i - 1, a1, a2, b1, b2),
            ))),
        )))
        return FOAnd(fwd, bwd)


def _left(x: str) -> FOFormula:
    return Pred(x)


def _right(x: str) -> FOFormula:
    return FONot(Pred(x))


def _between(lo: str, v: str, hi: str) -> FOFormula:
    return FOAnd(Less(lo, v), Less(v, hi))


def _leq(x: str, y: str) -> FOFormula:
    return FOOr(Less(x, y), EqVar(x, y))


def build_phi(n: int) -> FOFormula:
    """Closed formula defining the level-n encoding language.

    It says the first and last positions of the word span a level-n set
    encoding with no repetition.
    """
    x1, x2 = "x1", "x2"
    guard = ForAll("z", FOAnd(_leq(x1, "z"), _leq("z", x2)))
    body = _Builder().encodes_set(n, x1, x2)
    return Exists(x1, Exists(x2, FOAnd(guard, body)))
