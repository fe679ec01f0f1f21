"""Game positions, explicit move objects, validation and application.

A position holds the size budget k, a star budget s (absent in the plain
RE game), the word sets A and B and the alphabet.  S's six moves are
represented fully explicitly so that a human player's input can be checked
move part by move part; `validate_move` returns a human-readable violation
instead of raising.

One representational reduction is baked into the star move: instead of the
per-split choice function over the infinite split set, S supplies the
resulting word set B' directly.  B' is legal iff it contains a piece of
every decomposition of every B-word into nonempty pieces (splits with empty
pieces reduce to the decomposition of their nonempty pieces, so nothing is
lost), and every element of B' occurs as a factor of a B-word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union as TyUnion

from .exprs import Alphabet, Dialect, factors

S_PLAYER = "S"
D_PLAYER = "D"


def word_key(w: str) -> tuple[int, str]:
    return (len(w), w)


def canon_words(words) -> tuple[str, ...]:
    return tuple(sorted(set(words), key=word_key))


@dataclass(frozen=True, slots=True)
class GameRules:
    """Rule switches.  `resf_neg_costs_size` charges the complement's size
    unit on the RE-over-star-free negation move, giving the child (k-1, 0, B, A);
    switching it off uses (k, 0, B, A) instead (for experimentation; the game
    then needs cycle detection to stay finite)."""

    resf_neg_costs_size: bool = True


DEFAULT_RULES = GameRules()


@dataclass(frozen=True, slots=True)
class Position:
    dialect: Dialect
    k: int
    s: Optional[int]
    a_words: tuple[str, ...]
    b_words: tuple[str, ...]
    alphabet: Alphabet

    def __init__(self, dialect, k, s, a_words, b_words, alphabet) -> None:
        if k < 0:
            raise ValueError("size budget k must be nonnegative")
        if dialect is Dialect.RE:
            if s is not None:
                raise ValueError("the RE game has no star budget")
        else:
            if s is None:
                raise ValueError(f"the {dialect.value} game requires a star budget")
            if s < 0:
                raise ValueError("star budget s must be nonnegative")
            if k < s:
                raise ValueError(f"size budget must cover the star budget (k={k} < s={s})")
        a = canon_words(a_words)
        b = canon_words(b_words)
        for w in a + b:
            alphabet.validate_word(w)
        object.__setattr__(self, "dialect", dialect)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "a_words", a)
        object.__setattr__(self, "b_words", b)
        object.__setattr__(self, "alphabet", alphabet)

    def child(self, k, s, a_words, b_words) -> "Position":
        return Position(self.dialect, k, s, a_words, b_words, self.alphabet)

    def describe(self) -> str:
        def fmt(ws):
            return "{" + ", ".join(w if w else "ε" for w in ws) + "}"

        s_part = "" if self.s is None else f", s={self.s}"
        return f"(k={self.k}{s_part}, A={fmt(self.a_words)}, B={fmt(self.b_words)})"


# --- Moves ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AtomMove:
    """S names a single symbol, or the empty word ('')."""

    symbol: str


@dataclass(frozen=True, slots=True)
class EmptyMove:
    pass


@dataclass(frozen=True, slots=True)
class UnionMove:
    a1: tuple[str, ...]
    a2: tuple[str, ...]
    k1: int
    k2: int
    s1: Optional[int] = None
    s2: Optional[int] = None

    def __init__(self, a1, a2, k1, k2, s1=None, s2=None) -> None:
        object.__setattr__(self, "a1", canon_words(a1))
        object.__setattr__(self, "a2", canon_words(a2))
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)


@dataclass(frozen=True, slots=True)
class CatMove:
    """One 2-split per A-word (cut index), one side per 2-split per B-word.

    `b_sides[v]` has |v|+1 entries; entry i assigns the split (v[:i], v[i:])
    to side 1 (prefix joins B1) or side 2 (suffix joins B2).
    """

    a_cuts: tuple[tuple[str, int], ...]
    b_sides: tuple[tuple[str, tuple[int, ...]], ...]
    k1: int
    k2: int
    s1: Optional[int] = None
    s2: Optional[int] = None

    def __init__(self, a_cuts, b_sides, k1, k2, s1=None, s2=None) -> None:
        if isinstance(a_cuts, dict):
            a_cuts = a_cuts.items()
        if isinstance(b_sides, dict):
            b_sides = b_sides.items()
        object.__setattr__(self, "a_cuts",
                           tuple(sorted(((w, int(c)) for w, c in a_cuts),
                                        key=lambda t: word_key(t[0]))))
        object.__setattr__(self, "b_sides",
                           tuple(sorted(((w, tuple(int(x) for x in sides)) for w, sides in b_sides),
                                        key=lambda t: word_key(t[0]))))
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)


@dataclass(frozen=True, slots=True)
class StarMove:
    """Nonempty-piece decompositions for the A-words; explicit B' set.

    `a_cuts[w]` lists interior cut positions (strictly increasing, between 1
    and len(w)-1); the empty tuple keeps w in one piece.  A-words equal to
    the empty word are exempt and take no entry.
    """

    a_cuts: tuple[tuple[str, tuple[int, ...]], ...]
    b_prime: tuple[str, ...]

    def __init__(self, a_cuts, b_prime) -> None:
        if isinstance(a_cuts, dict):
            a_cuts = a_cuts.items()
        object.__setattr__(self, "a_cuts",
                           tuple(sorted(((w, tuple(int(c) for c in cuts)) for w, cuts in a_cuts),
                                        key=lambda t: word_key(t[0]))))
        object.__setattr__(self, "b_prime", canon_words(b_prime))


@dataclass(frozen=True, slots=True)
class NegMove:
    pass


SMove = TyUnion[AtomMove, EmptyMove, UnionMove, CatMove, StarMove, NegMove]


@dataclass(frozen=True, slots=True)
class DChoice:
    branch: int  # 1 or 2

    def __post_init__(self) -> None:
        if self.branch not in (1, 2):
            raise ValueError("branch must be 1 or 2")


# --- Outcomes ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Terminal:
    winner: str


@dataclass(frozen=True, slots=True)
class Children:
    positions: tuple[Position, ...]


MoveOutcome = TyUnion[Terminal, Children]


class IllegalMoveError(ValueError):
    def __init__(self, violation: str) -> None:
        super().__init__(violation)
        self.violation = violation


# --- Validation and application ---------------------------------------------


def _check_budgets(p: Position, k1, k2, s1, s2) -> Optional[str]:
    if k1 is None or k2 is None or k1 < 0 or k2 < 0:
        return "both size budgets must be nonnegative integers"
    if k1 + k2 + 1 != p.k:
        return f"size budgets must satisfy k1+k2+1=k ({k1}+{k2}+1 != {p.k})"
    if p.dialect is Dialect.RE:
        if s1 is not None or s2 is not None:
            return "the RE game has no star budgets"
        return None
    if s1 is None or s2 is None or s1 < 0 or s2 < 0:
        return "both star budgets must be nonnegative integers"
    if s1 + s2 != p.s:
        return f"star budgets must satisfy s1+s2=s ({s1}+{s2} != {p.s})"
    if k1 < s1 or k2 < s2:
        return "each child must keep its size budget at least its star budget"
    return None


def _uncomposable_outside(v: str, avoid: frozenset[str]) -> bool:
    """True iff v has a decomposition into nonempty pieces all avoiding `avoid`."""
    n = len(v)
    can = [False] * (n + 1)
    can[0] = True
    for j in range(1, n + 1):
        for i in range(j):
            if can[i] and v[i:j] not in avoid:
                can[j] = True
                break
    return can[n]


def validate_move(p: Position, m: SMove, rules: GameRules = DEFAULT_RULES) -> Optional[str]:
    """None when the move is legal at p, else a description of the violation."""
    if p.k < 1:
        return "the game is over: k=0 means D has already won"

    if isinstance(m, (AtomMove, EmptyMove)):
        if isinstance(m, AtomMove) and m.symbol != "" and m.symbol not in p.alphabet:
            return f"symbol {m.symbol!r} is not in the alphabet"
        return None

    if isinstance(m, UnionMove):
        a_set = set(p.a_words)
        if not set(m.a1) <= a_set or not set(m.a2) <= a_set:
            return "both chosen subsets must be subsets of A"
        if set(m.a1) | set(m.a2) != a_set:
            return "the chosen subsets must cover A"
        return _check_budgets(p, m.k1, m.k2, m.s1, m.s2)

    if isinstance(m, CatMove):
        err = _check_budgets(p, m.k1, m.k2, m.s1, m.s2)
        if err:
            return err
        cut_words = tuple(w for w, _ in m.a_cuts)
        if cut_words != p.a_words:
            return "a 2-split is required for every word of A, exactly once"
        for w, c in m.a_cuts:
            if not 0 <= c <= len(w):
                return f"cut {c} is outside {w!r}"
        side_words = tuple(w for w, _ in m.b_sides)
        if side_words != p.b_words:
            return "a side choice is required for every word of B, exactly once"
        for v, sides in m.b_sides:
            if len(sides) != len(v) + 1:
                return f"word {v!r} has {len(v) + 1} 2-splits, got {len(sides)} side choices"
            if any(x not in (1, 2) for x in sides):
                return "side choices must be 1 or 2"
        return None

    if isinstance(m, StarMove):
        if p.dialect is not Dialect.RE and p.s < 1:
            return "no star budget left"
        if "" in p.b_words:
            return "D wins on ε: the empty word is in B, and every starred language contains ε"
        needed = tuple(w for w in p.a_words if w)
        cut_words = tuple(w for w, _ in m.a_cuts)
        if cut_words != needed:
            return "a decomposition is required for every nonempty word of A, exactly once"
        for w, cuts in m.a_cuts:
            if any(not 1 <= c <= len(w) - 1 for c in cuts) or list(cuts) != sorted(set(cuts)):
                return f"cuts for {w!r} must be strictly increasing interior positions"
        b_factors = set()
        for v in p.b_words:
            b_factors |= factors(v)
        for u in m.b_prime:
            if u not in b_factors:
                return f"B' word {u!r} is not a factor of any B-word"
        avoid = frozenset(m.b_prime)
        for v in p.b_words:
            if _uncomposable_outside(v, avoid):
                return (f"B' misses a decomposition of {v!r}: it can be written as "
                        "nonempty pieces that all avoid B'")
        return None

    if isinstance(m, NegMove):
        if p.dialect is Dialect.RE:
            return "no ¬-move in the RE game"
        if p.dialect is Dialect.GRE and p.s > p.k - 1:
            return "complement leaves too little size budget for the star budget"
        return None

    return f"unknown move {m!r}"


def apply_move(p: Position, m: SMove, rules: GameRules = DEFAULT_RULES) -> MoveOutcome:
    """Apply a legal move; raises IllegalMoveError otherwise."""
    violation = validate_move(p, m, rules)
    if violation is not None:
        raise IllegalMoveError(violation)

    if isinstance(m, AtomMove):
        win = set(p.a_words) <= {m.symbol} and m.symbol not in p.b_words
        return Terminal(S_PLAYER if win else D_PLAYER)

    if isinstance(m, EmptyMove):
        return Terminal(S_PLAYER if not p.a_words else D_PLAYER)

    if isinstance(m, UnionMove):
        return Children((
            p.child(m.k1, m.s1, m.a1, p.b_words),
            p.child(m.k2, m.s2, m.a2, p.b_words),
        ))

    if isinstance(m, CatMove):
        a1 = [w[:c] for w, c in m.a_cuts]
        a2 = [w[c:] for w, c in m.a_cuts]
        b1 = [v[:i] for v, sides in m.b_sides for i, side in enumerate(sides) if side == 1]
        b2 = [v[i:] for v, sides in m.b_sides for i, side in enumerate(sides) if side == 2]
        return Children((
            p.child(m.k1, m.s1, a1, b1),
            p.child(m.k2, m.s2, a2, b2),
        ))

    if isinstance(m, StarMove):
        pieces = []
        for w, cuts in m.a_cuts:
            bounds = (0,) + tuple(cuts) + (len(w),)
            pieces.extend(w[i:j] for i, j in zip(bounds, bounds[1:]))
        s = None if p.dialect is Dialect.RE else p.s - 1
        return Children((p.child(p.k - 1, s, pieces, m.b_prime),))

    if isinstance(m, NegMove):
        if p.dialect is Dialect.GRE:
            return Children((p.child(p.k - 1, p.s, p.b_words, p.a_words),))
        k = p.k - 1 if rules.resf_neg_costs_size else p.k
        return Children((p.child(k, 0, p.b_words, p.a_words),))

    raise IllegalMoveError(f"unknown move {m!r}")


# --- D-win certificates -----------------------------------------------------


def d_winning_by_lemma5(p: Position) -> bool:
    """A shared word on both sides is a sound D-win certificate."""
    return bool(set(p.a_words) & set(p.b_words))


def runs(w: str) -> list[tuple[str, int]]:
    """Maximal same-symbol chains of w as (symbol, length) pairs."""
    out: list[tuple[str, int]] = []
    for ch in w:
        if out and out[-1][0] == ch:
            out[-1] = (ch, out[-1][1] + 1)
        else:
            out.append((ch, 1))
    return out


def _chain_pair(w: str, v: str, k: int) -> bool:
    rw, rv = runs(w), runs(v)
    if len(rw) != len(rv):
        return False
    differing = 0
    for (cw, lw), (cv, lv) in zip(rw, rv):
        if cw != cv:
            return False
        if lw != lv:
            if lw <= k or lv <= k:
                return False
            differing += 1
    return differing >= 1


def d_winning_by_chain_lemma(p: Position) -> bool:
    """Sound D-win certificate for star-budget-zero positions.

    True iff s=0 and some w in A, w' in B agree except on the lengths of one
    or more same-symbol chains, every differing chain being longer than k on
    both sides.  (With stars available the certificate is unsound, so it
    reports False whenever s is absent or nonzero.)
    """
    if p.s != 0:
        return False
    return any(_chain_pair(w, v, p.k) for w in p.a_words for v in p.b_words)


# --- Status -----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Ongoing:
    position: Position
    awaiting: str  # "S" or "D"


@dataclass(frozen=True, slots=True)
class WonByS:
    pass


@dataclass(frozen=True, slots=True)
class WonByD:
    pass


GameStatus = TyUnion[Ongoing, WonByS, WonByD]


def status_of(p: Position) -> GameStatus:
    if p.k == 0:
        return WonByD()
    return Ongoing(p, S_PLAYER)
