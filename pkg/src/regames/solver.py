"""Exact decision of game positions, witness extraction and engine strategies.

The solver does exhaustive game-tree search with a transposition table.  Its
move generator is complete up to dominance: moves whose children are losing
whenever a kept move's children are losing are skipped (disjoint union
covers, derived minimal cat sides, subset-minimal star B' sets, child size
budgets of at least 1).  A raw generator without these reductions exists for
equivalence testing on micro grids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .exprs import (
    EMPTY, EPS, Atom, Cat, Dialect, Expr, Not, Star, Union,
    compositions, dialect_of, factors, matches, separates, size, star_count,
)
from .game import (
    AtomMove, CatMove, Children, DChoice, DEFAULT_RULES, D_PLAYER, EmptyMove,
    GameRules, NegMove, Position, SMove, S_PLAYER, StarMove,
    Terminal, UnionMove, apply_move, d_winning_by_chain_lemma,
    d_winning_by_lemma5, validate_move, word_key,
)


class SolverLimitError(RuntimeError):
    """A configured resource limit was exceeded; never a game verdict."""


@dataclass(frozen=True)
class SolverLimits:
    max_positions: int = 5_000_000
    max_set_size: int = 16
    max_word_len: int = 24
    chain_prune: bool = False


@dataclass
class SolveStats:
    visited: int = 0
    memo_hits: int = 0
    max_depth: int = 0

    def as_dict(self) -> dict:
        return {"visited": self.visited, "memo_hits": self.memo_hits,
                "max_depth": self.max_depth}


@dataclass
class SolveResult:
    winner: str
    witness: Optional[Expr]
    stats: dict


def _budget_splits(p: Position) -> Iterator[tuple[int, int, Optional[int], Optional[int]]]:
    # child size budgets of 0 are immediate D wins, hence dominated
    for k1 in range(1, p.k - 1):
        k2 = p.k - 1 - k1
        if p.dialect is Dialect.RE:
            yield (k1, k2, None, None)
        else:
            for s1 in range(max(0, p.s - k2), min(p.s, k1) + 1):
                yield (k1, k2, s1, p.s - s1)


def _subsets(items: tuple) -> Iterator[tuple]:
    for mask in range(1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if mask >> i & 1)


def _minimal_hitting_sets(constraints: list[frozenset[str]]) -> list[tuple[str, ...]]:
    """All subset-minimal sets hitting every constraint, in canonical order."""
    universe = sorted(set().union(*constraints), key=word_key) if constraints else []
    found: list[frozenset[str]] = []

    def hits_all(sel: frozenset[str]) -> bool:
        return all(sel & c for c in constraints)

    # small universes only (desk scale): scan subsets by size
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            sel = frozenset(combo)
            if any(prev <= sel for prev in found):
                continue
            if hits_all(sel):
                found.append(sel)
    return [tuple(sorted(sel, key=word_key)) for sel in found]


def _star_bprime_sets(p: Position, reduced: bool) -> list[tuple[str, ...]]:
    constraints = [frozenset(c) for v in p.b_words for c in compositions(v)]
    if reduced:
        return _minimal_hitting_sets(constraints)
    # raw: every hitting subset of the nonempty B-word factors
    universe = sorted(
        {f for v in p.b_words for f in factors(v) if f}, key=word_key)
    out = []
    for sel in _subsets(tuple(universe)):
        fs = frozenset(sel)
        if all(fs & c for c in constraints):
            out.append(sel)
    return out


def _cat_moves(p: Position, budgets, reduced: bool) -> Iterator[CatMove]:
    cut_ranges = [range(len(w) + 1) for w in p.a_words]
    prefix_pool = sorted({v[:i] for v in p.b_words for i in range(len(v) + 1)},
                         key=word_key)
    for cuts in itertools.product(*cut_ranges):
        a_cuts = tuple(zip(p.a_words, cuts))
        if reduced:
            side_choices = []
            for b1 in _subsets(tuple(prefix_pool)):
                b1set = set(b1)
                side_choices.append(tuple(
                    (v, tuple(1 if v[:i] in b1set else 2 for i in range(len(v) + 1)))
                    for v in p.b_words))
        else:
            per_word = []
            for v in p.b_words:
                per_word.append([(v, sides) for sides in
                                 itertools.product((1, 2), repeat=len(v) + 1)])
            side_choices = [tuple(combo) for combo in itertools.product(*per_word)]
        for b_sides in side_choices:
            for k1, k2, s1, s2 in budgets:
                yield CatMove(a_cuts, b_sides, k1, k2, s1, s2)


def _star_moves(p: Position, reduced: bool) -> Iterator[StarMove]:
    if "" in p.b_words:
        return
    if p.dialect is not Dialect.RE and p.s < 1:
        return
    words = [w for w in p.a_words if w]
    comp_ranges = []
    for w in words:
        cuts_options = []
        for mask in range(1 << (len(w) - 1)):
            cuts_options.append(tuple(i for i in range(1, len(w)) if mask >> (i - 1) & 1))
        comp_ranges.append(cuts_options)
    bprimes = _star_bprime_sets(p, reduced)
    for cut_combo in itertools.product(*comp_ranges):
        a_cuts = tuple(zip(words, cut_combo))
        for b_prime in bprimes:
            yield StarMove(a_cuts, b_prime)


def enumerate_s_moves(p: Position, rules: GameRules = DEFAULT_RULES) -> Iterator[SMove]:
    """Legal S-moves, complete up to dominance, in solver order.

    Order: atom moves (every symbol, then ε), the empty-language move,
    unions, catenations, stars, complement.
    """
    yield from _enumerate(p, rules, reduced=True)


def enumerate_s_moves_raw(p: Position, rules: GameRules = DEFAULT_RULES) -> Iterator[SMove]:
    """Every legal move shape without dominance reductions (test aid).

    Still finite: the star move's split function is represented by its
    derived B' set, and cat side functions by explicit per-split choices.
    """
    yield from _enumerate(p, rules, reduced=False)


def _enumerate(p: Position, rules: GameRules, reduced: bool) -> Iterator[SMove]:
    if p.k < 1:
        return
    for a in p.alphabet:
        yield AtomMove(a)
    yield AtomMove("")
    yield EmptyMove()

    if reduced:
        budgets = list(_budget_splits(p))
    else:
        budgets = []
        for k1 in range(0, p.k):
            k2 = p.k - 1 - k1
            if p.dialect is Dialect.RE:
                budgets.append((k1, k2, None, None))
            else:
                for s1 in range(0, p.s + 1):
                    s2 = p.s - s1
                    if s1 <= k1 and s2 <= k2:
                        budgets.append((k1, k2, s1, s2))

    if budgets:
        if reduced:
            covers = [(a1, tuple(w for w in p.a_words if w not in set(a1)))
                      for a1 in _subsets(p.a_words)]
        else:
            covers = []
            for a1 in _subsets(p.a_words):
                rest = tuple(w for w in p.a_words if w not in set(a1))
                for extra in _subsets(a1):
                    covers.append((a1, tuple(sorted(set(rest) | set(extra), key=word_key))))
        for a1, a2 in covers:
            for k1, k2, s1, s2 in budgets:
                yield UnionMove(a1, a2, k1, k2, s1, s2)
        yield from _cat_moves(p, budgets, reduced)

    if reduced:
        if p.k >= 2:
            yield from _star_moves(p, reduced=True)
    else:
        yield from _star_moves(p, reduced=False)

    if p.dialect is not Dialect.RE:
        if validate_move(p, NegMove(), rules) is None and (not reduced or p.k >= 2):
            yield NegMove()


class FixedExpr:
    """Engine strategy that follows a concrete separating expression."""

    def __init__(self, expr: Expr) -> None:
        self.expr = expr


class EngineStrategyError(ValueError):
    pass


class Solver:
    """Decides positions exactly; caches final values in a transposition table.

    `move_enumerator` defaults to the dominance-reduced generator; passing
    `enumerate_s_moves_raw` reproduces the unreduced game for equivalence
    testing.
    """

    def __init__(self, limits: SolverLimits = SolverLimits(),
                 rules: GameRules = DEFAULT_RULES,
                 move_enumerator=enumerate_s_moves) -> None:
        self.limits = limits
        self.rules = rules
        self.moves = move_enumerator
        self._memo: dict[Position, tuple[str, Optional[SMove]]] = {}
        self.stats = SolveStats()

    # -- core search --------------------------------------------------------

    def _check_size(self, p: Position) -> None:
        if len(p.a_words) + len(p.b_words) > self.limits.max_set_size:
            raise SolverLimitError(
                f"position has {len(p.a_words) + len(p.b_words)} words; "
                f"limit is {self.limits.max_set_size}")
        for w in p.a_words + p.b_words:
            if len(w) > self.limits.max_word_len:
                raise SolverLimitError(
                    f"word of length {len(w)} exceeds limit {self.limits.max_word_len}")

    def _value(self, p: Position, depth: int, path: frozenset) -> tuple[str, Optional[SMove], bool]:
        """(winner, best move, tainted); tainted D verdicts depended on a
        cycle cut under the free-negation rule flag and are never cached."""
        cached = self._memo.get(p)
        if cached is not None:
            self.stats.memo_hits += 1
            return (cached[0], cached[1], False)
        self.stats.visited += 1
        if self.stats.visited > self.limits.max_positions:
            raise SolverLimitError(
                f"visited more than {self.limits.max_positions} positions")
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth

        winner, move, tainted = self._search(p, depth, path)
        if not tainted:
            self._memo[p] = (winner, move)
        return (winner, move, tainted)

    def _search(self, p: Position, depth, path) -> tuple[str, Optional[SMove], bool]:
        if p.k == 0:
            return (D_PLAYER, None, False)
        if d_winning_by_lemma5(p):
            return (D_PLAYER, None, False)
        if self.limits.chain_prune and d_winning_by_chain_lemma(p):
            return (D_PLAYER, None, False)

        track_cycles = not self.rules.resf_neg_costs_size
        if track_cycles:
            if p in path:
                # repeating a position gains S nothing; the line counts as a D win
                return (D_PLAYER, None, True)
            path = path | {p}

        tainted = False
        for move in self.moves(p, self.rules):
            outcome = apply_move(p, move, self.rules)
            if isinstance(outcome, Terminal):
                if outcome.winner == S_PLAYER:
                    return (S_PLAYER, move, False)
                continue
            all_s = True
            for child in outcome.positions:
                winner, _, child_tainted = self._value(child, depth + 1, path)
                if child_tainted:
                    tainted = True
                if winner != S_PLAYER:
                    all_s = False
                    break
            if all_s:
                # a win never rests on a cycle cut: every child is an S win
                return (S_PLAYER, move, False)
        return (D_PLAYER, None, tainted)

    def winner(self, p: Position) -> str:
        self._check_size(p)
        return self._value(p, 0, frozenset())[0]

    def best_move(self, p: Position) -> Optional[SMove]:
        self._check_size(p)
        winner, move, _ = self._value(p, 0, frozenset())
        return move if winner == S_PLAYER else None

    def solve(self, p: Position) -> SolveResult:
        """Winner plus, for S wins, a separating expression read off the strategy."""
        self._check_size(p)
        winner, _, _ = self._value(p, 0, frozenset())
        witness = self._witness(p) if winner == S_PLAYER else None
        return SolveResult(winner, witness, self.stats.as_dict())

    # -- witness reconstruction ----------------------------------------------

    def _witness(self, p: Position) -> Expr:
        winner, move, _ = self._value(p, 0, frozenset())
        if winner != S_PLAYER or move is None:
            raise ValueError("witness requested for a position S does not win")
        if isinstance(move, AtomMove):
            return EPS if move.symbol == "" else Atom(move.symbol)
        if isinstance(move, EmptyMove):
            return EMPTY
        outcome = apply_move(p, move, self.rules)
        assert isinstance(outcome, Children)
        subs = [self._witness(child) for child in outcome.positions]
        if isinstance(move, UnionMove):
            return Union(subs[0], subs[1])
        if isinstance(move, CatMove):
            return Cat(subs[0], subs[1])
        if isinstance(move, StarMove):
            return Star(subs[0])
        return Not(subs[0])


# --- Engine strategies -------------------------------------------------------


def engine_reply_for_d(p: Position, m: SMove, solver: Solver,
                       rules: GameRules = DEFAULT_RULES) -> DChoice:
    """Pick a branch D wins if one exists, else branch 1."""
    outcome = apply_move(p, m, rules)
    if not isinstance(outcome, Children) or len(outcome.positions) != 2:
        raise ValueError("branch choice only follows union or cat moves")
    for i, child in enumerate(outcome.positions, start=1):
        if solver.winner(child) == D_PLAYER:
            return DChoice(i)
    return DChoice(1)


def _binary_budgets(p: Position, left: Expr) -> tuple[int, int, Optional[int], Optional[int]]:
    k1 = size(left)
    k2 = p.k - k1 - 1
    if p.dialect is Dialect.RE:
        return (k1, k2, None, None)
    st1 = star_count(left)
    s1 = max(st1, p.s - k2)
    s2 = p.s - s1
    if s1 > k1 or s2 > k2 or s2 < 0:
        raise EngineStrategyError(
            "no legal budget split follows this expression at this position")
    return (k1, k2, s1, s2)


def _first_composition(w: str, piece_ok) -> tuple[int, ...]:
    n = len(w)
    prev = [-1] * (n + 1)
    reach = [False] * (n + 1)
    reach[0] = True
    for j in range(1, n + 1):
        for i in range(j):
            if reach[i] and piece_ok(w[i:j]):
                reach[j] = True
                prev[j] = i
                break
    if not reach[n]:
        raise EngineStrategyError(f"no decomposition of {w!r} into matching pieces")
    cuts = []
    j = n
    while j > 0:
        cuts.append(prev[j])
        j = prev[j]
    cuts.reverse()
    return tuple(c for c in cuts if c != 0)


def move_from_expr(p: Position, e: Expr) -> SMove:
    """The move a separating expression's outermost operator induces at p."""
    if isinstance(e, (Atom,)):
        return AtomMove(e.symbol)
    if e == EPS:
        return AtomMove("")
    if e == EMPTY:
        return EmptyMove()
    if isinstance(e, Union):
        k1, k2, s1, s2 = _binary_budgets(p, e.left)
        a1 = [w for w in p.a_words if matches(e.left, w)]
        a2 = [w for w in p.a_words if matches(e.right, w)]
        return UnionMove(a1, a2, k1, k2, s1, s2)
    if isinstance(e, Cat):
        k1, k2, s1, s2 = _binary_budgets(p, e.left)
        a_cuts = []
        for w in p.a_words:
            for cut in range(len(w) + 1):
                if matches(e.left, w[:cut]) and matches(e.right, w[cut:]):
                    a_cuts.append((w, cut))
                    break
            else:
                raise EngineStrategyError(f"expression does not cover A-word {w!r}")
        b_sides = []
        for v in p.b_words:
            sides = tuple(1 if not matches(e.left, v[:i]) else 2
                          for i in range(len(v) + 1))
            b_sides.append((v, sides))
        return CatMove(a_cuts, b_sides, k1, k2, s1, s2)
    if isinstance(e, Star):
        a_cuts = [(w, _first_composition(w, lambda u: matches(e.inner, u)))
                  for w in p.a_words if w]
        b_prime = sorted(
            {f for v in p.b_words for f in factors(v)
             if f and not matches(e.inner, f)}, key=word_key)
        return StarMove(a_cuts, b_prime)
    if isinstance(e, Not):
        return NegMove()
    raise TypeError(f"not an expression node: {e!r}")


def engine_move_for_s(p: Position, strategy, rules: GameRules = DEFAULT_RULES) -> SMove:
    """S's move: replay the solver's best move, or follow a fixed expression.

    A fixed expression that does not separate A from B within the budgets is
    reported by falling back to the solver (and raising if even the solver
    finds no winning move).
    """
    if isinstance(strategy, FixedExpr):
        e = strategy.expr
        in_budget = size(e) <= p.k and (p.s is None or star_count(e) <= p.s)
        if in_budget and p.dialect.admits(dialect_of(e)) \
                and separates(e, p.a_words, p.b_words):
            return move_from_expr(p, e)
        strategy = Solver(rules=rules)
    if isinstance(strategy, Solver):
        move = strategy.best_move(p)
        if move is None:
            raise EngineStrategyError("S has no winning move from this position")
        return move
    raise TypeError("strategy must be a Solver or a FixedExpr")
