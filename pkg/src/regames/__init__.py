"""Size games on regular expressions: engine, solver, oracle and example languages."""

from .exprs import (
    EMPTY, EPS, Alphabet, Atom, Cat, Dialect, EmptySet, Epsilon, Expr, Not,
    Star, Union, dialect_of, matches, parse_expr, render_expr, separates,
    size, star_count,
)
from .game import (
    AtomMove, CatMove, DChoice, EmptyMove, GameRules, NegMove, Position,
    StarMove, UnionMove, apply_move, d_winning_by_chain_lemma,
    d_winning_by_lemma5, validate_move,
)
from .oracle import EnumSpec, crosscheck, enumerate_exprs, min_separating
from .solver import (
    FixedExpr, SolveResult, Solver, SolverLimits, engine_move_for_s,
    engine_reply_for_d, enumerate_s_moves,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Atom", "AtomMove", "Cat", "CatMove", "DChoice", "Dialect",
    "EMPTY", "EPS", "EmptyMove", "EmptySet", "EnumSpec", "Epsilon", "Expr",
    "FixedExpr", "GameRules", "NegMove", "Not", "Position", "SolveResult",
    "Solver", "SolverLimits", "Star", "StarMove", "Union", "UnionMove",
    "apply_move", "crosscheck", "d_winning_by_chain_lemma",
    "d_winning_by_lemma5", "dialect_of", "engine_move_for_s",
    "engine_reply_for_d", "enumerate_exprs", "enumerate_s_moves", "matches",
    "min_separating", "parse_expr", "render_expr", "separates", "size",
    "star_count", "validate_move",
]
