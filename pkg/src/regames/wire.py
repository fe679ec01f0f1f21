"""JSON wire forms for positions and moves (service bodies, CLI files, fixtures).

Words travel as plain strings with "" denoting the empty word.  Moves are a
tagged union keyed on "type" matching the engine's move objects one to one.
"""

from __future__ import annotations

from typing import Any

from .exprs import Alphabet, Dialect
from .game import (
    AtomMove, CatMove, DChoice, EmptyMove, NegMove, Position, SMove,
    StarMove, UnionMove,
)


class WireError(ValueError):
    pass


def position_to_json(p: Position) -> dict[str, Any]:
    out: dict[str, Any] = {
        "dialect": p.dialect.value,
        "k": p.k,
        "alphabet": list(p.alphabet.symbols),
        "A": list(p.a_words),
        "B": list(p.b_words),
    }
    if p.s is not None:
        out["s"] = p.s
    return out


def position_from_json(body: dict[str, Any]) -> Position:
    try:
        dialect = Dialect(body["dialect"])
        alphabet = Alphabet(body["alphabet"])
        s = body.get("s")
        return Position(dialect, int(body["k"]), s if s is None else int(s),
                        body.get("A", []), body.get("B", []), alphabet)
    except WireError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise WireError(f"bad position: {exc}") from exc


def move_to_json(m: SMove) -> dict[str, Any]:
    if isinstance(m, AtomMove):
        return {"type": "atom", "symbol": m.symbol}
    if isinstance(m, EmptyMove):
        return {"type": "empty"}
    if isinstance(m, UnionMove):
        return {"type": "union", "a1": list(m.a1), "a2": list(m.a2),
                "k1": m.k1, "k2": m.k2, "s1": m.s1, "s2": m.s2}
    if isinstance(m, CatMove):
        return {"type": "cat",
                "a_cuts": {w: c for w, c in m.a_cuts},
                "b_sides": {w: list(sides) for w, sides in m.b_sides},
                "k1": m.k1, "k2": m.k2, "s1": m.s1, "s2": m.s2}
    if isinstance(m, StarMove):
        return {"type": "star",
                "a_cuts": {w: list(cuts) for w, cuts in m.a_cuts},
                "b_prime": list(m.b_prime)}
    if isinstance(m, NegMove):
        return {"type": "neg"}
    raise WireError(f"not a move: {m!r}")


def _budgets(body: dict[str, Any]) -> tuple[int, int, int | None, int | None]:
    try:
        k1, k2 = int(body["k1"]), int(body["k2"])
    except (KeyError, TypeError, ValueError) as exc:
        raise WireError(f"bad move budgets: {exc}") from exc
    s1, s2 = body.get("s1"), body.get("s2")
    return (k1, k2,
            s1 if s1 is None else int(s1),
            s2 if s2 is None else int(s2))


def move_from_json(body: dict[str, Any]) -> SMove:
    kind = body.get("type")
    try:
        if kind == "atom":
            return AtomMove(str(body.get("symbol", "")))
        if kind == "empty":
            return EmptyMove()
        if kind == "union":
            k1, k2, s1, s2 = _budgets(body)
            return UnionMove(body.get("a1", []), body.get("a2", []), k1, k2, s1, s2)
        if kind == "cat":
            k1, k2, s1, s2 = _budgets(body)
            return CatMove({w: int(c) for w, c in body.get("a_cuts", {}).items()},
                           {w: [int(x) for x in sides]
                            for w, sides in body.get("b_sides", {}).items()},
                           k1, k2, s1, s2)
        if kind == "star":
            return StarMove({w: [int(c) for c in cuts]
                             for w, cuts in body.get("a_cuts", {}).items()},
                            body.get("b_prime", []))
        if kind == "neg":
            return NegMove()
    except WireError:
        raise
    except (TypeError, ValueError, AttributeError) as exc:
        raise WireError(f"bad move body: {exc}") from exc
    raise WireError(f"unknown move type: {kind!r}")


def choice_from_json(body: dict[str, Any]) -> DChoice:
    try:
        return DChoice(int(body["branch"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise WireError(f"bad choice: {exc}") from exc
