"""Session HTTP service: a human plays either side of any dialect game.

Sessions are in-memory; an optional append-only event log per session makes
finished games replayable.  All rule decisions defer to the game engine and
solver; the service only sequences turns.  Mutations within one session are
serialized by a per-session lock, and distinct sessions proceed concurrently.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .exprs import (
    Cat, Expr, Not, Star, Union, dialect_of, parse_expr, render_expr,
    separates, size, star_count,
)
from .game import (
    DChoice, Position, SMove, Terminal, apply_move, validate_move,
)
from .solver import (
    EngineStrategyError, Solver, SolverLimitError, SolverLimits, move_from_expr,
)
from .wire import (
    WireError, choice_from_json, move_from_json, move_to_json,
    position_from_json, position_to_json,
)


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 violation: Optional[str] = None) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.violation = violation

    def body(self) -> dict[str, Any]:
        out = {"code": self.code, "message": self.message}
        if self.violation is not None:
            out["violation"] = self.violation
        return out


@dataclass
class Session:
    id: str
    human_role: str                 # "s" or "d"
    engine_mode: str                # "solver" or "expr"
    initial: Position
    position: Position
    strategy_expr: Optional[Expr]   # tracked subexpression in expr mode
    status: str = "ongoing"         # ongoing | won_by_s | won_by_d
    awaiting: Optional[str] = None  # human_move | human_choice | None
    pending_move: Optional[SMove] = None
    pending_children: Optional[tuple[Position, Position]] = None
    pending_exprs: Optional[tuple[Optional[Expr], Optional[Expr]]] = None
    history: list[dict] = field(default_factory=list)
    move_trace: list[str] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    solver: Solver = field(default_factory=lambda: Solver(SolverLimits()))


def _move_kind(m: SMove) -> str:
    return move_to_json(m)["type"]


def _strategy_children(e: Expr) -> tuple[Optional[Expr], Optional[Expr]]:
    if isinstance(e, (Union, Cat)):
        return (e.left, e.right)
    if isinstance(e, (Star, Not)):
        return (e.inner, None)
    return (None, None)


class GameHost:
    """Session store plus the turn-sequencing logic."""

    def __init__(self, log_dir: Optional[str] = None) -> None:
        self.sessions: dict[str, Session] = {}
        self.registry_lock = threading.Lock()
        self.log_dir = log_dir
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

    # -- logging ------------------------------------------------------------

    def _log(self, session: Session, record: dict) -> None:
        if not self.log_dir:
            return
        path = os.path.join(self.log_dir, f"{session.id}.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    # -- session lifecycle ----------------------------------------------------

    def create(self, body: dict) -> Session:
        try:
            position = position_from_json(body["position"])
        except (KeyError, WireError, ValueError) as exc:
            raise ServiceError(400, "invalid_position", str(exc))
        human_role = body.get("human_role", "d")
        if human_role not in ("s", "d"):
            raise ServiceError(400, "invalid_role",
                               f"human_role must be 's' or 'd', got {human_role!r}")
        engine = body.get("engine", {"mode": "solver"})
        mode = engine.get("mode", "solver")
        strategy_expr = None
        if mode == "expr":
            text = engine.get("expr", "")
            try:
                strategy_expr = parse_expr(text, position.alphabet)
            except ValueError as exc:
                raise ServiceError(400, "invalid_expression", str(exc))
            problems = []
            if not position.dialect.admits(dialect_of(strategy_expr)):
                problems.append(
                    f"expression is {dialect_of(strategy_expr).value}, game is "
                    f"{position.dialect.value}")
            if size(strategy_expr) > position.k:
                problems.append(
                    f"size {size(strategy_expr)} exceeds the budget {position.k}")
            if position.s is not None and star_count(strategy_expr) > position.s:
                problems.append(
                    f"{star_count(strategy_expr)} stars exceed the budget {position.s}")
            if not separates(strategy_expr, position.a_words, position.b_words):
                problems.append("expression does not separate A from B")
            if problems:
                raise ServiceError(400, "invalid_expression", "; ".join(problems))
        elif mode != "solver":
            raise ServiceError(400, "invalid_engine",
                               f"engine mode must be 'solver' or 'expr', got {mode!r}")

        session = Session(
            id=uuid.uuid4().hex[:12],
            human_role=human_role,
            engine_mode=mode,
            initial=position,
            position=position,
            strategy_expr=strategy_expr,
        )
        self._log(session, {"kind": "created",
                            "position": position_to_json(position),
                            "human_role": human_role, "engine": mode})
        self._refresh_terminal(session)
        if session.status == "ongoing" and session.human_role == "d":
            self._engine_take_turn(session)
        elif session.status == "ongoing":
            session.awaiting = "human_move"
        with self.registry_lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.registry_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", f"no session {session_id!r}")
        return session

    def delete(self, session_id: str) -> None:
        with self.registry_lock:
            if session_id not in self.sessions:
                raise ServiceError(404, "unknown_session", f"no session {session_id!r}")
            del self.sessions[session_id]

    # -- turn sequencing -------------------------------------------------------

    def _refresh_terminal(self, session: Session) -> None:
        if session.status == "ongoing" and session.pending_children is None \
                and session.position.k == 0:
            session.status = "won_by_d"
            session.awaiting = None

    def _record(self, session: Session, actor: str, kind: str, payload: dict) -> None:
        event = {"actor": actor, "kind": kind, **payload}
        session.history.append(event)
        self._log(session, event)

    def _apply_smove(self, session: Session, move: SMove, actor: str) -> None:
        position = session.position
        violation = validate_move(position, move)
        if violation is not None:
            raise ServiceError(422, "invalid_move", "move rejected", violation)
        outcome = apply_move(position, move)
        self._record(session, actor, "move", {"move": move_to_json(move)})
        session.move_trace.append(_move_kind(move))
        if isinstance(outcome, Terminal):
            session.status = "won_by_s" if outcome.winner == "S" else "won_by_d"
            session.awaiting = None
            session.pending_move = None
            session.pending_children = None
            return
        children = outcome.positions
        track = session.human_role == "d" and session.strategy_expr is not None
        subs = _strategy_children(session.strategy_expr) if track else (None, None)
        if len(children) == 1:
            session.position = children[0]
            session.strategy_expr = subs[0]
            self._refresh_terminal(session)
            return
        session.pending_move = move
        session.pending_children = (children[0], children[1])
        session.pending_exprs = subs

    def _apply_choice(self, session: Session, choice: DChoice, actor: str) -> None:
        if session.pending_children is None:
            raise ServiceError(409, "no_pending_move",
                               "there is no two-branch move awaiting a choice")
        self._record(session, actor, "choice", {"branch": choice.branch})
        session.position = session.pending_children[choice.branch - 1]
        if session.pending_exprs is not None:
            session.strategy_expr = session.pending_exprs[choice.branch - 1]
        session.pending_move = None
        session.pending_children = None
        session.pending_exprs = None
        self._refresh_terminal(session)

    def _engine_s_move(self, session: Session) -> SMove:
        try:
            if session.engine_mode == "expr" and session.strategy_expr is not None:
                return move_from_expr(session.position, session.strategy_expr)
            move = session.solver.best_move(session.position)
        except SolverLimitError as exc:
            raise ServiceError(503, "limit_exceeded", str(exc))
        except EngineStrategyError as exc:
            raise ServiceError(409, "no_winning_move", str(exc))
        if move is None:
            # S has no winning move; concede by naming the first alphabet
            # symbol, which ends the game in D's favor
            from .game import AtomMove

            return AtomMove(session.position.alphabet.symbols[0])
        return move

    def _engine_take_turn(self, session: Session) -> None:
        # advance until the human is needed or the game ends
        while session.status == "ongoing":
            if session.pending_children is not None:
                if session.human_role == "d":
                    session.awaiting = "human_choice"
                    return
                try:
                    choice = self._engine_choice(session)
                except SolverLimitError as exc:
                    raise ServiceError(503, "limit_exceeded", str(exc))
                self._apply_choice(session, choice, "engine")
                continue
            if session.human_role == "s":
                session.awaiting = "human_move"
                return
            move = self._engine_s_move(session)
            self._apply_smove(session, move, "engine")
        session.awaiting = None

    def _engine_choice(self, session: Session) -> DChoice:
        children = session.pending_children
        assert children is not None
        for i, child in enumerate(children, start=1):
            if session.solver.winner(child) == "D":
                return DChoice(i)
        return DChoice(1)

    # -- public actions ---------------------------------------------------------

    def submit_move(self, session_id: str, body: dict) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise ServiceError(409, "game_over", "the game has ended")
            if session.awaiting != "human_move" or session.human_role != "s":
                raise ServiceError(409, "not_your_turn", "no move is expected now")
            try:
                move = move_from_json(body)
            except WireError as exc:
                raise ServiceError(400, "bad_move_body", str(exc))
            self._apply_smove(session, move, "human")
            if session.status == "ongoing":
                self._engine_take_turn(session)
            return session

    def submit_choice(self, session_id: str, body: dict) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise ServiceError(409, "game_over", "the game has ended")
            if session.awaiting != "human_choice" or session.human_role != "d":
                raise ServiceError(409, "not_your_turn", "no choice is expected now")
            try:
                choice = choice_from_json(body)
            except WireError as exc:
                raise ServiceError(400, "bad_choice_body", str(exc))
            self._apply_choice(session, choice, "human")
            if session.status == "ongoing":
                self._engine_take_turn(session)
            return session

    def hint(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise ServiceError(409, "game_over", "the game has ended")
            try:
                if session.awaiting == "human_choice":
                    children = session.pending_children
                    winners = [session.solver.winner(c) for c in children]
                    branch = winners.index("D") + 1 if "D" in winners else 1
                    value = "S" if winners == ["S", "S"] else "D"
                    return {"kind": "choice", "branch": branch, "value": value}
                solve = session.solver
                value = solve.winner(session.position)
                if session.human_role == "s":
                    if value == "S":
                        move = solve.best_move(session.position)
                        return {"kind": "move", "move": move_to_json(move),
                                "value": value}
                    return {"kind": "move", "move": None, "value": value,
                            "note": "no winning move exists"}
                return {"kind": "wait", "value": value}
            except SolverLimitError as exc:
                raise ServiceError(503, "limit_exceeded", str(exc))

    def validate(self, session_id: str, body: dict) -> dict:
        """Dry-run validation used by the UI move builder."""
        session = self.get(session_id)
        with session.lock:
            try:
                move = move_from_json(body)
            except WireError as exc:
                return {"ok": False, "violation": str(exc)}
            violation = validate_move(session.position, move)
            return {"ok": violation is None, "violation": violation}

    def replay_state(self, session: Session) -> dict:
        """Recompute the current position purely from initial + history."""
        position = session.initial
        pending: Optional[tuple[Position, Position]] = None
        status = "won_by_d" if position.k == 0 else "ongoing"
        for event in session.history:
            if event["kind"] == "move":
                outcome = apply_move(position, move_from_json(event["move"]))
                if isinstance(outcome, Terminal):
                    status = "won_by_s" if outcome.winner == "S" else "won_by_d"
                elif len(outcome.positions) == 1:
                    position = outcome.positions[0]
                    if position.k == 0:
                        status = "won_by_d"
                else:
                    pending = (outcome.positions[0], outcome.positions[1])
            elif event["kind"] == "choice":
                position = pending[event["branch"] - 1]
                pending = None
                if position.k == 0:
                    status = "won_by_d"
        return {"position": position_to_json(position),
                "pending": [position_to_json(p) for p in pending] if pending else None,
                "status": status}


def session_to_json(session: Session) -> dict:
    out: dict[str, Any] = {
        "id": session.id,
        "human_role": session.human_role,
        "engine": {"mode": session.engine_mode},
        "status": session.status,
        "awaiting": session.awaiting,
        "initial_position": position_to_json(session.initial),
        "position": position_to_json(session.position),
        "history": session.history,
        "move_trace": list(session.move_trace),
    }
    if session.engine_mode == "expr" and session.strategy_expr is not None:
        out["engine"]["expr"] = render_expr(session.strategy_expr)
    if session.pending_children is not None:
        out["pending_move"] = move_to_json(session.pending_move)
        out["pending_children"] = [position_to_json(p)
                                   for p in session.pending_children]
    if session.status == "won_by_s":
        out["winner"] = "S"
    elif session.status == "won_by_d":
        out["winner"] = "D"
    return out


def create_app(log_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="regames", docs_url=None, redoc_url=None)
    host = GameHost(log_dir=log_dir)
    app.state.host = host

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.post("/sessions")
    def create_session(body: dict):
        session = host.create(body)
        return session_to_json(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_to_json(host.get(session_id))

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        host.delete(session_id)
        return {"deleted": session_id}

    @app.post("/sessions/{session_id}/moves")
    def post_move(session_id: str, body: dict):
        return session_to_json(host.submit_move(session_id, body))

    @app.post("/sessions/{session_id}/choice")
    def post_choice(session_id: str, body: dict):
        return session_to_json(host.submit_choice(session_id, body))

    @app.get("/sessions/{session_id}/hint")
    def get_hint(session_id: str):
        return host.hint(session_id)

    @app.post("/sessions/{session_id}/validate")
    def post_validate(session_id: str, body: dict):
        return host.validate(session_id, body)

    return app
