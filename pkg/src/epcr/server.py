"""HTTP/JSON session API for playing against the engine.

A session pairs an uploaded graph with its solve and a live position; the
human plays one side, the engine answers with its synthesized strategy
(or its strongest fallback when its side is theoretically lost). Every
mutation goes through the rules engine, so the API cannot be talked into
an illegal move; violations come back as 422 with the violated condition.

Sessions are in-memory only and evicted after an idle timeout.
"""

from __future__ import annotations

import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .attractor import SolveResult, Winner, decide, position_state_index
from .errors import EpcrError, IllegalMoveError, ParseError
from .gamegraph import DEFAULT_STATE_BUDGET
from .graph import EdgePeriodicGraph, edge_present, parse_epg, period_summary
from .policies import (
    engine_cop_start,
    engine_robber_start,
    optimal_cop_policy,
    optimal_robber_policy,
)
from .simulate import Mover, Position, apply_move, legal_moves

SOLVER_POOL_SIZE = 4


class CreateSessionBody(BaseModel):
    epg: str
    human_role: Literal["cop", "robber"]


class VertexBody(BaseModel):
    vertex: int


@dataclass
class Session:
    id: str
    graph: EdgePeriodicGraph
    solve: SolveResult
    human_role: Mover
    phase: str  # awaiting-cop-start | awaiting-robber-start | playing | finished
    cop: int | None = None
    robber: int | None = None
    position: Position | None = None
    history: list[Position] = field(default_factory=list)
    outcome: dict | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)
    engine_policy: object = None

    @property
    def engine_role(self) -> Mover:
        return Mover.ROBBER if self.human_role is Mover.COP else Mover.COP


def _state_doc(session: Session) -> dict:
    g = session.graph
    doc: dict = {
        "session_id": session.id,
        "phase": session.phase,
        "human_role": session.human_role.value,
        "winner": session.solve.winner.value,
        "n": g.vertex_count,
        "edges": [[u, v] for u, v in g.edges],
        "cop": session.cop,
        "robber": session.robber,
        "mover": None,
        "time": 0,
        "present_edges": None,
        "in_attractor": None,
        "evasion_certified": False,
        "outcome": session.outcome,
    }
    p = session.position
    t = p.time if p is not None else 0
    doc["time"] = t
    doc["present_edges"] = [
        [u, v] for u, v in g.edges if edge_present(g, (u, v), t)
    ]
    if p is not None:
        doc["mover"] = p.mover.value
        in_attr = bool(
            session.solve.attractor.in_attractor[
                position_state_index(session.solve.game, p)
            ]
        )
        doc["in_attractor"] = in_attr
        doc["evasion_certified"] = (
            session.solve.winner is Winner.ROBBER
            and session.engine_role is Mover.ROBBER
            and not in_attr
        )
    return doc


def create_app(
    static_dir: str | None = None,
    session_ttl: float = 1800.0,
    max_states: int = DEFAULT_STATE_BUDGET,
) -> FastAPI:
    app = FastAPI(title="edge-periodic pursuit playground")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    solver_pool = ThreadPoolExecutor(max_workers=SOLVER_POOL_SIZE)

    def evict_idle() -> None:
        now = time.monotonic()
        with registry_lock:
            dead = [
                sid for sid, s in sessions.items() if now - s.last_access > session_ttl
            ]
            for sid in dead:
                del sessions[sid]

    def get_session(sid: str) -> Session:
        evict_idle()
        with registry_lock:
            session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        session.last_access = time.monotonic()
        return session

    def finish_if_captured(session: Session) -> bool:
        p = session.position
        if p is not None and p.is_capture:
            # a robber move already advanced the clock past the capture step
            step = p.time - 1 if p.mover is Mover.COP else p.time
            session.phase = "finished"
            session.outcome = {"result": "captured", "step": max(0, step)}
            return True
        return False

    def engine_move(session: Session) -> Position | None:
        """One engine reply when it is the engine's turn; returns the new position."""
        p = session.position
        if session.phase != "playing" or p is None or p.mover is not session.engine_role:
            return None
        dest = session.engine_policy(session.graph, p)
        session.position = apply_move(session.graph, p, dest)
        session.cop, session.robber = session.position.cop, session.position.robber
        session.history.append(session.position)
        finish_if_captured(session)
        return session.position

    @app.post("/session")
    def create_session(body: CreateSessionBody):
        evict_idle()
        try:
            g = parse_epg(body.epg)
        except ParseError as exc:
            raise HTTPException(status_code=422, detail={"message": str(exc), "condition": "bad-epg"})
        try:
            solve = solver_pool.submit(decide, g, max_states).result()
        except EpcrError as exc:
            raise HTTPException(status_code=422, detail={"message": str(exc), "condition": "budget"})
        human = Mover.COP if body.human_role == "cop" else Mover.ROBBER
        session = Session(
            id=uuid.uuid4().hex,
            graph=g,
            solve=solve,
            human_role=human,
            phase="awaiting-cop-start",
        )
        session.engine_policy = (
            optimal_robber_policy(solve)
            if session.engine_role is Mover.ROBBER
            else optimal_cop_policy(solve)
        )
        if session.engine_role is Mover.COP:
            # cop picks first; the engine commits immediately
            session.cop = engine_cop_start(solve)
            session.phase = "awaiting-robber-start"
            optimal_start = engine_robber_start(solve, session.cop)
        else:
            optimal_start = engine_cop_start(solve)
        with registry_lock:
            sessions[session.id] = session
        return {
            "session_id": session.id,
            "winner": solve.winner.value,
            "optimal_start": optimal_start,
            "state": _state_doc(session),
        }

    @app.post("/session/{sid}/start")
    def choose_start(sid: str, body: VertexBody):
        session = get_session(sid)
        with session.lock:
            expected = (
                "awaiting-cop-start"
                if session.human_role is Mover.COP
                else "awaiting-robber-start"
            )
            if session.phase != expected:
                raise HTTPException(
                    status_code=422,
                    detail={
                        "message": f"start not accepted in phase {session.phase!r} "
                        "(cop chooses first, robber second)",
                        "condition": "out-of-turn",
                    },
                )
            if not 0 <= body.vertex < session.graph.vertex_count:
                raise HTTPException(
                    status_code=422,
                    detail={
                        "message": f"vertex {body.vertex} outside 0..{session.graph.vertex_count - 1}",
                        "condition": "out-of-range",
                    },
                )
            if session.human_role is Mover.COP:
                session.cop = body.vertex
                session.robber = engine_robber_start(session.solve, session.cop)
            else:
                session.robber = body.vertex
            session.position = Position(session.cop, session.robber, Mover.COP, 0)
            session.history = [session.position]
            session.phase = "playing"
            if not finish_if_captured(session):
                engine_move(session)
            return _state_doc(session)

    @app.post("/session/{sid}/move")
    def make_move(sid: str, body: VertexBody):
        session = get_session(sid)
        with session.lock:
            p = session.position
            if session.phase != "playing" or p is None:
                raise HTTPException(
                    status_code=422,
                    detail={
                        "message": f"no move accepted in phase {session.phase!r}",
                        "condition": "out-of-turn",
                    },
                )
            if p.mover is not session.human_role:
                raise HTTPException(
                    status_code=422,
                    detail={"message": "not your turn", "condition": "out-of-turn"},
                )
            try:
                session.position = apply_move(session.graph, p, body.vertex)
            except IllegalMoveError as exc:
                raise HTTPException(
                    status_code=422,
                    detail={"message": str(exc), "condition": exc.condition},
                )
            session.cop, session.robber = session.position.cop, session.position.robber
            session.history.append(session.position)
            finish_if_captured(session)
            after_human = _state_doc(session)
            reply = engine_move(session)
            return {
                "state": after_human,
                "engine_reply": _state_doc(session) if reply is not None else None,
                "outcome": session.outcome,
            }

    @app.get("/session/{sid}")
    def get_state(sid: str):
        session = get_session(sid)
        with session.lock:
            return _state_doc(session)

    @app.get("/session/{sid}/hints")
    def get_hints(sid: str):
        session = get_session(sid)
        with session.lock:
            p = session.position
            if session.phase != "playing" or p is None:
                return {"moves": []}
            solve = session.solve
            hints = []
            for dest in sorted(legal_moves(session.graph, p)):
                nxt = apply_move(session.graph, p, dest)
                idx = position_state_index(solve.game, nxt)
                hints.append(
                    {
                        "vertex": dest,
                        "in_attractor": bool(solve.attractor.in_attractor[idx]),
                    }
                )
            return {"moves": hints}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="playground")
    return app
