"""JSON-over-HTTP session service for interactive Smith-chart matching.

A session holds a load profile, a reference impedance, a design frequency,
and a stack of matching elements. Every mutation returns the full state
(current gamma, per-element chart arcs, synthesis suggestions) so clients
never do RF arithmetic themselves. Mutations on one session are serialized
by a per-session lock; sessions are independent and evicted after a TTL.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .discrete import CandidateCapError, optimize_discrete, report_to_dict
from .ladder import (
    ConstantLoad,
    DEFAULT_SWEEP_POINTS,
    DEFAULT_SWEEP_START_HZ,
    DEFAULT_SWEEP_STOP_HZ,
    LadderElement,
    MatchingNetwork,
    MeasuredLoad,
    ResonatorLoad,
    element_from_dict,
    element_to_dict,
    input_impedance,
    sweep_s11,
    sweep_to_dict,
)
from .rfcore import (
    Frequency,
    Impedance,
    ReferenceImpedance,
    reflection_coefficient,
    s11_db_floored,
)
from .synth import ReactiveLoadError, l_match_solutions, smith_arc, solution_to_dict
from .touchstone import TouchstoneError, parse_touchstone

MAX_S1P_BYTES = 1 << 20
DEFAULT_TTL_SECONDS = 24 * 3600
ARC_STEPS = 64


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, line: int | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.line = line

    def body(self) -> dict:
        err: dict = {"code": self.code, "message": self.message}
        if self.line is not None:
            err["line"] = self.line
        return {"error": err}


@dataclass
class Session:
    id: str
    z0: float
    f0: float
    load: ConstantLoad | ResonatorLoad | MeasuredLoad
    elements: tuple[LadderElement, ...] = ()
    created: str = ""
    updated: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    touched: float = field(default_factory=time.monotonic, repr=False)


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _parse_load(spec: dict):
    kind = spec.get("type")
    if kind == "constant":
        try:
            return ConstantLoad(Impedance(float(spec["resistance"]), float(spec["reactance"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "bad_load", f"invalid constant load: {exc}") from exc
    if kind == "resonator":
        try:
            return ResonatorLoad(
                float(spec["r_series_ohms"]), float(spec["l_henries"]), float(spec["c_farads"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "bad_load", f"invalid resonator load: {exc}") from exc
    if kind == "s1p":
        content = spec.get("content")
        if not isinstance(content, str):
            raise ApiError(400, "bad_load", "s1p load needs a text 'content' field")
        if len(content.encode("utf-8", errors="ignore")) > MAX_S1P_BYTES:
            raise ApiError(413, "upload_too_large", "s1p upload exceeds 1 MiB")
        try:
            return MeasuredLoad(parse_touchstone(content))
        except TouchstoneError as exc:
            raise ApiError(400, "bad_s1p", str(exc), line=exc.line) from exc
    raise ApiError(400, "bad_load", f"unknown load type {kind!r}")


def _load_to_dict(load) -> dict:
    if isinstance(load, ConstantLoad):
        return {
            "type": "constant",
            "resistance": load.impedance.resistance,
            "reactance": load.impedance.reactance,
        }
    if isinstance(load, ResonatorLoad):
        return {
            "type": "resonator",
            "r_series_ohms": load.r_series,
            "l_henries": load.inductance,
            "c_farads": load.capacitance,
        }
    return {"type": "s1p", "rows": len(load.dataset.rows)}


class SessionStore:
    """In-memory session map with TTL eviction and optional JSONL journal."""

    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS, persist_path: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.ttl = ttl_seconds
        self.persist_path = persist_path
        if persist_path:
            self._replay(persist_path)

    def _evict_expired(self):
        now = time.monotonic()
        stale = [sid for sid, s in self._sessions.items() if now - s.touched > self.ttl]
        for sid in stale:
            del self._sessions[sid]

    def create(self, z0: float, f0: float, load, journal: dict | None = None) -> Session:
        session = Session(
            id=secrets.token_urlsafe(16),
            z0=z0,
            f0=f0,
            load=load,
            created=_now_iso(),
            updated=_now_iso(),
        )
        with self._lock:
            self._evict_expired()
            self._sessions[session.id] = session
        if journal is not None:
            self._append_journal({"op": "create", "id": session.id, **journal})
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._evict_expired()
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "not_found", f"unknown session {session_id!r}")
        session.touched = time.monotonic()
        return session

    def _append_journal(self, event: dict):
        if not self.persist_path:
            return
        with open(self.persist_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")

    def journal(self, event: dict):
        self._append_journal(event)

    def _replay(self, path: str):
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except FileNotFoundError:
            return
        for line in lines:
            line = line.strip()
            if not line:
                continue
            try:
                event = json.loads(line)
                op = event["op"]
                if op == "create":
                    session = Session(
                        id=event["id"],
                        z0=event["z0"],
                        f0=event["f0"],
                        load=_parse_load(event["load"]),
                        created=event["created"],
                        updated=event["created"],
                    )
                    self._sessions[session.id] = session
                elif op == "push" and event["id"] in self._sessions:
                    s = self._sessions[event["id"]]
                    s.elements = s.elements + (element_from_dict(event["element"]),)
                elif op == "pop" and event["id"] in self._sessions:
                    s = self._sessions[event["id"]]
                    s.elements = s.elements[:-1]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, ApiError):
                # a crash can truncate the journal tail; keep what replayed
                continue


def session_state(session: Session) -> dict:
    """Full evaluated state: gamma, S11, chained arcs, suggestions.

    The element stack is snapshotted once so concurrent readers only ever
    see fully-applied mutations.
    """
    elements = session.elements
    z0 = ReferenceImpedance(session.z0)
    f0 = Frequency(session.f0)
    arcs = []
    for i, e in enumerate(elements):
        z_before = input_impedance(MatchingNetwork(elements[:i]), session.load, f0)
        arc = smith_arc(z_before, e, f0, ARC_STEPS, z0, element_index=i)
        arcs.append(
            {
                "element_index": i,
                "element": element_to_dict(e),
                "points": [{"real": g.real, "imag": g.imag} for g in arc.points],
            }
        )
    for prev, cur in zip(arcs, arcs[1:]):
        if cur["points"][0] != prev["points"][-1]:
            raise ApiError(500, "invariant_violation", "trajectory arcs do not chain")
    network = MatchingNetwork(elements)
    gamma = reflection_coefficient(input_impedance(network, session.load, f0), z0)
    try:
        residual = input_impedance(network, session.load, f0)
        suggestions = [
            solution_to_dict(s) for s in l_match_solutions(residual, z0, f0)
        ]
    except ReactiveLoadError:
        suggestions = []
    return {
        "id": session.id,
        "z0_ohms": session.z0,
        "f0_hz": session.f0,
        "load": _load_to_dict(session.load),
        "elements": [element_to_dict(e) for e in elements],
        "gamma": {"real": gamma.real, "imag": gamma.imag},
        "s11_db": s11_db_floored(gamma),
        "arcs": arcs,
        "suggestions": suggestions,
        "created": session.created,
        "updated": session.updated,
    }


def create_app(
    ttl_seconds: float = DEFAULT_TTL_SECONDS,
    persist_path: str | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(
        title="leafmatch session service",
        version="0.1.0",
        description="Interactive impedance-matching sessions with Smith-chart trajectories",
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(ttl_seconds, persist_path)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def handle_api_error(_req: Request, exc: ApiError):
        return JSONResponse(exc.body(), status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            {"error": {"code": "bad_request", "message": str(exc.errors())}},
            status_code=400,
        )

    @app.exception_handler(Exception)
    async def handle_unexpected(_req: Request, exc: Exception):
        return JSONResponse(
            {"error": {"code": "internal", "message": str(exc)}}, status_code=500
        )

    @app.post("/sessions")
    def create_session(payload: dict = Body(...)):
        f0 = payload.get("f0")
        if not isinstance(f0, (int, float)) or not f0 > 0:
            raise ApiError(400, "bad_request", "'f0' must be a positive frequency in Hz")
        z0 = payload.get("z0", 50.0)
        if not isinstance(z0, (int, float)) or not z0 > 0:
            raise ApiError(400, "bad_request", "'z0' must be a positive resistance in ohms")
        load_spec = payload.get("load")
        if not isinstance(load_spec, dict):
            raise ApiError(400, "bad_request", "'load' must be an object")
        load = _parse_load(load_spec)
        journal = None
        if store.persist_path:
            journal = {"z0": float(z0), "f0": float(f0), "load": load_spec, "created": _now_iso()}
        session = store.create(float(z0), float(f0), load, journal)
        return {"id": session.id, "state": session_state(session)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_state(store.get(session_id))

    @app.post("/sessions/{session_id}/elements")
    def push_element(session_id: str, payload: dict = Body(...)):
        session = store.get(session_id)
        try:
            element = element_from_dict(payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "bad_element", f"invalid element: {exc}") from exc
        with session.lock:
            if len(session.elements) >= 8:
                raise ApiError(400, "stack_full", "element stack is limited to 8")
            session.elements = session.elements + (element,)
            session.updated = _now_iso()
            state = session_state(session)
            # journal inside the lock so replay preserves mutation order
            store.journal({"op": "push", "id": session.id, "element": element_to_dict(element)})
        return state

    @app.delete("/sessions/{session_id}/elements/last")
    def pop_element(session_id: str):
        session = store.get(session_id)
        with session.lock:
            if not session.elements:
                raise ApiError(400, "stack_empty", "no element to remove")
            session.elements = session.elements[:-1]
            session.updated = _now_iso()
            state = session_state(session)
            store.journal({"op": "pop", "id": session.id})
        return state

    @app.get("/sessions/{session_id}/suggest")
    def suggest(session_id: str):
        session = store.get(session_id)
        state = session_state(session)
        return state["suggestions"]

    @app.get("/sessions/{session_id}/sweep")
    def sweep(
        session_id: str,
        from_hz: float = Query(default=DEFAULT_SWEEP_START_HZ, alias="from", gt=0),
        to_hz: float = Query(default=DEFAULT_SWEEP_STOP_HZ, alias="to", gt=0),
        points: int = Query(default=DEFAULT_SWEEP_POINTS, ge=2, le=100001),
    ):
        session = store.get(session_id)
        if not from_hz < to_hz:
            raise ApiError(400, "bad_request", "'from' must be below 'to'")
        try:
            result = sweep_s11(
                MatchingNetwork(session.elements),
                session.load,
                ReferenceImpedance(session.z0),
                Frequency(from_hz),
                Frequency(to_hz),
                points,
            )
        except ValueError as exc:
            raise ApiError(400, "bad_sweep", str(exc)) from exc
        return sweep_to_dict(result)

    @app.post("/sessions/{session_id}/discretize")
    def discretize(session_id: str, payload: dict | None = Body(default=None)):
        session = store.get(session_id)
        payload = payload or {}
        series = payload.get("series", "E24")
        k = payload.get("k", 1)
        if not isinstance(k, int) or k < 0:
            raise ApiError(400, "bad_request", "'k' must be a non-negative integer")
        try:
            report = optimize_discrete(
                MatchingNetwork(session.elements),
                session.load,
                ReferenceImpedance(session.z0),
                Frequency(session.f0),
                series,
                k,
            )
        except CandidateCapError as exc:
            raise ApiError(400, "too_many_candidates", str(exc)) from exc
        except ValueError as exc:
            raise ApiError(400, "bad_request", str(exc)) from exc
        return report_to_dict(report)

    return app


def run(host: str = "127.0.0.1", port: int = 8111, persist_path: str | None = None):
    import uvicorn

    uvicorn.run(create_app(persist_path=persist_path), host=host, port=port, log_level="warning")
