"""FastAPI session service backing the interactive mutation explorer.

Sessions are in-memory with LRU eviction and an idle TTL; each request for a
given session is serialized by a per-session lock, while distinct sessions
proceed concurrently.  The core modules stay pure; the service owns all
mutable state.
"""

from __future__ import annotations

import threading
import time
import uuid
from collections import OrderedDict
from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .quiver import (ExchangeMatrix, FiniteTypeResult, dynkin_seed,
                     is_finite_type, quiver_of_matrix)
from .seeds import Seed, canonical_seed_key, initial_seed, mutate_seed

SCHEMA_VERSION = "1"
MAX_SESSIONS = 1024
IDLE_TTL_SECONDS = 3600
FINITE_TYPE_BUDGET = 2000


class SeedSpecModel(BaseModel):
    """Initial seed: a named type/rank, or an explicit matrix."""
    type: Optional[str] = None
    rank: Optional[int] = None
    matrix: Optional[dict] = None


class CreateSessionRequest(BaseModel):
    seed: SeedSpecModel


class MutateRequest(BaseModel):
    vertex: int = Field(..., description="1-based vertex index")


class LaurentEntry(BaseModel):
    numerator: str
    denominator: str


class SeedModel(BaseModel):
    cluster: List[str]
    matrix: dict
    quiver: dict


class SessionState(BaseModel):
    schema_version: str = SCHEMA_VERSION
    id: str
    seed: SeedModel
    step: int
    visited_count: int
    history: List[int]
    finite_type: str
    revisited: Optional[bool] = None


class MutateResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    id: str
    seed: SeedModel
    laurent: List[LaurentEntry]
    revisited: bool
    step: int


class _Session:
    def __init__(self, sid: str, seed: Seed):
        self.id = sid
        self.initial = seed
        self.current = seed
        self.history: List[Tuple[int, str]] = []   # (vertex0, canonical hash)
        self.visited = {canonical_seed_key(seed)}
        self.created = time.time()
        self.last_active = self.created
        self.lock = threading.Lock()

    def replay_ok(self) -> bool:
        cur = self.initial
        for vertex, _ in self.history:
            cur = mutate_seed(cur, vertex)
        return cur.texts() == self.current.texts() and \
            cur.matrix.b == self.current.matrix.b


def _seed_model(seed: Seed) -> SeedModel:
    return SeedModel(cluster=list(seed.texts()),
                     matrix=seed.matrix.to_json(),
                     quiver=quiver_of_matrix(seed.matrix).to_json())


def _laurent(seed: Seed) -> List[LaurentEntry]:
    return [LaurentEntry(numerator=x.num.text(), denominator=x.den.text())
            for x in seed.cluster]


def build_app() -> FastAPI:
    app = FastAPI(title="cluster mutation explorer", version=SCHEMA_VERSION)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: "OrderedDict[str, _Session]" = OrderedDict()
    registry_lock = threading.Lock()

    def evict():
        now = time.time()
        stale = [sid for sid, s in sessions.items()
                 if now - s.last_active > IDLE_TTL_SECONDS]
        for sid in stale:
            sessions.pop(sid, None)
        while len(sessions) > MAX_SESSIONS:
            sessions.popitem(last=False)

    def get_session(sid: str) -> _Session:
        with registry_lock:
            s = sessions.get(sid)
            if s is None:
                raise HTTPException(404, "unknown session")
            sessions.move_to_end(sid)
            s.last_active = time.time()
            return s

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "schema_version": SCHEMA_VERSION}

    @app.post("/sessions", response_model=SessionState)
    def create_session(req: CreateSessionRequest):
        spec = req.seed
        try:
            if spec.matrix is not None:
                matrix = ExchangeMatrix.from_json(spec.matrix).with_symmetrizer()
            elif spec.type:
                matrix = dynkin_seed(spec.type, spec.rank).matrix
            else:
                raise ValueError("seed spec needs a type or a matrix")
            seed = initial_seed(matrix)
        except (ValueError, KeyError) as exc:
            raise HTTPException(400, str(exc))
        sid = uuid.uuid4().hex[:16]
        with registry_lock:
            sessions[sid] = _Session(sid, seed)
            evict()
        return _state(sessions[sid])

    def _state(s: _Session, revisited: Optional[bool] = None) -> SessionState:
        ft = is_finite_type(s.current.matrix, FINITE_TYPE_BUDGET)
        status = {"finite": "finite", "infinite": "not-finite",
                  "indeterminate": "not-found-within-budget"}[ft.status]
        return SessionState(id=s.id, seed=_seed_model(s.current),
                            step=len(s.history),
                            visited_count=len(s.visited),
                            history=[v + 1 for v, _ in s.history],
                            finite_type=status,
                            revisited=revisited)

    @app.get("/sessions/{sid}", response_model=SessionState)
    def get_state(sid: str):
        s = get_session(sid)
        with s.lock:
            return _state(s)

    @app.post("/sessions/{sid}/mutate", response_model=MutateResponse)
    def mutate(sid: str, req: MutateRequest):
        s = get_session(sid)
        with s.lock:
            n = s.current.rank()
            if not 1 <= req.vertex <= n:
                raise HTTPException(400, f"vertex must be in 1..{n}")
            nxt = mutate_seed(s.current, req.vertex - 1)
            key = canonical_seed_key(nxt)
            revisited = key in s.visited
            s.visited.add(key)
            s.history.append((req.vertex - 1, key))
            s.current = nxt
            return MutateResponse(id=s.id, seed=_seed_model(nxt),
                                  laurent=_laurent(nxt), revisited=revisited,
                                  step=len(s.history))

    @app.post("/sessions/{sid}/undo", response_model=SessionState)
    def undo(sid: str):
        s = get_session(sid)
        with s.lock:
            if not s.history:
                raise HTTPException(409, "nothing to undo")
            s.history.pop()
            cur = s.initial
            for vertex, _ in s.history:
                cur = mutate_seed(cur, vertex)
            s.current = cur
            return _state(s)

    @app.delete("/sessions/{sid}")
    def delete(sid: str):
        with registry_lock:
            if sid not in sessions:
                raise HTTPException(404, "unknown session")
            del sessions[sid]
        return {"deleted": sid}

    @app.get("/sessions/{sid}/export")
    def export(sid: str):
        s = get_session(sid)
        with s.lock:
            return {"schema_version": SCHEMA_VERSION,
                    "initial": s.initial.to_json(),
                    "history": [v + 1 for v, _ in s.history],
                    "replay_ok": s.replay_ok()}

    return app


app = build_app()


def main(host: str = "127.0.0.1", port: int = 8137):
    import uvicorn
    uvicorn.run(app, host=host, port=port)
