"""HTTP routes and the snapshot WebSocket.

Wire conventions: JSON bodies and responses, errors as {code, message}
with 404 for unknown ids, 409 for invalid transitions, and 422 for
invalid payloads/grids. Binary uploads (images, WAV) go in the raw
request body.
"""

from __future__ import annotations

import asyncio
import contextlib
import json

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from mlscope.errors import (
    AudioTooLong,
    InvalidCommand,
    InvalidK,
    InvalidTransition,
    JobNotFound,
    MlscopeError,
    SessionRunning,
    UnknownLevel,
    UnknownSession,
)
from mlscope.haptics import analyze, decode_wav
from mlscope.haptics.script import SCRIPT_VERSION, event_record
from mlscope.isochrome import decode_image
from mlscope.qlearn import (
    LEVELS,
    TrainingConfig,
    bfs_shortest_path,
    builtin_level,
    grid_from_dict,
    grid_to_dict,
)
from mlscope.service.runtime import (
    DEFAULT_SPEED,
    ServiceState,
    apply_grid_edits,
    snapshot_payload,
)

MAX_AUDIO_SECONDS = 120.0
MAX_K = 16

_STATUS_CODES = {
    UnknownSession: 404,
    JobNotFound: 404,
    UnknownLevel: 404,
    InvalidTransition: 409,
    SessionRunning: 409,
}


def _config_from_payload(payload: dict) -> TrainingConfig:
    allowed = {
        "alpha", "gamma", "epsilon_start", "epsilon_decay",
        "epsilon_min", "max_steps_per_episode", "seed",
    }
    unknown = set(payload) - allowed
    if unknown:
        raise InvalidCommand(f"unknown config fields: {sorted(unknown)}")
    try:
        return TrainingConfig(**payload)
    except (TypeError, ValueError) as exc:
        raise InvalidCommand(f"bad config: {exc}") from exc


async def _json_body(request: Request) -> dict:
    try:
        payload = await request.json()
    except json.JSONDecodeError as exc:
        raise InvalidCommand(f"body is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise InvalidCommand("body must be a JSON object")
    return payload


def session_info(runtime) -> dict:
    with runtime.lock:
        session = runtime.session
        snap = session.snapshot()
        return {
            "id": runtime.id,
            "status": session.status.value,
            "speed": runtime.speed,
            "grid": grid_to_dict(session.grid),
            "config": vars(session.config).copy(),
            "snapshot": snapshot_payload(snap),
            "bfs_length": bfs_shortest_path(session.grid),
        }


def create_app(workers: int = 2) -> FastAPI:
    state = ServiceState(workers=workers)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        state.loop = asyncio.get_running_loop()
        yield
        state.shutdown()

    app = FastAPI(title="mlscope", lifespan=lifespan)
    app.state.service = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(MlscopeError)
    async def engine_error(request, exc: MlscopeError):
        status = _STATUS_CODES.get(type(exc), 422)
        return JSONResponse({"code": exc.code, "message": str(exc)}, status_code=status)

    # --- levels & sessions ---------------------------------------------------

    @app.get("/levels")
    async def levels():
        out = []
        for spec in LEVELS:
            grid, _ = spec.build()
            out.append(
                {
                    "number": spec.number,
                    "name": spec.name,
                    "description": spec.description,
                    "grid": grid_to_dict(grid),
                    "bfs_length": bfs_shortest_path(grid),
                }
            )
        return {"levels": out}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        payload = await _json_body(request)
        if ("level" in payload) == ("grid" in payload):
            raise InvalidCommand("provide exactly one of 'level' or 'grid'")
        if "level" in payload:
            if not isinstance(payload["level"], int):
                raise InvalidCommand("'level' must be an integer")
            grid, config = builtin_level(payload["level"])
        else:
            grid = grid_from_dict(payload["grid"])
            config = TrainingConfig()
        if "config" in payload:
            merged = vars(config).copy()
            if not isinstance(payload["config"], dict):
                raise InvalidCommand("'config' must be an object")
            merged.update(payload["config"])
            config = _config_from_payload(merged)
        if "seed" in payload:
            merged = vars(config).copy()
            merged["seed"] = payload["seed"]
            config = _config_from_payload(merged)
        speed = payload.get("speed", DEFAULT_SPEED)
        runtime = state.create_session(grid, config=config, speed=speed)
        return {"id": runtime.id, "status": runtime.status.value, "speed": runtime.speed}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        return session_info(state.get_session(session_id))

    @app.post("/sessions/{session_id}/control")
    async def control(session_id: str, request: Request):
        runtime = state.get_session(session_id)
        payload = await _json_body(request)
        command = payload.get("command")
        if command == "start":
            runtime.start()
        elif command == "pause":
            runtime.pause()
        elif command == "reset":
            runtime.reset()
        elif command == "set_speed":
            runtime.set_speed(payload.get("speed"))
        elif command == "set_config":
            if not isinstance(payload.get("config"), dict):
                raise InvalidCommand("'set_config' needs a 'config' object")
            merged = vars(runtime.session.config).copy()
            merged.update(payload["config"])
            runtime.apply_config(_config_from_payload(merged))
        else:
            raise InvalidCommand(f"unknown command {command!r}")
        return {"status": runtime.status.value, "speed": runtime.speed}

    @app.put("/sessions/{session_id}/grid")
    async def update_grid(session_id: str, request: Request):
        runtime = state.get_session(session_id)
        payload = await _json_body(request)
        edits = payload.get("edits")
        if not isinstance(edits, list):
            raise InvalidCommand("'edits' must be a list of {x, y, cell}")
        if runtime.status.value == "running":
            raise SessionRunning("grid edits are rejected while the session is live")
        revised = apply_grid_edits(runtime.session.grid, edits)
        runtime.replace_grid(revised)
        return {"grid": grid_to_dict(revised)}

    # --- streaming -------------------------------------------------------------

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        await websocket.accept()
        try:
            runtime = state.get_session(session_id)
        except UnknownSession as exc:
            await websocket.send_text(json.dumps({"code": exc.code, "message": str(exc)}))
            await websocket.close(code=1008)
            return
        queue: asyncio.Queue = asyncio.Queue(maxsize=256)
        with runtime.lock:
            snap = runtime.session.snapshot()
            generation = runtime.generation
        runtime.subscribers.add(queue)
        last = (generation, snap.step)
        try:
            await websocket.send_text(json.dumps(snapshot_payload(snap)))
            while True:
                gen, step, text = await queue.get()
                if gen == last[0] and step <= last[1]:
                    continue  # never let a subscriber observe step rewinds
                last = (gen, step)
                await websocket.send_text(text)
        except WebSocketDisconnect:
            pass
        finally:
            runtime.subscribers.discard(queue)

    # --- clustering jobs ----------------------------------------------------------

    @app.post("/isochrome/jobs", status_code=202)
    async def submit_isochrome(request: Request, k: int = 6, seed: int = 0):
        if not 1 <= k <= MAX_K:
            raise InvalidK(f"k must be in [1, {MAX_K}], got {k}")
        raster = decode_image(await request.body())
        return {"job_id": state.submit_job(raster, k, seed)}

    @app.get("/isochrome/jobs/{job_id}")
    async def fetch_isochrome(job_id: str):
        job = state.get_job(job_id)
        if job["status"] == "pending":
            return JSONResponse(
                {"code": "JobPending", "message": "clustering still in progress"},
                status_code=202,
            )
        if job["status"] == "failed":
            return JSONResponse(
                {"code": job["code"], "message": job["message"]}, status_code=422
            )
        return job["result"]

    # --- audio ---------------------------------------------------------------------

    @app.post("/haptics/analyze")
    async def haptics_analyze(request: Request):
        buffer = decode_wav(await request.body())
        if buffer.duration > MAX_AUDIO_SECONDS:
            raise AudioTooLong(
                f"{buffer.duration:.1f}s exceeds the {MAX_AUDIO_SECONDS:.0f}s limit"
            )
        script = analyze(buffer)
        return {
            "version": SCRIPT_VERSION,
            "duration": script.duration,
            "source": "upload",
            "events": [event_record(e) for e in script.events],
        }

    return app
