"""Live session runtimes and the clustering job pool.

Each session has exactly one mutator at a time: either the background
stepping thread (while running) or a request handler holding the session
lock (while paused). Snapshot fanout happens on the event loop; stepping
happens off it so the HTTP/WebSocket side stays responsive at high speed.
"""

from __future__ import annotations

import asyncio
import base64
import json
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor

from mlscope.errors import (
    InvalidCommand,
    InvalidGrid,
    InvalidTransition,
    JobNotFound,
    SessionRunning,
    UnknownSession,
)
from mlscope.isochrome import (
    extract_layers,
    export_point_cloud,
    kmeans_fit,
    model_summary,
    pixels_to_points,
)
from mlscope.isochrome.raster import ImageRaster, render_layer_png, stride_for_budget
from mlscope.qlearn import (
    Cell,
    GridWorld,
    RewardSpec,
    Snapshot,
    TrainingConfig,
    TrainingSession,
    validate_trainable,
)
from mlscope.qlearn.session import SessionStatus

SPEED_MIN = 1
SPEED_MAX = 100_000
DEFAULT_SPEED = 200
TICK_SECONDS = 1.0 / 30.0       # emission tick; >= 10 Hz contract
SUBSCRIBER_BUFFER = 256

EDIT_CELLS = {
    ".": Cell.EMPTY, "empty": Cell.EMPTY,
    "R": Cell.ROCK, "rock": Cell.ROCK,
    "L": Cell.LAVA, "lava": Cell.LAVA,
    "G": Cell.GOAL, "goal": Cell.GOAL,
}
START_MARKS = ("S", "start")


def snapshot_payload(snap: Snapshot) -> dict:
    return {
        "episode": snap.episode,
        "step": snap.step,
        "agent_pos": list(snap.agent_pos),
        "epsilon": snap.epsilon,
        "last_reward": snap.last_reward,
        "episode_return": snap.episode_return,
        "max_q": list(snap.max_q),
    }


class SessionRuntime:
    """One training session plus its stepping thread and subscribers."""

    def __init__(self, manager: "ServiceState", session: TrainingSession, speed: int):
        self.id = uuid.uuid4().hex[:12]
        self.manager = manager
        self.session = session
        self.speed = speed
        self.lock = threading.Lock()
        self.generation = 0      # bumped whenever counters rewind (reset/edit)
        self.subscribers: set[asyncio.Queue] = set()   # event-loop confined
        self._thread: threading.Thread | None = None
        self._stop = threading.Event()

    @property
    def status(self) -> SessionStatus:
        return self.session.status

    # --- control -----------------------------------------------------------

    def start(self) -> None:
        if self._thread is not None and self._thread.is_alive():
            return
        self._stop.clear()
        self.session.status = SessionStatus.RUNNING
        self._thread = threading.Thread(target=self._run_loop, daemon=True)
        self._thread.start()

    def pause(self) -> None:
        self._halt_thread()
        self.session.status = SessionStatus.PAUSED

    def reset(self) -> None:
        self._halt_thread()
        with self.lock:
            self.session.reset()
            self.session.status = SessionStatus.PAUSED
            self.generation += 1
            snap = self.session.snapshot()
        self.publish(snap)

    def set_speed(self, speed: int) -> None:
        if not isinstance(speed, int) or not SPEED_MIN <= speed <= SPEED_MAX:
            raise InvalidCommand(f"speed must be an integer in [{SPEED_MIN}, {SPEED_MAX}]")
        self.speed = speed

    def replace_grid(self, grid: GridWorld) -> None:
        """Swap in an edited grid with a fresh zeroed session (paused only)."""
        if self.status is SessionStatus.RUNNING:
            raise SessionRunning("grid edits are rejected while the session is live")
        with self.lock:
            config = self.session.config
            rewards = self.session.rewards
            self.session = TrainingSession(grid, config=config, rewards=rewards)
            self.generation += 1
            snap = self.session.snapshot()
        self.publish(snap)

    def apply_config(self, config: TrainingConfig) -> None:
        if self.status is SessionStatus.RUNNING:
            raise InvalidTransition("config changes are rejected while the session is live")
        with self.lock:
            self.session.config = config
            # a fresh epsilon schedule applies from the next reset; the live
            # epsilon is part of training state and survives a config swap

    def _halt_thread(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5.0)
            self._thread = None

    # --- stepping ----------------------------------------------------------

    def _run_loop(self) -> None:
        anchor = time.monotonic()
        base_step = self.session.step
        last_speed = self.speed
        last_published = -1
        next_tick = anchor
        while not self._stop.is_set():
            speed = self.speed
            if speed != last_speed:
                anchor = time.monotonic()
                base_step = self.session.step
                last_speed = speed
            now = time.monotonic()
            due = int((now - anchor) * speed) - (self.session.step - base_step)
            due = min(due, max(speed // 10, 1000))
            if due > 0:
                with self.lock:
                    self.session.run_steps(due)
            with self.lock:
                snap = self.session.snapshot()
            if snap.step != last_published:
                last_published = snap.step
                self.publish(snap)
            next_tick += TICK_SECONDS
            delay = next_tick - time.monotonic()
            if delay > 0:
                self._stop.wait(delay)
            else:
                next_tick = time.monotonic()

    # --- fanout --------------------------------------------------------------

    def publish(self, snap: Snapshot) -> None:
        loop = self.manager.loop
        if loop is None or loop.is_closed():
            return
        item = (self.generation, snap.step, json.dumps(snapshot_payload(snap)))
        loop.call_soon_threadsafe(self._fanout, item)

    def _fanout(self, item) -> None:
        for queue in self.subscribers:
            if queue.full():
                # lagging subscriber: fast-forward to newest, order preserved
                while not queue.empty():
                    queue.get_nowait()
            queue.put_nowait(item)


def run_isochrome_job(raster: ImageRaster, k: int, seed: int) -> dict:
    """Cluster a raster (subsampled to <= 65536 points) and package layers,
    summary, and point cloud for the UI."""
    stride = stride_for_budget(raster.width, raster.height)
    points = pixels_to_points(raster, stride)
    model = kmeans_fit(points, k=k, seed=seed)
    layers = extract_layers(raster, model)
    return {
        "width": raster.width,
        "height": raster.height,
        "stride": stride,
        "model": model_summary(model, layers),
        "layers": [
            {
                "cluster_index": layer.cluster_index,
                "centroid_color": [round(c) for c in layer.centroid_color],
                "pixel_count": layer.pixel_count,
                "png_base64": base64.b64encode(render_layer_png(raster, layer.mask)).decode(),
            }
            for layer in layers
        ],
        "point_cloud_ply": export_point_cloud(points, model),
    }


class ServiceState:
    """Process-wide registry: sessions, clustering jobs, and the event loop."""

    def __init__(self, workers: int = 2):
        self.sessions: dict[str, SessionRuntime] = {}
        self.jobs: dict[str, dict] = {}
        self._registry_lock = threading.Lock()
        self.executor = ThreadPoolExecutor(max_workers=workers)
        self.loop: asyncio.AbstractEventLoop | None = None

    # --- sessions ------------------------------------------------------------

    def create_session(
        self,
        grid: GridWorld,
        config: TrainingConfig | None = None,
        speed: int = DEFAULT_SPEED,
    ) -> SessionRuntime:
        validate_trainable(grid)
        session = TrainingSession(grid, config=config, rewards=RewardSpec())
        runtime = SessionRuntime(self, session, speed)
        runtime.set_speed(speed)
        with self._registry_lock:
            self.sessions[runtime.id] = runtime
        return runtime

    def get_session(self, session_id: str) -> SessionRuntime:
        runtime = self.sessions.get(session_id)
        if runtime is None:
            raise UnknownSession(f"no session {session_id!r}")
        return runtime

    # --- clustering jobs -------------------------------------------------------

    def submit_job(self, raster: ImageRaster, k: int, seed: int) -> str:
        job_id = uuid.uuid4().hex[:12]
        with self._registry_lock:
            self.jobs[job_id] = {"status": "pending"}

        def on_done(future):
            with self._registry_lock:
                try:
                    self.jobs[job_id] = {"status": "done", "result": future.result()}
                except Exception as exc:  # engine errors carry their code
                    code = getattr(exc, "code", type(exc).__name__)
                    self.jobs[job_id] = {
                        "status": "failed",
                        "code": code,
                        "message": str(exc),
                    }

        self.executor.submit(run_isochrome_job, raster, k, seed).add_done_callback(on_done)
        return job_id

    def get_job(self, job_id: str) -> dict:
        with self._registry_lock:
            job = self.jobs.get(job_id)
        if job is None:
            raise JobNotFound(f"no clustering job {job_id!r}")
        return job

    # --- lifecycle ---------------------------------------------------------------

    def shutdown(self) -> None:
        for runtime in list(self.sessions.values()):
            runtime.pause()
        self.executor.shutdown(wait=False, cancel_futures=True)


def apply_grid_edits(grid: GridWorld, edits: list) -> GridWorld:
    """Apply (x, y, cell) edits; cell 'S' relocates the start (cell becomes
    empty). Raises InvalidGrid when the result violates grid invariants."""
    cells = list(grid.cells)
    start = grid.start
    for edit in edits:
        try:
            x, y, value = int(edit["x"]), int(edit["y"]), str(edit["cell"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGrid(f"malformed edit {edit!r}: {exc}") from exc
        if not grid.in_bounds(x, y):
            raise InvalidGrid(f"edit at ({x}, {y}) is out of bounds")
        if value in START_MARKS:
            cells[grid.index(x, y)] = Cell.EMPTY
            start = (x, y)
            continue
        cell = EDIT_CELLS.get(value)
        if cell is None:
            raise InvalidGrid(f"unknown cell value {value!r}")
        cells[grid.index(x, y)] = cell
    revised = GridWorld(width=grid.width, height=grid.height, cells=tuple(cells), start=start)
    validate_trainable(revised)
    return revised
