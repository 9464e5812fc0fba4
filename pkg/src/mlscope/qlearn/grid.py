"""Gridworld cells, transitions, and the BFS shortest-path oracle.

Coordinates are (x, y) with x the column and y the row; cell storage is
row-major, index = y * width + x. Entering a goal or lava cell ends the
episode; rocks and the grid edge turn moves into stay-in-place no-ops.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from mlscope.errors import InvalidGrid, InvalidPosition

MAX_SIDE = 64


class Cell(enum.Enum):
    EMPTY = "."
    ROCK = "R"
    LAVA = "L"
    GOAL = "G"

    @property
    def terminal(self) -> bool:
        return self in (Cell.GOAL, Cell.LAVA)


class Action(enum.IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3


# (dx, dy) per action, indexed by Action value
DELTAS = ((0, -1), (0, 1), (-1, 0), (1, 0))


@dataclass(frozen=True)
class RewardSpec:
    goal_reward: float = 100.0
    lava_penalty: float = -100.0
    step_cost: float = -1.0

    def __post_init__(self):
        if self.goal_reward <= 0:
            raise ValueError("goal_reward must be > 0")
        if self.lava_penalty >= 0:
            raise ValueError("lava_penalty must be < 0")
        if self.step_cost > 0:
            raise ValueError("step_cost must be <= 0")


@dataclass(frozen=True)
class GridWorld:
    width: int
    height: int
    cells: tuple[Cell, ...]
    start: tuple[int, int]

    def __post_init__(self):
        if not (1 <= self.width <= MAX_SIDE and 1 <= self.height <= MAX_SIDE):
            raise InvalidGrid(f"grid sides must be 1..{MAX_SIDE}, got {self.width}x{self.height}")
        cells = tuple(self.cells)
        if len(cells) != self.width * self.height:
            raise InvalidGrid(
                f"expected {self.width * self.height} cells, got {len(cells)}"
            )
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "start", (int(self.start[0]), int(self.start[1])))
        if not self.in_bounds(*self.start):
            raise InvalidGrid(f"start {self.start} out of bounds")
        if self.cell_at(*self.start) is not Cell.EMPTY:
            raise InvalidGrid("start cell must be empty")

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def coords(self, index: int) -> tuple[int, int]:
        return index % self.width, index // self.width

    def cell_at(self, x: int, y: int) -> Cell:
        return self.cells[y * self.width + x]

    @property
    def n_cells(self) -> int:
        return self.width * self.height

    def count(self, kind: Cell) -> int:
        return sum(1 for c in self.cells if c is kind)


def validate_trainable(grid: GridWorld) -> None:
    """Trainable grids need at least one goal to terminate episodes on."""
    if grid.count(Cell.GOAL) == 0:
        raise InvalidGrid("grid needs at least one goal")


def step_env(
    grid: GridWorld,
    pos: tuple[int, int],
    action: Action,
    rewards: RewardSpec,
) -> tuple[tuple[int, int], float, bool]:
    """One environment transition: (next position, reward, episode done).

    Off-grid moves and rock targets keep the agent in place at step cost;
    entering a terminal cell yields its reward *instead of* the step cost.
    """
    x, y = pos
    if not grid.in_bounds(x, y) or grid.cell_at(x, y) is Cell.ROCK:
        raise InvalidPosition(f"no agent can act from {pos}")
    if grid.cell_at(x, y).terminal:
        raise InvalidPosition(f"cannot act from terminal cell {pos}")
    dx, dy = DELTAS[action]
    nx, ny = x + dx, y + dy
    if not grid.in_bounds(nx, ny) or grid.cell_at(nx, ny) is Cell.ROCK:
        return pos, rewards.step_cost, False
    target = grid.cell_at(nx, ny)
    if target is Cell.GOAL:
        return (nx, ny), rewards.goal_reward, True
    if target is Cell.LAVA:
        return (nx, ny), rewards.lava_penalty, True
    return (nx, ny), rewards.step_cost, False


def bfs_shortest_path(grid: GridWorld) -> int | None:
    """Steps from start to the nearest goal over empty cells, or None when
    unreachable. Lava is not enterable on an oracle path; rocks block."""
    queue = deque([(grid.start, 0)])
    seen = {grid.start}
    while queue:
        (x, y), dist = queue.popleft()
        for dx, dy in DELTAS:
            nx, ny = x + dx, y + dy
            if not grid.in_bounds(nx, ny) or (nx, ny) in seen:
                continue
            cell = grid.cell_at(nx, ny)
            if cell is Cell.GOAL:
                return dist + 1
            if cell is Cell.EMPTY:
                seen.add((nx, ny))
                queue.append(((nx, ny), dist + 1))
    return None


# --- serialization -----------------------------------------------------------

def grid_to_dict(grid: GridWorld) -> dict:
    rows = [
        "".join(grid.cell_at(x, y).value for x in range(grid.width))
        for y in range(grid.height)
    ]
    return {
        "width": grid.width,
        "height": grid.height,
        "start": list(grid.start),
        "cells": rows,
    }


def grid_from_dict(data: dict) -> GridWorld:
    try:
        width = int(data["width"])
        height = int(data["height"])
        start = (int(data["start"][0]), int(data["start"][1]))
        rows = list(data["cells"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidGrid(f"malformed grid document: {exc}") from exc
    if len(rows) != height:
        raise InvalidGrid(f"expected {height} rows, got {len(rows)}")
    cells = []
    for y, row in enumerate(rows):
        if len(row) != width:
            raise InvalidGrid(f"row {y} has {len(row)} cells, expected {width}")
        for ch in row:
            try:
                cells.append(Cell(ch))
            except ValueError:
                raise InvalidGrid(f"unknown cell character {ch!r} in row {y}") from None
    return GridWorld(width=width, height=height, cells=tuple(cells), start=start)


def grid_from_ascii(rows: list[str]) -> GridWorld:
    """Build a grid from rows where 'S' marks the (empty) start cell."""
    start = None
    cells = []
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == "S":
                if start is not None:
                    raise InvalidGrid("multiple start cells")
                start = (x, y)
                cells.append(Cell.EMPTY)
            else:
                cells.append(Cell(ch))
    if start is None:
        raise InvalidGrid("no start cell")
    return GridWorld(width=len(rows[0]), height=len(rows), cells=tuple(cells), start=start)
