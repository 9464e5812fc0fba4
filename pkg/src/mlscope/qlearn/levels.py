"""The five built-in training levels.

Each level foregrounds one ingredient: bare pathfinding, terminal
punishment, blocking walls, competing goals, and finally all of them in a
spiral maze. Every layout keeps its goal BFS-reachable from the start.
"""

from __future__ import annotations

from dataclasses import dataclass

from mlscope.errors import UnknownLevel
from mlscope.qlearn.grid import GridWorld, grid_from_ascii
from mlscope.qlearn.session import TrainingConfig


@dataclass(frozen=True)
class LevelSpec:
    number: int
    name: str
    description: str
    rows: tuple[str, ...]

    def build(self) -> tuple[GridWorld, TrainingConfig]:
        return grid_from_ascii(list(self.rows)), TrainingConfig()


LEVELS: tuple[LevelSpec, ...] = (
    LevelSpec(
        1,
        "First Steps",
        "An open field with a single goal; watch values ripple back from it.",
        (
            "S....",
            ".....",
            ".....",
            ".....",
            "....G",
        ),
    ),
    LevelSpec(
        2,
        "Lava Shore",
        "A lava bank guards the direct route; one safe passage on the right.",
        (
            "S....",
            ".....",
            "LLLL.",
            ".....",
            "....G",
        ),
    ),
    LevelSpec(
        3,
        "Switchback",
        "Rock walls force a snaking detour twice across the field.",
        (
            "S....",
            "RRRR.",
            ".....",
            ".RRRR",
            "....G",
        ),
    ),
    LevelSpec(
        4,
        "Two Feasts",
        "Two equally distant goals behind a short wall; either is optimal.",
        (
            "G.....G",
            ".......",
            "..RRR..",
            ".......",
            ".......",
            ".......",
            "...S...",
        ),
    ),
    LevelSpec(
        5,
        "The Spiral",
        "Nested walls, dead-end lava, and a goal at the center of the spiral.",
        (
            "S........",
            ".RRR.RRR.",
            ".R.....R.",
            ".R.RRR.R.",
            ".R.RGR.R.",
            ".R.R.R.R.",
            ".R....LR.",
            ".RRRRRRR.",
            "........L",
        ),
    ),
)


def builtin_level(n: int) -> tuple[GridWorld, TrainingConfig]:
    """Level n in 1..5 as a fresh (grid, config) pair."""
    if not 1 <= n <= len(LEVELS):
        raise UnknownLevel(f"level must be 1..{len(LEVELS)}, got {n}")
    return LEVELS[n - 1].build()
