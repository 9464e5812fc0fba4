"""Dense state-action value table and the policies read off it."""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass

from mlscope.qlearn.grid import Action, Cell, GridWorld, RewardSpec, step_env

N_ACTIONS = 4


class QTable:
    """width*height*4 values, zero-initialized; index = cell*4 + action."""

    __slots__ = ("width", "height", "values")

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.values = [0.0] * (width * height * N_ACTIONS)

    def q(self, state: int, action: int) -> float:
        return self.values[state * N_ACTIONS + action]

    def row(self, state: int) -> list[float]:
        base = state * N_ACTIONS
        return self.values[base : base + N_ACTIONS]

    def max_q(self, state: int) -> float:
        return max(self.row(state))

    def best_action(self, state: int) -> Action:
        row = self.row(state)
        return Action(row.index(max(row)))  # ties -> lowest action index

    def per_cell_max(self) -> list[float]:
        v = self.values
        return [max(v[b : b + N_ACTIONS]) for b in range(0, len(v), N_ACTIONS)]

    def zero(self) -> None:
        self.values = [0.0] * len(self.values)


def q_update(
    qtable: QTable,
    s: int,
    a: int,
    reward: float,
    s_next: int,
    done: bool,
    alpha: float,
    gamma: float,
) -> float:
    """One temporal-difference backup; returns the applied increment.

    target = reward for terminal transitions, else reward + gamma * max_a'
    Q(s', a'); Q(s, a) moves toward the target by a factor alpha.
    """
    target = reward if done else reward + gamma * qtable.max_q(s_next)
    idx = s * N_ACTIONS + a
    delta = alpha * (target - qtable.values[idx])
    qtable.values[idx] += delta
    return delta


def select_action(qtable: QTable, state: int, epsilon: float, rng: random.Random) -> Action:
    """Epsilon-greedy: explore uniformly with probability epsilon, else the
    greedy action (ties to the lowest action index)."""
    if rng.random() < epsilon:
        return Action(rng.randrange(N_ACTIONS))
    return qtable.best_action(state)


def greedy_policy(qtable: QTable, grid: GridWorld) -> dict[int, Action]:
    """Greedy action per non-terminal cell; terminal cells carry no entry."""
    return {
        s: qtable.best_action(s)
        for s in range(grid.n_cells)
        if not grid.cells[s].terminal
    }


class RolloutOutcome(enum.Enum):
    REACHED_GOAL = "reached_goal"
    HIT_LAVA = "hit_lava"
    LOOP = "loop"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class RolloutResult:
    outcome: RolloutOutcome
    path_length: int | None
    trail: tuple[tuple[int, int], ...]


def evaluate_policy(
    policy: dict[int, Action], grid: GridWorld, max_steps: int = 1000
) -> RolloutResult:
    """Deterministic rollout from the start; revisiting any state is a loop."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rewards = RewardSpec()
    pos = grid.start
    visited = {pos}
    trail = [pos]
    for step in range(1, max_steps + 1):
        action = policy[grid.index(*pos)]
        nxt, _, done = step_env(grid, pos, action, rewards)
        trail.append(nxt)
        if done:
            outcome = (
                RolloutOutcome.REACHED_GOAL
                if grid.cell_at(*nxt) is Cell.GOAL
                else RolloutOutcome.HIT_LAVA
            )
            return RolloutResult(outcome, step if outcome is RolloutOutcome.REACHED_GOAL else None, tuple(trail))
        if nxt in visited:
            return RolloutResult(RolloutOutcome.LOOP, None, tuple(trail))
        visited.add(nxt)
        pos = nxt
    return RolloutResult(RolloutOutcome.TIMEOUT, None, tuple(trail))


def export_qtable(qtable: QTable) -> str:
    """Flat JSON array, row-major cells, action order U, D, L, R."""
    return json.dumps(qtable.values)


def import_qtable(text: str, width: int, height: int) -> QTable:
    values = json.loads(text)
    expected = width * height * N_ACTIONS
    if not isinstance(values, list) or len(values) != expected:
        raise ValueError(f"expected a flat array of {expected} reals")
    table = QTable(width, height)
    table.values = [float(v) for v in values]
    return table
