"""Seeded, steppable training sessions emitting immutable snapshots.

A session owns its RNG, Q-table, and counters; one mutator at a time may
drive it (the service serializes this). Snapshots are plain frozen values
safe to hand to any number of readers.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from mlscope.errors import SessionNotRunning
from mlscope.qlearn.grid import Cell, GridWorld, RewardSpec, step_env
from mlscope.qlearn.qtable import N_ACTIONS, QTable, q_update, select_action


@dataclass
class TrainingConfig:
    alpha: float = 0.1
    gamma: float = 0.9
    epsilon_start: float = 1.0
    epsilon_decay: float = 0.995
    epsilon_min: float = 0.05
    max_steps_per_episode: int = 400
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1]")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must be in [0, 1)")
        if not 0.0 <= self.epsilon_start <= 1.0:
            raise ValueError("epsilon_start must be in [0, 1]")
        if not 0.0 < self.epsilon_decay <= 1.0:
            raise ValueError("epsilon_decay must be in (0, 1]")
        if not 0.0 <= self.epsilon_min <= 1.0:
            raise ValueError("epsilon_min must be in [0, 1]")
        if self.max_steps_per_episode < 1:
            raise ValueError("max_steps_per_episode must be >= 1")


class SessionStatus(enum.Enum):
    PAUSED = "paused"
    RUNNING = "running"
    FINISHED = "finished"


@dataclass(frozen=True)
class Snapshot:
    episode: int
    step: int
    agent_pos: tuple[int, int]
    epsilon: float
    last_reward: float
    episode_return: float
    max_q: tuple[float, ...]


class TrainingSession:
    """One agent learning one grid; stepping is cheap enough for real time.

    Transitions are precomputed per (cell, action) through step_env once at
    construction, so the hot loop is pure table lookups.
    """

    def __init__(
        self,
        grid: GridWorld,
        config: TrainingConfig | None = None,
        rewards: RewardSpec | None = None,
    ):
        self.grid = grid
        self.config = config or TrainingConfig()
        self.rewards = rewards or RewardSpec()
        self.qtable = QTable(grid.width, grid.height)
        self.status = SessionStatus.PAUSED
        self._next, self._reward, self._done = self._transition_tables()
        self.reset()

    def _transition_tables(self):
        nxt = [0] * (self.grid.n_cells * N_ACTIONS)
        rew = [0.0] * (self.grid.n_cells * N_ACTIONS)
        done = [False] * (self.grid.n_cells * N_ACTIONS)
        for s, cell in enumerate(self.grid.cells):
            if cell.terminal or cell is Cell.ROCK:
                continue  # never a source state
            pos = self.grid.coords(s)
            for a in range(N_ACTIONS):
                npos, r, d = step_env(self.grid, pos, a, self.rewards)
                base = s * N_ACTIONS + a
                nxt[base] = self.grid.index(*npos)
                rew[base] = r
                done[base] = d
        return nxt, rew, done

    def reset(self) -> None:
        """Back to episode 0 with a zeroed table and a reseeded RNG."""
        self.qtable.zero()
        self.rng = random.Random(self.config.seed)
        self.agent_state = self.grid.index(*self.grid.start)
        self.episode = 0
        self.step = 0
        self.episode_step = 0
        self.episode_return = 0.0
        self.last_reward = 0.0
        self.epsilon = self.config.epsilon_start
        self._episode_ended = False

    @property
    def agent_pos(self) -> tuple[int, int]:
        return self.grid.coords(self.agent_state)

    def step_once(self) -> tuple[float, bool]:
        """One select/step/update cycle; returns (reward, episode ended)."""
        if self._episode_ended:
            self.episode_return = 0.0
            self._episode_ended = False
        cfg = self.config
        s = self.agent_state
        a = select_action(self.qtable, s, self.epsilon, self.rng)
        base = s * N_ACTIONS + a
        s2 = self._next[base]
        reward = self._reward[base]
        done = self._done[base]
        q_update(self.qtable, s, a, reward, s2, done, cfg.alpha, cfg.gamma)
        self.step += 1
        self.episode_step += 1
        self.episode_return += reward
        self.last_reward = reward
        self.agent_state = s2
        ended = done or self.episode_step >= cfg.max_steps_per_episode
        if ended:
            self.episode += 1
            self.epsilon = max(cfg.epsilon_min, self.epsilon * cfg.epsilon_decay)
            self.agent_state = self.grid.index(*self.grid.start)
            self.episode_step = 0
            self._episode_ended = True
        return reward, ended

    def run_steps(self, n: int) -> None:
        for _ in range(n):
            self.step_once()

    def run_episodes(self, episodes: int) -> None:
        """Advance until the episode counter reaches the given total."""
        while self.episode < episodes:
            self.step_once()

    def snapshot(self) -> Snapshot:
        return Snapshot(
            episode=self.episode,
            step=self.step,
            agent_pos=self.agent_pos,
            epsilon=self.epsilon,
            last_reward=self.last_reward,
            episode_return=self.episode_return,
            max_q=tuple(self.qtable.per_cell_max()),
        )


def run_training_step(session: TrainingSession) -> Snapshot:
    """Advance a running session by one step; the snapshot reflects the
    post-step state (episode rollover included)."""
    if session.status is not SessionStatus.RUNNING:
        raise SessionNotRunning(f"session is {session.status.value}")
    session.step_once()
    return session.snapshot()


def train(
    grid: GridWorld,
    episodes: int,
    config: TrainingConfig | None = None,
    rewards: RewardSpec | None = None,
) -> TrainingSession:
    """Batch-train a fresh session for a number of episodes."""
    session = TrainingSession(grid, config=config, rewards=rewards)
    session.run_episodes(episodes)
    return session
