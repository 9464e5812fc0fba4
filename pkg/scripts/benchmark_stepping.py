#!/usr/bin/env python3
"""Measure raw Q-learning step throughput per built-in level."""

import time

from mlscope.qlearn import TrainingSession, builtin_level


def main():
    for n in range(1, 6):
        grid, cfg = builtin_level(n)
        cfg.seed = 0
        session = TrainingSession(grid, config=cfg)
        n_steps = 200_000
        t0 = time.perf_counter()
        session.run_steps(n_steps)
        dt = time.perf_counter() - t0
        print(f"L{n}: {n_steps / dt / 1000:.0f}k steps/s ({dt / n_steps * 1e6:.2f} us/step)")


if __name__ == "__main__":
    main()
