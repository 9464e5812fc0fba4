#!/usr/bin/env python3
"""Train every built-in level and print a convergence table.

Usage: python scripts/train_all_levels.py [--episodes 2000] [--seed 42]
"""

import argparse
import time

from mlscope.qlearn import (
    bfs_shortest_path,
    builtin_level,
    evaluate_policy,
    greedy_policy,
    train,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--episodes", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    print(f"{'level':<6} {'bfs':>4} {'greedy':>7} {'steps':>8} {'eps':>6} {'time':>7}")
    for n in range(1, 6):
        grid, cfg = builtin_level(n)
        cfg.seed = args.seed
        t0 = time.perf_counter()
        session = train(grid, args.episodes, config=cfg)
        dt = time.perf_counter() - t0
        rollout = evaluate_policy(greedy_policy(session.qtable, grid), grid)
        greedy = rollout.path_length if rollout.path_length is not None else rollout.outcome.value
        print(
            f"L{n:<5} {bfs_shortest_path(grid):>4} {greedy!s:>7} "
            f"{session.step:>8} {session.epsilon:>6.3f} {dt:>6.2f}s"
        )


if __name__ == "__main__":
    main()
