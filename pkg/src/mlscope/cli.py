"""Batch front door: everything the sandbox UI does, scriptable headlessly.

Exit codes: 0 success, 1 runtime error (engine error code on stderr),
2 usage error (argparse reports the offending flag). Reports print one
metric per line; ``--format records`` emits JSON lines instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from mlscope.errors import MlscopeError
from mlscope.haptics import analyze, decode_wav, serialize_script, tutorial_script
from mlscope.haptics.events import EventKind
from mlscope.isochrome import (
    decode_image,
    export_point_cloud,
    extract_layers,
    kmeans_fit,
    model_summary,
    pixels_to_points,
)
from mlscope.isochrome.raster import render_layer_png
from mlscope.qlearn import (
    RolloutOutcome,
    TrainingConfig,
    bfs_shortest_path,
    builtin_level,
    evaluate_policy,
    export_qtable,
    greedy_policy,
    grid_from_dict,
    import_qtable,
    train,
    validate_trainable,
)

ACTION_NAMES = ("up", "down", "left", "right")


def print_report(metrics: list[tuple[str, object]], fmt: str) -> None:
    """One line per metric; records mode emits JSON objects for harnesses."""
    for name, value in metrics:
        if fmt == "records":
            print(json.dumps({"metric": name, "value": value}))
        else:
            print(f"{name}: {value}")


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("human", "records"), default="human",
        help="report style (default: human)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlscope", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    iso = sub.add_parser("isochrome", help="image color deconstruction")
    iso_sub = iso.add_subparsers(dest="subcommand", required=True)
    dec = iso_sub.add_parser("decompose", help="split an image into isochromatic layers")
    dec.add_argument("--input", required=True, help="PNG or JPEG file")
    dec.add_argument("--k", type=int, default=6, help="number of color clusters")
    dec.add_argument("--out", required=True, help="output directory")
    dec.add_argument("--stride", type=int, default=1, help="pixel sampling stride")
    dec.add_argument("--seed", type=int, default=0)
    _add_format_flag(dec)

    hap = sub.add_parser("haptics", help="audio-to-haptics compilation")
    hap_sub = hap.add_subparsers(dest="subcommand", required=True)
    ana = hap_sub.add_parser("analyze", help="compile a WAV into a haptic script")
    ana.add_argument("--input", required=True, help="WAV file (PCM16/float32)")
    ana.add_argument("--out", required=True, help="script file to write")
    _add_format_flag(ana)
    tut = hap_sub.add_parser("tutorial", help="write a built-in tutorial script")
    tut.add_argument("--kind", required=True, choices=("rhythm", "notes", "accents"))
    tut.add_argument("--out", required=True)
    _add_format_flag(tut)

    ql = sub.add_parser("qlearn", help="gridworld Q-learning")
    ql_sub = ql.add_subparsers(dest="subcommand", required=True)
    tr = ql_sub.add_parser("train", help="train an agent and export its Q-table")
    src = tr.add_mutually_exclusive_group(required=True)
    src.add_argument("--level", type=int, help="built-in level 1..5")
    src.add_argument("--grid", help="grid JSON file")
    tr.add_argument("--episodes", type=int, default=2000)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--out", required=True, help="Q-table file to write")
    _add_format_flag(tr)
    pl = ql_sub.add_parser("play", help="roll out the greedy policy of a Q-table")
    psrc = pl.add_mutually_exclusive_group(required=True)
    psrc.add_argument("--level", type=int, help="built-in level 1..5")
    psrc.add_argument("--grid", help="grid JSON file")
    pl.add_argument("--qtable", required=True, help="Q-table file")
    _add_format_flag(pl)

    srv = sub.add_parser("serve", help="run the HTTP/WebSocket service")
    srv.add_argument(
        "--port", type=int, default=int(os.environ.get("MLSCOPE_PORT", 8080))
    )
    srv.add_argument(
        "--workers", type=int, default=int(os.environ.get("MLSCOPE_WORKERS", 2)),
        help="clustering worker pool size",
    )
    srv.add_argument("--host", default=os.environ.get("MLSCOPE_HOST", "127.0.0.1"))
    return parser


def _load_grid(args):
    if args.level is not None:
        grid, config = builtin_level(args.level)
    else:
        with open(args.grid, encoding="utf-8") as fh:
            grid = grid_from_dict(json.load(fh))
        config = TrainingConfig()
    validate_trainable(grid)
    return grid, config


def cmd_decompose(args) -> int:
    data = Path(args.input).read_bytes()
    raster = decode_image(data)
    points = pixels_to_points(raster, stride=args.stride)
    model = kmeans_fit(points, k=args.k, seed=args.seed)
    layers = extract_layers(raster, model)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, layer in enumerate(layers):
        (out / f"layer_{i:02d}.png").write_bytes(render_layer_png(raster, layer.mask))
    summary = model_summary(model, layers)
    summary.update(
        {"width": raster.width, "height": raster.height, "stride": args.stride, "seed": args.seed}
    )
    (out / "model.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    (out / "cloud.ply").write_text(export_point_cloud(points, model), encoding="utf-8")

    print_report(
        [
            ("k", model.k),
            ("points", len(points)),
            ("inertia", model.inertia),
            ("iterations", model.n_iter),
            ("layer_counts", [l.pixel_count for l in layers]),
            ("out_dir", str(out)),
        ],
        args.format,
    )
    return 0


def cmd_analyze(args) -> int:
    buffer = decode_wav(Path(args.input).read_bytes())
    script = analyze(buffer)
    Path(args.out).write_text(
        serialize_script(script, source=os.path.basename(args.input)), encoding="utf-8"
    )
    kinds = [e.kind for e in script.events]
    print_report(
        [
            ("duration", round(script.duration, 6)),
            ("events", len(script.events)),
            ("beats", kinds.count(EventKind.BEAT)),
            ("notes", kinds.count(EventKind.NOTE)),
            ("accents", kinds.count(EventKind.ACCENT)),
            ("out", args.out),
        ],
        args.format,
    )
    return 0


def cmd_tutorial(args) -> int:
    script = tutorial_script(args.kind)
    Path(args.out).write_text(
        serialize_script(script, source=f"tutorial:{args.kind}"), encoding="utf-8"
    )
    print_report(
        [("kind", args.kind), ("events", len(script.events)), ("duration", script.duration)],
        args.format,
    )
    return 0


def cmd_train(args) -> int:
    grid, config = _load_grid(args)
    config.seed = args.seed
    session = train(grid, args.episodes, config=config)
    Path(args.out).write_text(export_qtable(session.qtable) + "\n", encoding="utf-8")

    policy = greedy_policy(session.qtable, grid)
    rollout = evaluate_policy(policy, grid, max_steps=4 * grid.n_cells)
    bfs = bfs_shortest_path(grid)
    print_report(
        [
            ("episodes", args.episodes),
            ("total_steps", session.step),
            ("final_epsilon", round(session.epsilon, 6)),
            ("greedy_outcome", rollout.outcome.value),
            ("greedy_length", rollout.path_length if rollout.path_length is not None else -1),
            ("bfs_length", bfs if bfs is not None else -1),
            ("qtable", args.out),
        ],
        args.format,
    )
    return 0


def cmd_play(args) -> int:
    grid, _ = _load_grid(args)
    table = import_qtable(Path(args.qtable).read_text(encoding="utf-8"), grid.width, grid.height)
    policy = greedy_policy(table, grid)
    rollout = evaluate_policy(policy, grid, max_steps=4 * grid.n_cells)
    if args.format == "records":
        print(json.dumps({"metric": "outcome", "value": rollout.outcome.value}))
        print(json.dumps({"metric": "length", "value": rollout.path_length}))
        print(json.dumps({"metric": "trail", "value": [list(p) for p in rollout.trail]}))
    else:
        for (x0, y0), (x1, y1) in zip(rollout.trail, rollout.trail[1:]):
            move = (
                "up" if y1 < y0 else "down" if y1 > y0 else
                "left" if x1 < x0 else "right" if x1 > x0 else "blocked"
            )
            print(f"({x0},{y0}) -{move}-> ({x1},{y1})")
        print(f"outcome: {rollout.outcome.value}")
        if rollout.outcome is RolloutOutcome.REACHED_GOAL:
            print(f"length: {rollout.path_length}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from mlscope.service import create_app

    uvicorn.run(create_app(workers=args.workers), host=args.host, port=args.port)
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage; 2 on bad flags
        return int(exc.code or 0)
    try:
        if args.command == "isochrome":
            return cmd_decompose(args)
        if args.command == "haptics":
            return cmd_analyze(args) if args.subcommand == "analyze" else cmd_tutorial(args)
        if args.command == "qlearn":
            return cmd_train(args) if args.subcommand == "train" else cmd_play(args)
        if args.command == "serve":
            return cmd_serve(args)
    except MlscopeError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error IOError: {exc}", file=sys.stderr)
        return 1
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
