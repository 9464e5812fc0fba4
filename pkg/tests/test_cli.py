"""CLI surface: flags, exit codes, files, and determinism."""

import json

import numpy as np
import pytest
from PIL import Image

from mlscope.cli import run

from conftest import click_track, pcm16_wav_bytes


def records(capsys):
    return {
        json.loads(line)["metric"]: json.loads(line)["value"]
        for line in capsys.readouterr().out.strip().splitlines()
    }


def write_png(path, pixels, width, height):
    img = Image.fromarray(
        np.asarray(pixels, np.uint8).reshape(height, width, 3), mode="RGB"
    )
    img.save(path, format="PNG")


def test_unknown_flag_exits_2(capsys):
    assert run(["qlearn", "train", "--level", "1", "--out", "q.txt", "--fast"]) == 2
    err = capsys.readouterr().err
    assert "--fast" in err


def test_missing_subcommand_exits_2():
    assert run(["qlearn"]) == 2
    assert run([]) == 2


def test_train_reports_and_writes_qtable(tmp_path, capsys):
    out = tmp_path / "qtable.txt"
    code = run(
        ["qlearn", "train", "--level", "1", "--episodes", "300",
         "--seed", "42", "--out", str(out), "--format", "records"]
    )
    assert code == 0
    rep = records(capsys)
    assert rep["episodes"] == 300
    assert rep["bfs_length"] == 8
    assert rep["greedy_length"] == 8
    values = json.loads(out.read_text())
    assert len(values) == 5 * 5 * 4


def test_train_determinism_byte_identical(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    argv = ["qlearn", "train", "--level", "2", "--episodes", "400", "--seed", "42"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_train_custom_grid_file(tmp_path, capsys):
    grid_file = tmp_path / "grid.json"
    grid_file.write_text(
        json.dumps(
            {"width": 3, "height": 1, "start": [0, 0], "cells": ["..G"]}
        )
    )
    out = tmp_path / "q.txt"
    code = run(
        ["qlearn", "train", "--grid", str(grid_file), "--episodes", "100",
         "--seed", "1", "--out", str(out), "--format", "records"]
    )
    assert code == 0
    rep = records(capsys)
    assert rep["greedy_length"] == rep["bfs_length"] == 2


def test_train_unknown_level_runtime_error(tmp_path, capsys):
    code = run(["qlearn", "train", "--level", "7", "--out", str(tmp_path / "q.txt")])
    assert code == 1
    assert "UnknownLevel" in capsys.readouterr().err


def test_play_prints_rollout(tmp_path, capsys):
    qfile = tmp_path / "q.txt"
    assert run(
        ["qlearn", "train", "--level", "1", "--episodes", "500", "--seed", "42",
         "--out", str(qfile)]
    ) == 0
    capsys.readouterr()
    code = run(["qlearn", "play", "--level", "1", "--qtable", str(qfile)])
    assert code == 0
    out = capsys.readouterr().out
    assert "outcome: reached_goal" in out
    assert "length: 8" in out
    assert out.count("->") == 8


def test_play_records_mode(tmp_path, capsys):
    qfile = tmp_path / "q.txt"
    run(["qlearn", "train", "--level", "1", "--episodes", "500", "--seed", "42",
         "--out", str(qfile)])
    capsys.readouterr()
    code = run(["qlearn", "play", "--level", "1", "--qtable", str(qfile),
                "--format", "records"])
    assert code == 0
    rep = records(capsys)
    assert rep["outcome"] == "reached_goal"
    assert rep["length"] == 8
    assert rep["trail"][0] == [0, 0]


def test_decompose_two_color_image(tmp_path, capsys):
    img = tmp_path / "img.png"
    pixels = [[0, 0, 0] if (x + y) % 2 == 0 else [255, 255, 255] for y in range(4) for x in range(4)]
    write_png(img, pixels, 4, 4)
    out_dir = tmp_path / "layers"
    code = run(
        ["isochrome", "decompose", "--input", str(img), "--k", "2",
         "--out", str(out_dir), "--seed", "3", "--format", "records"]
    )
    assert code == 0
    rep = records(capsys)
    assert rep["inertia"] == 0.0
    assert sorted(rep["layer_counts"]) == [8, 8]
    layer_files = sorted(p.name for p in out_dir.glob("layer_*.png"))
    assert layer_files == ["layer_00.png", "layer_01.png"]
    model = json.loads((out_dir / "model.json").read_text())
    assert model["k"] == 2
    ply = (out_dir / "cloud.ply").read_text()
    assert ply.splitlines()[2] == "element vertex 16"


def test_decompose_runtime_error_on_bad_image(tmp_path, capsys):
    bad = tmp_path / "bad.png"
    bad.write_bytes(b"nope")
    code = run(["isochrome", "decompose", "--input", str(bad), "--out", str(tmp_path / "o")])
    assert code == 1
    assert "DecodeError" in capsys.readouterr().err


def test_missing_input_file_is_runtime_error(tmp_path, capsys):
    code = run(["isochrome", "decompose", "--input", str(tmp_path / "ghost.png"),
                "--out", str(tmp_path / "o")])
    assert code == 1
    assert "IOError" in capsys.readouterr().err


def test_haptics_tutorial_files(tmp_path, capsys):
    out = tmp_path / "rhythm.txt"
    code = run(["haptics", "tutorial", "--kind", "rhythm", "--out", str(out),
                "--format", "records"])
    assert code == 0
    rep = records(capsys)
    assert rep["events"] == 24
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 25  # header + 24 events
    header = json.loads(lines[0])
    assert header["version"] == 1
    assert header["source"] == "tutorial:rhythm"


def test_haptics_analyze_click_wav(tmp_path, capsys):
    wav = tmp_path / "clicks.wav"
    times = [0.25 + 0.5 * k for k in range(8)]
    wav.write_bytes(pcm16_wav_bytes(click_track(times, 4.0)))
    out = tmp_path / "script.txt"
    code = run(["haptics", "analyze", "--input", str(wav), "--out", str(out),
                "--format", "records"])
    assert code == 0
    rep = records(capsys)
    assert rep["beats"] == 8
    assert rep["duration"] == pytest.approx(4.0)
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1 + rep["events"]


def test_haptics_analyze_empty_script_reports_zero(tmp_path, capsys):
    wav = tmp_path / "silence.wav"
    wav.write_bytes(pcm16_wav_bytes(np.zeros(44100)))
    out = tmp_path / "script.txt"
    code = run(["haptics", "analyze", "--input", str(wav), "--out", str(out),
                "--format", "records"])
    assert code == 0
    assert records(capsys)["events"] == 0


def test_tutorial_idempotent_output(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    run(["haptics", "tutorial", "--kind", "accents", "--out", str(a)])
    run(["haptics", "tutorial", "--kind", "accents", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
