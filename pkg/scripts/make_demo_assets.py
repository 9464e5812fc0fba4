#!/usr/bin/env python3
"""Generate demo inputs and run all three engines over them.

Writes into --out (default ./demo): a synthetic painting, its isochromatic
layers + point cloud, a two-bar click-and-melody WAV, its haptic script,
and a trained Q-table for level 5.
"""

import argparse
import wave
from pathlib import Path

import numpy as np
from PIL import Image

from mlscope.cli import run as cli_run


def synth_painting(path: Path, size: int = 192) -> None:
    """Soft color-field 'painting' with a few dominant hues."""
    yy, xx = np.mgrid[0:size, 0:size] / size
    r = 255 * (0.35 + 0.6 * np.exp(-((xx - 0.3) ** 2 + (yy - 0.25) ** 2) * 6))
    g = 255 * (0.25 + 0.7 * np.exp(-((xx - 0.7) ** 2 + (yy - 0.6) ** 2) * 5))
    b = 255 * (0.3 + 0.6 * yy)
    rng = np.random.default_rng(0)
    img = np.stack([r, g, b], axis=-1) + rng.normal(0, 6, (size, size, 3))
    Image.fromarray(np.clip(img, 0, 255).astype(np.uint8), "RGB").save(path)


def synth_tune(path: Path, sample_rate: int = 44100) -> None:
    """Clicks on the beat plus a short C-major phrase."""
    duration = 8.0
    t = np.arange(int(duration * sample_rate)) / sample_rate
    samples = np.zeros_like(t)
    for k in range(16):  # 120 BPM clicks
        start = int((0.25 + 0.5 * k) * sample_rate)
        n = 96
        burst = np.exp(-np.arange(n) / 10.0) * np.sign(np.sin(np.arange(n) * 1.3) + 1e-9)
        samples[start : start + n] += (1.0 if k % 4 == 0 else 0.45) * burst
    phrase = [261.63, 329.63, 392.0, 523.25, 392.0, 329.63, 261.63, 329.63]
    for i, freq in enumerate(phrase):
        seg = slice(int(i * sample_rate), int((i + 0.8) * sample_rate))
        env = np.linspace(1.0, 0.2, seg.stop - seg.start)
        samples[seg] += 0.3 * env * np.sin(2 * np.pi * freq * t[: seg.stop - seg.start])
    ints = np.clip(samples * 0.8, -1, 1)
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(sample_rate)
        w.writeframes((ints * 32767).astype("<i2").tobytes())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    painting = out / "painting.png"
    synth_painting(painting)
    print(f"wrote {painting}")
    assert cli_run(
        ["isochrome", "decompose", "--input", str(painting), "--k", "6",
         "--out", str(out / "layers"), "--seed", "0"]
    ) == 0

    tune = out / "tune.wav"
    synth_tune(tune)
    print(f"wrote {tune}")
    assert cli_run(
        ["haptics", "analyze", "--input", str(tune), "--out", str(out / "script.txt")]
    ) == 0

    assert cli_run(
        ["qlearn", "train", "--level", "5", "--episodes", "2000", "--seed", "42",
         "--out", str(out / "level5_qtable.json")]
    ) == 0
    print(f"demo assets in {out}/")


if __name__ == "__main__":
    main()
