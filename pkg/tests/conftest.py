"""Shared synthesis helpers for audio and image fixtures."""

import io
import struct
import wave

import numpy as np
import pytest


def sine(freq: float, duration: float, sample_rate: int = 44100, amp: float = 0.8) -> np.ndarray:
    t = np.arange(int(duration * sample_rate)) / sample_rate
    return amp * np.sin(2.0 * np.pi * freq * t)


def click_track(
    times: list[float],
    duration: float,
    sample_rate: int = 44100,
    amps: list[float] | None = None,
    click_len: int = 64,
) -> np.ndarray:
    """Decaying broadband bursts at the given onset times."""
    samples = np.zeros(int(duration * sample_rate))
    burst = np.exp(-np.arange(click_len) / 8.0)
    burst *= np.sign(np.sin(np.arange(click_len) * 1.7) + 1e-9)  # broadband
    if amps is None:
        amps = [1.0] * len(times)
    for t0, a in zip(times, amps):
        start = int(round(t0 * sample_rate))
        stop = min(start + click_len, len(samples))
        samples[start:stop] += a * burst[: stop - start]
    return np.clip(samples, -1.0, 1.0)


def pcm16_wav_bytes(samples: np.ndarray, sample_rate: int = 44100, channels: int = 1) -> bytes:
    """Reference WAV encoder: the stdlib wave module (independent of the
    package's own RIFF parser)."""
    ints = np.clip(np.round(samples * 32767), -32768, 32767).astype("<i2")
    buf = io.BytesIO()
    with wave.open(buf, "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(2)
        w.setframerate(sample_rate)
        w.writeframes(ints.tobytes())
    return buf.getvalue()


def raw_wav_bytes(
    payload: bytes, sample_rate: int, channels: int, bits: int, audio_format: int
) -> bytes:
    """Hand-assembled RIFF/WAVE container for exact-byte tests."""
    block_align = channels * bits // 8
    fmt = struct.pack(
        "<HHIIHH", audio_format, channels, sample_rate, sample_rate * block_align, block_align, bits
    )
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    body += b"data" + struct.pack("<I", len(payload)) + payload
    return b"RIFF" + struct.pack("<I", len(body)) + body


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
