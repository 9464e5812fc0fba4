"""Minimal RIFF/WAVE reader: PCM 16-bit and IEEE float 32-bit, mono/stereo.

Hand-rolled instead of the stdlib ``wave`` module because we need float32
support and precise error classification for the service layer.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from mlscope.errors import DecodeError, UnsupportedEncoding

PCM = 1
IEEE_FLOAT = 3


@dataclass(frozen=True)
class AudioBuffer:
    """Mono audio, samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be > 0, got {self.sample_rate}")
        if samples.size and (samples.min() < -1.0 or samples.max() > 1.0):
            raise ValueError("samples must lie within [-1, 1]")
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _chunks(data: bytes):
    """Iterate (chunk id, payload) pairs of a RIFF body."""
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        payload = data[pos + 8 : pos + 8 + size]
        if len(payload) < size:
            raise DecodeError(f"chunk {cid!r} truncated ({len(payload)} of {size} bytes)")
        yield cid, payload
        pos += 8 + size + (size & 1)  # chunks are word-aligned


def decode_wav(data: bytes) -> AudioBuffer:
    """Decode WAV bytes. Stereo mixes to mono by channel average; 16-bit
    samples scale by 1/32768."""
    if len(data) < 12 or data[:4] != b"RIFF":
        raise DecodeError("missing RIFF magic")
    if data[8:12] != b"WAVE":
        raise DecodeError("RIFF container is not WAVE")

    fmt = None
    payload = None
    for cid, body in _chunks(data):
        if cid == b"fmt " and fmt is None:
            if len(body) < 16:
                raise DecodeError("fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data" and payload is None:
            payload = body
    if fmt is None:
        raise DecodeError("no fmt chunk")
    if payload is None:
        raise DecodeError("no data chunk")

    audio_format, channels, sample_rate, _, _, bits = fmt
    if sample_rate <= 0:
        raise DecodeError(f"bad sample rate {sample_rate}")
    if channels not in (1, 2):
        raise UnsupportedEncoding(f"{channels} channels; only mono/stereo supported")
    if audio_format == PCM and bits == 16:
        raw = np.frombuffer(payload[: len(payload) // 2 * 2], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif audio_format == IEEE_FLOAT and bits == 32:
        raw = np.frombuffer(payload[: len(payload) // 4 * 4], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise UnsupportedEncoding(f"format tag {audio_format} at {bits} bits")

    if channels == 2:
        samples = samples[: len(samples) // 2 * 2].reshape(-1, 2).mean(axis=1)
    samples = np.clip(samples, -1.0, 1.0)
    return AudioBuffer(samples=samples, sample_rate=int(sample_rate))
