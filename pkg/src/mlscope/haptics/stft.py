"""Short-time Fourier transform with Hann windowing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mlscope.errors import InvalidHop, InvalidWindow
from mlscope.haptics.wav import AudioBuffer

MIN_WINDOW = 32


@dataclass(frozen=True)
class Spectrogram:
    """Magnitude frames: (n_frames, window_size//2 + 1), all >= 0."""

    frames: np.ndarray
    window_size: int
    hop: int
    sample_rate: int

    @property
    def n_frames(self) -> int:
        return len(self.frames)

    @property
    def hop_seconds(self) -> float:
        return self.hop / self.sample_rate

    def frame_center_time(self, index: int) -> float:
        """Time of a frame's window center; events detected from frame-to-frame
        changes are anchored here."""
        return (index * self.hop + self.window_size / 2) / self.sample_rate


def _hann(n: int) -> np.ndarray:
    # periodic variant, standard for overlapped analysis
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def stft(buffer: AudioBuffer, window_size: int = 4096, hop: int = 1024) -> Spectrogram:
    """Hann-windowed magnitude spectrogram.

    Frame f covers samples [f*hop, f*hop + window_size); inputs shorter than
    one window produce zero frames.
    """
    if window_size < MIN_WINDOW or window_size & (window_size - 1):
        raise InvalidWindow(f"window must be a power of two >= {MIN_WINDOW}, got {window_size}")
    if not 1 <= hop <= window_size:
        raise InvalidHop(f"hop must be in [1, {window_size}], got {hop}")

    samples = buffer.samples
    if len(samples) < window_size:
        frames = np.empty((0, window_size // 2 + 1))
    else:
        n_frames = (len(samples) - window_size) // hop + 1
        idx = np.arange(window_size)[None, :] + hop * np.arange(n_frames)[:, None]
        segments = samples[idx] * _hann(window_size)[None, :]
        frames = np.abs(np.fft.rfft(segments, axis=1))
    return Spectrogram(
        frames=frames, window_size=window_size, hop=hop, sample_rate=buffer.sample_rate
    )
