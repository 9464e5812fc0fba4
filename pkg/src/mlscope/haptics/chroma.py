"""Pitch-class (chroma) aggregation of spectrogram magnitudes.

Each frequency bin inside the piano range folds its magnitude onto the
pitch class of its nearest equal-tempered semitone (A4 = 440 Hz). Class
indices: 0=C, 1=C#, ..., 9=A, 10=A#, 11=B.
"""

from __future__ import annotations

import numpy as np

from mlscope.haptics.stft import Spectrogram

FMIN = 27.5     # A0
FMAX = 4186.0   # C8
A4_HZ = 440.0
A4_MIDI = 69

PITCH_CLASS_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


def _bin_classes(n_bins: int, window_size: int, sample_rate: int):
    """(usable-bin indices, their pitch classes) for one spectrogram geometry."""
    freqs = np.arange(n_bins) * sample_rate / window_size
    usable = (freqs >= FMIN) & (freqs <= FMAX)
    midi = np.rint(A4_MIDI + 12.0 * np.log2(freqs[usable] / A4_HZ)).astype(int)
    return np.flatnonzero(usable), midi % 12


def chroma(spec: Spectrogram) -> np.ndarray:
    """Per-frame 12-vector of summed magnitudes, shape (n_frames, 12)."""
    n_bins = spec.window_size // 2 + 1
    bins, classes = _bin_classes(n_bins, spec.window_size, spec.sample_rate)
    out = np.zeros((spec.n_frames, 12))
    if spec.n_frames == 0 or len(bins) == 0:
        return out
    mags = spec.frames[:, bins]
    for pc in range(12):
        sel = classes == pc
        if sel.any():
            out[:, pc] = mags[:, sel].sum(axis=1)
    return out
