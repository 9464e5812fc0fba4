"""Haptic event types and the beat/note/accent detectors.

The five-finger note layout splits the 12 pitch classes 4/3/1/2/2:
thumb C C# A A#, index D D# B, middle E, ring F F#, little G G#.
Beats and accents address the thumb.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from mlscope.haptics.stft import Spectrogram


class Finger(enum.Enum):
    THUMB = "thumb"
    INDEX = "index"
    MIDDLE = "middle"
    RING = "ring"
    LITTLE = "little"


class EventKind(enum.IntEnum):
    # numeric value doubles as the tie-break rank at equal times
    BEAT = 0
    NOTE = 1
    ACCENT = 2

    @property
    def label(self) -> str:
        return self.name.lower()


_FINGER_CLASSES = {
    Finger.THUMB: (0, 1, 9, 10),    # C, C#, A, A#
    Finger.INDEX: (2, 3, 11),       # D, D#, B
    Finger.MIDDLE: (4,),            # E
    Finger.RING: (5, 6),            # F, F#
    Finger.LITTLE: (7, 8),          # G, G#
}
_CLASS_TO_FINGER = {pc: f for f, pcs in _FINGER_CLASSES.items() for pc in pcs}


def finger_for_pitch_class(pc: int) -> Finger:
    if not 0 <= pc <= 11:
        raise ValueError(f"pitch class must be in [0, 11], got {pc}")
    return _CLASS_TO_FINGER[pc]


@dataclass(frozen=True, order=False)
class HapticEvent:
    t: float
    kind: EventKind
    finger: Finger
    intensity: float
    pitch_class: int | None = None

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"event time must be >= 0, got {self.t}")
        if not 0.0 <= self.intensity <= 1.0:
            raise ValueError(f"intensity must be in [0, 1], got {self.intensity}")
        if (self.pitch_class is not None) != (self.kind == EventKind.NOTE):
            raise ValueError("pitch_class is required for notes and forbidden otherwise")
        if self.pitch_class is not None and not 0 <= self.pitch_class <= 11:
            raise ValueError(f"pitch class must be in [0, 11], got {self.pitch_class}")

    def sort_key(self):
        pc = self.pitch_class if self.pitch_class is not None else -1
        return (self.t, int(self.kind), pc)


def note_event(t: float, pc: int, intensity: float) -> HapticEvent:
    return HapticEvent(
        t=t,
        kind=EventKind.NOTE,
        finger=finger_for_pitch_class(pc),
        intensity=intensity,
        pitch_class=pc,
    )


MAX_SIMULTANEOUS_NOTES = 3


def detect_notes(
    chromagram: np.ndarray, hop_seconds: float, rel_threshold: float = 0.6
) -> list[HapticEvent]:
    """Note events from a (frames, 12) chromagram.

    A class is active in a frame when its energy reaches rel_threshold of
    the frame maximum, keeping at most the top 3 classes. Runs of
    consecutive active frames fuse into one event anchored at the run's
    first frame, carrying the peak relative energy as intensity.
    """
    if not 0.0 < rel_threshold <= 1.0:
        raise ValueError(f"rel_threshold must be in (0, 1], got {rel_threshold}")
    chromagram = np.asarray(chromagram, dtype=np.float64)
    open_runs: dict[int, tuple[int, float]] = {}  # class -> (start frame, peak intensity)
    events = []

    def close(pc: int):
        start, peak = open_runs.pop(pc)
        events.append(note_event(start * hop_seconds, pc, min(peak, 1.0)))

    for f, frame in enumerate(chromagram):
        fmax = frame.max()
        active: dict[int, float] = {}
        if fmax > 0.0:
            ranked = sorted(range(12), key=lambda pc: (-frame[pc], pc))
            for pc in ranked[:MAX_SIMULTANEOUS_NOTES]:
                if frame[pc] >= rel_threshold * fmax:
                    active[pc] = frame[pc] / fmax
        for pc in list(open_runs):
            if pc not in active:
                close(pc)
        for pc, rel in active.items():
            if pc in open_runs:
                start, peak = open_runs[pc]
                open_runs[pc] = (start, max(peak, rel))
            else:
                open_runs[pc] = (f, rel)
    for pc in list(open_runs):
        close(pc)
    events.sort(key=HapticEvent.sort_key)
    return events


BEAT_MEAN_WINDOW_S = 0.5
BEAT_MIN_SEPARATION_S = 0.1
BEAT_FLOOR_RATIO = 0.05  # delta above the moving mean, relative to the global peak


def _moving_mean(env: np.ndarray, width: int) -> np.ndarray:
    """Centered moving mean with true (shrinking) windows at the edges."""
    half = width // 2
    padded = np.concatenate([np.zeros(1), np.cumsum(env)])
    n = len(env)
    lo = np.clip(np.arange(n) - half, 0, n)
    hi = np.clip(np.arange(n) + half + 1, 0, n)
    return (padded[hi] - padded[lo]) / np.maximum(hi - lo, 1)


def detect_beats(spec: Spectrogram) -> list[HapticEvent]:
    """Beats from the half-wave-rectified spectral flux of a spectrogram.

    Peaks must exceed a centered moving mean (0.5 s window) by a margin of
    5% of the global flux maximum, and accepted beats keep >= 0.1 s apart
    (stronger peaks win). Intensity is flux relative to the global maximum.
    """
    if spec.n_frames < 2:
        return []
    diff = np.diff(spec.frames, axis=0)
    env = np.zeros(spec.n_frames)
    env[1:] = np.maximum(diff, 0.0).sum(axis=1)
    peak = env.max()
    if peak <= 0.0:
        return []

    frame_rate = spec.sample_rate / spec.hop
    mean_width = max(1, round(BEAT_MEAN_WINDOW_S * frame_rate))
    threshold = _moving_mean(env, mean_width) + BEAT_FLOOR_RATIO * peak

    candidates = [
        i
        for i in range(1, spec.n_frames)
        if env[i] > threshold[i]
        and env[i] > env[i - 1]
        and (i == spec.n_frames - 1 or env[i] >= env[i + 1])
    ]
    # strongest-first acceptance keeps the dominant peak of each cluster
    candidates.sort(key=lambda i: (-env[i], i))
    accepted: list[int] = []
    min_gap = BEAT_MIN_SEPARATION_S * frame_rate
    for i in candidates:
        if all(abs(i - j) >= min_gap for j in accepted):
            accepted.append(i)
    accepted.sort()

    return [
        HapticEvent(
            t=spec.frame_center_time(i),
            kind=EventKind.BEAT,
            finger=Finger.THUMB,
            intensity=float(env[i] / peak),
        )
        for i in accepted
    ]


ACCENT_PERCENTILE = 90


def detect_accents(beats: list[HapticEvent]) -> list[HapticEvent]:
    """A beat doubles as an accent iff its intensity strictly exceeds the
    90th percentile of all beat intensities."""
    if not beats:
        return []
    cutoff = float(np.percentile([b.intensity for b in beats], ACCENT_PERCENTILE))
    return [
        HapticEvent(t=b.t, kind=EventKind.ACCENT, finger=Finger.THUMB, intensity=b.intensity)
        for b in beats
        if b.intensity > cutoff
    ]
