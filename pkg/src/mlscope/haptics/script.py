"""Haptic scripts: compilation, tutorials, the analysis pipeline, and the
line-delimited wire format (one JSON record per line, header first)."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from mlscope.errors import EventBeyondDuration
from mlscope.haptics.chroma import chroma
from mlscope.haptics.events import (
    EventKind,
    Finger,
    HapticEvent,
    detect_accents,
    detect_beats,
    detect_notes,
    note_event,
)
from mlscope.haptics.stft import stft
from mlscope.haptics.wav import AudioBuffer

SCRIPT_VERSION = 1

# chroma wants frequency resolution (8192 @ 44.1 kHz resolves neighboring
# semitones down to octave 3), onsets want time resolution
CHROMA_WINDOW = 8192
CHROMA_HOP = 2048
ONSET_WINDOW = 1024
ONSET_HOP = 256
NOTE_REL_THRESHOLD = 0.6


@dataclass(frozen=True)
class HapticScript:
    events: tuple[HapticEvent, ...]
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        for a, b in zip(self.events, self.events[1:]):
            if b.t < a.t:
                raise ValueError("events must be sorted by non-decreasing time")
        for e in self.events:
            if e.t > self.duration + 1e-9:
                raise EventBeyondDuration(f"event at {e.t:.3f}s exceeds duration {self.duration:.3f}s")


def compile_script(
    notes: list[HapticEvent],
    beats: list[HapticEvent],
    accents: list[HapticEvent],
    duration: float,
) -> HapticScript:
    """Merge event streams sorted by (t, beat < note < accent, pitch class);
    note fingers are (re)assigned from the pitch-class layout."""
    merged = []
    for e in notes:
        merged.append(note_event(e.t, e.pitch_class, e.intensity))
    for e in beats:
        merged.append(HapticEvent(t=e.t, kind=EventKind.BEAT, finger=Finger.THUMB, intensity=e.intensity))
    for e in accents:
        merged.append(HapticEvent(t=e.t, kind=EventKind.ACCENT, finger=Finger.THUMB, intensity=e.intensity))
    for e in merged:
        if e.t > duration + 1e-9:
            raise EventBeyondDuration(f"event at {e.t:.3f}s exceeds duration {duration:.3f}s")
    merged.sort(key=HapticEvent.sort_key)
    return HapticScript(events=tuple(merged), duration=duration)


class TutorialKind(enum.Enum):
    RHYTHM = "rhythm"
    NOTES = "notes"
    ACCENTS = "accents"


TUTORIAL_BPM = 90
TUTORIAL_BEAT_SECONDS = 16.0
ACCENT_EVERY = 4
_C_MAJOR_SCALE = (0, 2, 4, 5, 7, 9, 11, 0)  # C D E F G A B C


def tutorial_script(kind: TutorialKind | str) -> HapticScript:
    """Three fixed practice scripts isolating rhythm, notes, and accents."""
    kind = TutorialKind(kind) if isinstance(kind, str) else kind
    interval = 60.0 / TUTORIAL_BPM
    if kind is TutorialKind.RHYTHM:
        beats = [
            HapticEvent(t=i * interval, kind=EventKind.BEAT, finger=Finger.THUMB, intensity=1.0)
            for i in range(int(TUTORIAL_BEAT_SECONDS / interval))
        ]
        return compile_script([], beats, [], TUTORIAL_BEAT_SECONDS)
    if kind is TutorialKind.NOTES:
        notes = [note_event(float(i), pc, 1.0) for i, pc in enumerate(_C_MAJOR_SCALE)]
        return compile_script(notes, [], [], float(len(_C_MAJOR_SCALE)))
    if kind is TutorialKind.ACCENTS:
        beats, accents = [], []
        for i in range(int(TUTORIAL_BEAT_SECONDS / interval)):
            stressed = i % ACCENT_EVERY == 0
            beats.append(
                HapticEvent(
                    t=i * interval,
                    kind=EventKind.BEAT,
                    finger=Finger.THUMB,
                    intensity=1.0 if stressed else 0.8,
                )
            )
            if stressed:
                accents.append(
                    HapticEvent(t=i * interval, kind=EventKind.ACCENT, finger=Finger.THUMB, intensity=1.0)
                )
        return compile_script([], beats, accents, TUTORIAL_BEAT_SECONDS)
    raise ValueError(f"unknown tutorial kind: {kind}")


def analyze(buffer: AudioBuffer) -> HapticScript:
    """Full pipeline: chroma notes + spectral-flux beats + accent outliers."""
    duration = buffer.duration
    notes: list[HapticEvent] = []
    if len(buffer.samples) >= CHROMA_WINDOW:
        spec = stft(buffer, CHROMA_WINDOW, CHROMA_HOP)
        notes = detect_notes(chroma(spec), spec.hop_seconds, NOTE_REL_THRESHOLD)
    beats: list[HapticEvent] = []
    if len(buffer.samples) >= ONSET_WINDOW + ONSET_HOP:
        beats = detect_beats(stft(buffer, ONSET_WINDOW, ONSET_HOP))
    return compile_script(notes, beats, detect_accents(beats), duration)


def event_record(e: HapticEvent) -> dict:
    rec = {
        "t": round(e.t, 6),
        "kind": e.kind.label,
        "finger": e.finger.value,
        "intensity": round(e.intensity, 6),
    }
    if e.pitch_class is not None:
        rec["pitch_class"] = e.pitch_class
    return rec


def serialize_script(script: HapticScript, source: str = "") -> str:
    """Header record then one event record per line."""
    lines = [
        json.dumps(
            {"version": SCRIPT_VERSION, "duration": round(script.duration, 6), "source": source}
        )
    ]
    lines.extend(json.dumps(event_record(e)) for e in script.events)
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> tuple[HapticScript, dict]:
    """Inverse of serialize_script; returns (script, header)."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty script document")
    header = json.loads(lines[0])
    events = []
    for line in lines[1:]:
        rec = json.loads(line)
        kind = EventKind[rec["kind"].upper()]
        events.append(
            HapticEvent(
                t=rec["t"],
                kind=kind,
                finger=Finger(rec["finger"]),
                intensity=rec["intensity"],
                pitch_class=rec.get("pitch_class"),
            )
        )
    return HapticScript(events=tuple(events), duration=header["duration"]), header
