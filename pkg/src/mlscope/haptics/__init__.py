"""Audio analysis compiled into finger-addressed haptic scripts."""

from mlscope.haptics.wav import AudioBuffer, decode_wav
from mlscope.haptics.stft import Spectrogram, stft
from mlscope.haptics.chroma import chroma
from mlscope.haptics.events import (
    EventKind,
    Finger,
    HapticEvent,
    detect_accents,
    detect_beats,
    detect_notes,
    finger_for_pitch_class,
)
from mlscope.haptics.script import (
    HapticScript,
    TutorialKind,
    analyze,
    compile_script,
    parse_script,
    serialize_script,
    tutorial_script,
)

__all__ = [
    "AudioBuffer",
    "Spectrogram",
    "EventKind",
    "Finger",
    "HapticEvent",
    "HapticScript",
    "TutorialKind",
    "decode_wav",
    "stft",
    "chroma",
    "detect_notes",
    "detect_beats",
    "detect_accents",
    "finger_for_pitch_class",
    "compile_script",
    "tutorial_script",
    "serialize_script",
    "parse_script",
    "analyze",
]
