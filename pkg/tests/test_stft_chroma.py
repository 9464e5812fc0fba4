"""STFT frame geometry, Parseval energy balance, and chroma folding."""

import numpy as np
import pytest

from mlscope.errors import InvalidHop, InvalidWindow
from mlscope.haptics import AudioBuffer, chroma, stft
from mlscope.haptics.chroma import PITCH_CLASS_NAMES

from conftest import sine

SR = 44100


def buf(samples, sr=SR):
    return AudioBuffer(samples=np.asarray(samples, dtype=float), sample_rate=sr)


def test_frame_count_arithmetic():
    spec = stft(buf(np.zeros(1024)), window_size=512, hop=256)
    assert spec.n_frames == 3
    assert spec.frames.shape == (3, 257)


def test_short_input_yields_zero_frames():
    spec = stft(buf(np.zeros(100)), window_size=512, hop=256)
    assert spec.n_frames == 0


def test_zero_signal_zero_magnitudes():
    spec = stft(buf(np.zeros(4096)), window_size=1024, hop=512)
    assert np.all(spec.frames == 0.0)


def test_bin_center_sine_peaks_at_its_bin():
    window = 512
    k = 20
    freq = k * SR / window
    spec = stft(buf(sine(freq, 0.2)), window_size=window, hop=256)
    assert spec.n_frames > 3
    for frame in spec.frames:
        assert int(np.argmax(frame)) == k


def test_window_validation():
    with pytest.raises(InvalidWindow):
        stft(buf(np.zeros(64)), window_size=48, hop=16)  # not a power of two
    with pytest.raises(InvalidWindow):
        stft(buf(np.zeros(64)), window_size=16, hop=8)  # too small


def test_hop_validation():
    with pytest.raises(InvalidHop):
        stft(buf(np.zeros(64)), window_size=32, hop=0)
    with pytest.raises(InvalidHop):
        stft(buf(np.zeros(64)), window_size=32, hop=33)


def hann(n):
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def test_parseval_per_frame():
    # independent oracle: recompute windowed segments, compare time-domain
    # energy against the spectrogram's magnitudes via Parseval's theorem
    rng = np.random.default_rng(8)
    samples = np.clip(rng.normal(0, 0.3, size=8192), -1, 1)
    window, hop = 1024, 256
    spec = stft(buf(samples), window_size=window, hop=hop)
    for f in range(spec.n_frames):
        seg = samples[f * hop : f * hop + window] * hann(window)
        time_energy = np.sum(seg**2)
        mags = spec.frames[f]
        freq_energy = (mags[0] ** 2 + mags[-1] ** 2 + 2.0 * np.sum(mags[1:-1] ** 2)) / window
        assert abs(time_energy - freq_energy) <= 1e-6 * max(time_energy, 1e-30)


def midi_to_freq(midi: int) -> float:
    return 440.0 * 2.0 ** ((midi - 69) / 12.0)


def dominant_class(freq: float) -> int:
    from mlscope.haptics.script import CHROMA_HOP, CHROMA_WINDOW

    spec = stft(buf(sine(freq, 0.4)), window_size=CHROMA_WINDOW, hop=CHROMA_HOP)
    vectors = chroma(spec)
    assert len(vectors) > 0
    return int(np.argmax(vectors.sum(axis=0)))


def test_chroma_440_is_class_A():
    # 440 Hz -> MIDI 69 -> class 9
    assert dominant_class(440.0) == 9


def test_chroma_880_octave_equivalence():
    assert dominant_class(880.0) == 9


def test_chroma_silence_is_all_zero():
    spec = stft(buf(np.zeros(8192)), window_size=4096, hop=1024)
    assert np.all(chroma(spec) == 0.0)


@pytest.mark.parametrize("pc", range(12), ids=PITCH_CLASS_NAMES)
@pytest.mark.parametrize("octave", [3, 4, 5])
def test_chroma_dominant_class_across_octaves(pc, octave):
    midi = 12 * (octave + 1) + pc
    assert dominant_class(midi_to_freq(midi)) == pc


def test_chroma_octave_invariance_within_range():
    for freq in (55.0, 110.0, 261.63, 329.63, 987.77):
        assert dominant_class(freq) == dominant_class(2.0 * freq)


def test_per_frame_argmax_stability():
    spec = stft(buf(sine(440.0, 0.5)), window_size=4096, hop=1024)
    vectors = chroma(spec)
    assert len(vectors) > 0
    for v in vectors:
        assert int(np.argmax(v)) == 9
