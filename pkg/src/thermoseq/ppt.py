"""Pulse-phase thermography: per-pixel DFT, amplitude and phase maps per bin."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fft import fft
from .seq_model import FeatureMap, FrameSequence

# Phase is the complex argument, atan2(Im, Re), folded into (-pi, pi].
PHASE_CONVENTION = "atan2(im, re)"
DEFAULT_MAX_BIN = 10
_CHUNK = 4096


@dataclass(frozen=True)
class Spectrum:
    bins: np.ndarray  # complex, degC*s
    dt: float

    @property
    def n_frames(self) -> int:
        return self.bins.shape[-1]

    @property
    def df(self) -> float:
        return 1.0 / (self.n_frames * self.dt)

    @property
    def freqs(self) -> np.ndarray:
        return np.arange(self.n_frames) * self.df


@dataclass
class PptResult:
    amplitude_maps: list[FeatureMap]
    phase_maps: list[FeatureMap]
    df: float
    zero_amplitude: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    def frequency(self, n: int) -> float:
        return n * self.df


def dft_pixel(series, dt: float) -> Spectrum:
    """``F_n = dt * sum_k T(k dt) exp(-2 pi i n k / N)`` for one series (or a batch on the last axis)."""
    series = np.asarray(series, dtype=np.float64)
    if series.shape[-1] < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.isfinite(series)):
        raise ValueError("series has non-finite samples")
    return Spectrum(dt * fft(series), dt)


def phase(bins: np.ndarray) -> np.ndarray:
    ph = np.arctan2(bins.imag, bins.real)
    ph[ph == -np.pi] = np.pi
    ph[(bins.real == 0) & (bins.imag == 0)] = 0.0
    return ph


def amplitude(bins: np.ndarray) -> np.ndarray:
    return np.hypot(bins.real, bins.imag)


def spectrum_stack(seq: FrameSequence, max_bin: int | None = None) -> np.ndarray:
    """Complex bins ``0..max_bin`` for every pixel, shape (bins, height, width)."""
    n = seq.frames
    keep = n if max_bin is None else max_bin + 1
    pixels = seq.data.reshape(n, -1).T  # (M, N), a strided view
    out = np.empty((keep, pixels.shape[0]), dtype=np.complex128)
    for start in range(0, pixels.shape[0], _CHUNK):
        block = np.array(pixels[start : start + _CHUNK], dtype=np.float64)
        out[:, start : start + _CHUNK] = (seq.dt * fft(block))[:, :keep].T
    return out.reshape(keep, seq.height, seq.width)


def ppt_analyze(seq: FrameSequence, max_bin: int = DEFAULT_MAX_BIN) -> PptResult:
    if seq.frames < 2:
        raise ValueError("PPT needs at least 2 frames")
    if not 1 <= max_bin <= seq.frames // 2:
        raise ValueError(f"max_bin must be in 1..{seq.frames // 2}, got {max_bin}")
    spec = spectrum_stack(seq, max_bin)
    amps, phases, zeros = [], [], {}
    for n in range(1, max_bin + 1):
        a = amplitude(spec[n])
        flagged = [(int(x), int(y)) for y, x in zip(*np.nonzero(a == 0))]
        if flagged:
            zeros[n] = flagged
        amps.append(FeatureMap(a, "ppt-amplitude", n))
        phases.append(FeatureMap(phase(spec[n]), "ppt-phase", n, flagged=flagged))
    return PptResult(amps, phases, 1.0 / (seq.frames * seq.dt), zeros)
