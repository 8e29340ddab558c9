"""Per-pixel skewness and kurtosis of the temporal distribution.

Population (divide-by-N) moments, computed two-pass in float64: temperatures sit
at 20-60 degC with sub-degree spread, so raw power sums would cancel badly.
Kurtosis is the raw fourth standardized moment (3 for a normal), not excess.
"""
from __future__ import annotations

import numpy as np

from .seq_model import FeatureMap, FrameSequence


class DegenerateSeries(ValueError):
    """The series is constant, so its standardized moments are undefined."""


def _central_moments(x: np.ndarray):
    mu = x.mean(axis=-1, keepdims=True)
    d = x - mu
    d2 = d * d
    m2 = d2.mean(axis=-1)
    m3 = (d2 * d).mean(axis=-1)
    m4 = (d2 * d2).mean(axis=-1)
    return m2, m3, m4


def _check(series) -> np.ndarray:
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need a 1D series with at least 2 samples")
    return x


def skewness_pixel(series) -> float:
    x = _check(series)
    if np.ptp(x) == 0:
        raise DegenerateSeries("constant series")
    m2, m3, _ = _central_moments(x)
    if m2 == 0:
        raise DegenerateSeries("constant series")
    return float(m3 / m2**1.5)


def kurtosis_pixel(series) -> float:
    x = _check(series)
    if np.ptp(x) == 0:
        raise DegenerateSeries("constant series")
    m2, _, m4 = _central_moments(x)
    if m2 == 0:
        raise DegenerateSeries("constant series")
    return float(m4 / (m2 * m2))


def hos_analyze(seq: FrameSequence) -> tuple[FeatureMap, FeatureMap]:
    """Skewness and kurtosis maps; constant pixels get 0 and are listed in ``flagged``."""
    if seq.frames < 2:
        raise ValueError("HOS needs at least 2 frames")
    x = seq.data.reshape(seq.frames, -1).T.astype(np.float64)
    m2, m3, m4 = _central_moments(x)
    # the mean of identical floats can be off by an ulp, so test constancy directly
    bad = (np.ptp(x, axis=1) == 0) | (m2 == 0)
    safe = np.where(bad, 1.0, m2)
    skew = np.where(bad, 0.0, m3 / safe**1.5)
    kurt = np.where(bad, 0.0, m4 / (safe * safe))
    shape = (seq.height, seq.width)
    flagged = [(int(p % seq.width), int(p // seq.width)) for p in np.flatnonzero(bad)]
    return (
        FeatureMap(skew.reshape(shape), "hos-skewness", 0, flagged=flagged),
        FeatureMap(kurt.reshape(shape), "hos-kurtosis", 0, flagged=list(flagged)),
    )
