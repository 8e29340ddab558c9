"""ROI statistics, contrast curves and the SNR detectability score."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError
from .seq_model import FeatureMap, FrameSequence, Roi


@dataclass(frozen=True)
class RoiStats:
    roi: Roi
    mean: float
    stddev: float  # population
    pixel_count: int


@dataclass(frozen=True)
class ContrastCurve:
    times: np.ndarray
    values: np.ndarray


def _values(image) -> np.ndarray:
    return image.values if isinstance(image, FeatureMap) else np.asarray(image, dtype=np.float64)


def roi_stats(fmap, roi: Roi) -> RoiStats:
    v = _values(fmap)
    roi.check_bounds(v.shape[1], v.shape[0])
    patch = v[roi.slices].astype(np.float64)
    mean = patch.mean()
    mean += (patch - mean).mean()  # one refinement pass; matters under large offsets
    std = math.sqrt(((patch - mean) ** 2).mean())
    return RoiStats(roi, float(mean), std, patch.size)


def snr(fmap, defect: Roi, reference: Roi) -> float | None:
    """``20 log10(|Def_mu - Ref_mu| / Ref_sigma)`` in dB.

    Returns None when the two means are exactly equal (no contrast); raises
    DegenerateError when the reference has zero spread.
    """
    d = roi_stats(fmap, defect)
    r = roi_stats(fmap, reference)
    if r.stddev == 0:
        raise DegenerateError(f"reference ROI {reference.name!r} has zero standard deviation")
    diff = abs(d.mean - r.mean)
    if diff == 0:
        return None
    return 20.0 * math.log10(diff / r.stddev)


def roi_means(seq: FrameSequence, roi: Roi) -> np.ndarray:
    roi.check_bounds(seq.width, seq.height)
    rows, cols = roi.slices
    return seq.data[:, rows, cols].astype(np.float64).mean(axis=(1, 2))


def contrast_curve(seq: FrameSequence, defect: Roi, reference: Roi) -> ContrastCurve:
    """Defect-ROI mean minus reference-ROI mean, frame by frame."""
    return ContrastCurve(seq.times, roi_means(seq, defect) - roi_means(seq, reference))


def max_contrast_time(curve: ContrastCurve) -> tuple[float, float]:
    if len(curve.values) == 0:
        raise ValueError("empty contrast curve")
    k = int(np.argmax(curve.values))  # argmax returns the first maximum
    return float(curve.times[k]), float(curve.values[k])
