"""Method runs and SNR scoring shared by the CLI, scripts and acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import hos, metrics, pct, ppt
from .errors import DegenerateError
from .preprocess import normalize_map
from .seq_model import FeatureMap, FrameSequence, Roi

METHODS = ("raw", "ppt", "pct", "hos")


def split_rois(rois: list[Roi]) -> tuple[Roi, list[Roi]]:
    """First reference ROI and every defect ROI."""
    refs = [r for r in rois if r.kind == "reference"]
    if not refs:
        raise ValueError("no reference ROI")
    return refs[0], [r for r in rois if r.kind == "defect"]


def snr_row(fmap, defects, reference) -> list[float | None]:
    return [metrics.snr(fmap, d, reference) for d in defects]


def _score(values) -> float:
    finite = [v for v in values if v is not None]
    return float(np.mean(finite)) if finite else -np.inf


def best_map(maps: list[FeatureMap], defects, reference) -> FeatureMap:
    """Map with the highest mean SNR over the defect ROIs; ties go to the lower index."""
    scores = [_score(snr_row(m, defects, reference)) for m in maps]
    return maps[int(np.argmax(scores))]


def max_contrast_frame(seq: FrameSequence, defects, reference) -> int:
    """Frame where the mean defect-minus-reference contrast peaks."""
    curves = [metrics.contrast_curve(seq, d, reference).values for d in defects]
    return int(np.argmax(np.mean(curves, axis=0)))


def raw_map(seq: FrameSequence, k: int) -> FeatureMap:
    return FeatureMap(seq.frame(k), "raw", k)


def best_raw_snr(seq: FrameSequence, defect: Roi, reference: Roi) -> tuple[float, int]:
    """Highest SNR any single frame reaches for one defect, and that frame."""
    best, best_k = -np.inf, 0
    for k in range(seq.frames):
        try:
            s = metrics.snr(seq.frame(k), defect, reference)
        except DegenerateError:
            continue
        if s is not None and s > best:
            best, best_k = s, k
    return best, best_k


@dataclass
class AnalysisConfig:
    methods: tuple[str, ...] = METHODS
    max_bin: int = ppt.DEFAULT_MAX_BIN
    ppt_bin: int | None = None
    n_components: int = pct.DEFAULT_COMPONENTS
    pct_eof: int | None = None
    pct_center: str = pct.DEFAULT_CENTERING
    raw_time: float | None = None


@dataclass
class Analysis:
    maps: list[FeatureMap] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def analyze(seq: FrameSequence, rois: list[Roi], config: AnalysisConfig) -> Analysis:
    reference, defects = split_rois(rois)
    out = Analysis()
    for method in config.methods:
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
    if "raw" in config.methods:
        if config.raw_time is not None:
            k = seq.frame_index(config.raw_time)
        elif defects:
            k = max_contrast_frame(seq, defects, reference)
        else:
            k = seq.frames - 1
        out.maps.append(raw_map(seq, k))
        out.notes.append(f"raw frame {k} at {k * seq.dt:g} s")
    if "ppt" in config.methods:
        if config.ppt_bin is not None and not 1 <= config.ppt_bin <= seq.frames // 2:
            raise ValueError(f"--ppt-bin must be in 1..{seq.frames // 2}")
        max_bin = max(config.max_bin, config.ppt_bin or 1)
        res = ppt.ppt_analyze(seq, min(max_bin, seq.frames // 2))
        for kind, maps in (("phase", res.phase_maps), ("amplitude", res.amplitude_maps)):
            if config.ppt_bin is not None:
                chosen = maps[config.ppt_bin - 1]
            else:
                chosen = best_map(maps, defects, reference) if defects else maps[0]
            out.maps.append(chosen)
            out.notes.append(
                f"ppt {kind} bin {chosen.index} at {res.frequency(chosen.index):.6g} Hz"
            )
    if "pct" in config.methods:
        n = min(max(config.n_components, config.pct_eof or 1), seq.frames, seq.width * seq.height)
        res = pct.pct_analyze(seq, n, config.pct_center)
        if config.pct_eof is not None:
            if config.pct_eof > len(res.eof_maps):
                raise ValueError(f"EOF {config.pct_eof} not available (rank {len(res.eof_maps)})")
            chosen = res.eof(config.pct_eof)
        else:
            chosen = best_map(res.eof_maps, defects, reference) if defects else res.eof_maps[0]
        out.maps.append(chosen)
        out.notes.append(f"pct EOF {chosen.index} ({config.pct_center})")
    if "hos" in config.methods:
        skew, kurt = hos.hos_analyze(seq)
        out.maps.extend([skew, kurt])
        if skew.flagged:
            out.notes.append(f"hos: {len(skew.flagged)} constant pixels set to 0")
    return out


def snr_table(maps: list[FeatureMap], rois: list[Roi]) -> list[tuple[str, str, float | None, float | None]]:
    """(map label, roi name, SNR on the map, SNR on its normalized copy)."""
    reference, defects = split_rois(rois)
    rows = []
    for m in maps:
        norm = normalize_map(m)
        for d in defects:
            raw_db = metrics.snr(m, d, reference)
            norm_db = metrics.snr(norm, d, reference)
            rows.append((m.label, d.name, raw_db, norm_db))
    return rows
