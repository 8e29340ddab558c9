"""Spatial binning, temporal cropping and min-max normalization."""
from __future__ import annotations

import numpy as np

from .seq_model import FeatureMap, FrameSequence


def spatial_bin(seq: FrameSequence, window: int) -> FrameSequence:
    """Average non-overlapping ``window x window`` blocks in every frame.

    Trailing rows/columns that do not fill a whole window are dropped.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if window > seq.width or window > seq.height:
        raise ValueError(f"window {window} larger than frame {seq.width}x{seq.height}")
    if window == 1:
        return seq
    h, w = seq.height // window, seq.width // window
    block = seq.data[:, : h * window, : w * window].astype(np.float64)
    binned = block.reshape(seq.frames, h, window, w, window).mean(axis=(2, 4))
    return FrameSequence(binned.astype(np.float32), seq.dt, seq.physical_width)


def temporal_crop(seq: FrameSequence, first: int, count: int) -> FrameSequence:
    if count < 1 or first < 0 or first + count > seq.frames:
        raise ValueError(f"crop [{first}, {first + count}) outside 0..{seq.frames}")
    return FrameSequence(seq.data[first : first + count], seq.dt, seq.physical_width)


def normalize_map(fmap: FeatureMap) -> FeatureMap:
    """Rescale values to [0, 1]; a constant map becomes zeros and is marked degenerate."""
    v = fmap.values
    lo, hi = v.min(), v.max()
    if hi == lo:
        out = np.zeros_like(v)
        degenerate = True
    else:
        out = (v - lo) / (hi - lo)
        degenerate = False
    return FeatureMap(out, fmap.method, fmap.index, degenerate=degenerate, flagged=list(fmap.flagged))
