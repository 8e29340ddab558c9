"""Principal-component thermography: thin SVD of the pixels x frames raster matrix."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cholesky, solve_triangular

from .seq_model import FeatureMap, FrameSequence

DEFAULT_COMPONENTS = 8
# none: decompose the raster as-is; temporal: remove each pixel's time mean;
# standardize: also divide by each pixel's time std, which cancels per-pixel flux gain.
CENTERING = ("none", "temporal", "standardize")
DEFAULT_CENTERING = "standardize"
RANK_TOL = 1e-12


@dataclass
class PctResult:
    eof_maps: list[FeatureMap]
    singular_values: np.ndarray
    temporal_pcs: np.ndarray  # (components, frames): rows of V^T

    def eof(self, k: int) -> FeatureMap:
        """EOF by 1-based number, as in "2nd EOF"."""
        return self.eof_maps[k - 1]


def rasterize(seq: FrameSequence) -> np.ndarray:
    """M x N matrix, row p = y*width + x holds that pixel's time series."""
    return seq.data.reshape(seq.frames, -1).T.astype(np.float64)


def thin_svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD of a tall matrix through its N x N Gram matrix.

    Right vectors come from the eigenvectors of A^T A; left vectors are A v scaled,
    then re-orthonormalized with one Cholesky-QR pass, and the small triangular
    factor is diagonalized so the singular values are not limited by the squared
    conditioning of the Gram matrix. Directions with ||A v|| < RANK_TOL * sigma_max
    are dropped. Returns U (M x r), s (r,), Vt (r x N), s non-increasing.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or min(a.shape) == 0:
        raise ValueError("expected a non-empty 2D matrix")
    if a.shape[0] < a.shape[1]:
        u, s, vt = thin_svd(a.T)
        return vt.T, s, u.T
    gram = a.T @ a
    _, v = np.linalg.eigh(gram)
    v = v[:, ::-1]
    b = a @ v
    norms = np.linalg.norm(b, axis=0)
    if norms.max() == 0:
        return np.zeros((a.shape[0], 0)), np.zeros(0), np.zeros((0, a.shape[1]))
    keep = norms > RANK_TOL * norms.max()
    b, norms, v = b[:, keep], norms[keep], v[:, keep]
    q = b / norms
    r_chol = cholesky(q.T @ q, lower=False)
    q = solve_triangular(r_chol, q.T, trans="T", lower=False).T
    small = r_chol * norms  # q @ small == a @ v
    p, s, wt = np.linalg.svd(small)
    u = q @ p
    vt = (v @ wt.T).T
    # deterministic signs: largest-magnitude entry of each U column is positive
    idx = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[idx, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs, s, vt * signs[:, None]


def pct_analyze(
    seq: FrameSequence, n_components: int = DEFAULT_COMPONENTS, centering: str = DEFAULT_CENTERING
) -> PctResult:
    if seq.frames < 2:
        raise ValueError("PCT needs at least 2 frames")
    m = seq.width * seq.height
    if not 1 <= n_components <= min(m, seq.frames):
        raise ValueError(f"n_components must be in 1..{min(m, seq.frames)}")
    if centering not in CENTERING:
        raise ValueError(f"centering must be one of {CENTERING}")
    a = rasterize(seq)
    if centering == "temporal":
        a -= a.mean(axis=1, keepdims=True)
    elif centering == "standardize":
        a -= a.mean(axis=1, keepdims=True)
        sd = a.std(axis=1, keepdims=True)
        a /= np.where(sd > 0, sd, 1.0)
    u, s, vt = thin_svd(a)
    k = min(n_components, len(s))
    maps = [
        FeatureMap(u[:, j].reshape(seq.height, seq.width), "pct-eof", j + 1) for j in range(k)
    ]
    return PctResult(maps, s[:k], vt[:k])
