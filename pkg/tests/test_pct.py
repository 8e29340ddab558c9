import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import jacobi_eigenvalues
from thermoseq import metrics
from thermoseq.pct import pct_analyze, rasterize, thin_svd
from thermoseq.seq_model import FeatureMap, FrameSequence, Roi

matrices = arrays(
    np.float64, st.tuples(st.integers(1, 12), st.integers(1, 8)), elements=st.floats(-10, 10)
)


def test_raster_layout():
    data = np.arange(2 * 3 * 4, dtype=np.float32).reshape(2, 3, 4)
    a = rasterize(FrameSequence(data, 1.0))
    assert a.shape == (12, 2)
    assert a[1 * 4 + 2, 1] == data[1, 1, 2]


def test_rank_one():
    u = np.array([1.0, 2.0, 2.0]) / 3
    v = np.array([0.6, 0.8])
    a = 5.0 * np.outer(u, v)
    U, s, Vt = thin_svd(a)
    assert len(s) == 1 and s[0] == pytest.approx(5.0)
    np.testing.assert_allclose(U[:, 0], u, atol=1e-12)


def test_zero_matrix():
    U, s, Vt = thin_svd(np.zeros((4, 3)))
    assert s.size == 0


@given(matrices)
def test_svd_invariants(a):
    U, s, Vt = thin_svd(a)
    scale = max(np.linalg.norm(a), 1e-300)
    assert np.all(np.diff(s) <= 1e-12 * scale)
    assert np.sqrt(np.sum(s**2)) == pytest.approx(np.linalg.norm(a), rel=1e-9, abs=1e-12)
    if s.size:
        np.testing.assert_allclose(U.T @ U, np.eye(s.size), atol=1e-9)
        np.testing.assert_allclose(Vt @ Vt.T, np.eye(s.size), atol=1e-9)
        err = np.linalg.norm(U @ np.diag(s) @ Vt - a)
        assert err <= 1e-8 * scale + 1e-12


def test_singular_values_match_jacobi(rng):
    for _ in range(10):
        a = rng.normal(size=(64, 16))
        _, s, _ = thin_svd(a)
        ref = np.sqrt(np.clip(jacobi_eigenvalues(a.T @ a), 0, None))
        np.testing.assert_allclose(s, ref, rtol=1e-8)


def test_wide_matrix(rng):
    a = rng.normal(size=(4, 9))
    U, s, Vt = thin_svd(a)
    np.testing.assert_allclose(U @ np.diag(s) @ Vt, a, atol=1e-12)


def test_sign_convention(rng):
    U, _, _ = thin_svd(rng.normal(size=(30, 5)))
    for j in range(U.shape[1]):
        assert U[np.argmax(np.abs(U[:, j])), j] > 0


def test_snr_ignores_eof_sign(rng):
    vals = rng.normal(size=(10, 10))
    vals[2:5, 2:5] += 3
    d, r = Roi("d", 2, 2, 4, 4), Roi("r", 6, 6, 9, 9, "reference")
    a = metrics.snr(FeatureMap(vals, "pct-eof", 1), d, r)
    b = metrics.snr(FeatureMap(-vals, "pct-eof", 1), d, r)
    assert a == b


def test_pct_analyze_shapes(rng):
    seq = FrameSequence(rng.normal(30, 1, size=(20, 4, 6)).astype(np.float32), dt=1.0)
    for centering in ("none", "temporal", "standardize"):
        res = pct_analyze(seq, 5, centering)
        assert [m.index for m in res.eof_maps] == [1, 2, 3, 4, 5]
        assert res.eof(2).values.shape == (4, 6)
        assert res.temporal_pcs.shape == (5, 20)
    with pytest.raises(ValueError):
        pct_analyze(seq, 0)
    with pytest.raises(ValueError):
        pct_analyze(seq, 3, "bogus")


def test_standardize_handles_constant_pixel(rng):
    data = rng.normal(30, 1, size=(12, 3, 3)).astype(np.float32)
    data[:, 1, 1] = 25.0
    res = pct_analyze(FrameSequence(data, 1.0), 3)
    assert all(np.all(np.isfinite(m.values)) for m in res.eof_maps)
