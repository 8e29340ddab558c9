import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import direct_roi_stats
from thermoseq.errors import DegenerateError, RoiError
from thermoseq.metrics import ContrastCurve, contrast_curve, max_contrast_time, roi_stats, snr
from thermoseq.seq_model import FeatureMap, FrameSequence, Roi

DEF = Roi("d", 1, 1, 3, 3)
REF = Roi("r", 5, 0, 7, 4, "reference")
maps = arrays(np.float64, (5, 8), elements=st.floats(-50, 50))


def test_snr_examples():
    img = np.zeros((5, 8))
    img[DEF.slices] = 10.0
    img[REF.slices] = [[0, 2, 0], [2, 0, 2], [0, 2, 0], [2, 0, 2], [0, 2, 0]]
    # ref mean 14/15, population sigma ~0.998
    mu, sd = direct_roi_stats(img, 5, 0, 7, 4)
    assert snr(img, DEF, REF) == pytest.approx(20 * np.log10((10 - mu) / sd), abs=1e-12)


def test_snr_twenty_db():
    img = np.zeros((1, 4))
    img[0, 2:] = [-1.0, 1.0]
    img[0, 0:2] = 10.0
    d, r = Roi("d", 0, 0, 1, 0), Roi("r", 2, 0, 3, 0, "reference")
    assert snr(img, d, r) == pytest.approx(20.0)


def test_snr_degenerate_and_no_contrast():
    img = np.ones((5, 8))
    with pytest.raises(DegenerateError):
        snr(img, DEF, REF)
    img[REF.slices] = [[0, 2, 1]] * 5
    img[DEF.slices] = 1.0
    assert snr(img, DEF, REF) is None


def test_roi_out_of_bounds():
    with pytest.raises(RoiError):
        roi_stats(np.zeros((3, 3)), DEF)


@given(maps)
def test_stats_match_direct_oracle(img):
    st_ = roi_stats(FeatureMap(img, "raw"), REF)
    mu, sd = direct_roi_stats(img, 5, 0, 7, 4)
    assert st_.mean == pytest.approx(mu, abs=1e-12 * (1 + abs(mu)))
    assert st_.stddev == pytest.approx(sd, rel=1e-9, abs=1e-12)
    assert st_.pixel_count == 15


def snr_or_skip(img):
    try:
        return snr(img, DEF, REF)
    except DegenerateError:
        return None


@given(maps, st.floats(1e-2, 1e2), st.floats(-1e3, 1e3))
def test_affine_and_sign_invariance(img, a, b):
    base = snr_or_skip(img)
    if base is None or roi_stats(img, REF).stddev < 1e-6:
        return
    assert snr(a * img + b, DEF, REF) == pytest.approx(base, abs=1e-9)
    assert snr(-img, DEF, REF) == pytest.approx(base, abs=1e-12)


@given(maps, st.floats(1.01, 10))
def test_monotone_in_contrast(img, k):
    base = snr_or_skip(img)
    if base is None or roi_stats(img, REF).stddev < 1e-6:
        return
    ref_mu = roi_stats(img, REF).mean
    boosted = img.copy()
    boosted[DEF.slices] = ref_mu + k * (img[DEF.slices] - ref_mu)
    assert snr(boosted, DEF, REF) > base


def test_contrast_curve_linear(rng):
    data = rng.normal(size=(6, 5, 8)).astype(np.float32)
    seq = FrameSequence(data, 2.0)
    c = contrast_curve(seq, DEF, REF)
    assert c.times.tolist() == [0, 2, 4, 6, 8, 10]
    scaled = contrast_curve(FrameSequence(3 * data + 7, 2.0), DEF, REF)
    np.testing.assert_allclose(scaled.values, 3 * c.values, atol=1e-5)
    same = contrast_curve(seq, REF, REF)
    assert not same.values.any()
    assert max_contrast_time(same) == (0.0, 0.0)


def test_max_contrast_time_examples():
    c = ContrastCurve(np.array([0.0, 5.0, 10.0, 15.0]), np.array([0.0, 2.0, 2.0, 1.0]))
    assert max_contrast_time(c) == (5.0, 2.0)
    with pytest.raises(ValueError):
        max_contrast_time(ContrastCurve(np.array([]), np.array([])))
