import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import naive_dft
from thermoseq.fft import factorize, fft, smallest_factor
from thermoseq.ppt import amplitude, dft_pixel, phase, ppt_analyze, spectrum_stack
from thermoseq.seq_model import FrameSequence

series = arrays(np.float64, st.integers(2, 80), elements=st.floats(-100, 100))


@pytest.mark.parametrize("n,factors", [(1, []), (7, [7]), (360, [2, 2, 2, 3, 3, 5]), (97 * 4, [2, 2, 97])])
def test_factorize(n, factors):
    assert factorize(n) == factors
    if factors:
        assert smallest_factor(n) == factors[0]


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12, 64, 97, 360, 512])
def test_fft_matches_naive(n, rng):
    x = rng.normal(size=n)
    got = fft(x)
    want = naive_dft(x)
    assert np.max(np.abs(got - want)) <= 1e-10 * np.max(np.abs(want))


@given(series)
def test_fft_property_matches_naive(x):
    want = naive_dft(x)
    scale = max(np.max(np.abs(want)), 1e-300)
    assert np.max(np.abs(fft(x) - want)) <= 1e-9 * scale + 1e-12


def test_fft_batches_last_axis(rng):
    x = rng.normal(size=(3, 5, 24))
    one = np.stack([[fft(r) for r in plane] for plane in x])
    np.testing.assert_allclose(fft(x), one, rtol=0, atol=1e-12)


def test_constant_series():
    sp = dft_pixel(np.full(4, 7.0), dt=2.0)
    np.testing.assert_allclose(sp.bins, [56, 0, 0, 0], atol=1e-12)
    assert phase(np.zeros(1, complex))[0] == 0.0


def test_cosine_series():
    sp = dft_pixel([1.0, 0.0, -1.0, 0.0], dt=1.0)
    np.testing.assert_allclose(sp.bins, [0, 2, 0, 2], atol=1e-12)
    assert phase(sp.bins)[1] == pytest.approx(0.0, abs=1e-15)


def test_phase_branch():
    assert phase(np.array([-1 + 0j]))[0] == np.pi
    assert phase(np.array([complex(-1.0, -0.0)]))[0] == np.pi
    assert phase(np.array([1j]))[0] == pytest.approx(np.pi / 2)


@given(series, st.floats(0.01, 10))
def test_parseval(x, dt):
    sp = dft_pixel(x, dt)
    lhs = np.sum(x**2)
    rhs = np.sum(np.abs(sp.bins) ** 2) / (x.size * dt * dt)
    assert rhs == pytest.approx(lhs, rel=1e-9, abs=1e-9)


@given(series)
def test_conjugate_symmetry(x):
    b = dft_pixel(x, 1.0).bins
    n = x.size
    scale = max(np.max(np.abs(b)), 1e-300)
    for k in range(1, n):
        assert abs(b[k] - np.conj(b[n - k])) <= 1e-9 * scale + 1e-12


@given(series, st.floats(-5, 5), st.floats(-5, 5))
def test_linearity(x, a, c):
    y = np.roll(x, 1)
    lhs = dft_pixel(a * x + c * y, 1.0).bins
    rhs = a * dft_pixel(x, 1.0).bins + c * dft_pixel(y, 1.0).bins
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * (np.max(np.abs(rhs)) + 1.0)


@given(series, st.floats(0.5, 2.0))
def test_phase_gain_invariant(x, g):
    b = dft_pixel(x, 1.0).bins
    gb = dft_pixel(g * x, 1.0).bins
    ok = np.abs(b) > 1e-6 * (np.max(np.abs(b)) + 1e-300)
    diff = np.angle(np.exp(1j * (phase(gb) - phase(b))))
    assert np.all(np.abs(diff[ok]) <= 1e-9)


def test_frequency_resolution():
    seq = FrameSequence(np.zeros((360, 1, 2), np.float32), dt=5.0)
    res = ppt_analyze(seq)
    assert res.df == pytest.approx(1 / 1800)
    assert res.frequency(1) == pytest.approx(5.556e-4, rel=1e-3)
    assert len(res.phase_maps) == 10 and res.phase_maps[0].index == 1
    # all-zero series: every bin is zero, phase 0 and flagged
    assert not res.phase_maps[0].values.any()
    assert res.zero_amplitude[1] == [(0, 0), (1, 0)]


def test_identical_pixels_give_uniform_maps(rng):
    s = rng.normal(30, 1, size=64).astype(np.float32)
    seq = FrameSequence(np.broadcast_to(s[:, None, None], (64, 3, 4)).copy(), dt=1.0)
    res = ppt_analyze(seq, 5)
    for m in res.phase_maps + res.amplitude_maps:
        assert np.ptp(m.values) == 0.0


def test_stack_matches_per_pixel(rng):
    data = rng.normal(size=(24, 3, 5)).astype(np.float32)
    seq = FrameSequence(data, dt=0.5)
    stack = spectrum_stack(seq)
    for y in range(3):
        for x in range(5):
            np.testing.assert_allclose(stack[:, y, x], dft_pixel(data[:, y, x], 0.5).bins, atol=1e-12)


def test_max_bin_range():
    seq = FrameSequence(np.zeros((10, 1, 1), np.float32), dt=1.0)
    with pytest.raises(ValueError):
        ppt_analyze(seq, 6)
    with pytest.raises(ValueError):
        ppt_analyze(seq, 0)
    assert amplitude(np.array([3 + 4j]))[0] == 5.0
