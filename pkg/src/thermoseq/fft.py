"""Mixed-radix decimation-in-time FFT, batched over leading axes.

Transforms run along the last axis. Any length is accepted: the length is split
into its prime factors and each stage does a small dense DFT across one factor.
Prime lengths (and prime factors) are handled by the dense DFT directly, so a
large prime costs O(N^2); thermal records (e.g. 360 = 2^3 3^2 5) factor well.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def factorize(n: int) -> list[int]:
    out = []
    while n > 1:
        p = smallest_factor(n)
        out.append(p)
        n //= p
    return out


@lru_cache(maxsize=64)
def _dft_matrix(n: int) -> np.ndarray:
    jk = np.outer(np.arange(n), np.arange(n)) % n
    w = np.exp(-2j * np.pi * jk / n)
    w.flags.writeable = False
    return w


@lru_cache(maxsize=64)
def _twiddles(p: int, m: int) -> np.ndarray:
    # W_N^{r k} for r < p, k < m, N = p*m; exponent reduced mod N to keep the angle small
    n = p * m
    rk = np.outer(np.arange(p), np.arange(m)) % n
    w = np.exp(-2j * np.pi * rk / n)
    w.flags.writeable = False
    return w


def _fft(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    p = smallest_factor(n)
    if p == n:
        return x @ _dft_matrix(n).T
    m = n // p
    lead = x.shape[:-1]
    # x[..., j*p + r] -> sub[..., r, j]: p interleaved subsequences of length m
    sub = x.reshape(*lead, m, p).swapaxes(-1, -2)
    y = _fft(np.ascontiguousarray(sub)) * _twiddles(p, m)
    # X[q*m + k] = sum_r W_p^{q r} y[r, k]
    out = np.einsum("qr,...rk->...qk", _dft_matrix(p), y)
    return out.reshape(*lead, n)


def fft(x) -> np.ndarray:
    """Unscaled forward DFT, ``X[n] = sum_k x[k] exp(-2 pi i n k / N)``."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[-1] == 0:
        raise ValueError("empty transform")
    return _fft(x)
