"""Brute-force reference spectra.

Nothing here imports from :mod:`foldspec.spectra`; these functions exist to
check it.  Each DFT term gets its own twiddle, computed from the reduced
angle ``2*pi*((k*j) mod m)/m`` rather than by repeated multiplication.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

_trig_evaluations = 0


def trig_evaluations() -> int:
    """Number of sin/cos evaluations made by :func:`naive_dft` so far."""
    return _trig_evaluations


def _samples(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-D real sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sequence contains NaN or infinite samples")
    return arr


def naive_dft(x, k: int, length: int | None = None) -> complex:
    """``X(k) = sum_j x_j exp(-2i*pi*k*j/m)`` by direct summation.

    ``length`` sets the transform size ``m`` when ``x`` is shorter; the
    missing tail is treated as zeros and contributes no terms.
    """
    global _trig_evaluations
    x = _samples(x)
    m = x.size if length is None else int(length)
    if m < x.size:
        raise ValueError(f"transform length {m} is shorter than the sequence ({x.size})")
    if not 0 <= k < m:
        raise ValueError(f"frequency {k} outside [0, {m - 1}]")
    j = np.arange(x.size)
    angle = (2.0 * np.pi / m) * ((k * j) % m)
    _trig_evaluations += 2 * x.size
    re = float(np.dot(x, np.cos(angle)))
    im = -float(np.dot(x, np.sin(angle)))
    return complex(re, im)


def naive_fps(x, k: int, length: int | None = None) -> float:
    X = naive_dft(x, k, length)
    return X.real * X.real + X.imag * X.imag


def dc_power(x) -> float:
    """Power at frequency zero, which the period spectra leave out."""
    return naive_fps(x, 0)


def pad_zeros(x, l: int) -> np.ndarray:
    x = _samples(x)
    if l < 1:
        raise ValueError("modulus must be positive")
    short = (-x.size) % l
    return np.concatenate([x, np.zeros(short)]) if short else x


def oracle_fps_at_period(x, l: int, k: int) -> float:
    """Ground-truth power at period ``l/k``: the DFT of the zero-padded
    sequence at frequency ``k*n`` where ``n`` is the number of folds."""
    if l < 2:
        raise ValueError("modulus must be >= 2")
    if not 1 <= k <= l - 1:
        raise ValueError(f"k must be in [1, {l - 1}], got {k}")
    x = _samples(x)
    padded = x.size + (-x.size) % l
    return naive_fps(x, k * (padded // l), length=padded)


def naive_fold(x, l: int) -> np.ndarray:
    """Literal double loop for the modulo-``l`` fold (oracle side)."""
    x = _samples(x)
    if x.size % l:
        raise ValueError("modulus does not divide the length")
    y = [0.0] * l
    for j in range(x.size // l):
        for t in range(l):
            y[t] += float(x[j * l + t])
    return np.array(y)


# --------------------------------------------------------------------------
# Hermitian Toeplitz quadratic form
# --------------------------------------------------------------------------

def toeplitz_entry(l: int, k: int, r: int, s: int) -> complex:
    """``b_rs = exp(2i*pi*k*(r - s)/l)``."""
    return cmath.exp(2j * math.pi * k * (r - s) / l)


def toeplitz_matrix(l: int, k: int) -> np.ndarray:
    d = np.subtract.outer(np.arange(l), np.arange(l))
    return np.exp(2j * np.pi * k * d / l)


def toeplitz_fps(y, k: int, *, rtol: float = 1e-9) -> float:
    """Evaluate ``sum_r sum_s y_r b_rs y_s`` and return its real part.

    The imaginary residue must vanish; a large one means a broken form.
    """
    y = _samples(y)
    l = y.size
    if not 1 <= k <= l - 1:
        raise ValueError(f"k must be in [1, {l - 1}], got {k}")
    value = complex(y @ toeplitz_matrix(l, k) @ y)
    scale = max(1.0, float(np.dot(y, y)))
    if abs(value.imag) > rtol * scale:
        raise ArithmeticError(f"quadratic form has imaginary residue {value.imag!r}")
    return value.real


def check_toeplitz_structure(l: int, k: int, samples: int, *, rng=None,
                             entry=toeplitz_entry, atol: float = 1e-12) -> bool:
    """Probe random index pairs for Hermitian symmetry, constant diagonals and a unit diagonal."""
    if l < 2:
        raise ValueError("modulus must be >= 2")
    rng = np.random.default_rng(rng)
    for _ in range(samples):
        r, s = (int(v) for v in rng.integers(0, l, size=2))
        b_rs = entry(l, k, r, s)
        if abs(b_rs - entry(l, k, s, r).conjugate()) > atol:
            return False
        if abs(entry(l, k, r, r) - 1.0) > atol:
            return False
        # shift both indices along the same diagonal
        shift = int(rng.integers(-min(r, s), l - max(r, s)))
        if abs(b_rs - entry(l, k, r + shift, s + shift)) > atol:
            return False
    return True
