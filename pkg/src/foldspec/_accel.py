"""Hot loops for the folding spectra, in two flavours.

Every kernel exists as a plain numpy function and, when numba is importable,
as an ``@njit`` twin.  Set ``FOLDSPEC_DISABLE_NUMBA=1`` to force the numpy
path (useful for debugging and for the backend benchmark).
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional accelerator
    HAVE_NUMBA = False

DISABLE_ENV = "FOLDSPEC_DISABLE_NUMBA"


def numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("", "0", "false", "no")


# --------------------------------------------------------------------------
# numpy reference path
# --------------------------------------------------------------------------

def fold_np(x, l):
    n = x.shape[0] // l
    return x.reshape(n, l).sum(axis=0)


def shift_sums_np(y):
    l = y.shape[0]
    h = l // 2
    z = np.empty(h + 1)
    for q in range(h + 1):
        z[q] = np.dot(y, np.roll(y, -q))
    half = float(np.dot(y[:h], y[h:2 * h])) if l % 2 == 0 else 0.0
    return z, half


def fps_one_np(z, half, c, l, k):
    h = l // 2
    q = np.arange(1, h + 1)
    p = (k * q) % l
    t = np.minimum(p, l - p)
    terms = z[1:h + 1].copy()
    if l % 2 == 0:
        terms[-1] = half
    return z[0] + 2.0 * np.dot(terms, c[t])


def fps_all_np(z, half, c, l):
    h = l // 2
    k = np.arange(1, h + 1)[:, None]
    q = np.arange(1, h + 1)[None, :]
    p = (k * q) % l
    t = np.minimum(p, l - p)
    terms = z[1:h + 1].copy()
    if l % 2 == 0:
        terms[-1] = half
    return z[0] + 2.0 * (c[t] @ terms)


# --------------------------------------------------------------------------
# numba path: same arithmetic, explicit loops
# --------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def fold_nb(x, l):
        n = x.shape[0] // l
        y = np.zeros(l)
        for j in range(n):
            base = j * l
            for t in range(l):
                y[t] += x[base + t]
        return y

    @njit(cache=True)
    def shift_sums_nb(y):
        l = y.shape[0]
        h = l // 2
        z = np.zeros(h + 1)
        for q in range(h + 1):
            acc = 0.0
            for t in range(l):
                s = t + q
                if s >= l:
                    s -= l
                acc += y[t] * y[s]
            z[q] = acc
        half = 0.0
        if l % 2 == 0:
            for t in range(h):
                half += y[t] * y[t + h]
        return z, half

    @njit(cache=True)
    def fps_one_nb(z, half, c, l, k):
        h = l // 2
        acc = z[0]
        for q in range(1, h + 1):
            p = (k * q) % l
            t = p if p <= h else l - p
            zq = half if (l % 2 == 0 and q == h) else z[q]
            acc += 2.0 * zq * c[t]
        return acc

    @njit(cache=True)
    def fps_all_nb(z, half, c, l):
        h = l // 2
        out = np.empty(h)
        for k in range(1, h + 1):
            out[k - 1] = fps_one_nb(z, half, c, l, k)
        return out


class Backend:
    """A named bundle of the four kernels."""

    def __init__(self, name, fold, shift_sums, fps_one, fps_all):
        self.name = name
        self.fold = fold
        self.shift_sums = shift_sums
        self.fps_one = fps_one
        self.fps_all = fps_all

    def __repr__(self):
        return f"Backend({self.name!r})"


NUMPY = Backend("numpy", fold_np, shift_sums_np, fps_one_np, fps_all_np)
NUMBA = Backend("numba", fold_nb, shift_sums_nb, fps_one_nb, fps_all_nb) if HAVE_NUMBA else None


def available_backends() -> list[str]:
    return ["numpy", "numba"] if HAVE_NUMBA else ["numpy"]


def get_backend(name: str | None = None) -> Backend:
    """Resolve a backend by name; ``None`` picks numba unless disabled or missing."""
    if name is None:
        name = "numpy" if (numba_disabled() or not HAVE_NUMBA) else "numba"
    if name == "numpy":
        return NUMPY
    if name == "numba":
        if NUMBA is None:
            raise ValueError("numba backend requested but numba is not installed")
        return NUMBA
    raise ValueError(f"unknown backend {name!r}; expected 'numpy' or 'numba'")
