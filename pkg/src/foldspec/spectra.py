"""Power spectra at an integer period and its fractional companions.

A real sequence of length ``m = n*l`` is folded modulo ``l`` into a length-``l``
sequence ``y``.  The power at period ``l/k`` is the squared DFT magnitude of
``y`` at frequency ``k``, and it can be written purely in terms of the
circular self-shift sums of ``y`` and the cosines ``cos(2*pi*q/l)`` for
``q = 0..l//2``.  Those cosines are computed once per ``l`` and reused for
every ``k``.
"""
from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from ._accel import get_backend

# Pre-clamp values may dip below zero by rounding; anything beyond this
# fraction of z[0] is treated as a bug.
NEGATIVE_TOLERANCE = 1e-9
# |power| <= ROUNDING_FLOOR * l * z[0] is below the resolution of the closed
# form (l//2 + 1 terms, each bounded by z[0]) and is reported as zero.
ROUNDING_FLOOR = 4 * np.finfo(np.float64).eps


class ConsistencyError(RuntimeError):
    """An internal invariant was violated (e.g. a clearly negative power)."""


# --------------------------------------------------------------------------
# data types
# --------------------------------------------------------------------------

def as_real_sequence(x) -> np.ndarray:
    """Validate ``x`` as a non-empty, finite, 1-D float64 array."""
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("sequence is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sequence contains NaN or infinite samples")
    return arr


@dataclass(frozen=True)
class CongruenceSequence:
    values: np.ndarray
    modulus: int
    folds: int
    source_length: int

    def __post_init__(self):
        if self.values.shape != (self.modulus,):
            raise ValueError("folded sequence length must equal the modulus")
        if self.source_length != self.folds * self.modulus:
            raise ValueError("source_length must equal folds * modulus")


@dataclass(frozen=True)
class ShiftSums:
    """Circular self-shift sums ``z[q]`` for ``q = 0..l//2``.

    For even ``l`` the last slot holds the circular lag-``l/2`` sum and
    ``half_sum`` the non-circular one; the former is twice the latter.
    """

    modulus: int
    z: np.ndarray
    half_sum: Optional[float] = None

    def __post_init__(self):
        if self.z.shape != (self.modulus // 2 + 1,):
            raise ValueError("expected l//2 + 1 shift sums")
        if (self.modulus % 2 == 0) != (self.half_sum is not None):
            raise ValueError("half_sum must be present exactly when the modulus is even")


@dataclass(frozen=True)
class CosineTable:
    modulus: int
    c: np.ndarray


@dataclass(frozen=True)
class PeriodSpectrum:
    """``powers[k-1]`` is the power at period ``modulus/k`` for ``k = 1..modulus//2``."""

    modulus: int
    powers: np.ndarray
    source_length: int

    @property
    def padded_length(self) -> int:
        return self.modulus * math.ceil(self.source_length / self.modulus)

    @property
    def folds(self) -> int:
        return self.padded_length // self.modulus


class SpectrumEntry(NamedTuple):
    k: int
    period: Fraction
    label: str
    decimal: float
    power: float


# --------------------------------------------------------------------------
# cosine table: cached per modulus, every evaluation counted
# --------------------------------------------------------------------------

_cos_lock = threading.Lock()
_cos_cache: dict[int, CosineTable] = {}
_cos_calls = 0


def _counted_cos(angle: float) -> float:
    global _cos_calls
    with _cos_lock:
        _cos_calls += 1
    return math.cos(angle)


def cosine_evaluations() -> int:
    """Total cosine evaluations performed by :func:`cosine_table` so far."""
    return _cos_calls


def clear_cosine_cache() -> None:
    with _cos_lock:
        _cos_cache.clear()


@contextmanager
def count_cosines() -> Iterator[list]:
    """Yield a one-element list that receives the cosine count on exit."""
    box = [0]
    start = _cos_calls
    try:
        yield box
    finally:
        box[0] = _cos_calls - start


def _check_modulus(l) -> int:
    if isinstance(l, bool) or int(l) != l:
        raise ValueError(f"modulus must be an integer, got {l!r}")
    l = int(l)
    if l < 2:
        raise ValueError(f"modulus must be >= 2, got {l}")
    return l


def cosine_table(l: int) -> CosineTable:
    """``cos(2*pi*q/l)`` for ``q = 0..l//2``, built once per ``l``."""
    l = _check_modulus(l)
    table = _cos_cache.get(l)
    if table is not None:
        return table
    c = np.array([_counted_cos(2.0 * math.pi * q / l) for q in range(l // 2 + 1)])
    c.setflags(write=False)
    table = CosineTable(l, c)
    with _cos_lock:
        # concurrent builders may race; the first insert wins
        return _cos_cache.setdefault(l, table)


# --------------------------------------------------------------------------
# folding
# --------------------------------------------------------------------------

def pad_to_multiple(x, l: int) -> np.ndarray:
    """Append trailing zeros so that ``l`` divides the length."""
    l = _check_modulus(l)
    x = as_real_sequence(x)
    m = x.size
    target = l * -(-m // l)
    if target == m:
        return x
    out = np.zeros(target)
    out[:m] = x
    return out


def fold(x, l: int, *, backend: str | None = None) -> CongruenceSequence:
    """Sum the samples whose indices agree modulo ``l``.

    ``x`` must already have a length divisible by ``l``; see
    :func:`pad_to_multiple`.
    """
    l = _check_modulus(l)
    x = as_real_sequence(x)
    m = x.size
    if m % l:
        raise ValueError(f"modulus {l} does not divide sequence length {m}; pad first")
    y = np.asarray(get_backend(backend).fold(x, l), dtype=np.float64)
    return CongruenceSequence(y, l, m // l, m)


def shift_sums(y: CongruenceSequence, *, backend: str | None = None) -> ShiftSums:
    z, half = get_backend(backend).shift_sums(np.ascontiguousarray(y.values))
    l = y.modulus
    return ShiftSums(l, np.asarray(z), float(half) if l % 2 == 0 else None)


# --------------------------------------------------------------------------
# powers
# --------------------------------------------------------------------------

def _clamp(value: float, z0: float, l: int) -> float:
    if abs(value) <= ROUNDING_FLOOR * l * z0:
        return 0.0
    if value > 0.0:
        return value
    if value >= -NEGATIVE_TOLERANCE * z0:
        return 0.0
    raise ConsistencyError(f"power {value!r} is negative beyond rounding (z[0] = {z0!r})")


def _check_pair(sums: ShiftSums, table: CosineTable) -> int:
    if sums.modulus != table.modulus:
        raise ValueError(f"modulus mismatch: sums l={sums.modulus}, table l={table.modulus}")
    return sums.modulus


def fps_integer(sums: ShiftSums, table: CosineTable, *, backend: str | None = None) -> float:
    """Power at the integer period ``l`` (k = 1)."""
    l = _check_pair(sums, table)
    half = sums.half_sum if sums.half_sum is not None else 0.0
    raw = float(get_backend(backend).fps_one(sums.z, half, table.c, l, 1))
    return _clamp(raw, float(sums.z[0]), l)


def fps_fractional(sums: ShiftSums, table: CosineTable, k: int,
                   *, backend: str | None = None) -> float:
    """Power at the fractional period ``l/k`` for ``2 <= k <= l//2``.

    Only the stored shift sums and the cosine table are read; the cosine
    of ``2*pi*k*q/l`` is looked up at index ``min(k*q mod l, l - k*q mod l)``.
    """
    l = _check_pair(sums, table)
    if isinstance(k, bool) or int(k) != k or not 2 <= k <= l // 2:
        raise ValueError(f"k must be an integer in [2, {l // 2}], got {k!r}")
    half = sums.half_sum if sums.half_sum is not None else 0.0
    raw = float(get_backend(backend).fps_one(sums.z, half, table.c, l, int(k)))
    return _clamp(raw, float(sums.z[0]), l)


def spectrum_for_modulus(x, l: int, *, backend: str | None = None) -> PeriodSpectrum:
    """Powers at periods ``l/k`` for ``k = 1..l//2``."""
    l = _check_modulus(l)
    x = as_real_sequence(x)
    kernels = get_backend(backend)
    y = fold(pad_to_multiple(x, l), l, backend=kernels.name)
    sums = shift_sums(y, backend=kernels.name)
    table = cosine_table(l)
    half = sums.half_sum if sums.half_sum is not None else 0.0
    raw = np.asarray(kernels.fps_all(sums.z, half, table.c, l), dtype=np.float64)
    z0 = float(sums.z[0])
    powers = np.array([_clamp(float(v), z0, l) for v in raw])
    return PeriodSpectrum(l, powers, x.size)


def period_label(l: int, k: int) -> str:
    return f"{l}/{k}"


def expand_symmetric(s: PeriodSpectrum) -> list[SpectrumEntry]:
    """All ``k = 1..l-1``, using power(k) == power(l - k)."""
    l = s.modulus
    out = []
    for k in range(1, l):
        period = Fraction(l, k)
        out.append(SpectrumEntry(k, period, period_label(l, k), round(l / k, 4),
                                 float(s.powers[min(k, l - k) - 1])))
    return out


def scan(x, l_min: int, l_max: int, *, workers: int = 1,
         backend: str | None = None) -> list[PeriodSpectrum]:
    """One spectrum per modulus in ``[l_min, l_max]``, ordered by modulus.

    Each modulus pads ``x`` on its own.  ``l_max`` is capped at ``len(x)``
    (``l == len(x)`` is the identity fold).
    """
    x = as_real_sequence(x)
    l_min = _check_modulus(l_min)
    l_max = _check_modulus(l_max)
    if l_max < l_min:
        raise ValueError(f"empty modulus range [{l_min}, {l_max}]")
    if l_max > x.size:
        raise ValueError(f"l_max={l_max} exceeds the sequence length {x.size}")
    moduli: Sequence[int] = range(l_min, l_max + 1)
    if workers <= 1:
        return [spectrum_for_modulus(x, l, backend=backend) for l in moduli]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, whatever the completion order
        return list(pool.map(lambda l: spectrum_for_modulus(x, l, backend=backend), moduli))
