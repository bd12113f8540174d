"""Cost of the folded spectra versus a per-frequency naive DFT.

For each ``(m, l)`` the same ``l//2`` powers are computed three ways: the
naive oracle (one O(m) DFT per k), and the fold/shift-sum path on each
available kernel backend.  Trig evaluations are read from the counters the
two code paths keep; multiply-add counts follow from their loop bounds.
"""
from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import oracle, spectra
from ._accel import available_backends

CSV_COLUMNS = ("m", "l", "method", "trig_count", "madd_count", "ns_median", "checksum")
CHECKSUM_RTOL = 1e-6


class ChecksumMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    m: int
    l: int
    method: str
    trig_count: int
    madd_count: int
    ns_median: int
    ns_min: int
    ns_max: int
    checksum: float


def naive_madds(m: int, l: int) -> int:
    # real and imaginary accumulations over the m samples, per k;
    # the zero padding contributes no terms
    return 2 * m * (l // 2)


def fast_madds(m: int, l: int) -> int:
    h = l // 2
    mp = l * -(-m // l)
    shift = (h + 1) * l + (h if l % 2 == 0 else 0)
    return mp + shift + h * h


def _naive_powers(x, l):
    return [oracle.oracle_fps_at_period(x, l, k) for k in range(1, l // 2 + 1)]


def _time(fn, repeats):
    samples = []
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        out = fn()
        samples.append(time.perf_counter_ns() - t0)
    return out, samples


def _record(m, l, method, trig, madd, samples, checksum):
    return BenchRecord(m, l, method, trig, madd, int(statistics.median(samples)),
                       min(samples), max(samples), float(checksum))


def bench_one(x: np.ndarray, l: int, repeats: int, backends=None) -> list[BenchRecord]:
    m = x.size
    records = []

    before = oracle.trig_evaluations()
    ref = _naive_powers(x, l)
    naive_trig = oracle.trig_evaluations() - before
    ref_sum = float(np.sum(ref))
    _, samples = _time(lambda: _naive_powers(x, l), repeats)
    records.append(_record(m, l, "naive", naive_trig, naive_madds(m, l), samples, ref_sum))

    for name in backends or available_backends():
        spectra.spectrum_for_modulus(x, l, backend=name)  # jit warm-up

        def run():
            spectra.clear_cosine_cache()
            return spectra.spectrum_for_modulus(x, l, backend=name)

        with spectra.count_cosines() as counted:
            run()
        spec, samples = _time(run, repeats)
        checksum = float(np.sum(spec.powers))
        if abs(checksum - ref_sum) > CHECKSUM_RTOL * max(1.0, abs(ref_sum)):
            raise ChecksumMismatch(
                f"m={m} l={l} {name}: checksum {checksum!r} != naive {ref_sum!r}")
        records.append(_record(m, l, f"fold-{name}", counted[0], fast_madds(m, l),
                               samples, checksum))
    return records


def run_bench(m_list, l_list, repeats: int = 5, *, seed: int = 0,
              backends=None) -> list[BenchRecord]:
    if repeats < 3:
        raise ValueError("repeats must be >= 3")
    rng = np.random.default_rng(seed)
    records = []
    for m in m_list:
        x = rng.uniform(-10.0, 10.0, size=int(m))
        for l in l_list:
            records.extend(bench_one(x, int(l), repeats, backends))
    return records


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.m, r.l, r.method, r.trig_count, r.madd_count, r.ns_median,
                    f"{r.checksum:.12g}"])
    return buf.getvalue()
