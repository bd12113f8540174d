"""Tabular and SVG renderings of period spectra."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from html import escape
from pathlib import Path

from .spectra import PeriodSpectrum, period_label

CSV_COLUMNS = ("modulus", "k", "period_rational", "period_decimal", "fps")
SIG_DIGITS = 12


def fmt_fps(v: float) -> str:
    return f"{v:.{SIG_DIGITS}g}"


def fmt_period(l: int, k: int) -> str:
    return repr(round(l / k, 4))


@dataclass(frozen=True)
class ReportRow:
    modulus: int
    k: int
    fps: float

    @property
    def period_rational(self) -> str:
        return period_label(self.modulus, self.k)

    @property
    def period_decimal(self) -> float:
        return round(self.modulus / self.k, 4)

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "k": self.k,
            "period_rational": self.period_rational,
            "period_decimal": self.period_decimal,
            "fps": float(fmt_fps(self.fps)),
        }

    def as_csv(self) -> list[str]:
        return [str(self.modulus), str(self.k), self.period_rational,
                fmt_period(self.modulus, self.k), fmt_fps(self.fps)]


def rank_key(row: ReportRow):
    """Largest power first; ties go to the smaller modulus, then the smaller k.

    Powers are compared at the printed precision, so the same frequency
    reached through different moduli (18/5 and 36/10) ties exactly.
    """
    return (-float(fmt_fps(row.fps)), row.modulus, row.k)


def peak_of(rows) -> ReportRow:
    if not rows:
        raise ValueError("no rows to take a peak from")
    return min(rows, key=rank_key)


@dataclass
class SpectrumReport:
    identifier: str
    modulus: int
    rows: list[ReportRow]
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_spectrum(cls, spec: PeriodSpectrum, identifier: str, mapping: str = "none",
                      full: bool = False) -> "SpectrumReport":
        l = spec.modulus
        ks = range(1, l) if full else range(1, l // 2 + 1)
        rows = [ReportRow(l, k, float(spec.powers[min(k, l - k) - 1])) for k in ks]
        meta = {
            "length": spec.source_length,
            "padded_length": spec.padded_length,
            "folds": spec.folds,
            "mapping": mapping,
        }
        return cls(identifier, l, rows, meta)

    @property
    def peak(self) -> ReportRow:
        return peak_of(self.rows)

    def to_dict(self) -> dict:
        return {
            "input": self.identifier,
            "modulus": self.modulus,
            "rows": [r.as_dict() for r in self.rows],
            "peak": self.peak.as_dict(),
            "metadata": self.metadata,
        }


@dataclass
class ScanReport:
    identifier: str
    l_min: int
    l_max: int
    peaks: list[ReportRow]
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_spectra(cls, spectra_list, identifier: str, top: int,
                     mapping: str = "none") -> "ScanReport":
        rows = [ReportRow(s.modulus, k, float(p))
                for s in spectra_list for k, p in enumerate(s.powers, 1)]
        rows.sort(key=rank_key)
        first = spectra_list[0]
        meta = {"length": first.source_length, "mapping": mapping}
        return cls(identifier, first.modulus, spectra_list[-1].modulus, rows[:top], meta)

    @property
    def rows(self) -> list[ReportRow]:
        return self.peaks

    def to_dict(self) -> dict:
        return {
            "input": self.identifier,
            "l_min": self.l_min,
            "l_max": self.l_max,
            "peaks": [r.as_dict() for r in self.peaks],
            "metadata": self.metadata,
        }


def to_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in report.rows:
        w.writerow(row.as_csv())
    return buf.getvalue()


def to_json(report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_svg(report: SpectrumReport, width: int = 720, height: int = 360) -> str:
    """Bar chart of power against period, peak highlighted."""
    rows = report.rows
    if not rows:
        raise ValueError("cannot chart an empty report")
    peak = report.peak
    left, right, top, bottom = 70, 20, 40, 60
    plot_w = width - left - right
    plot_h = height - top - bottom
    ymax = max(r.fps for r in rows) or 1.0
    slot = plot_w / len(rows)
    bar_w = slot * 0.7

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<title>{escape(report.identifier)}: power at periods {report.modulus}/k</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<text x="{left - 6}" y="{top + 4}" text-anchor="end">{fmt_fps(ymax)}</text>',
        f'<text x="{left - 6}" y="{top + plot_h + 4}" text-anchor="end">0</text>',
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 12}" text-anchor="middle">period</text>',
        f'<text x="16" y="{top + plot_h / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.2f})">FPS</text>',
    ]
    for i, r in enumerate(rows):
        h = plot_h * r.fps / ymax
        x = left + i * slot + (slot - bar_w) / 2
        y = top + plot_h - h
        colour = "#c0392b" if r is peak else "#2c7fb8"
        out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" height="{h:.2f}" '
                   f'fill="{colour}"><title>{r.period_rational} = {fmt_period(r.modulus, r.k)}: '
                   f'{fmt_fps(r.fps)}</title></rect>')
        out.append(f'<text x="{x + bar_w / 2:.2f}" y="{top + plot_h + 14}" '
                   f'text-anchor="middle">{fmt_period(r.modulus, r.k)}</text>')
        if r is peak:
            out.append(f'<text x="{x + bar_w / 2:.2f}" y="{y - 6:.2f}" text-anchor="middle" '
                       f'font-weight="bold">peak {r.period_rational} = {fmt_period(r.modulus, r.k)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
