"""Command-line front end.

Exit codes: 0 success, 1 bad input or usage, 2 internal inconsistency
(a negative power beyond rounding, or the fast path disagreeing with the
brute-force oracle).
"""
from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import __version__, bench as bench_mod, oracle, seqmap, spectra
from .report import ScanReport, SpectrumReport, render_svg, to_csv, to_json, write_atomic

VERIFY_RTOL = 1e-6


class InconsistencyExit(Exception):
    """Raised inside a command to force exit status 2."""


class _Group(click.Group):
    """Maps failures to the documented exit codes instead of click's defaults."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(1)
        except click.Abort:
            click.echo("aborted", err=True)
            sys.exit(1)
        except (spectra.ConsistencyError, InconsistencyExit, bench_mod.ChecksumMismatch) as exc:
            click.echo(f"internal consistency failure: {exc}", err=True)
            sys.exit(2)
        except (OSError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        sys.exit(rv if isinstance(rv, int) else 0)


# --------------------------------------------------------------------------
# input handling
# --------------------------------------------------------------------------

def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def load_input(path: str, mapping: str = "none", unknown: str = "zero",
               centre: bool = False, record: str | None = None) -> tuple[np.ndarray, str, str]:
    """Return ``(samples, identifier, mapping description)``."""
    raw = _read_bytes(path)
    is_fasta = raw.lstrip().startswith(b">")
    name = "stdin" if path == "-" else Path(path).name

    if mapping == "none":
        if is_fasta:
            raise click.UsageError("FASTA input needs --map (hydropathy, indicator:<SYM> or table:<path>)")
        x, ident, desc = seqmap.parse_numeric(raw), name, "none"
    else:
        if not is_fasta:
            raise click.UsageError(f"--map {mapping} expects FASTA input")
        if mapping == "hydropathy":
            alphabet, scheme = "protein", seqmap.hydropathy_scheme(unknown)
        elif mapping.startswith("table:"):
            table_path = mapping[len("table:"):]
            alphabet = "protein"
            scheme = seqmap.load_mapping_table(Path(table_path).read_bytes(),
                                               f"table:{table_path}", unknown)
        elif mapping.startswith("indicator:"):
            alphabet, scheme = "dna", None
        else:
            raise click.UsageError(f"unknown --map value {mapping!r}")
        records = seqmap.parse_fasta(raw, alphabet, unknown)
        if record is None:
            seq = records[0]
            if len(records) > 1:
                click.echo(f"warning: {len(records)} records, using {seq.identifier!r}", err=True)
        else:
            matches = [r for r in records if r.identifier.split()[0] == record]
            if not matches:
                raise click.UsageError(f"no record named {record!r}")
            seq = matches[0]
        if scheme is None:
            sym = mapping[len("indicator:"):]
            x, desc = seqmap.map_indicator(seq, sym, unknown), f"indicator:{sym.upper()}"
        else:
            x, desc = scheme.apply(seq), scheme.name
        ident = seq.identifier or name

    if centre:
        x = seqmap.center(x)
        desc += "+centered"
    return spectra.as_real_sequence(x), ident, desc


def _emit(text: str, output: str | None) -> None:
    if output:
        write_atomic(output, text)
    else:
        click.echo(text, nl=False)


def _input_options(f):
    f = click.option("--map", "mapping", default="none", show_default=True,
                     help="none | hydropathy | indicator:<SYM> | table:<path>")(f)
    f = click.option("--unknown", type=click.Choice(seqmap.POLICIES), default="zero",
                     show_default=True, help="How to treat residues outside the alphabet.")(f)
    f = click.option("--center", "centre", is_flag=True, help="Subtract the mean before folding.")(f)
    f = click.option("--record", default=None, help="FASTA record id (default: first).")(f)
    return f


def _check_l(l: int, name: str = "--l") -> None:
    if l < 2:
        raise click.UsageError(f"{name} must be >= 2, got {l}")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

@click.group(cls=_Group)
@click.version_option(version=__version__, prog_name="foldspec")
def cli():
    """Fourier power at an integer period and its fractional periods."""


@cli.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--l", "l", type=int, required=True, help="Integer period (modulus).")
@_input_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--full", is_flag=True, help="List k = 1..l-1 instead of 1..l//2.")
@click.option("--svg", "svg_path", default=None, help="Also write a bar chart here.")
@click.option("-o", "--output", default=None, help="Write the report here instead of stdout.")
def spectrum(input_path, l, mapping, unknown, centre, record, fmt, full, svg_path, output):
    """Power at periods l/k for one modulus l."""
    _check_l(l)
    x, ident, desc = load_input(input_path, mapping, unknown, centre, record)
    spec = spectra.spectrum_for_modulus(x, l)
    report = SpectrumReport.from_spectrum(spec, ident, desc, full=full)
    text = to_csv(report) if fmt == "csv" else to_json(report)
    svg = render_svg(report) if svg_path else None
    _emit(text, output)
    if svg_path:
        write_atomic(svg_path, svg)


@cli.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--l-min", type=int, default=2, show_default=True)
@click.option("--l-max", type=int, default=None, help="Default: half the input length.")
@click.option("--top", type=int, default=10, show_default=True, help="Peaks to report.")
@_input_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("-o", "--output", default=None)
def scan(input_path, l_min, l_max, top, mapping, unknown, centre, record, fmt, output):
    """Strongest periods over a range of moduli."""
    _check_l(l_min, "--l-min")
    if top < 1:
        raise click.UsageError("--top must be >= 1")
    x, ident, desc = load_input(input_path, mapping, unknown, centre, record)
    if l_max is None:
        l_max = max(l_min, x.size // 2)
    if l_max < l_min:
        raise click.UsageError(f"empty range: --l-min {l_min} > --l-max {l_max}")
    if l_max > x.size:
        raise click.UsageError(f"--l-max {l_max} exceeds the input length {x.size}")
    result = spectra.scan(x, l_min, l_max)
    report = ScanReport.from_spectra(result, ident, top, desc)
    if all(r.fps == 0.0 for r in report.peaks):
        click.echo("warning: every power in the scanned range is zero", err=True)
    _emit(to_csv(report) if fmt == "csv" else to_json(report), output)


@cli.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--l", "l", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@_input_options
def verify(input_path, l, k, mapping, unknown, centre, record):
    """Compare the folded power at l/k with the brute-force DFT."""
    _check_l(l)
    if not 1 <= k <= l - 1:
        raise click.UsageError(f"--k must be in [1, {l - 1}]")
    x, _, _ = load_input(input_path, mapping, unknown, centre, record)
    fast = float(spectra.spectrum_for_modulus(x, l).powers[min(k, l - k) - 1])
    ref = oracle.oracle_fps_at_period(x, l, k)
    abs_err = abs(fast - ref)
    rel_err = abs_err / max(1.0, abs(ref))
    click.echo("modulus,k,fast,oracle,abs_error,rel_error")
    click.echo(f"{l},{k},{fast:.12g},{ref:.12g},{abs_err:.3e},{rel_err:.3e}")
    if rel_err > VERIFY_RTOL:
        raise InconsistencyExit(f"relative error {rel_err:.3e} exceeds {VERIFY_RTOL:g}")


@cli.command()
@click.option("--m", "m_list", type=int, multiple=True, default=(100_000,), show_default=True)
@click.option("--l", "l_list", type=int, multiple=True, default=(36,), show_default=True)
@click.option("--repeats", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--backend", "backends", type=click.Choice(["numpy", "numba"]), multiple=True,
              help="Kernel backends to time (default: all available).")
@click.option("-o", "--output", default=None)
def bench(m_list, l_list, repeats, seed, backends, output):
    """Time the folded spectra against per-frequency naive DFTs."""
    for l in l_list:
        _check_l(l)
    if repeats < 3:
        raise click.UsageError("--repeats must be >= 3")
    records = bench_mod.run_bench(m_list, l_list, repeats, seed=seed, backends=backends or None)
    _emit(bench_mod.to_csv(records), output)


def main(argv=None):
    cli.main(args=argv, prog_name="foldspec")


if __name__ == "__main__":
    main()
