import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from foldspec import cli as cli_mod, spectra
from foldspec.cli import cli
from foldspec.report import SpectrumReport, render_svg

DATA = Path(__file__).parent / "data"
HELIX = str(DATA / "helix_demo.fasta")


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)

    return invoke


@pytest.fixture
def one_to_six(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("1 2 3\n4 5 6\n")
    return p


def test_spectrum_csv_fixture(run, one_to_six):
    r = run("spectrum", one_to_six, "--l", 3)
    assert r.exit_code == 0
    assert r.stdout.splitlines() == ["modulus,k,period_rational,period_decimal,fps", "3,1,3/1,3.0,12"]


def test_spectrum_json_fields(run, one_to_six):
    r = run("spectrum", one_to_six, "--l", 3, "--format", "json")
    doc = json.loads(r.stdout)
    assert doc["rows"] == [{"modulus": 3, "k": 1, "period_rational": "3/1",
                            "period_decimal": 3.0, "fps": 12.0}]
    assert doc["peak"]["k"] == 1
    assert doc["metadata"] == {"length": 6, "padded_length": 6, "folds": 2, "mapping": "none"}


@pytest.mark.parametrize("args", [("--l", 1), ("--l", 0)])
def test_spectrum_rejects_small_l(run, one_to_six, args):
    assert run("spectrum", one_to_six, *args).exit_code == 1


def test_missing_file_and_bad_numbers(run, tmp_path):
    assert run("spectrum", tmp_path / "nope.txt", "--l", 3).exit_code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1 x 3")
    r = run("spectrum", bad, "--l", 2)
    assert r.exit_code == 1
    assert "token 2" in r.stderr


def test_fasta_requires_map(run):
    assert run("spectrum", HELIX, "--l", 18).exit_code == 1


def test_helix_peak_at_three_point_six(run):
    r = run("spectrum", HELIX, "--l", 18, "--map", "hydropathy", "--format", "json")
    doc = json.loads(r.stdout)
    assert len(doc["rows"]) == 9
    assert (doc["peak"]["k"], doc["peak"]["period_decimal"]) == (5, 3.6)
    assert doc["metadata"]["mapping"] == "kyte-doolittle"


def test_full_listing_mirrors(run, one_to_six):
    r = run("spectrum", one_to_six, "--l", 3, "--full")
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert [row["period_rational"] for row in rows] == ["3/1", "3/2"]
    assert rows[0]["fps"] == rows[1]["fps"]


def test_csv_round_trip(run, tmp_path, rng):
    x = rng.uniform(-10, 10, 123)
    p = tmp_path / "x.txt"
    p.write_text(" ".join(repr(float(v)) for v in x))
    r = run("spectrum", p, "--l", 17)
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    powers = spectra.spectrum_for_modulus(x, 17).powers
    for row, expected in zip(rows, powers):
        assert float(row["fps"]) == pytest.approx(expected, rel=1e-11)
    assert len(rows) == 8


def test_output_file_and_svg(run, tmp_path):
    out, svg = tmp_path / "r.csv", tmp_path / "r.svg"
    r = run("spectrum", HELIX, "--l", 18, "--map", "hydropathy", "-o", out, "--svg", svg)
    assert r.exit_code == 0 and r.stdout == ""
    assert out.read_text().startswith("modulus,k")
    text = svg.read_text()
    assert text.count("<rect ") == 10  # background + 9 bars
    assert "peak 18/5 = 3.6" in text
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".")]


def test_no_partial_output_on_failure(run, tmp_path):
    out = tmp_path / "r.csv"
    r = run("spectrum", tmp_path / "missing.txt", "--l", 3, "-o", out)
    assert r.exit_code == 1
    assert list(tmp_path.iterdir()) == []


def test_svg_is_deterministic_and_rejects_empty():
    spec = spectra.spectrum_for_modulus(np.arange(40.0) % 7, 18)
    report = SpectrumReport.from_spectrum(spec, "x")
    assert render_svg(report) == render_svg(SpectrumReport.from_spectrum(spec, "x"))
    with pytest.raises(ValueError):
        render_svg(SpectrumReport("empty", 18, []))


def test_map_table(run, tmp_path):
    table = tmp_path / "t.txt"
    table.write_text("".join(f"{c} {'2' if c == 'L' else '-1'}\n" for c in "ACDEFGHIKLMNPQRSTVWY"))
    r = run("spectrum", HELIX, "--l", 18, "--map", f"table:{table}", "--format", "json")
    assert json.loads(r.stdout)["peak"]["k"] == 5


def test_map_indicator(run, tmp_path):
    p = tmp_path / "d.fa"
    p.write_text(">d\n" + "ATG" * 30 + "\n")
    r = run("spectrum", p, "--l", 3, "--map", "indicator:A", "--format", "json")
    doc = json.loads(r.stdout)
    assert doc["metadata"]["mapping"] == "indicator:A"
    # indicator of A in (ATG)^30 folds to [30, 0, 0]
    assert doc["rows"][0]["fps"] == pytest.approx(900.0)


def test_center_flag(run, tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("1 2 3 4 5 6 7 8")
    plain = json.loads(run("spectrum", p, "--l", 4, "--format", "json").stdout)
    centred = json.loads(run("spectrum", p, "--l", 4, "--center", "--format", "json").stdout)
    # l divides m, so removing the mean leaves every non-DC power unchanged
    assert [r["fps"] for r in plain["rows"]] == pytest.approx([r["fps"] for r in centred["rows"]])
    assert centred["metadata"]["mapping"] == "none+centered"


def test_unknown_error_policy(run, tmp_path):
    p = tmp_path / "p.fa"
    p.write_text(">p\nMKXL\n")
    assert run("spectrum", p, "--l", 2, "--map", "hydropathy", "--unknown", "error").exit_code == 1
    assert run("spectrum", p, "--l", 2, "--map", "hydropathy").exit_code == 0


def test_scan_top_peak_helix(run):
    r = run("scan", HELIX, "--map", "hydropathy", "--l-min", 2, "--l-max", 36, "--top", 1)
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert len(rows) == 1
    assert (rows[0]["modulus"], rows[0]["k"], rows[0]["period_decimal"]) == ("18", "5", "3.6")


def test_scan_orders_ties_by_modulus(run):
    r = run("scan", HELIX, "--map", "hydropathy", "--l-max", 36, "--top", 2)
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert [row["period_rational"] for row in rows] == ["18/5", "36/10"]


def test_scan_constant_warns(run, tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("2 " * 840)
    r = run("scan", p, "--l-min", 2, "--l-max", 8, "--top", 3)
    assert r.exit_code == 0
    assert "warning" in r.stderr
    assert all(float(row["fps"]) == 0 for row in csv.DictReader(io.StringIO(r.stdout)))


def test_scan_bad_range(run, one_to_six):
    assert run("scan", one_to_six, "--l-min", 5, "--l-max", 4).exit_code == 1
    assert run("scan", one_to_six, "--l-min", 2, "--l-max", 7).exit_code == 1


def test_scan_json(run):
    doc = json.loads(run("scan", HELIX, "--map", "hydropathy", "--l-max", 20, "--format", "json").stdout)
    assert (doc["l_min"], doc["l_max"], len(doc["peaks"])) == (2, 20, 10)


def test_verify_fixture(run, one_to_six):
    r = run("verify", one_to_six, "--l", 3, "--k", 1)
    assert r.exit_code == 0
    fields = r.stdout.splitlines()[1].split(",")
    assert fields[2:4] == ["12", "12"]


def test_verify_random(run, tmp_path, rng):
    p = tmp_path / "r.txt"
    p.write_text("\n".join(repr(float(v)) for v in rng.uniform(-10, 10, 100)))
    assert run("verify", p, "--l", 7, "--k", 3).exit_code == 0
    assert run("verify", p, "--l", 7, "--k", 6).exit_code == 0
    assert run("verify", p, "--l", 7, "--k", 7).exit_code == 1


def test_verify_fault_injection(run, one_to_six, monkeypatch):
    real = spectra.spectrum_for_modulus

    def broken(x, l, **kw):
        s = real(x, l, **kw)
        return spectra.PeriodSpectrum(s.modulus, s.powers * 1.01, s.source_length)

    monkeypatch.setattr(cli_mod.spectra, "spectrum_for_modulus", broken)
    assert run("verify", one_to_six, "--l", 3, "--k", 1).exit_code == 2


def test_consistency_error_exit_code(run, one_to_six, monkeypatch):
    def explode(x, l, **kw):
        raise spectra.ConsistencyError("negative power")

    monkeypatch.setattr(cli_mod.spectra, "spectrum_for_modulus", explode)
    assert run("spectrum", one_to_six, "--l", 3).exit_code == 2


def test_bench_command(run):
    r = run("bench", "--m", 360, "--l", 12, "--repeats", 3)
    assert r.exit_code == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "m,l,method,trig_count,madd_count,ns_median,checksum"
    assert lines[1].startswith("360,12,naive,")


def test_help_exits_zero(run):
    assert run("--help").exit_code == 0
