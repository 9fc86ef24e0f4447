import csv
import io
import json
import subprocess
import sys

import pytest

from linepack import cli, ingest


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def fixture(name):
    return str(ingest.bundled_packings_dir() / name)


def test_bounds_text():
    code, text = run("bounds", "--d", "6", "--n", "8", "--field", "real")
    assert code == 0
    assert "bukh_cox     0.230769" in text
    assert "welch        0.218218" in text
    assert "achiever     bukh_cox" in text


def test_bounds_json_complex():
    code, text = run("bounds", "--d", "6", "--n", "8", "--field", "complex", "--json")
    assert code == 0
    rep = json.loads(text)
    assert rep["bukh_cox"] == pytest.approx(0.224009, abs=1e-6)
    assert rep["orthoplex"] is None


def test_bounds_dimension_error(capsys):
    code, _ = run("bounds", "--d", "6", "--n", "6")
    assert code == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and err.startswith("linepack: error:")


def test_usage_error_single_line(capsys):
    assert run("bounds", "--d", "6")[0] == 2
    assert capsys.readouterr().err.count("\n") == 1
    assert run("nonsense")[0] == 2


def test_lp_text():
    code, text = run("lp", "--k", "2", "--field", "complex")
    assert code == 0
    assert "c0 0.6830127" in text and "c1 0.7500000" in text and "c2 -0.3480762" in text
    code, text = run("lp", "--k", "2", "--field", "real")
    assert "c0 0.6666667" in text


def test_lp_minimize_json():
    code, text = run("lp", "--k", "2", "--field", "complex", "--minimize", "--grid", "4097", "--json")
    assert code == 0
    rep = json.loads(text)
    assert abs(rep["gap"]) <= 1e-6
    assert rep["minimized"]["source"] == "minimized"


def test_lp_invalid_k():
    assert run("lp", "--k", "0")[0] == 2


def test_certify_lemma_mercedes():
    code, text = run("certify", fixture("real-d2-n3.txt"), "--lemma")
    assert code == 0
    rep = json.loads(text)
    assert rep["mu"] == pytest.approx(0.5)
    assert rep["floor_witness"] == pytest.approx(0.5)
    assert len(rep["chain"]) == 6


def test_certify_theorem3_sic_copies():
    code, text = run("certify", fixture("complex-d2-n8.txt"), "--theorem3", "--field", "complex")
    assert code == 0
    rep = json.loads(text)
    assert all(c["holds"] for c in rep["conditions"])


def test_certify_failure_exit_1():
    code, text = run("certify", fixture("real-d2-n3-skew.txt"), "--welch-equality")
    assert code == 1
    assert json.loads(text)["passed"] is False
    code, _ = run("certify", fixture("real-d4-n4.txt"), "--theorem3")
    assert code == 1


def test_certify_welch_equality_sic():
    code, text = run("certify", fixture("complex-d2-n4.txt"), "--welch-equality", "--field", "complex")
    assert code == 0
    assert json.loads(text)["etf"] is True


def test_certify_corrupted(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n1 0\n0 1\n0.5 zz\n")
    assert run("certify", str(bad), "--lemma")[0] == 2
    assert run("certify", str(tmp_path / "missing.txt"), "--lemma")[0] == 2


def test_figure_offline(tmp_path):
    out = tmp_path / "fig.csv"
    code, _ = run("figure", "--d", "6", "--n-min", "5", "--n-max", "40", "--field", "real", "--out", str(out))
    assert code == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    assert [int(r["n"]) for r in rows] == list(range(7, 41))
    by_n = {int(r["n"]): r for r in rows}
    assert by_n[7]["welch"] == by_n[7]["bukh_cox"] == "0.166666667"
    assert by_n[22]["orthoplex"] == "0.40824829"
    assert by_n[8]["achiever"] == by_n[9]["achiever"] == "bukh_cox"
    assert by_n[21]["orthoplex"] == ""


def test_figure_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run("figure", "--d", "6", "--n-min", "5", "--n-max", "12", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_figure_orthoplex_toggle():
    _, strict = run("figure", "--d", "6", "--n-min", "21", "--n-max", "21", "--no-packings")
    _, loose = run("figure", "--d", "6", "--n-min", "21", "--n-max", "21", "--no-packings", "--orthoplex-nonstrict")
    assert strict.splitlines()[1].split(",")[4] == ""
    assert loose.splitlines()[1].split(",")[4] == "0.40824829"


def test_figure_missing_packings_give_empty_cells(tmp_path):
    _, text = run("figure", "--d", "6", "--n-min", "8", "--n-max", "9", "--packings", str(tmp_path))
    lines = text.splitlines()
    assert lines[0] == ",".join(cli.CSV_HEADER)
    assert all(line.split(",")[1] == "" for line in lines[1:])


def test_figure_unwritable(tmp_path):
    code, _ = run("figure", "--d", "6", "--n-min", "7", "--n-max", "8", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2


def test_figure_best_bound_is_max_of_cells():
    _, text = run("figure", "--d", "6", "--n-min", "7", "--n-max", "40")
    for row in csv.DictReader(io.StringIO(text)):
        cells = [float(row[c]) for c in ("welch", "bukh_cox", "orthoplex", "levenshtein") if row[c]]
        assert float(row["best_bound"]) == pytest.approx(max(cells), rel=1e-8)


def test_fetch_subcommand(tmp_path, monkeypatch):
    calls = []

    def transport(url):
        calls.append(url)
        return 200, b"1 0\n0 1\n0.70710678 0.70710678\n"

    monkeypatch.setattr(ingest, "urllib_transport", transport)
    monkeypatch.setenv("LINEPACK_DB_URL", "http://db.example/grass")
    code, text = run(
        "fetch", "p.{d}.{n}.txt", "--d", "2", "--n", "3",
        "--cache-dir", str(tmp_path / "cache"), "--out-dir", str(tmp_path / "packs"), "--json",
    )
    assert code == 0
    assert calls == ["http://db.example/grass/p.2.3.txt"]
    assert (tmp_path / "packs" / "real-d2-n3.txt").is_file()
    assert json.loads(text)[0]["coherence"] == pytest.approx(1 / 2**0.5)


def test_fetch_needs_n():
    assert run("fetch", "x", "--d", "2")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "linepack", "bounds", "--d", "6", "--n", "7"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "achiever     bukh_cox" in proc.stdout
