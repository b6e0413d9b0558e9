"""Command-line interface: parsing, outputs, manifests, verify suites."""

import csv
import hashlib
import io
import json
import math

import pytest

from dope import cli


def _run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# grid parsing


def test_parse_range_integer_grid():
    assert cli.parse_range("0..8") == list(range(9))
    assert cli.parse_range("2..10:4") == [2, 6, 10]
    assert cli.parse_range("-3..1") == [-3, -2, -1, 0, 1]


def test_parse_range_float_grid():
    grid = cli.parse_range("-1..1:0.5")
    assert grid == pytest.approx([-1.0, -0.5, 0.0, 0.5, 1.0])
    assert all(isinstance(v, float) for v in grid)


def test_parse_range_lists_and_scalars():
    assert cli.parse_range("3") == [3]
    assert cli.parse_range("0.25") == [0.25]
    assert cli.parse_range("1,4,9") == [1, 4, 9]
    assert cli.parse_range("-2.5,0") == [-2.5, 0]


def test_parse_range_rejects_bad_grids():
    with pytest.raises(ValueError):
        cli.parse_range("4..0")
    with pytest.raises(ValueError):
        cli.parse_range("0..4:-1")


def test_negative_flag_values_survive_argument_parsing(capsys):
    # "--t -2..0:1" must not be read as an unknown option
    code, out, err = _run(capsys, ["tw", "--t", "-2..0:1"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["t"] for r in rows] == ["-2", "-1", "0"]


# ---------------------------------------------------------------------------
# gap tables


def test_gap_bessel_table(capsys):
    code, out, err = _run(capsys, ["gap", "--kernel", "bessel", "--alpha", "1", "--n", "0..3"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    assert float(rows[0]["value"]) == pytest.approx(math.exp(-1.0), abs=1e-12)
    values = [float(r["value"]) for r in rows]
    assert values == sorted(values)


def test_gap_percolation_exact_value(capsys):
    code, out, err = _run(
        capsys,
        ["gap", "--model", "percolation", "--M", "3", "--N", "3", "--p", "1/2", "--n", "0..3"],
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    # P[L = 0] = P[all entries 0] = 2^-9 for a 3x3 matrix at p = 1/2
    assert float(rows[0]["value"]) == 2.0**-9


def test_gap_word_exact(capsys):
    code, out, err = _run(
        capsys, ["gap", "--model", "word", "--M", "2", "--N", "2", "--n", "0..2"]
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[1]["value"]) == 0.25
    assert float(rows[2]["value"]) == 1.0


def test_gap_requires_a_mode(capsys):
    code, out, err = _run(capsys, ["gap", "--alpha", "1", "--n", "0..2"])
    assert code == 2


# ---------------------------------------------------------------------------
# Tracy-Widom tables and joint laws


def test_tw_joint_flag(capsys):
    code, out, err = _run(capsys, ["tw", "--joint", "-1,-2"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert rows[0]["consistent"] == "1"
    assert 0.0 < float(rows[0]["value"]) < 1.0


# ---------------------------------------------------------------------------
# sampling


def test_sample_exhaustive_word_worked_example(capsys):
    code, out, err = _run(
        capsys,
        ["sample", "--model", "word", "--M", "2", "--N", "2", "--exhaustive"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["exhaustive"] is True
    assert payload["total"] == 4
    assert payload["seed"] is None
    assert payload["counts"] == {"2": 3, "1,1": 1}


def test_sample_seeded_run_is_reproducible(capsys):
    argv = [
        "sample",
        "--model",
        "bernoulli",
        "--M",
        "2",
        "--N",
        "3",
        "--p",
        "0.5",
        "--samples",
        "200",
        "--seed",
        "7",
    ]
    code1, out1, _ = _run(capsys, argv)
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["statistic"] == "path-max"
    assert payload["total"] == 200


# ---------------------------------------------------------------------------
# output files and manifests


def test_out_file_and_manifest(tmp_path, capsys):
    target = tmp_path / "table.csv"
    argv = [
        "gap",
        "--kernel",
        "bessel",
        "--alpha",
        "1",
        "--n",
        "0..2",
        "--out",
        str(target),
    ]
    code = cli.main(argv)
    capsys.readouterr()
    assert code == 0
    text = target.read_text()
    manifest = json.loads((tmp_path / "table.csv.manifest.json").read_text())
    assert manifest["command"] == "gap"
    assert manifest["parameters"]["alpha"] == 1.0
    assert manifest["output_sha256"] == hashlib.sha256(text.encode()).hexdigest()
    assert manifest["wall_time_s"] >= 0.0

    # rerunning into a second file must reproduce the bytes exactly
    target2 = tmp_path / "again.csv"
    code = cli.main(argv[:-1] + [str(target2)])
    capsys.readouterr()
    assert code == 0
    assert target2.read_text() == text


def test_threaded_rows_match_serial(tmp_path, capsys, monkeypatch):
    argv = ["tw", "--t", "-1..1:1"]
    code, serial, _ = _run(capsys, argv)
    assert code == 0
    monkeypatch.setenv("DOPE_THREADS", "4")
    code, threaded, _ = _run(capsys, argv)
    assert code == 0
    assert threaded == serial


# ---------------------------------------------------------------------------
# verify suites


def test_verify_words_exact_passes(capsys):
    code, out, err = _run(capsys, ["verify", "words-exact"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines and all(l.startswith("PASS") for l in lines)
    assert "checks passed" in out


def test_verify_unknown_suite(capsys):
    code, out, err = _run(capsys, ["verify", "no-such-suite"])
    assert code == 2
