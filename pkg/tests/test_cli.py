"""Exit codes, file outputs, and golden values through the command line."""

import csv
import json
import math
import subprocess
import sys

import pytest

from outagecap.cli import EXIT_IO, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main


def test_antenna_sweep_matches_closed_form(tmp_path, capsys):
    out = tmp_path / "c11.csv"
    code = main(["antenna", "--nt", "1", "--nr", "1", "--eps", "0.01",
                 "--snr-start", "0", "--snr-stop", "40", "--snr-step", "5",
                 "--out", str(out)])
    assert code == EXIT_OK
    assert "9 rows" in capsys.readouterr().out
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 9
    gamma = -math.log1p(-0.01)
    for row in rows:
        p = 10.0 ** (float(row["snr_db"]) / 10.0)
        assert float(row["rate_bits_per_symbol"]) == pytest.approx(
            math.log2(1.0 + gamma * p), rel=1e-7)
        assert float(row["std_error"]) == 0.0


def test_antenna_rejects_dual_sided_config(tmp_path):
    code = main(["antenna", "--nt", "2", "--nr", "2",
                 "--out", str(tmp_path / "x.csv")])
    assert code == EXIT_USAGE


def test_bad_eps_is_usage_error(tmp_path):
    code = main(["antenna", "--eps", "0", "--out", str(tmp_path / "x.csv")])
    assert code == EXIT_USAGE


def test_tf_sweep_writes_rows_and_sidecar(tmp_path):
    out = tmp_path / "tf2.csv"
    code = main(["tf-div", "-L", "2", "--eps", "0.05",
                 "--snr-start", "0", "--snr-stop", "10", "--snr-step", "5",
                 "--samples", "20000", "--seed", "7", "--out", str(out)])
    assert code == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 3
    assert all(float(r["std_error"]) > 0.0 for r in rows)
    meta = json.loads((tmp_path / "tf2.csv.meta.json").read_text())
    assert meta["seed"] == 7 and meta["n_samples"] == 20000


def test_harq_sweep_has_protocol_columns(tmp_path):
    out = tmp_path / "cc4.csv"
    code = main(["harq", "--strategy", "cc", "-L", "4", "--eps", "0.05",
                 "--snr-start", "0", "--snr-stop", "10", "--snr-step", "10",
                 "--out", str(out)])
    assert code == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["snr_db", "rate_bits_per_symbol", "std_error",
                             "initial_rate", "expected_rounds", "advantage_ratio"]
    for r in rows:
        eta = float(r["rate_bits_per_symbol"])
        assert eta == pytest.approx(
            float(r["initial_rate"]) / float(r["expected_rounds"]), rel=1e-6)


def test_cli_reruns_are_byte_identical(tmp_path):
    argv = ["tf-div", "-L", "2", "--eps", "0.05", "--snr-start", "0",
            "--snr-stop", "5", "--snr-step", "5", "--samples", "30000"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b), "--workers", "4"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_undersampled_tail_is_numeric_error(tmp_path):
    code = main(["tf-div", "-L", "1", "--eps", "0.02", "--samples", "1000",
                 "--snr-stop", "0", "--out", str(tmp_path / "x.csv")])
    assert code == EXIT_NUMERIC


def test_unwritable_path_is_io_error(tmp_path):
    code = main(["antenna", "--snr-stop", "0",
                 "--out", str(tmp_path / "missing_dir" / "x.csv")])
    assert code == EXIT_IO


def test_missing_required_flag_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["tf-div", "--out", "x.csv"])      # no -L
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["harq", "-L", "2", "--out", "x.csv"])   # no --strategy
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_gap_table_prints(capsys):
    code = main(["gap", "--eps", "0.01"])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "1x1" in text and "2x1" in text and "1x2" in text
    assert "-11.291" in text


def test_gap_median_value(capsys):
    code = main(["gap", "--eps", "0.5", "--config", "1x1"])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "0.693" in text and "-1.59" in text


def test_gap_csv_and_bad_config(tmp_path):
    out = tmp_path / "gaps.csv"
    assert main(["gap", "--config", "2x1", "--config", "1x3",
                 "--out", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert [r["label"] for r in rows] == ["2x1", "1x3"]
    assert main(["gap", "--config", "2by1"]) == EXIT_USAGE
    assert main(["gap", "--config", "2x2"]) == EXIT_USAGE


def test_figure_preset_writes_manifest(tmp_path):
    code = main(["figure", "1b", "--out-dir", str(tmp_path),
                 "--snr-stop", "10", "--snr-step", "5"])
    assert code == EXIT_OK
    manifest = json.loads((tmp_path / "fig1b_manifest.json").read_text())
    assert {e["file"] for e in manifest["curves"]} == {
        "fig1b_miso_1x1.csv", "fig1b_simo_1x2.csv"}
    for e in manifest["curves"]:
        assert (tmp_path / e["file"]).exists()


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "outagecap.cli", "gap", "--eps", "0.01"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "2x1" in proc.stdout
