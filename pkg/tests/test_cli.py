import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from primesine.bigfloat import pi_decimal_string
from primesine.cli import main, to_csv

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pi_count_both(capsys):
    code, out, _ = run(capsys, "pi-count", "--n", "50", "--method", "both")
    assert code == 0
    assert out == "n,method,pi\n50,formula,15\n50,sieve,15\n"


def test_pi_count_usage_error(capsys):
    code, _, err = run(capsys, "pi-count", "--n", "1")
    assert code == 2 and "error" in err


def test_pi_count_formula_1000(capsys):
    code, out, _ = run(capsys, "pi-count", "--n", "1000", "--method", "formula")
    assert code == 0 and out.splitlines()[1] == "1000,formula,168"


def test_series_both_engines(capsys):
    code, out, _ = run(capsys, "series", "--n", "50", "--a", "1", "--b", "2", "--engine", "both", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert abs(rows[0]["value"] - rows[1]["value"]) <= 1e-10


def test_series_default_engine(capsys):
    code, out, _ = run(capsys, "series", "--n", "5", "--a", "1", "--b", "2")
    assert code == 0
    assert out.splitlines()[1].startswith("exact,5,1*pi/2,3.654508")


def test_series_precision_error(capsys):
    code, _, err = run(capsys, "series", "--n", "1000", "--x-decimal", "3.14159", "--digits", "6")
    assert code == 3
    needed = int(err.rsplit("required digits: ", 1)[1].rstrip(")\n"))
    assert 2400 <= needed <= 2600


def test_series_truncated_pi(capsys):
    code, _, _ = run(capsys, "series", "--n", "200", "--x-decimal", pi_decimal_string(100))
    assert code == 3


def test_series_exact_needs_rational(capsys):
    code, _, _ = run(capsys, "series", "--n", "5", "--x-unit", "--engine", "exact")
    assert code == 2


def test_series_trace(capsys):
    code, out, _ = run(capsys, "series", "--n", "6", "--a", "1", "--b", "2", "--trace")
    assert code == 0
    assert out.splitlines()[0] == "engine,k,term"
    assert out.splitlines()[-1] == "exact,6,0"


def test_delta_csv_golden(capsys, tmp_path):
    out_file = tmp_path / "delta.csv"
    assert main(["delta-csv", "--nmax", "50", "--out", str(out_file)]) == 0
    golden = (GOLDEN / "delta_50.csv").read_bytes()
    assert out_file.read_bytes() == golden
    rows = list(csv.DictReader(io.StringIO(golden.decode())))
    assert [int(r["n"]) for r in rows] == list(range(2, 51))
    values = {int(r["n"]): float(r["delta"]) for r in rows}
    assert values[2] == 0.5
    assert abs(values[50] - 0.539005) <= 1e-5
    assert all(0 < v < 1 for v in values.values())


def test_csv_round_trip():
    text = (GOLDEN / "delta_50.csv").read_text()
    rows = list(csv.reader(io.StringIO(text)))
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    assert buf.getvalue() == text
    header, *body = rows
    assert to_csv(header, [dict(zip(header, row)) for row in body]) == text


def test_precision_plan(capsys):
    code, out, _ = run(capsys, "precision-plan", "--n", "945")
    assert code == 0
    overall = int(out.splitlines()[-1].split(",")[1])
    assert 2370 <= overall <= 2470
    _, out, _ = run(capsys, "precision-plan", "--n", "1000", "--format", "json")
    assert 2400 <= json.loads(out)["overall"] <= 2600
    _, out, _ = run(capsys, "precision-plan", "--n", "2")
    assert out.splitlines()[1:3] == ["1,20,20", "2,20,20"]


def test_experiment_lacunarity(capsys):
    code, out, _ = run(capsys, "experiment", "lacunarity", "--kmax", "300")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["summary"]["failures_above_4"] == []


def test_experiment_moment4(capsys):
    code, out, _ = run(capsys, "experiment", "moment4", "--n", "12")
    report = json.loads(out)
    assert report["summary"]["moment"] == "211/32"
    assert report["rows"][-1]["moment_float"] == 6.59375


def test_experiment_ae_sample_bytes_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"ae{i}.json"
        subprocess.run(
            [sys.executable, "-m", "primesine", "experiment", "ae-sample", "--samples", "4", "--n", "150",
             "--seed", "7", "--out", str(path)],
            check=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["generator"] == "python-random-mt19937"


def test_experiment_csv_format(capsys):
    code, out, _ = run(capsys, "experiment", "cancellation", "--n", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "max_index,solutions,structure_violations"


def test_experiment_resource_error(capsys):
    code, _, _ = run(capsys, "experiment", "cancellation", "--n", "30")
    assert code == 4


def test_unknown_experiment():
    with pytest.raises(SystemExit) as info:
        main(["experiment", "nonsense"])
    assert info.value.code == 2


def test_weps_cli(capsys):
    code, out, _ = run(capsys, "experiment", "weps-demo", "--x0", "1", "--eps", "0.1", "--nmax", "20000")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert 0.9 <= summary["two_s_over_pi"] <= 1.1
