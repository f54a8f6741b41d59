import json
import subprocess
import sys

import pytest

from closedchroma.cli import main, parse_range


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv)
    return status, json.loads(out)


def test_compute_cycle(capsys):
    status, rep = run_json(capsys, "compute", "--family", "cycle:6", "--n", "2", "--k", "1")
    assert status == 0
    assert list(rep) == ["family", "params", "n", "k", "verdict", "value", "witness", "source"]
    assert rep["verdict"] == "exists" and rep["value"] == 2


def test_compute_is_byte_deterministic(capsys):
    args = ("compute", "--family", "petersen:7,2", "--n", "3", "--k", "1")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_timing_is_opt_in(capsys):
    _, rep = run_json(capsys, "compute", "--family", "path:4", "--n", "2", "--k", "1", "--timing")
    assert list(rep)[-1] == "timing_ms"


def test_classify_petersen(capsys):
    status, rep = run_json(capsys, "classify", "--family", "petersen:8,2", "--n", "8", "--k", "1")
    assert status == 0
    assert rep["verdict"] == "unknown" and rep["theorem"] == "thm:petersen-k1"
    assert rep["conditions"]["k1 case"] == 8


def test_classify_infinite_family(capsys):
    _, rep = run_json(capsys, "classify", "--family", "tiling:r4", "--n", "5", "--k", "1")
    assert rep["value"] == 3 and rep["notes"]


def test_series(capsys):
    status, out, _ = run(capsys, "series", "--upto", "16", "--format", "text")
    assert status == 0
    rows = out.splitlines()
    assert "8, 6k-17a" in rows and rows[-1] == "16, -114k+271a" and len(rows) == 17


def test_verify_labeling_file(capsys, tmp_path):
    lab = tmp_path / "lab.txt"
    lab.write_text("0\n2\n0\n")
    status, rep = run_json(capsys, "verify", "--family", "path:3", "--n", "5", "--k", "2",
                           "--labeling", str(lab))
    assert status == 0 and rep["proper"] and rep["closed_ok"] and rep["order"] == 2
    lab.write_text("0\n0\n0\n")
    status, rep = run_json(capsys, "verify", "--family", "path:3", "--n", "5", "--k", "2",
                           "--labeling", str(lab))
    assert status == 2 and not rep["proper"]
    lab.write_text("0\nx\n0\n")
    status, _, err = run(capsys, "verify", "--family", "path:3", "--n", "5", "--k", "2",
                         "--labeling", str(lab))
    assert status == 1 and "expected one integer" in err


def test_report_round_trip(capsys, tmp_path):
    report = tmp_path / "r.json"
    assert main(["compute", "--family", "caterpillar:3,4", "--n", "4", "--k", "1",
                 "--output", str(report)]) == 0
    assert json.loads(report.read_text())["value"] == 2
    status, rep = run_json(capsys, "verify", "--report", str(report))
    assert status == 0 and rep["checked"] == 1 and rep["failures"] == 0
    # tamper with the witness
    data = json.loads(report.read_text())
    data["witness"][0] += 1
    report.write_text(json.dumps(data))
    status, rep = run_json(capsys, "verify", "--report", str(report))
    assert status == 2 and rep["failures"] == 1


def test_survey_round_trip(capsys, tmp_path):
    report = tmp_path / "s.json"
    status = main(["survey", "--family", "cycle", "--p1", "3:6", "--n", "1:4",
                   "--output", str(report)])
    assert status == 0
    data = json.loads(report.read_text())
    assert data["failures"] == 0 and data["cells"] == 4 * 10
    assert all(row["agree"] for row in data["rows"])
    status, rep = run_json(capsys, "verify", "--report", str(report))
    assert status == 0 and rep["failures"] == 0 and rep["checked"] > 0


def test_edges_input(capsys, tmp_path):
    edges = tmp_path / "c4.txt"
    edges.write_text("# four-cycle\n4\n0 1\n1 2\n2 3\n3 0\n")
    status, rep = run_json(capsys, "compute", "--edges", str(edges), "--n", "3", "--k", "1")
    assert status == 0 and rep["verdict"] == "not-exists" and rep["family"].startswith("file:")
    _, rep = run_json(capsys, "classify", "--edges", str(edges), "--n", "3", "--k", "1")
    assert rep["verdict"] == "not-exists" and rep["theorem"] == "thm:regular-screen"


def test_csv_output(capsys):
    status, out, _ = run(capsys, "compute", "--family", "star:3", "--n", "4", "--k", "3",
                         "--format", "csv")
    header, row = out.splitlines()
    assert header.startswith("family,params,n,k,verdict,value,witness,source")
    assert row.startswith("star:3,3,4,3,exists,2,")


def test_frontier_petersen(capsys):
    status, rep = run_json(capsys, "frontier", "petersen", "--m", "4,8", "--j", "even",
                           "--n", "8,24", "--k", "1")
    assert status == 0 and rep["failures"] == 0 and rep["resolved_open_cells"] >= 1


def test_frontier_additivity_and_ieds(capsys):
    status, rep = run_json(capsys, "frontier", "additivity", "--family", "complete:3", "--n", "5")
    assert status == 0 and rep["violations"] == 0
    row = next(r for r in rep["rows"] if r["k1"] == 1 and r["k2"] == 2)
    assert row["value"] == 3 and row["rhs_sum"] == 6 and row["subadditive"]
    status, rep = run_json(capsys, "frontier", "ieds", "--family", "cycle:4", "--n-max", "5")
    assert rep["ieds"] is None and rep["failing_modulus"] == 3


def test_ieds_subcommand(capsys):
    status, rep = run_json(capsys, "ieds", "--family", "star:3", "--n", "4", "--k", "3")
    assert status == 0 and rep["ieds"] == [0] and rep["witness"] == [3, 4, 4, 4]
    _, rep = run_json(capsys, "ieds", "--family", "cycle:4")
    assert rep["ieds"] is None


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "2", "--k", "1"],
    ["compute", "--family", "cycle:6", "--edges", "x", "--n", "2", "--k", "1"],
    ["compute", "--family", "cycle:2", "--n", "2", "--k", "1"],
    ["compute", "--family", "tiling:r4", "--n", "2", "--k", "1"],
    ["compute", "--family", "cycle:6", "--n", "0", "--k", "1"],
    ["compute", "--family", "cycle:6", "--n", "2", "--k", "1", "--enumeration-cap", "0"],
    ["compute", "--edges", "/nonexistent/file", "--n", "2", "--k", "1"],
    ["compute", "--family", "cycle:6", "--n", "2"],
    ["bogus"],
    ["survey", "--family", "cycle", "--p1", "a:b", "--n", "3"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_resource_error_exit_1(capsys):
    status, rep = run_json(capsys, "compute", "--family", "complete:6", "--n", "2", "--k", "1",
                           "--chromatic-bound", "3")
    assert status == 1 and rep["verdict"] == "unknown" and rep["source"].startswith("resource")
    status, _, err = run(capsys, "ieds", "--family", "cycle:6", "--ieds-bound", "3")
    assert status == 1 and "resource" in err


def test_thread_env_var(capsys, monkeypatch):
    monkeypatch.setenv("CLOSED_CHROMA_THREADS", "2")
    args = ("survey", "--family", "path", "--p1", "2:8", "--n", "1:6")
    status, out, _ = run(capsys, *args)
    monkeypatch.setenv("CLOSED_CHROMA_THREADS", "1")
    assert run(capsys, *args)[1] == out and status == 0
    monkeypatch.setenv("CLOSED_CHROMA_THREADS", "many")
    assert run(capsys, *args)[0] == 1


def test_parse_range():
    assert parse_range("1:3,8,2") == [1, 2, 3, 8]
    with pytest.raises(Exception):
        parse_range("")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "closedchroma", "classify", "--family",
                           "cycle:5", "--n", "3", "--k", "1", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "not-exists" in proc.stdout
