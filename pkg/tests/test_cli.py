import json
from importlib import resources

import pytest

from hfroots.cli import main

FIG8 = str(resources.files("hfroots.data").joinpath("figure8.json"))
TREFOIL = str(resources.files("hfroots.data").joinpath("trefoil.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_solve(capsys):
    assert run_json(capsys, "solve", "2", "3", "5") == {"e0": -2, "pprime": [1, 2, 4], "N0": -1}
    assert run_json(capsys, "solve", "2", "3", "7") == {"e0": -1, "pprime": [1, 1, 1], "N0": 1}
    code, out, err = run(capsys, "solve", "2", "4", "6")
    assert code == 2 and "not pairwise coprime" in err and out == ""


def test_solve_byte_exact(capsys):
    _, out, _ = run(capsys, "solve", "2", "3", "5")
    assert out == '{"e0":-2,"pprime":[1,2,4],"N0":-1}\n'


def test_solve_overflow(capsys):
    code, _, err = run(capsys, "solve", str(2**63 - 25), str(2**63 + 29), str(2**61 - 1))
    assert code == 2 and "128-bit" in err


def test_root(capsys, tmp_path):
    assert run_json(capsys, "root", "2", "3", "7")["u_order"] == 1
    assert run_json(capsys, "root", "2", "3", "5")["u_order"] == 0
    dot = tmp_path / "r.dot"
    rec = run_json(capsys, "root", "2", "3", "5", "7", "11", "--dot", str(dot))
    assert rec["u_order"] >= 2 and rec["rank"] == 246
    assert sum(rec["hf_red_rank_by_grading"].values()) == 246
    assert dot.read_text().startswith("graph graded_root {")


def test_root_cap(capsys):
    code, _, err = run(capsys, "root", "2", "3", "5", "7", "11", "--cap", "100")
    assert code == 3 and "cap" in err


def test_obstruct(capsys):
    rec = run_json(capsys, "obstruct", "--genus", "1", "2", "3", "5", "7", "11")
    assert rec["verdict"] == "OBSTRUCTED" and rec["witness"] == "genus-one-five-fibers"
    assert rec["assumptions"]
    assert run_json(capsys, "obstruct", "--genus", "1", "2", "3", "7")["verdict"] == "INCONCLUSIVE"
    assert run_json(capsys, "obstruct", "--genus", "0", "2", "3", "5", "7", "11")["verdict"] == "OBSTRUCTED"
    rec = run_json(capsys, "obstruct", "--genus", "4", "--g4", "2", "2", "3", "7")
    assert rec["g4"] == 2 and rec["exponent"] == 5
    code, _, _ = run(capsys, "obstruct", "--genus", "1", "--g4", "3", "2", "3", "7")
    assert code == 2


def test_verify_tables(capsys):
    code, out, _ = run(capsys, "verify-tables", "--table", "1", "--samples", "20", "--seed", "42")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    rows, summary = lines[:-1], lines[-1]
    assert len(rows) == 8 and all(r["status"] == "PASS" and r["seed"] == 42 for r in rows)
    assert summary == {"summary": {"PASS": 8}, "rows": 8, "seed": 42}
    code2, out2, _ = run(capsys, "verify-tables", "--table", "1", "--samples", "20", "--seed", "42")
    assert out2 == out


def test_verify_tables_reports_failure(capsys):
    code, out, _ = run(capsys, "verify-tables", "--table", "3")
    assert code == 1
    assert json.loads(out.splitlines()[-1])["summary"]["FAIL"] == 6
    code, _, err = run(capsys, "verify-tables", "--table", "99")
    assert code == 2 and "unknown table" in err


def test_scan_threads_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "scan", "--fibers", "5", "--max-product", "60000", "--threads", "1", "--output", str(a))
    code, out, _ = run(capsys, "scan", "--fibers", "5", "--max-product", "60000", "--threads", "4", "--output", str(b))
    assert code == 0 and json.loads(out)["failures"] == 0
    assert a.read_bytes() == b.read_bytes()
    recs = [json.loads(x) for x in a.read_text().splitlines()]
    assert recs and all(r["u_order"] >= 2 for r in recs)


def test_scan_stdout_and_cache_dir(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "scan", "--fibers", "3", "--max-product", "100")
    assert code == 0 and json.loads(out.splitlines()[0])["params"] == [2, 3, 5]
    monkeypatch.setenv("HFROOTS_CACHE_DIR", str(tmp_path / "cache"))
    code, out, _ = run(capsys, "scan", "--fibers", "3", "--max-product", "100")
    assert code == 0
    assert (tmp_path / "cache" / "scan-l3-max100.jsonl").exists()


def test_scan_cap(capsys):
    code, _, err = run(capsys, "scan", "--fibers", "5", "--max-product", str(10**7))
    assert code == 3


def test_surgery(capsys):
    rec = run_json(capsys, "surgery", "--input", FIG8, "--slope", "1/3")
    assert (rec["red_rank"], rec["u_order"]) == (3, 1)
    rec = run_json(capsys, "surgery", "--input", TREFOIL, "--slope", "1")
    assert (rec["red_rank"], rec["u_order"]) == (0, 0)
    rec = run_json(capsys, "surgery", "--mirror", FIG8, "--slope=-1/2")
    assert (rec["red_rank"], rec["u_order"]) == (2, 1) and "mirror" in rec["computed_on"]


@pytest.mark.parametrize(
    "argv",
    [
        ["surgery", "--input", FIG8, "--slope", "2/3"],
        ["surgery", "--input", FIG8, "--slope", "0"],
        ["surgery", "--input", FIG8, "--slope", "x"],
        ["surgery", "--input", FIG8, "--slope=-1/2"],
        ["surgery", "--input", "/nonexistent.json", "--slope", "1"],
    ],
)
def test_surgery_invalid(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_surgery_stabilization_exit_code(capsys, monkeypatch):
    from hfroots.cone import cone

    monkeypatch.setattr(cone, "CEILING_CAP", 1)
    code, _, err = run(capsys, "surgery", "--input", FIG8, "--slope", "1/2", "--ceiling", "4")
    assert code == 4 and "stabilize" in err


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-m", "hfroots", "solve", "2", "3", "7"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["N0"] == 1
