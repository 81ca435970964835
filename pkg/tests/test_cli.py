"""The command-line frontend: outputs, pipelines and exit codes."""

import io
import json
import subprocess
import sys

import pytest

from qspace.cli import EXIT_CAP, EXIT_FALSE, EXIT_OK, EXIT_USAGE, main
from qspace.codeio import read_code, write_code
from qspace.construct import GF64_ORBIT_GENERATORS, lifted_mrd_code, partial_spread, spread


@pytest.fixture
def run(capsys, monkeypatch):
    def _run(argv, stdin=""):
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        code = main(argv)
        out, err = capsys.readouterr()
        return code, out, err
    return _run


GF64 = "GF(2^6)/1,1,0,0,0,0,1"
GENS = [a for g in GF64_ORBIT_GENERATORS for a in ("--gens", ",".join(map(str, g)))]


def test_bounds_table_csv(run):
    code, out, _ = run(["bounds", "table", "--q", "2", "--n", "6", "--delta", "2..3", "--k", "2..3"])
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "q,n,delta,k,lower,upper,lower_src,upper_src"
    cells = {tuple(r.split(",")[1:4]): r.split(",")[4:6] for r in lines[1:]}
    assert cells == {("6", "2", "2"): ["21", "21"], ("6", "2", "3"): ["77", "81"], ("6", "3", "3"): ["9", "9"]}


def test_bounds_single_formats(run):
    code, out, _ = run(["bounds", "single", "--n", "8", "--delta", "4", "--k", "4", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["lower"], doc["upper"]) == (17, 17)
    _, out, _ = run(["bounds", "single", "--n", "7", "--delta", "2", "--k", "3"])
    assert out.startswith("A_2(7,2,3) = 329 - 381")
    code, _, err = run(["bounds", "single", "--n", "7..8", "--delta", "2", "--k", "3"])
    assert code == EXIT_USAGE and "one value" in err


def test_cyclic_code_pipes_into_verify(run):
    code, out, _ = run(["construct", "cyclic", "--field", GF64, *GENS, "--add-trivial"])
    assert code == EXIT_OK
    assert len(read_code(out).code) == 107
    code, verdict, err = run(["verify", "mindist", "--metric", "injection"], stdin=out)
    assert code == EXIT_OK
    block = json.loads(verdict)
    assert block["size"] == 107 and block["min_distance"] == 2 and block["verdict"] is True
    assert "mindist: PASS" in err


def test_projections_pipeline(run):
    code, system, _ = run(["projections", "gen", "--n", "7", "--k", "3", "--t", "2", "--q", "2", "--rho", "2"])
    assert code == EXIT_OK
    code, out, _ = run(["projections", "solve", "--format", "json"], stdin=system)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["tag"] == "Unique" and doc["solutions"] == [[5, 40, 40, 40, 256]]
    code, out, _ = run(["projections", "solve"], stdin=system)
    assert out.splitlines()[0] == "outcome Unique"
    assert "a[4] dim 2 10;01 = 256" in out


def test_projections_exit_codes(run):
    _, system, _ = run(["projections", "gen", "--n", "7", "--k", "3", "--t", "2", "--rho", "4"])
    code, out, _ = run(["projections", "solve", "--pin", "0=1", "--pin", "2=1"], stdin=system)
    assert code == EXIT_FALSE and "Infeasible" in out
    code, _, _ = run(["projections", "solve", "--budget", "1", "--cap", "100"], stdin=system)
    assert code == EXIT_CAP
    code, _, err = run(["projections", "solve", "--pin", "zero"], stdin=system)
    assert code == EXIT_USAGE and "INDEX=VALUE" in err
    code, _, err = run(["projections", "solve"], stdin="{not json")
    assert code == EXIT_USAGE and "line 1" in err
    code, out, _ = run(["projections", "report", "--n", "8", "--k", "3", "--t", "2", "--rho", "2,3"])
    assert code == EXIT_FALSE
    assert out.splitlines() == ["rho=2: excluded by divisibility", "rho=3: excluded by divisibility"]


def test_projections_symmetric_solve(run):
    _, system, _ = run(["projections", "gen", "--n", "7", "--k", "3", "--t", "2", "--rho", "5"])
    code, out, _ = run(["projections", "solve", "--symmetric", "--format", "json"], stdin=system)
    assert code == EXIT_OK and json.loads(out)["tag"] == "Multiple"


@pytest.mark.parametrize("argv,n,k,size", [
    (["construct", "spread", "--n", "6", "--k", "3"], 6, 3, 9),
    (["construct", "partial-spread", "--n", "7", "--k", "2"], 7, 2, 41),
    (["construct", "lift", "--k", "3", "--l", "3", "--delta", "2"], 6, 3, 64),
    (["construct", "multilevel", "--words", "111000,000111", "--delta", "3"], 6, 3, 9),
])
def test_construct_outputs_are_valid_verify_inputs(run, argv, n, k, size):
    code, out, _ = run(argv)
    assert code == EXIT_OK
    C = read_code(out).code
    assert (C.n, len(C)) == (n, size) and set(C.dimensions) == {k}
    code, _, _ = run(["verify", "mindist"], stdin=out)
    assert code == EXIT_OK


def test_construct_mrd_and_lift_from_file(run, tmp_path):
    path = tmp_path / "mrd.json"
    code, _, _ = run(["construct", "mrd", "--k", "3", "--l", "3", "--delta", "2", "--out", str(path)])
    assert code == EXIT_OK and json.loads(path.read_text())["delta"] == 2
    code, out, _ = run(["construct", "lift", "--in", str(path)])
    assert code == EXIT_OK and read_code(out).code == lifted_mrd_code(6, 3, 2, 2)
    code, out, _ = run(["construct", "mrd", "--diagram", "3,2,1", "--delta", "2"])
    assert code == EXIT_OK and json.loads(out)["diagram"]


def test_construct_puncture(run):
    src = write_code(lifted_mrd_code(6, 3, 2, 2))
    code, out, err = run(["construct", "puncture"], stdin=src)
    assert code == EXIT_OK and len(read_code(out).code) == 16
    assert "16 words" in err
    code, out, _ = run(["construct", "puncture", "--augment", "3", "--max-new", "1"], stdin=src)
    assert code == EXIT_OK and len(read_code(out).code) == 17


def test_verify_verdicts(run):
    S = write_code(spread(6, 3, 2))
    assert run(["verify", "steiner", "--t", "1"], stdin=S)[0] == EXIT_OK
    assert run(["verify", "spread"], stdin=S)[0] == EXIT_OK
    assert run(["verify", "covering", "--t", "1"], stdin=S)[0] == EXIT_OK
    assert run(["verify", "cover"], stdin=S)[0] == EXIT_OK
    P = write_code(partial_spread(5, 2, 2))
    assert run(["verify", "spread"], stdin=P)[0] == EXIT_FALSE
    assert run(["verify", "partial-spread"], stdin=P)[0] == EXIT_OK
    code, out, err = run(["verify", "mindist", "--expect", "3"], stdin=P)
    assert code == EXIT_FALSE and "FAIL" in err and json.loads(out)["verdict"] is False
    L = write_code(lifted_mrd_code(6, 3, 2, 2))
    code, out, _ = run(["verify", "std"], stdin=L)
    assert code == EXIT_OK and json.loads(out)["verdict"] is True
    code, _, _ = run(["verify", "design", "--t", "1", "--lam", "1"], stdin=L)
    assert code == EXIT_FALSE


def test_verify_warns_on_noncanonical_input(run):
    text = json.dumps({"field": "GF(2)", "n": 4, "subspaces": [["1100", "0100"], ["0011", "0001"]]})
    code, _, err = run(["verify", "spread"], stdin=text)
    assert code == EXIT_FALSE
    assert "warning:" in err


def test_small_commands(run):
    code, out, _ = run(["field", "--q", "4", "--format", "json", "--table"])
    assert code == EXIT_OK and json.loads(out)["q"] == 4 and len(json.loads(out)["powers"]) == 3
    assert run(["gauss", "--n", "7", "--k", "2"])[1] == "2667\n"
    assert run(["gauss", "--rows", "110,011,101"])[1] == "rank 2\n101\n011\n"
    assert run(["gauss", "--q", "3", "--n", "4", "--k", "2"])[1] == "130\n"
    code, out, _ = run(["dist", "--a", "100,010", "--b", "001", "--format", "json"])
    assert json.loads(out) == {"subspace": 3, "injection": 2, "grassmannian": None}
    assert run(["enum", "--n", "4", "--k", "2", "--count"])[1] == "35\n"
    assert run(["enum", "--n", "3", "--count"])[1] == "16\n"
    code, out, _ = run(["complements", "--n", "2..4", "--format", "json"])
    assert [r["count"] for r in json.loads(out)] == [4, 10, 38]


@pytest.mark.parametrize("argv,expect,needle", [
    (["bogus"], EXIT_USAGE, "invalid choice"),
    (["construct", "spread", "--n", "4"], EXIT_USAGE, "--k"),
    (["construct", "spread", "--n", "5", "--k", "2"], EXIT_USAGE, "error"),
    (["gauss"], EXIT_USAGE, "--rows"),
    (["gauss", "--rows", "12"], EXIT_USAGE, "outside GF(2)"),
    (["dist", "--a", "10", "--b", "100"], EXIT_USAGE, "length"),
    (["enum", "--n", "8", "--k", "4", "--cap", "10"], EXIT_CAP, "cap exceeded"),
    (["complements", "--n", "8", "--cap", "100"], EXIT_CAP, "cap exceeded"),
    (["verify", "spread", "--in", "/nonexistent/file.json"], EXIT_USAGE, "cannot read"),
    (["bounds", "table", "--n", "9..6"], EXIT_USAGE, ""),
])
def test_errors_and_exit_codes(run, argv, expect, needle):
    code, _, err = run(argv)
    assert code == expect
    assert needle in err
    assert "Traceback" not in err


def test_verify_rejects_malformed_code(run):
    code, _, err = run(["verify", "mindist"], stdin='{"field": "GF(2)", "n": 3, "subspaces": [["102"]]}')
    assert code == EXIT_USAGE and "subspaces[0][0]" in err


def test_repeated_runs_are_byte_identical(run):
    argvs = [
        ["construct", "mrd", "--diagram", "4,3,2,1", "--delta", "2", "--seed", "5"],
        ["construct", "multilevel", "--words", "110000,001100,000011", "--delta", "2"],
        ["bounds", "table", "--n", "7..8", "--format", "text"],
        ["enum", "--n", "5", "--k", "2", "--q", "3"],
    ]
    for argv in argvs:
        first = run(argv)
        assert first[0] == EXIT_OK
        assert run(argv) == first


def test_console_pipeline_end_to_end():
    exe = [sys.executable, "-m", "qspace"]
    gen = subprocess.run(exe + ["projections", "gen", "--n", "7", "--k", "3", "--t", "2", "--rho", "2"],
                         capture_output=True, text=True, check=True)
    sol = subprocess.run(exe + ["projections", "solve"], input=gen.stdout, capture_output=True, text=True)
    assert sol.returncode == 0 and "outcome Unique" in sol.stdout
