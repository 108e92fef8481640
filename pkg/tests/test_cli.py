from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from semiexact.cli import main
from semiexact.involution import residuation_closure
from semiexact.matrix import load_matrix, mat_mul, parse_vector, row_space, span_membership
from semiexact.semiring import parse_semiring

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# name -> argv (run with the data directory as working directory)
GOLDEN_CASES = {
    "validate_zmod6": ["semiring", "validate", "--semiring", "zmod 6"],
    "validate_tropical": ["semiring", "validate", "--semiring", "tropical", "--samples", "50",
                          "--seed", "3"],
    "exactness_zmod4": ["exactness", "--semiring", "zmod 4", "--max-m", "2", "--max-n", "2"],
    "exactness_bool_agreement": ["exactness", "--semiring", "boolean", "--max-m", "2",
                                 "--max-n", "2", "--props", "e1,f1,g1,h1"],
    "complement_z6": ["complement", "--modulus", "6", "--matrix", "z6.mat", "--isomorphism"],
    "snf_int": ["snf", "--matrix", "int.mat"],
    "duality_member": ["duality", "--semiring", "tropical", "--matrix", "trop_A.mat",
                       "--row", "0 1"],
    "duality_non_member": ["duality", "--semiring", "tropical", "--matrix", "trop_row.mat",
                           "--row", "0 1"],
    "groupsemiring_retract": ["groupsemiring", "--semiring", "tropical", "--group", "C2",
                              "--check", "retract", "--samples", "50", "--seed", "1"],
    "groupsemiring_exact": ["groupsemiring", "--semiring", "boolean", "--group", "C2",
                            "--check", "exactness"],
    "greens_z2": ["greens", "--semiring", "zmod 2", "--dir", "greens_z2"],
    "kernel_z4": ["kernel", "--semiring", "zmod 4", "--matrix", "z4.mat"],
    "span_bool": ["span", "--semiring", "boolean", "--matrix", "bool_I.mat", "--member", "1 1"],
}


def run_cli(argv, cwd=DATA):
    env = dict(os.environ)
    return subprocess.run([sys.executable, "-m", "semiexact", *argv, "--json"], cwd=cwd,
                          capture_output=True, text=True, env=env)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_and_deterministic(name):
    first = run_cli(GOLDEN_CASES[name])
    second = run_cli(GOLDEN_CASES[name])
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    golden = GOLDEN / f"{name}.json"
    if os.environ.get("SEMIEXACT_REGEN_GOLDEN"):
        golden.write_text(first.stdout, encoding="utf-8")
    assert first.stdout == golden.read_text(encoding="utf-8")


def test_report_schema():
    rep = json.loads(run_cli(GOLDEN_CASES["exactness_zmod4"]).stdout)
    assert set(rep) == {"tool-version", "semiring", "operation", "inputs", "verdict",
                        "witnesses", "scope", "seed"}
    assert rep["verdict"] == "exact"


def test_duality_witnesses_reverify():
    T = parse_semiring("tropical")
    rep = json.loads((GOLDEN / "duality_member.json").read_text())
    A = load_matrix(DATA / "trop_A.mat", T)
    x = parse_vector("0 1", T)
    u = parse_vector(rep["witnesses"]["multiplier"], T)
    assert mat_mul(u, A) == x
    rep = json.loads((GOLDEN / "duality_non_member.json").read_text())
    A = load_matrix(DATA / "trop_row.mat", T)
    pair = rep["witnesses"]["separating_pair"]
    v, v2 = parse_vector(pair["v"], T, "col"), parse_vector(pair["v2"], T, "col")
    assert mat_mul(A, v) == mat_mul(A, v2) and mat_mul(x, v) != mat_mul(x, v2)
    assert not span_membership(row_space(A), x)
    assert residuation_closure(A, x) == parse_vector(rep["witnesses"]["closure"], T)


def test_exit_codes(tmp_path, capsys):
    assert main(["span", "--semiring", "boolean", "--matrix", str(tmp_path / "none.mat")]) == 2
    assert main(["span", "--semiring", "zmod 4", "--matrix", str(DATA / "bad.mat")]) == 2
    err = capsys.readouterr().err
    assert "bad.mat:2:3:" in err
    assert main(["span", "--semiring", "nonsense", "--matrix", str(DATA / "z4.mat")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["exactness"])
    assert exc.value.code == 2


def test_budget_exit_code(capsys):
    # 2 x 2 over Z/4 needs 4^4 matrices, beyond a budget of 100
    assert main(["exactness", "--semiring", "zmod 4", "--max-m", "2", "--max-n", "2",
                 "--budget", "100"]) == 3
    assert "budget" in capsys.readouterr().err
    assert main(["exactness", "--semiring", "zmod 4", "--budget", "0"]) == 2


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["snf", "--matrix", str(DATA / "int.mat"), "-o", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "ok" and rep["witnesses"]["D"] == [[1, 0], [0, 6]]
