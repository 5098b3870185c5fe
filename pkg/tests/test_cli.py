import json
import subprocess
import sys

import pytest

from abinv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homology_lens(capsys):
    code, out, _ = run(capsys, "homology", "--manifold", '{"type":"lens","p":4,"q":1}')
    assert code == 0
    data = json.loads(out)
    assert data["b1"] == 0 and data["torsion"] == [4]
    assert data["Q"] == [["1/4"]]


def test_homology_s3(capsys):
    code, out, _ = run(capsys, "homology", "--manifold", '{"type":"s3"}')
    assert code == 0
    assert json.loads(out)["torsion"] == []


def test_malformed_json(capsys):
    code, _, err = run(capsys, "homology", "--manifold", '{"type":"lens",')
    assert code == 2
    error = json.loads(err)["error"]
    assert error["kind"] == "schema"
    assert "line 1 column" in error["message"]


def test_invariant_bf(capsys):
    code, out, _ = run(capsys, "invariant", "bf", "--k", "2", "--manifold", "lens(4,1)")
    assert code == 0
    data = json.loads(out)
    assert data["value"]["exact"] == {"kind": "integer", "value": 8}
    assert data["bruteforce"]["re"] == pytest.approx(8)


def test_invariant_tv(capsys):
    code, out, _ = run(capsys, "invariant", "tv", "--level", "6", "--manifold", "rp3-heegaard")
    assert code == 0
    assert json.loads(out)["value"]["exact"]["value"] == 2


def test_invariant_rt_no_level(capsys):
    code, _, err = run(capsys, "invariant", "rt", "--level", "6", "--manifold", '{"type":"surgery","matrix":[[2]]}')
    assert code == 5
    assert json.loads(err)["error"]["kind"] == "no_invariant_at_level"


def test_invariant_rt_exact_phase(capsys):
    code, out, _ = run(capsys, "invariant", "rt", "--k", "3", "--manifold", "s3")
    assert code == 0
    assert json.loads(out)["value"]["exact"] == {"kind": "phase", "num": 0, "den": 1}


def test_invariant_cs(capsys):
    code, out, _ = run(capsys, "invariant", "cs", "--k", "1", "--manifold", "lens(4,1)")
    data = json.loads(out)
    assert code == 0
    assert data["abs_squared"] == pytest.approx(8)
    assert data["closed_form"]["abs_squared"] == 8


def test_unsupported(capsys):
    code, _, err = run(capsys, "invariant", "tv", "--level", "3", "--manifold", '{"type":"surgery","matrix":[[2]]}')
    assert code == 4
    assert "cells" in json.loads(err)["error"]["supported"]


def test_invariant_violation(capsys):
    code, _, err = run(capsys, "homology", "--manifold", '{"type":"surgery","matrix":[[1,2],[3,4]]}')
    assert code == 3
    assert json.loads(err)["error"]["rule"] == "symmetric"


def test_non_integer_coupling_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "cs", "--k", "1.5", "--manifold", "s3"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"]["kind"] == "usage"


def test_zero_coupling_rejected(capsys):
    code, _, _ = run(capsys, "invariant", "bf", "--k", "0", "--manifold", "s3")
    assert code == 3


def test_verify_partition_suite(capsys):
    code, out, _ = run(capsys, "verify", "lemma2", "--pmax", "8", "--kmax", "8")
    assert code == 0
    assert json.loads(out)["passed"]


def test_verify_tv_suite(capsys):
    code, out, _ = run(capsys, "verify", "lemma3-tv", "--manifold", "rp3", "--nmax", "12")
    assert code == 0
    data = json.loads(out)
    notes = [n for r in data["reports"] for n in r["notes"]]
    assert any(n.startswith("Upsilon_2 = 2 vs |tau_4|^2 = 0") for n in notes)


def test_verify_ribbon(capsys):
    code, out, _ = run(capsys, "verify", "ribbon", "--nmax", "24")
    assert code == 0


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "ribbon", "--nmax", "3", "--epsilon", "-1")
    assert code == 1
    assert not json.loads(out)["passed"]


def test_verify_kirby_and_rt_suites(capsys):
    assert run(capsys, "verify", "kirby", "--count", "5")[0] == 0
    assert run(capsys, "verify", "lemma3-rt", "--pmax", "5", "--kmax", "3")[0] == 0


def test_table_output(capsys):
    code, out, _ = run(capsys, "invariant", "tv", "--level", "4", "--manifold", "s1xs2", "--output", "table")
    assert code == 0
    assert "bruteforce" in out and "4" in out


def test_manifold_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text('{"type":"connected_sum","parts":[{"type":"lens","p":2,"q":1},{"type":"lens","p":3,"q":1}]}',
                    encoding="utf-8")
    code, out, _ = run(capsys, "homology", "--manifold", str(path))
    assert code == 0
    assert json.loads(out)["torsion"] == [6]


def test_missing_manifold(capsys):
    code, _, err = run(capsys, "homology")
    assert code == 2


def test_json_output_deterministic():
    cmd = [sys.executable, "-m", "abinv.cli", "invariant", "cs", "--k", "3", "--manifold", "lens(7,3)"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second
    json.loads(first)
