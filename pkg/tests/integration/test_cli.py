"""
Integration tests for the command-line front end
"""

import json

import pytest

from polyfunlab.cli import main
from polyfunlab.records import records_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_smarandache(capsys):
    assert run(capsys, "smarandache", "90") == (0, "6\n", "")


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "90")
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == ["n=90 q=2 t=4", "betas=6,5,3,2", "alphas=1,3,15,45"]
    assert lines[-1] == "b_4=0,45,45"
    assert len(lines) == 7


def test_psi(capsys):
    code, out, _ = run(capsys, "psi", "90")
    assert code == 0
    assert out == "246037500\n2^2 * 3^9 * 5^5\n"


def test_psi_several_variables(capsys):
    code, out, _ = run(capsys, "psi", "6", "--d", "2")
    assert code == 0
    assert out.splitlines() == ["314928", "2^4 * 3^9"]


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "psi", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload == [{"command": "psi", "input": "n=4", "result": ["64", "2^6"],
                        "provenance": payload[0]["provenance"]}]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "90", "0,45,45")
    assert code == 0
    assert out.splitlines() == ["q_1 mod 90: 0", "q_2 mod 30: 0", "q_3 mod 6: 0", "q_4 mod 2: 1"]


def test_decompose_rejects_non_null(capsys):
    code, out, err = run(capsys, "decompose", "90", "0,1")
    assert code == 2
    assert out == ""
    assert err.startswith("❌")


def test_canonical(capsys):
    code, out, _ = run(capsys, "canonical", "5", "0,0,0,0,0,1")
    assert code == 0
    assert out == "0,1\n"


def test_canonical_multi(capsys, tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("mod=2 d=2\n2 0 : 1\n")
    code, out, _ = run(capsys, "canonical", "--multi", str(path))
    assert code == 0
    assert out == "mod=2 d=2\n1 0 : 1\n"


def test_canonical_multi_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "canonical", "--multi", str(tmp_path / "absent.txt"))
    assert code == 2
    assert "❌" in err


def test_canonical_needs_arguments(capsys):
    assert run(capsys, "canonical")[0] == 2


def test_group(capsys):
    code, out, _ = run(capsys, "group", "4")
    assert code == 0
    assert out.splitlines() == ["cyclic: Z_2^2 ⊕ Z_4^2", "primary: Z_4^2 ⊕ Z_2^2"]


def test_table_csv_is_stable(capsys):
    first = run(capsys, "table", "--range", "2..5")
    second = run(capsys, "table", "--range", "2..5")
    assert first == second
    assert first[1] == "n,s,psi,q,t\n2,2,4,2,1\n3,3,27,3,1\n4,4,64,2,2\n5,5,3125,5,1\n"


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--range", "2..3", "--columns", "s", "--format", "json")
    assert code == 0
    records = records_from_json(out)
    assert [r.result for r in records] == [["2"], ["3"]]


def test_table_bad_range(capsys):
    assert run(capsys, "table", "--range", "5..2")[0] == 2


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--psi-max", "4")
    assert code == 0
    assert out.startswith("psi: ok (")


def test_verify_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--psi-max", "4", "--inject-fault", "psi")
    assert code == 1
    assert "psi: FAILED" in out
    assert "first discrepancy: [psi]" in out


def test_verify_report(capsys):
    code, out, _ = run(capsys, "verify", "--psi-max", "4", "--report")
    assert code == 0
    assert "POLYFUNCTION VERIFICATION REPORT" in out


def test_unknown_environment(capsys):
    code, _, err = run(capsys, "--env", "staging", "smarandache", "4")
    assert code == 2
    assert "Configuration file not found" in err


def test_invalid_seed_override_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("POLYFUN_SEED", "abc")
    code, out, err = run(capsys, "--env", "testing", "verify", "--psi-max", "3")
    assert code == 2
    assert out == ""
    assert "verification.seed" in err


def test_invalid_log_level_override_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "loud")
    code, _, err = run(capsys, "--env", "testing", "smarandache", "4")
    assert code == 2
    assert "❌" in err


def test_canonical_multi_rejects_binary_file(capsys, tmp_path):
    path = tmp_path / "binary.txt"
    path.write_bytes(b"\xff\xfe\x00")
    code, out, err = run(capsys, "canonical", "--multi", str(path))
    assert code == 2
    assert out == ""
    assert "UTF-8" in err


def test_canonical_multi_huge_exponent(capsys, tmp_path):
    path = tmp_path / "huge.txt"
    path.write_text("mod=8 d=2\n99999999 0 : 1\n")
    code, out, _ = run(capsys, "canonical", "--multi", str(path))
    assert code == 0
    assert out.startswith("mod=8 d=2\n")


def test_psi_refuses_oversized_dimension(capsys):
    code, _, err = run(capsys, "psi", "2", "--d", "40")
    assert code == 2
    assert "multi_index_max_points" in err


def test_invalid_modulus(capsys):
    assert run(capsys, "smarandache", "0")[0] == 2


@pytest.mark.slow
def test_verify_all(capsys):
    code, out, _ = run(capsys, "--quiet", "verify", "--all")
    assert code == 0, out


def test_psi_field_case_in_two_variables(capsys):
    code, out, _ = run(capsys, "psi", "2", "--d", "2")
    assert code == 0
    assert out.splitlines()[0] == "16"
