"""Command dispatch, exit codes, and report emission."""

import json
import os

import pytest

from moritakit.cli import main

WORKSPACE_DIR = os.path.join(os.path.dirname(__file__), "..", "workspaces")
T2 = os.path.join(WORKSPACE_DIR, "t2_corner.json")
M2 = os.path.join(WORKSPACE_DIR, "m2_corner.json")
IDENTITY = os.path.join(WORKSPACE_DIR, "identity.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_passes_on_fixture(capsys):
    code, out, _ = run(capsys, "validate", T2)
    assert code == 0
    assert "[pass] algebra T2" in out
    assert "result: pass" in out


def test_strict_true_on_identity(capsys):
    code, out, _ = run(capsys, "strict", IDENTITY, "--context", "identity")
    assert code == 0
    assert "strict: true" in out


def test_strict_false_on_corner(capsys):
    code, out, _ = run(capsys, "strict", T2, "--context", "t2corner")
    assert code == 1
    assert "strict: false" in out


def test_trace_reports_ideal_shapes(capsys):
    code, out, _ = run(capsys, "trace", T2, "--context", "t2corner")
    assert code == 0
    assert "I = 2-dim, idempotent (exponent 1)" in out
    assert "J = S (dim 1)" in out


def test_torsion_command(capsys):
    code, out, _ = run(capsys, "torsion", T2, "--module", "T2reg", "--ideal", "I")
    assert code == 0
    assert "torsion submodule dim 2" in out
    assert "torsion-free: false" in out


def test_localize_regular(capsys):
    code, out, _ = run(capsys, "localize", T2, "--module", "T2reg", "--ideal", "I")
    assert code == 0
    assert "localized dim 1" in out


def test_closed_yes_and_no(capsys):
    code, out, _ = run(capsys, "closed", T2, "--module", "S2", "--ideal", "I")
    assert code == 0 and "closed: true" in out
    code, out, _ = run(capsys, "closed", T2, "--module", "S1", "--ideal", "I")
    assert code == 1 and "closed: false" in out


def test_equiv_uses_workspace_recipes(capsys):
    code, out, _ = run(capsys, "equiv", T2, "--context", "t2corner")
    assert code == 0
    assert "I = 2-dim, idempotent (exponent 1)" in out
    assert "result: pass" in out


def test_equiv_strict_on_m2(capsys):
    code, out, _ = run(capsys, "equiv-strict", M2, "--context", "m2corner")
    assert code == 0
    assert "eta invertible" in out


def test_equiv_proj_on_t2(capsys):
    code, out, _ = run(capsys, "equiv-proj", T2, "--context", "t2corner", "--max-dim", "3")
    assert code == 0
    assert "projective class size" in out


def test_graded_equiv_autoselects_grading(capsys):
    code, out, _ = run(capsys, "graded-equiv", T2, "--context", "t2corner")
    assert code == 0
    assert "suspension" in out


def test_graded_equiv_without_grading_is_input_error(capsys):
    code, _, err = run(capsys, "graded-equiv", IDENTITY, "--context", "identity")
    assert code == 2
    assert "grading" in err


def test_compose_composable_pair(capsys):
    code, out, _ = run(capsys, "compose", T2, "--context", "t2identity",
                       "--context", "t2corner")
    assert code == 0
    assert "composed M dim 2, N dim 1" in out


def test_compose_rejects_mismatched_pair(capsys):
    code, _, err = run(capsys, "compose", T2, "--context", "t2corner",
                       "--context", "t2corner")
    assert code == 2
    assert "middle" in err


def test_iso_reflexive(capsys):
    code, out, _ = run(capsys, "iso", T2, "--context", "t2corner", "--context", "t2corner")
    assert code == 0
    assert "isomorphic: true" in out


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", T2, "--module", "T2reg", "--max-dim", "3")
    assert code == 0
    assert "catalog: 13 modules" in out
    assert "provenance: exhaustive-up-to-dim(3)" in out


def test_unknown_context_is_input_error(capsys):
    code, _, err = run(capsys, "strict", T2, "--context", "ghost")
    assert code == 2
    assert "ghost" in err


def test_missing_required_flag_is_input_error(capsys):
    code, _, err = run(capsys, "closed", T2, "--module", "S1")
    assert code == 2
    assert "--module and --ideal" in err


def test_unparsable_workspace_is_input_error(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 2
    assert "invalid JSON" in err


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", T2])
    assert info.value.code == 2


def test_machine_format_is_json_with_contract_fields(capsys):
    code, out, _ = run(capsys, "equiv", T2, "--context", "t2corner",
                       "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "equiv"
    assert doc["seed"] == 0
    assert doc["inputs"]["workspace"] == "t2_corner.json"
    assert all({"subject", "check", "pass"} <= set(v) for v in doc["verdicts"])
    assert doc["summary"]["passed"] is True


def test_machine_reports_byte_identical(capsys):
    _, out1, _ = run(capsys, "equiv", T2, "--context", "t2corner",
                     "--format", "machine", "--seed", "7")
    _, out2, _ = run(capsys, "equiv", T2, "--context", "t2corner",
                     "--format", "machine", "--seed", "7")
    assert out1 == out2


def test_tight_budget_falls_back_to_sampling(capsys):
    code, out, _ = run(capsys, "equiv", T2, "--context", "t2corner",
                       "--max-dim", "4", "--budget", "5", "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert "sampled catalog: sampled(seed=0)" in doc["summary"]["flags"]


def test_strict_sampling_fails_sampled_run(capsys):
    code, out, _ = run(capsys, "equiv", T2, "--context", "t2corner",
                       "--max-dim", "4", "--budget", "5", "--strict-sampling")
    assert code == 1
    assert "flag: sampled catalog: sampled(seed=0)" in out
    assert "result: fail" in out


def test_out_flag_writes_machine_report(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "localize", T2, "--module", "T2reg",
                       "--ideal", "I", "--out", str(target))
    assert code == 0
    assert "localized dim 1" in out
    doc = json.loads(target.read_text())
    assert doc["command"] == "localize"
    assert doc["verdicts"][0]["witness"] == 1


def test_iso_witness_serialized(capsys):
    code, out, _ = run(capsys, "iso", T2, "--context", "t2corner",
                       "--context", "t2corner", "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    wit = doc["verdicts"][0]["witness"]
    assert set(wit) == {"u", "v"}
    assert wit["u"] == [[1, 0], [0, 1]] or len(wit["u"]) == 2


def test_seed_recorded_in_report(capsys):
    _, out, _ = run(capsys, "iso", T2, "--context", "t2corner",
                    "--context", "t2corner", "--format", "machine", "--seed", "5")
    assert json.loads(out)["seed"] == 5
