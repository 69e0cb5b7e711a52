"""Command-line behavior: exit codes, determinism, error naming.

Most tests drive main() in process for speed; two subprocess tests cover
the installed entry points. Exit-code contract: 0 success, 1 honest
negative, 2 parse or schema error, 3 violated invariant, 4 internal bug.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from ccbench.cli import main

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def scenario(name):
    return str(SCENARIOS / name)


def run_cli(*argv):
    return main(list(argv))


# ---------------------------------------------------------------------------
# success paths on the bundled scenarios
# ---------------------------------------------------------------------------


def test_bell_singlet(capsys):
    assert run_cli("bell", "--scenario", scenario("bell_singlet.json")) == 0
    out = capsys.readouterr().out
    assert "1.414213562" in out
    assert "outcome: ok" in out
    assert "correlated beyond the classical bound: True" in out


def test_bell_product_state_reports_no_pair(capsys):
    code = run_cli("bell", "--scenario", scenario("bell_product_state.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "no positively correlated commuting pair" in out
    assert "correlated beyond the classical bound: False" in out


def test_sample_bell_product_ensemble(capsys):
    code = run_cli("sample-bell", "--scenario", scenario("product_ensemble.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "0 of 40 states are bell correlated" in out
    assert "max beta = 1" in out


def test_bell_werner_tol_override_flips_verdict(capsys):
    run_cli("bell", "--scenario", scenario("bell_werner_mixture.json"))
    default = capsys.readouterr().out
    assert "correlated beyond the classical bound: True" in default
    run_cli(
        "bell",
        "--scenario",
        scenario("bell_werner_mixture.json"),
        "--tol-override",
        "bell=0.2",
    )
    loose = capsys.readouterr().out
    assert "correlated beyond the classical bound: False" in loose


def test_find_cc_strong_cause(capsys):
    code = run_cli("find-cc", "--scenario", scenario("strong_cause_dim9.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "outcome: ok" in out
    assert "verified" in out


def test_find_cc_three_distinct_causes(capsys):
    code = run_cli("find-cc", "--scenario", scenario("three_causes_dim9.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "3" in out
    assert "outcome: ok" in out


def test_genuine_cc_on_planted_instance(capsys):
    code = run_cli("genuine-cc", "--scenario", scenario("planted_genuine_dim16.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "genuine cause of rank 5 found" in out
    assert "genuine=True verified=True" in out


def test_classical_audit_uncovered_pair(capsys):
    code = run_cli("classical-audit", "--scenario", scenario("four_atom_incomplete.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "common cause closed: False" in out
    assert "A = atoms [0, 1], B = atoms [0, 2]" in out


def test_analyze_classical_events(capsys):
    code = run_cli("analyze", "--scenario", scenario("four_block_classical_pair.json"))
    assert code == 0
    assert "outcome: ok" in capsys.readouterr().out


def test_geometry_slab_instance(capsys):
    code = run_cli("geometry", "--scenario", scenario("separated_double_cones.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "-6.5" in out  # slab floor of the depth-6 construction
    assert "outcome: ok" in out


def test_geometry_point_membership(capsys):
    code = run_cli("geometry", "--scenario", scenario("single_double_cone.json"))
    out = capsys.readouterr().out
    assert code == 0
    assert "outcome: ok" in out


# ---------------------------------------------------------------------------
# honest negatives (exit 1)
# ---------------------------------------------------------------------------


def test_rank_one_meet_is_infeasible(capsys):
    code = run_cli("find-cc", "--scenario", scenario("rank_one_meet.json"))
    out = capsys.readouterr().out
    assert code == 1
    assert "outcome: infeasible" in out
    assert "rank 1" in out


# ---------------------------------------------------------------------------
# parse and schema errors (exit 2)
# ---------------------------------------------------------------------------


def test_missing_file(capsys):
    code = run_cli("bell", "--scenario", "/nonexistent/path.json")
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code = run_cli("bell", "--scenario", str(bad))
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err


def test_unknown_kind(tmp_path, capsys):
    doc = tmp_path / "odd.json"
    doc.write_text(json.dumps({"kind": "astrology", "payload": {}}))
    code = run_cli("bell", "--scenario", str(doc))
    assert code == 2
    assert "kind" in capsys.readouterr().err


def test_wrong_kind_for_command(capsys):
    code = run_cli("geometry", "--scenario", scenario("bell_singlet.json"))
    err = capsys.readouterr().err
    assert code == 2
    assert "expects a scenario of kind" in err


def test_field_precise_matrix_error(tmp_path, capsys):
    doc = tmp_path / "ragged.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "quantum",
                "payload": {
                    "state": [[1.0, 0.0], [0.0]],
                    "projections": {"A": [[1]], "B": [[1]]},
                },
            }
        )
    )
    code = run_cli("analyze", "--scenario", str(doc))
    err = capsys.readouterr().err
    assert code == 2
    assert "payload.state[1]" in err


def test_tol_override_must_be_known_and_positive(capsys):
    code = run_cli(
        "bell", "--scenario", scenario("bell_singlet.json"), "--tol-override", "bogus=1"
    )
    assert code == 2
    assert "unknown tolerance" in capsys.readouterr().err
    code = run_cli(
        "bell", "--scenario", scenario("bell_singlet.json"), "--tol-override", "bell=-1"
    )
    assert code == 2
    assert "positive" in capsys.readouterr().err
    code = run_cli(
        "bell", "--scenario", scenario("bell_singlet.json"), "--tol-override", "bell"
    )
    assert code == 2
    assert "KEY=VAL" in capsys.readouterr().err


def test_argparse_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command", "--scenario", "x.json"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bell"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# invariant violations (exit 3)
# ---------------------------------------------------------------------------


def test_non_hermitian_state_names_the_invariant(tmp_path, capsys):
    doc = tmp_path / "skew.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "quantum",
                "payload": {
                    "state": [[0.5, 0.3], [0.1, 0.5]],
                    "projections": {"A": [[1, 0], [0, 0]], "B": [[0, 0], [0, 1]]},
                },
            }
        )
    )
    code = run_cli("analyze", "--scenario", str(doc))
    err = capsys.readouterr().err
    assert code == 3
    assert "tol_herm" in err


def test_overlapping_regions_are_an_invariant_error(tmp_path, capsys):
    doc = tmp_path / "overlap.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "geometry",
                "payload": {
                    "regions": {
                        "v1": {"shape": "double_cone", "u": [-1, 1], "v": [-1, 1]},
                        "v2": {"shape": "double_cone", "u": [-1.5, 0.5], "v": [-0.5, 1.5]},
                    }
                },
            }
        )
    )
    code = run_cli("geometry", "--scenario", str(doc))
    err = capsys.readouterr().err
    assert code == 3
    assert "spacelike" in err


# ---------------------------------------------------------------------------
# records: determinism and structure
# ---------------------------------------------------------------------------


def test_record_is_byte_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for out in (out1, out2):
        code = run_cli(
            "bell",
            "--scenario",
            scenario("bell_singlet.json"),
            "--format",
            "record",
            "--out",
            str(out),
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_record_parses_and_echoes_inputs(tmp_path):
    out = tmp_path / "r.json"
    run_cli(
        "classical-audit",
        "--scenario",
        scenario("four_atom_incomplete.json"),
        "--format",
        "record",
        "--out",
        str(out),
    )
    doc = json.loads(out.read_text())
    assert doc["command"] == "classical-audit"
    assert doc["kind"] == "classical"
    assert doc["inputs"]["weights"] == [0.4, 0.1, 0.1, 0.4]
    assert doc["outcome"] == "ok"
    assert doc["results"]["closed"] is False


def test_seed_flag_overrides_scenario_seed(tmp_path):
    out = tmp_path / "r.json"
    run_cli(
        "bell",
        "--scenario",
        scenario("bell_singlet.json"),
        "--seed",
        "17",
        "--format",
        "record",
        "--out",
        str(out),
    )
    assert json.loads(out.read_text())["seed"] == 17


def test_out_file_suppresses_stdout(tmp_path, capsys):
    out = tmp_path / "r.txt"
    run_cli("bell", "--scenario", scenario("bell_singlet.json"), "--out", str(out))
    assert capsys.readouterr().out == ""
    assert "outcome: ok" in out.read_text()


# ---------------------------------------------------------------------------
# installed entry points
# ---------------------------------------------------------------------------


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ccbench", "bell", "--scenario", scenario("bell_singlet.json"), "--format", "record"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("{")


def test_console_script_help():
    proc = subprocess.run(["ccbench", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ("analyze", "find-cc", "geometry", "toynet-demo"):
        assert name in proc.stdout
