import asyncio
import json
from io import StringIO

import pytest

from tests.conftest import COFFEE_CUP_PATH, ICE_CREAM_PATH
from workflows.runner import (
    EXIT_FAILURE,
    EXIT_IO_ERROR,
    EXIT_OK,
    ScenarioRunner,
)


def run_cli(*argv):
    """Run one command; returns (status, stdout text)."""
    out = StringIO()
    runner = ScenarioRunner(stdout=out)
    runner.parse_arguments([str(a) for a in argv])
    status = asyncio.run(runner.run())
    return status, out.getvalue()


@pytest.fixture
def error_prints(mocker):
    return mocker.patch("workflows.runner.print_error")


class TestValidate:
    def test_valid_scenario(self):
        status, out = run_cli("validate", COFFEE_CUP_PATH)
        assert status == EXIT_OK
        assert out == f"{COFFEE_CUP_PATH}: ok\n"

    def test_syntax_error(self, tmp_path, error_prints):
        path = tmp_path / "broken.scn"
        path.write_text("agents: user, robot\nnonsense here\n")
        status, out = run_cli("validate", path)
        assert status == EXIT_FAILURE
        assert out == ""
        assert "line 2" in error_prints.call_args[0][0]

    def test_fatal_diagnostic(self, tmp_path, coffee_text):
        path = tmp_path / "undeclared.scn"
        path.write_text(coffee_text.replace("observer: robot", "observer: ghost"))
        status, out = run_cli("validate", path)
        assert status == EXIT_FAILURE
        assert out == ""

    def test_missing_file(self, tmp_path, error_prints):
        status, _ = run_cli("validate", tmp_path / "missing.scn")
        assert status == EXIT_IO_ERROR
        assert "cannot read" in error_prints.call_args[0][0]


class TestRun:
    def test_structured_report(self):
        status, out = run_cli("run", COFFEE_CUP_PATH, "--report", "structured")
        assert status == EXIT_OK
        document = json.loads(out)
        assert "steps" not in document
        assert document["final_verdicts"] == {
            "believed": ["have_coffee"],
            "believed_not": ["cup_intact"],
            "undecided": [],
        }

    def test_structured_trace(self):
        _, out = run_cli("run", COFFEE_CUP_PATH, "--report", "structured", "--trace")
        steps = json.loads(out)["steps"]
        assert [s["observation"]["index"] for s in steps] == [1, 2]
        assert steps[0]["verdicts"]["undecided"] == ["cup_intact", "have_coffee"]
        assert steps[1]["new_attacks"] == [
            ["opp_2_pos_cup_intact", "sup_1_pos_cup_intact"]
        ]

    def test_human_report(self):
        status, out = run_cli("run", COFFEE_CUP_PATH, "--trace")
        assert status == EXIT_OK
        assert "obs 1: user distress? on drop_full at s1" in out
        assert "final verdicts" in out
        assert "have_coffee" in out

    def test_export_then_solve(self, tmp_path):
        exported = tmp_path / "cs.apx"
        status, _ = run_cli(
            "run", COFFEE_CUP_PATH, "--export-af", "apx", "--out", exported
        )
        assert status == EXIT_OK
        lines = exported.read_text().splitlines()
        assert sum(l.startswith("arg(") for l in lines) == 3
        assert sum(l.startswith("att(") for l in lines) == 3

        status, out = run_cli("solve", exported)
        assert status == EXIT_OK
        assert out == "[opp_2_pos_cup_intact,sup_1_pos_have_coffee]\n"

        status, out = run_cli("solve", exported, "--semantics", "complete")
        assert out == "[[opp_2_pos_cup_intact,sup_1_pos_have_coffee]]\n"

    def test_batch_structured(self, tmp_path):
        status, out = run_cli(
            "run",
            COFFEE_CUP_PATH,
            ICE_CREAM_PATH,
            "--report",
            "structured",
            "--export-af",
            "tgf",
            "--out",
            tmp_path / "afs",
            "--jobs",
            "2",
        )
        assert status == EXIT_OK
        runs = json.loads(out)["runs"]
        assert [r["scenario"] for r in runs] == [str(COFFEE_CUP_PATH), str(ICE_CREAM_PATH)]
        assert runs[1]["final_verdicts"]["believed_not"] == ["~have_money"]
        assert (tmp_path / "afs" / "coffee_cup.tgf").exists()
        assert (tmp_path / "afs" / "ice_cream.tgf").exists()

    def test_batch_keeps_going_after_a_failure(self, tmp_path, error_prints):
        status, out = run_cli("run", tmp_path / "missing.scn", COFFEE_CUP_PATH)
        assert status == EXIT_IO_ERROR
        assert f"== {COFFEE_CUP_PATH} ==" in out
        error_prints.assert_called_once()

    def test_inconsistent_script_fails(self, tmp_path, coffee_text, error_prints):
        path = tmp_path / "bad.scn"
        path.write_text(coffee_text.replace("express=none(distress)", "express=distress?"))
        status, out = run_cli("run", path)
        assert status == EXIT_FAILURE
        assert "obs 2" in error_prints.call_args[0][0]


class TestSolve:
    def test_two_cycle_grounded_is_empty(self, tmp_path):
        path = tmp_path / "cycle.tgf"
        path.write_text("a\nb\n#\na b\nb a\n")
        status, out = run_cli("solve", path, "--format", "tgf")
        assert status == EXIT_OK
        assert out == "[]\n"

        _, out = run_cli("solve", path, "--format", "tgf", "--semantics", "complete")
        assert out == "[[],[a],[b]]\n"

    def test_empty_framework(self, tmp_path):
        path = tmp_path / "empty.apx"
        path.write_text("")
        assert run_cli("solve", path) == (EXIT_OK, "[]\n")

    def test_enumeration_cap(self, tmp_path, error_prints):
        path = tmp_path / "chain.apx"
        path.write_text("arg(a).\narg(b).\narg(c).\natt(a,b).\n")
        status, out = run_cli(
            "solve", path, "--semantics", "complete", "--enumeration-cap", "2"
        )
        assert status == EXIT_FAILURE
        assert out == ""

    def test_undeclared_argument(self, tmp_path, error_prints):
        path = tmp_path / "bad.apx"
        path.write_text("arg(a).\natt(a,b).\n")
        status, _ = run_cli("solve", path)
        assert status == EXIT_FAILURE
        assert "line 2" in error_prints.call_args[0][0]


class TestExport:
    def test_dot_to_stdout(self):
        status, out = run_cli("export", COFFEE_CUP_PATH, "--format", "dot")
        assert status == EXIT_OK
        assert out.startswith("digraph afv {")
        assert '"opp_2_pos_cup_intact" [style=dashed];' in out
        assert '"opp_2_pos_cup_intact" -> "sup_1_pos_cup_intact";' in out

    def test_unwritable_target(self, tmp_path, error_prints):
        status, _ = run_cli(
            "export", COFFEE_CUP_PATH, "--out", tmp_path / "no" / "such" / "dir.apx"
        )
        assert status == EXIT_IO_ERROR


def test_unexpected_errors_write_a_report(tmp_path, mocker):
    mocker.patch("workflows.runner.simulate", side_effect=RuntimeError("boom"))
    out = StringIO()
    runner = ScenarioRunner(stdout=out)
    runner.error_log_dir = tmp_path / "error_logs"
    runner.parse_arguments(["export", str(COFFEE_CUP_PATH)])
    assert asyncio.run(runner.run()) == EXIT_FAILURE
    (report,) = list(runner.error_log_dir.iterdir())
    assert "RuntimeError: boom" in report.read_text()
