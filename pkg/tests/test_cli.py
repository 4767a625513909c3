"""Command-line interface contract, exercised in-process via run_command."""

import json

import pytest

from modelspace.cli import read_config, run_command
from modelspace.runner import read_records_jsonl


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def t2_files(tmp_path_factory):
    """T2-style three-city task written to disk for repair/validate calls."""
    from modelspace.pddl import render_domain, render_problem
    from modelspace.benchgen.domains import travel_domain
    from modelspace.pddl import GroundAtom, ProblemModel

    d = tmp_path_factory.mktemp("t2")
    domain = travel_domain()
    problem = ProblemModel(
        name="t2",
        domain_name="domaingotocity",
        objects={"a": "city", "b": "city", "c": "city"},
        init=frozenset(
            {
                GroundAtom("at", ("a",)),
                GroundAtom("neighboring", ("a", "b")),
                GroundAtom("neighboring", ("b", "c")),
                GroundAtom("has_taxi", ("a", "b")),
            }
        ),
        goal=frozenset({GroundAtom("at", ("c",))}),
    )
    (d / "domain.pddl").write_text(render_domain(domain))
    (d / "problem.pddl").write_text(render_problem(problem))
    (d / "plan.txt").write_text("(use_taxi a b)\n(use_taxi b c)\n")
    return d


class TestGen:
    def test_count_and_layout(self, capsys, tmp_path):
        out = tmp_path / "bench"
        code, stdout, _ = run(
            capsys, "gen", "--domain", "travel", "--count", "2",
            "--seed", "0", "--out", str(out),
        )
        assert code == 0
        assert "wrote 2 instances" in stdout
        dirs = sorted(p for p in out.iterdir() if p.is_dir())
        assert len(dirs) == 2
        for d in dirs:
            assert (d / "ground_truth.json").exists()
            assert (d / "problem_perturbed.pddl").exists()

    def test_fixed_k(self, capsys, tmp_path):
        out = tmp_path / "bench"
        code, *_ = run(
            capsys, "gen", "--domain", "roomba", "--count", "1",
            "--k", "2", "--out", str(out),
        )
        assert code == 0
        gt = json.loads(next(out.glob("*/ground_truth.json")).read_text())
        assert gt["k"] == 2


class TestRepair:
    def test_cs_prints_min_cardinality_fix(self, capsys, t2_files):
        code, stdout, _ = run(
            capsys, "repair",
            "--domain", str(t2_files / "domain.pddl"),
            "--problem", str(t2_files / "problem.pddl"),
            "--predicates", "has_taxi,has_bus,at",
        )
        assert code == 0
        # all minimal fixes are single edits; the first option is printed
        line = stdout.strip()
        assert line.startswith("(+ (") and line.count("(+") == 1

    def test_executability_repair(self, capsys, t2_files):
        code, stdout, _ = run(
            capsys, "repair",
            "--domain", str(t2_files / "domain.pddl"),
            "--problem", str(t2_files / "problem.pddl"),
            "--plan", str(t2_files / "plan.txt"),
            "--predicates", "has_taxi",
        )
        assert code == 0
        assert stdout.strip() == "(+ (has_taxi b c))"

    def test_no_solution_exit_code(self, capsys, t2_files):
        code, _, stderr = run(
            capsys, "repair",
            "--domain", str(t2_files / "domain.pddl"),
            "--problem", str(t2_files / "problem.pddl"),
            "--predicates", "has_taxi", "--kinds", "remove",
        )
        assert code == 1
        assert "no solution" in stderr


class TestRunAndReport:
    def test_oracle_run_then_report(self, capsys, tmp_path):
        bench = tmp_path / "bench"
        run(capsys, "gen", "--domain", "travel", "--count", "2", "--out", str(bench))
        records_path = tmp_path / "records.jsonl"
        code, stdout, _ = run(
            capsys, "run", "--bench", str(bench), "--pipeline", "llm",
            "--use-case", "unsolvability", "--provider", "mock-oracle",
            "--out", str(records_path),
        )
        assert code == 0
        records = read_records_jsonl(records_path)
        assert len(records) == 2
        assert all(r["sound"] for r in records)

        out_dir = tmp_path / "report"
        code, stdout, _ = run(
            capsys, "report", "--records", str(records_path),
            "--out-dir", str(out_dir),
        )
        assert code == 0
        report = json.loads((out_dir / "report.json").read_text())
        cell = report["use_cases"]["unsolvability"]["domains"]["travel"]["llm_only"]
        assert cell["sound_str"] == "2/2"
        assert (out_dir / "report.md").read_text().startswith("# Repair pipeline results")
        fig = (out_dir / "figdata.csv").read_text().splitlines()
        assert fig[0] == "instance_id,domain,pipeline,edit_size,plan_size,value"
        assert len(fig) == 3

    def test_empty_bench_dir_errors(self, capsys, tmp_path):
        code, _, stderr = run(
            capsys, "run", "--bench", str(tmp_path), "--out",
            str(tmp_path / "r.jsonl"),
        )
        assert code == 1
        assert "no instances" in stderr


class TestValidate:
    def test_invalid_plan_exit_1(self, capsys, t2_files):
        code, stdout, _ = run(
            capsys, "validate",
            "--domain", str(t2_files / "domain.pddl"),
            "--problem", str(t2_files / "problem.pddl"),
            "--plan", str(t2_files / "plan.txt"),
        )
        assert code == 1
        assert "unmet preconditions" in stdout
        assert "(has_taxi b c)" in stdout

    def test_valid_plan_exit_0(self, capsys, t2_files, tmp_path):
        plan = tmp_path / "plan.txt"
        plan.write_text("(use_taxi a b)\n")
        problem = tmp_path / "problem.pddl"
        text = (t2_files / "problem.pddl").read_text()
        problem.write_text(text.replace("(:goal (at c))", "(:goal (at b))"))
        code, stdout, _ = run(
            capsys, "validate",
            "--domain", str(t2_files / "domain.pddl"),
            "--problem", str(problem),
            "--plan", str(plan),
        )
        assert code == 0
        assert stdout.strip() == "valid"


class TestErrorHandling:
    def test_usage_error_exit_2(self, capsys):
        code, *_ = run(capsys, "gen", "--domain", "not_a_domain", "--out", "/tmp/x")
        assert code == 2

    def test_missing_file_exit_1(self, capsys):
        code, _, stderr = run(
            capsys, "validate", "--domain", "/nonexistent.pddl",
            "--problem", "/nonexistent.pddl", "--plan", "/nonexistent.txt",
        )
        assert code == 1
        assert "error:" in stderr

    def test_bad_pddl_exit_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.pddl"
        bad.write_text("(define (domain broken")
        code, _, stderr = run(
            capsys, "validate", "--domain", str(bad),
            "--problem", str(bad), "--plan", str(bad),
        )
        assert code == 1


class TestConfig:
    def test_read_config(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text(
            "# comment\n"
            "endpoint = http://localhost:8000/v1/chat/completions\n"
            'model = "local-llama"\n'
            "\n"
            "context_limit=4096  # inline comment\n"
        )
        parsed = read_config(cfg)
        assert parsed == {
            "endpoint": "http://localhost:8000/v1/chat/completions",
            "model": "local-llama",
            "context_limit": "4096",
        }

    def test_malformed_line_reports_position(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("model x\n")
        with pytest.raises(ValueError, match="1"):
            read_config(cfg)
