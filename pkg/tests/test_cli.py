"""Tests for the command-line front end.

Runs the entry point in-process via ``main(argv)`` and checks exit codes
(10 satisfiable, 20 unsatisfiable, 30 undecided, 1 error), the stdout
contract of each command, the JSON statistics object, and the artifacts
written by ``gen`` and ``bench --report``.
"""

import json

import pytest

from gfsat.cli import (EXIT_ERROR, EXIT_SAT, EXIT_UNKNOWN, EXIT_UNSAT, main)

SAT_TEXT = """\
field 5
vars x1 x2
clause x1^2 - 1 = 0
clause x1*x2 - x2 - 1 = 0
"""

UNSAT_TEXT = """\
field 3
vars x
clause x^2 - 2 = 0
"""


@pytest.fixture
def sat_file(tmp_path):
    path = tmp_path / "sat.ff"
    path.write_text(SAT_TEXT)
    return path


@pytest.fixture
def unsat_file(tmp_path):
    path = tmp_path / "unsat.ff"
    path.write_text(UNSAT_TEXT)
    return path


class TestSolveCommand:
    def test_sat_exit_code_and_model(self, sat_file, capsys):
        code = main(["solve", str(sat_file)])
        out = capsys.readouterr().out.splitlines()
        assert code == EXIT_SAT
        assert out[0] == "sat"
        assert out[1] == "x1 = 4"
        assert out[2] == "x2 = 2"

    def test_unsat_exit_code(self, unsat_file, capsys):
        code = main(["solve", str(unsat_file)])
        assert code == EXIT_UNSAT
        assert capsys.readouterr().out.splitlines()[0] == "unsat"

    def test_unknown_on_step_limit(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--max-steps", "1"])
        out = capsys.readouterr().out
        assert code == EXIT_UNKNOWN
        assert out.splitlines()[0] == "unknown"
        assert "reason: step-limit" in out

    def test_check_model_line(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--check-model"])
        assert code == EXIT_SAT
        assert "model: ok" in capsys.readouterr().out

    def test_oracle_agreement_lines(self, sat_file, unsat_file, capsys):
        assert main(["solve", str(sat_file), "--oracle"]) == EXIT_SAT
        assert "oracle: agree" in capsys.readouterr().out
        assert main(["solve", str(unsat_file), "--oracle"]) == EXIT_UNSAT
        assert "oracle: agree" in capsys.readouterr().out

    def test_oracle_skipped_above_cap(self, tmp_path, capsys):
        names = " ".join(f"x{i}" for i in range(1, 12))
        path = tmp_path / "big.ff"
        path.write_text(f"field 5\nvars {names}\nclause x1 = 0\n")
        code = main(["solve", str(path), "--oracle"])
        assert code == EXIT_SAT
        assert "oracle: skipped" in capsys.readouterr().out

    def test_stats_json_has_exact_contract_keys(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--stats"])
        assert code == EXIT_SAT
        last = capsys.readouterr().out.splitlines()[-1]
        stats = json.loads(last)
        assert set(stats) == {"decisions", "propagations", "t_propagations",
                              "conflicts", "learned", "explanations",
                              "time_ms"}
        assert all(isinstance(v, int) for v in stats.values())

    def test_var_order_flag(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--var-order", "2,1"])
        assert code == EXIT_SAT
        assert capsys.readouterr().out.splitlines()[0] == "sat"

    def test_bad_var_order_is_error(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--var-order", "2,x"])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_trace_explain_logs_to_stderr(self, sat_file, capsys):
        code = main(["solve", str(sat_file), "--trace-explain"])
        captured = capsys.readouterr()
        assert code == EXIT_SAT
        assert "# explain" in captured.err
        assert "# explain" not in captured.out

    def test_missing_file_is_error(self, tmp_path, capsys):
        code = main(["solve", str(tmp_path / "absent.ff")])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_parse_error_reported_with_position(self, tmp_path, capsys):
        path = tmp_path / "broken.ff"
        path.write_text("field 5\nvars x\nclause y = 0\n")
        code = main(["solve", str(path)])
        err = capsys.readouterr().err
        assert code == EXIT_ERROR
        assert "error: line 3, column 8" in err


class TestGenCommand:
    def test_writes_instaccording_to_spec(self, tmp_path, capsys):
        out = tmp_path / "inst"
        code = main(["gen", "--family", "craft", "--q", "3", "--n", "2",
                     "--c", "2", "--count", "4", "--seed", "7",
                     "--out", str(out)])
        assert code == 0
        assert "wrote 4 instances" in capsys.readouterr().out
        files = sorted(p.name for p in out.glob("*.ff"))
        assert files == [f"craft_q3_n2_c2_{i:03d}.ff" for i in range(4)]

    def test_generated_files_solvable_by_cli(self, tmp_path, capsys):
        out = tmp_path / "inst"
        main(["gen", "--family", "craft", "--q", "3", "--n", "2", "--c", "2",
              "--count", "1", "--seed", "7", "--out", str(out)])
        capsys.readouterr()
        code = main(["solve", str(out / "craft_q3_n2_c2_000.ff"),
                     "--check-model"])
        assert code == EXIT_SAT

    def test_invalid_field_order_is_error(self, tmp_path, capsys):
        code = main(["gen", "--family", "rand", "--q", "6", "--n", "2",
                     "--c", "2", "--out", str(tmp_path / "x")])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err


class TestBenchCommand:
    def test_table_on_stdout(self, tmp_path, capsys):
        inst = tmp_path / "inst"
        main(["gen", "--family", "craft", "--q", "3", "--n", "2", "--c", "2",
              "--count", "3", "--seed", "1", "--out", str(inst)])
        capsys.readouterr()
        code = main(["bench", str(inst), "--timeout", "60"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("instance")
        assert sum("craft_q3_n2_c2" in ln for ln in lines) == 3
        assert lines[-1].split()[0] == "craft"

    def test_report_artifacts(self, tmp_path, capsys):
        inst = tmp_path / "inst"
        rep = tmp_path / "rep"
        main(["gen", "--family", "craft", "--q", "3", "--n", "2", "--c", "2",
              "--count", "2", "--seed", "1", "--out", str(inst)])
        capsys.readouterr()
        code = main(["bench", str(inst), "--timeout", "60",
                     "--report", str(rep)])
        out = capsys.readouterr().out
        assert code == 0
        assert (rep / "report.jsonl").exists()
        assert (rep / "solved_counts.png").exists()
        assert (rep / "times_ms.png").exists()
        for name in ("report.jsonl", "solved_counts.png", "times_ms.png"):
            assert f"wrote {rep / name}" in out
        records = [json.loads(line) for line in
                   (rep / "report.jsonl").read_text().splitlines()]
        assert len(records) == 2

    def test_max_steps_flag_limits_solving(self, tmp_path, capsys):
        inst = tmp_path / "inst"
        main(["gen", "--family", "rand", "--q", "3", "--n", "3", "--c", "3",
              "--count", "2", "--seed", "3", "--out", str(inst)])
        capsys.readouterr()
        code = main(["bench", str(inst), "--timeout", "60",
                     "--max-steps", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("unknown") >= 2

    def test_missing_directory_is_empty_report(self, tmp_path, capsys):
        code = main(["bench", str(tmp_path / "nowhere")])
        out = capsys.readouterr().out
        assert code == 0
        assert out == "no instances\n"
