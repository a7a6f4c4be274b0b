import io
import json
import shutil
import subprocess
import sys

import pytest

from ladget import appendix
from ladget.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_known_gate_passes(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "FCZeO", "--anchor", "3", "--out", "4", "--in", "2,6",
            "--target", "NAND", "--minimal",
        )
        assert code == 0
        assert "verdict: ladget" in out
        assert "target NAND: match" in out

    def test_one_based_roles(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "FCZeO", "--anchor", "4", "--out", "5", "--in", "3,7",
            "--one-based", "--target", "NAND",
        )
        assert code == 0

    def test_wrong_target_fails_semantically(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "FCZeO", "--anchor", "3", "--out", "4", "--in", "2,6",
            "--target", "AND",
        )
        assert code == 1
        assert "NO MATCH" in out

    def test_non_ladget(self, capsys):
        # Path with the input adjacent to the anchor: universality fails.
        code, out, _ = run(
            capsys, "verify", "Bw", "--anchor", "0", "--out", "2", "--in", "1"
        )
        assert code == 1
        assert "universality: FAIL" in out

    def test_bad_graph6_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "verify", "!!!", "--anchor", "0", "--out", "1", "--in", "2"
        )
        assert code == 2
        assert "error:" in err

    def test_out_of_range_role_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "verify", "FCZeO", "--anchor", "0", "--out", "99", "--in", "2,6"
        )
        assert code == 2

    def test_missing_roles_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "FCZeO")
        assert code == 2
        assert "required" in err

    def test_unparsable_inputs(self, capsys):
        code, _, err = run(
            capsys, "verify", "FCZeO", "--anchor", "3", "--out", "4", "--in", "a,b"
        )
        assert code == 2

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "FCZeO", "--anchor", "3", "--out", "4", "--in", "2,6",
            "--json",
        )
        assert code == 0
        d = json.loads(out)
        assert d["is_ladget"] is True
        assert d["classification"]["name"] == "NAND"
        assert d["roles"] == {"anchor": 3, "inputs": [2, 6], "output": 4}


class TestSearch:
    def test_generated_order_four(self, capsys):
        code, out, _ = run(
            capsys, "search", "--gen", "4", "--target", "NOT", "--arity", "1"
        )
        assert code == 0
        assert "NOT: 2 raw, 1 distinct" in out
        assert "CN" in out

    def test_gen_and_stream_conflict(self, capsys):
        code, _, err = run(capsys, "search", "somefile", "--gen", "4")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "search", "/nonexistent/stream.g6")
        assert code == 2

    def test_stdin_stream(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("FCZeO\nFCZUO\n"))
        code, out, _ = run(capsys, "search", "--target", "NAND")
        assert code == 0
        assert "NAND: 3 raw, 2 distinct" in out

    def test_strict_bad_stream_is_a_runtime_failure(self, capsys, tmp_path):
        bad = tmp_path / "bad.g6"
        bad.write_text("CN\n!!!\n")
        code, _, err = run(capsys, "search", str(bad), "--strict")
        assert code == 1
        assert "line 2" in err

    def test_lenient_bad_stream_passes(self, capsys, tmp_path):
        bad = tmp_path / "bad.g6"
        bad.write_text("CN\n!!!\n")
        code, out, _ = run(capsys, "search", str(bad))
        assert code == 0
        assert "bad lines 1" in out

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys,
            "search", "--gen", "4", "--target", "NOT", "--arity", "1", "--json",
        )
        assert code == 0
        d = json.loads(out)
        assert d["graphs_seen"] == 6
        assert d["hits"]["NOT"][0]["graph6"] == "CN"
        assert d["options"]["arity"] == 1

    def test_seed_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("LADGET_SEED", "5")
        code, out, _ = run(
            capsys,
            "search", "--gen", "6", "--target", "NAND", "--sample", "0.25",
            "--json",
        )
        assert code == 0
        assert json.loads(out)["options"]["seed"] == 5

    def test_all_targets(self, capsys):
        code, out, _ = run(
            capsys, "search", "--gen", "4", "--target", "all", "--arity", "1"
        )
        assert code == 0
        assert "NOT:" in out

    def test_bad_sample_rate(self, capsys):
        code, _, err = run(
            capsys, "search", "--gen", "4", "--sample", "2.0"
        )
        assert code == 2


class TestMap:
    def test_fixture_mapping(self, capsys):
        code, out, _ = run(capsys, "map", "--fixture", "ROT")
        assert code == 0
        assert out.splitlines() == [
            "(0) -> {1, 2}",
            "(1) -> {2}",
            "(2) -> {1}",
        ]

    def test_explicit_roles(self, capsys):
        code, out, _ = run(
            capsys, "map", "Bw", "--anchor", "2", "--out", "1", "--in", "0"
        )
        assert code == 0
        assert "(0) ->" in out

    def test_roles_required_without_fixture(self, capsys):
        code, _, err = run(capsys, "map")
        assert code == 2

    def test_json(self, capsys):
        code, out, _ = run(capsys, "map", "--fixture", "NOT", "--json")
        d = json.loads(out)
        assert d["mapping"] == {"0": [1, 2], "1": [0], "2": [0]}
        assert d["k"] == 3


class TestEmbed:
    def test_fixture_embed(self, capsys):
        code, out, _ = run(capsys, "embed", "--fixture", "NOT", "--k", "4")
        assert code == 0
        assert "function preserved: yes" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "embed", "--fixture", "NAND7", "--k", "4", "--json"
        )
        d = json.loads(out)
        assert d["preserved"] is True
        assert d["package"] == [7]
        assert d["k"] == 4
        assert d["package_profile"]["package_avoids_zero"] is True

    def test_small_k_is_usage_error(self, capsys):
        code, _, err = run(capsys, "embed", "--fixture", "NOT", "--k", "2")
        assert code == 2

    def test_non_ladget_base(self, capsys):
        # A path whose input touches the anchor is not a ladget; embedding
        # it is a semantic failure, not a usage error.
        code, _, err = run(
            capsys,
            "embed", "Bw", "--anchor", "0", "--out", "2", "--in", "1",
            "--k", "4",
        )
        assert code == 1
        assert "not a ladget" in err


class TestAppendixCheck:
    def test_default_table_passes(self, capsys):
        code, out, _ = run(capsys, "appendix-check")
        assert code == 0
        assert "33/33 rows verified" in out

    def test_function_filter(self, capsys):
        code, out, _ = run(capsys, "appendix-check", "--function", "NAND")
        assert code == 0
        assert "2/2 rows verified" in out

    def test_unknown_function_filter(self, capsys):
        code, _, err = run(capsys, "appendix-check", "--function", "XNAND")
        assert code == 2

    def test_one_based_reading_fails(self, capsys):
        code, out, _ = run(capsys, "appendix-check", "--one-based")
        assert code == 1

    def test_tampered_table(self, capsys, tmp_path):
        import importlib.resources as res

        table = tmp_path / "tampered.tsv"
        lines = []
        default = appendix.DEFAULT_TABLE

        text = (
            res.files("ladget").joinpath("data", default).read_text()
        )
        for line in text.splitlines():
            if line.startswith("NAND\t") and "FCZeO" in line:
                parts = line.split("\t")
                parts[2] = "5"  # wrong anchor
                line = "\t".join(parts)
            lines.append(line)
        table.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "appendix-check", "--table", str(table))
        assert code == 1
        assert "FAIL" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "appendix-check", "--json")
        d = json.loads(out)
        assert d["passed"] == 33 and d["total"] == 33
        assert d["index_base"] == 0


class TestDiff:
    def test_edge_diff(self, capsys):
        code, out, _ = run(capsys, "diff", "FCZeO", "FCZUO")
        assert code == 0
        assert "-(2, 5)" in out and "+(3, 5)" in out
        assert "8 shared edges" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "diff", "C~", "Ch", "--json")
        d = json.loads(out)
        assert d["common"] == 3
        assert d["only_a"] == [[0, 2], [0, 3], [1, 3]]

    def test_bad_operand(self, capsys):
        code, _, err = run(capsys, "diff", "C~", "!!!")
        assert code == 2


class TestHarness:
    def test_unknown_subcommand_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_console_script_installed(self):
        exe = shutil.which("ladget")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run(
            [exe, "--version"], capture_output=True, text=True, timeout=60
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "ladget 0.1.0"
