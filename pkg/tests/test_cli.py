import json
import re
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from catalan_automaton import PrimeContext
from catalan_automaton.analysis import oracle_census
from catalan_automaton.automaton import AUTOMATON_JSON_SCHEMA, import_json
from catalan_automaton.cli import main
from catalan_automaton.oracle import catalan_lucas_oracle


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def parse_digit_set(text):
    digits = set()
    for part in text.strip("{}").split(","):
        lo, _, hi = part.strip().partition("..")
        digits.update(range(int(lo), int(hi or lo) + 1))
    return digits


class TestBuild:
    def test_dot_written(self, capsys, tmp_path):
        path = tmp_path / "a.dot"
        code, out, _ = run(capsys, "build", 5, "--dot", path)
        assert code == 0
        assert "states: 8 <= 8" in out
        assert path.read_text().startswith("digraph")

    def test_not_prime(self, capsys):
        code, _, err = run(capsys, "build", 4)
        assert code == 2
        assert "4" in err

    def test_json_schema(self, capsys, tmp_path):
        path = tmp_path / "a.json"
        code, out, _ = run(capsys, "build", 101, "--json", path)
        assert code == 0 and "states: 104" in out
        doc = json.loads(path.read_text())
        jsonschema.validate(doc, AUTOMATON_JSON_SCHEMA)
        assert len(import_json(path.read_text()).states) == 104

    def test_guard(self, capsys):
        code, _, err = run(capsys, "build", 50023)
        assert code == 3
        assert err.startswith("error:")

    def test_closed_form(self, capsys):
        code, out, _ = run(capsys, "build", 1000003, "--closed-form")
        assert code == 0 and "1000006" in out
        code, _, _ = run(capsys, "build", 7, "--closed-form", "--dot", "x.dot")
        assert code == 2


class TestEval:
    @pytest.mark.parametrize("p, n, want", [(5, "124", 4), (7, "0", 1), (2, "1023", 1), (3, "4", 2)])
    def test_values(self, capsys, p, n, want):
        code, out, _ = run(capsys, "eval", p, n)
        assert code == 0
        assert out.strip() == str(want)

    def test_large_against_oracle(self, capsys):
        n = 98765432123456789
        code, out, _ = run(capsys, "eval", 13, str(n))
        assert code == 0
        assert int(out) == catalan_lucas_oracle(n, PrimeContext(13))

    def test_closed_form_agrees(self, capsys):
        n = "31415926535897932384626433"
        _, dense, _ = run(capsys, "eval", 97, n)
        _, fast, _ = run(capsys, "eval", 97, n, "--closed-form")
        assert dense == fast
        assert int(dense) == catalan_lucas_oracle(int(n), PrimeContext(97))

    @pytest.mark.parametrize("n", ["-3", "1.5", "12a", "", " 7"])
    def test_malformed(self, capsys, n):
        code, _, _ = run(capsys, "eval", 5, n)
        assert code == 2

    def test_trace(self, capsys):
        code, out, _ = run(capsys, "eval", 5, "124", "--trace")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0].startswith("start: s0: y + 3xy^2 + 3xy^3")
        assert [ln.split(":")[0] for ln in lines[1:4]] == ["digit 4"] * 3
        assert lines[-1] == "4"


class TestVerify:
    def test_all_p7(self, capsys):
        code, out, _ = run(capsys, "verify", 7, "--suite", "all", "--max-n", 100000)
        assert code == 0
        assert "failed" not in out
        assert "transition table closed forms" in out

    def test_table2_p5(self, capsys):
        code, _, _ = run(capsys, "verify", 5, "--suite", "table2")
        assert code == 0

    def test_mod2(self, capsys):
        code, _, _ = run(capsys, "verify", 2, "--suite", "mod2")
        assert code == 0

    def test_all_small_primes(self, capsys):
        for p in (2, 3):
            code, _, _ = run(capsys, "verify", p, "--max-n", 2000)
            assert code == 0

    def test_table_suite_needs_p5(self, capsys):
        code, _, _ = run(capsys, "verify", 3, "--suite", "table1")
        assert code == 2

    def test_json_lines(self, capsys):
        code, out, _ = run(capsys, "verify", 5, "--suite", "oracle", "--max-n", 500, "--json")
        assert code == 0
        docs = [json.loads(line) for line in out.splitlines()]
        assert docs and all(d["status"] == "verified" and d["p"] == 5 for d in docs)

    def test_failure_exit(self, capsys, monkeypatch):
        from catalan_automaton import analysis

        real = analysis.table1_check

        def broken(ctx):
            return real(ctx).fail(d=0)

        monkeypatch.setattr(analysis, "table1_check", broken)
        code, out, _ = run(capsys, "verify", 5, "--suite", "table1")
        assert code == 1
        assert "failed" in out


class TestDensity:
    def rows(self, out):
        table = {}
        for line in out.splitlines():
            m = re.fullmatch(r"(\d+)  (\d+)  (\S+)", line)
            if m:
                table[int(m[1])] = (int(m[2]), Fraction(m[3]))
        return table

    def test_one_digit(self, capsys):
        code, out, _ = run(capsys, "density", 5, "--digits", 1)
        assert code == 0
        rows = self.rows(out)
        # C_0..C_4 = 1, 1, 2, 5, 14
        assert rows[1] == (2, Fraction(2, 5))
        assert rows[0][0] == 1 and rows[2][0] == 1 and rows[4][0] == 1
        assert "total  5  1" in out

    def test_six_digits_against_sweep(self, capsys):
        code, out, _ = run(capsys, "density", 5, "--digits", 6)
        assert code == 0
        sweep = oracle_census(PrimeContext(5), 6)
        rows = self.rows(out)
        assert {r: c for r, (c, _) in rows.items()} == sweep.counts
        assert rows[0][1] == sweep.density(0)
        assert sum(d for _, d in rows.values()) == 1
        assert out.strip().splitlines()[-1] == f"k=6  {sweep.density(0)}"

    def test_guard(self, capsys):
        code, _, _ = run(capsys, "density", 5, "--digits", 10**7)
        assert code == 3


class TestTableAndGens:
    @pytest.mark.parametrize("p, want", [(5, {3}), (7, {4, 5}), (11, {6, 7, 8, 9})])
    def test_table(self, capsys, p, want):
        code, out, _ = run(capsys, "table", p)
        assert code == 0
        first = out.splitlines()[0]
        assert parse_digit_set(first.split(": ")[1]) == want

    def test_table_small_p(self, capsys):
        code, _, err = run(capsys, "table", 3)
        assert code == 2
        assert "empty" in err

    def test_gens(self, capsys):
        code, out, _ = run(capsys, "gens", 5)
        assert code == 0
        assert out.splitlines()[0] == "true, closure size 4"
        assert "closure equals constant states: true" in out

    def test_gens_small_p(self, capsys):
        code, _, _ = run(capsys, "gens", 3)
        assert code == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "5", "--suite", "bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "catalan_automaton", "eval", "5", "124"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "4\n"
