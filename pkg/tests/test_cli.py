import io
import pathlib
import subprocess
import sys

import pytest

import groundkit.sexpr as sx
from groundkit.cli import main
from groundkit.designs import build_fax, daimon, fid, skunk

ROOT = pathlib.Path(__file__).parent.parent
DATA = ROOT / "demos" / "data"


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestCheck:
    def test_wellformed_term(self, capsys):
        status, out, _ = run(capsys, "check", str(DATA / "identity-apply.gt"))
        assert status == 0
        assert out.startswith("ok: |- ")

    def test_open_variant_shows_antecedent(self, capsys):
        status, out, _ = run(capsys, "check",
                             str(DATA / "identity-apply-open.gt"))
        assert status == 0
        assert "|-" in out and not out.startswith("ok: |-" + " (")
        left = out.split("|-")[0]
        assert "impl" in left

    def test_missing_file(self, capsys):
        status, _, err = run(capsys, "check", "no-such.gt")
        assert status == 2
        assert "no such file" in err


class TestReduce:
    def test_worked_term_takes_two_steps(self, capsys):
        status, out, _ = run(capsys, "reduce", "--term",
                             str(DATA / "identity-apply.gt"))
        assert status == 0
        lines = out.splitlines()
        assert lines[0].startswith("step 1: impl-e")
        assert lines[1].startswith("step 2: disj-e")
        assert lines[2] == "canonical:"
        assert lines[3].startswith("(impl-i")

    def test_pretty_format_prints_each_stage(self, capsys):
        status, out, _ = run(capsys, "reduce", "--term",
                             str(DATA / "identity-apply.gt"),
                             "--format", "pretty")
        assert status == 0
        # one printed stage per step, plus the canonical result
        assert sum(1 for l in out.splitlines()
                   if l.startswith("(")) == 3

    def test_canonical_term_has_no_steps(self, capsys):
        status, out, _ = run(capsys, "reduce", "--term",
                             str(DATA / "copycat.gt"))
        assert status == 0
        assert out.splitlines()[0] == "canonical:"


class TestGround:
    def test_closed_canonical_term(self, capsys):
        status, out, _ = run(capsys, "ground", "--term",
                             str(DATA / "identity-apply.gt"))
        assert status == 0
        assert out.startswith("yes")


class TestDesignValidate:
    def test_valid(self, capsys):
        for name in ("daimon.dsn", "bomb.dsn", "skunk.dsn", "fax.dsn"):
            status, out, _ = run(capsys, "design-validate",
                                 "--design", str(DATA / name))
            assert (status, out.strip()) == (0, "ok"), name

    def test_invalid(self, tmp_path, capsys):
        bad = tmp_path / "bad.dsn"
        # ramification {0} announced but no child supplied
        bad.write_text("(pos 0 (I 0))")
        status, _, err = run(capsys, "design-validate", "--design", str(bad))
        assert status == 2
        assert "ramification" in err


class TestInteract:
    def test_snapshots_match_golden(self, capsys):
        golden = (pathlib.Path(__file__).parent / "golden"
                  / "convergent_pair_snapshots.txt").read_text()
        status, out, _ = run(capsys, "interact", "--net",
                             str(DATA / "convergent-pair.net"),
                             "--render", "snapshots")
        assert status == 0
        assert out == golden
        assert out.count("== ") == 4

    def test_trace_lines(self, capsys):
        status, out, _ = run(capsys, "interact", "--net",
                             str(DATA / "convergent-pair.net"))
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == "+ 0 {1}"
        assert lines[-1] == "converged"
        assert any(l.startswith("† 0.1.1") for l in lines)


class TestOrthBehaviourClassify:
    def test_orth(self, tmp_path, capsys):
        a = tmp_path / "a.dsn"
        b = tmp_path / "b.dsn"
        sx.dump(daimon((0,)), str(a))
        sx.dump(skunk((0,)), str(b))
        status, out, _ = run(capsys, "orth", str(a), str(b))
        assert (status, out.strip()) == (0, "yes")
        sx.dump(fid((0,)), str(a))
        status, out, _ = run(capsys, "orth", str(a), str(b))
        assert (status, out.strip()) == (1, "no")

    def test_behaviour_members(self, capsys):
        status, out, _ = run(capsys, "behaviour", "--behaviour",
                             str(DATA / "one.bhv"))
        assert status == 0
        assert out.splitlines()[0] == "members: 2 design(s)"

    def test_behaviour_orthogonal(self, capsys):
        status, out, _ = run(capsys, "behaviour", "--behaviour",
                             str(DATA / "one.bhv"), "--show", "orthogonal")
        assert status == 0
        assert out.splitlines()[0] == "orthogonal: 1 design(s)"

    def test_incarnate(self, capsys):
        status, out, _ = run(capsys, "incarnate",
                             "--design", str(DATA / "bomb.dsn"),
                             "--behaviour", str(DATA / "one.bhv"))
        assert status == 0
        assert "⊢" in out

    def test_classify_daimon_in_one(self, capsys):
        status, out, _ = run(capsys, "classify",
                             "--design", str(DATA / "daimon.dsn"),
                             "--behaviour", str(DATA / "one.bhv"))
        assert status == 1
        assert out.strip() == "PseudoGround(contains-daimon)"

    def test_classify_bomb_in_one(self, capsys):
        status, out, _ = run(capsys, "classify",
                             "--design", str(DATA / "bomb.dsn"),
                             "--behaviour", str(DATA / "one.bhv"))
        assert status == 0
        assert out.strip() == "Ground"


class TestTranslate:
    def test_copycat(self, tmp_path, capsys):
        out_path = tmp_path / "fax.dsn"
        status, out, _ = run(capsys, "translate",
                             "--term", str(DATA / "copycat.gt"),
                             "--env", str(DATA / "zero-env.tenv"),
                             "--out", str(out_path))
        assert status == 0
        assert "classification: PseudoGround(not-material)" in out
        assert sx.load(str(out_path)) == build_fax((0, 0), (0, 1), 2, 0)

    def test_nonlinear_rejected(self, tmp_path, capsys):
        bad = tmp_path / "t.gt"
        bad.write_text(
            "(impl-i (var x (absurd))"
            " (conj-i (var x (absurd)) (var x (absurd))))")
        status, _, err_or_out = run(capsys, "translate",
                                    "--term", str(bad),
                                    "--env", str(DATA / "zero-env.tenv"))
        assert status == 2


class TestFocus:
    def test_search_and_strategy(self, capsys):
        status, out, _ = run(capsys, "focus", "--sequent",
                             str(DATA / "par-with-plus.seq"),
                             "--to-strategy")
        assert status == 0
        assert out.splitlines()[0].startswith("neg-cluster on ")
        assert "strategy:" in out
        games = [l for l in out.splitlines() if l.startswith("  (")]
        assert len(games) == 4

    def test_unprovable(self, tmp_path, capsys):
        seq = tmp_path / "s.seq"
        seq.write_text("(seq (atom+ A))")
        status, out, _ = run(capsys, "focus", "--sequent", str(seq))
        assert status == 1
        assert out.strip() == "no derivation"


class TestRepl:
    def feed(self, monkeypatch, text):
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))

    def test_term_stepping(self, monkeypatch, capsys):
        self.feed(monkeypatch, "step\nstep\nstep\nquit\n")
        status, out, _ = run(capsys, "repl", "--term",
                             str(DATA / "identity-apply.gt"))
        assert status == 0
        assert "applied impl-e at root" in out
        assert "applied disj-e at" in out
        assert "canonical (no further step)" in out

    def test_back_at_step_zero(self, monkeypatch, capsys):
        self.feed(monkeypatch, "back\nquit\n")
        status, out, _ = run(capsys, "repl", "--term",
                             str(DATA / "identity-apply.gt"))
        assert status == 0
        assert "already at step 0" in out

    def test_back_then_step_repeats(self, monkeypatch, capsys):
        self.feed(monkeypatch, "step\nback\nstep\ntrace\nquit\n")
        status, out, _ = run(capsys, "repl", "--term",
                             str(DATA / "identity-apply.gt"))
        assert status == 0
        assert out.count("applied impl-e at root") == 2
        assert "0: (impl-e" in out

    def test_unknown_command(self, monkeypatch, capsys):
        self.feed(monkeypatch, "bogus\nquit\n")
        status, out, _ = run(capsys, "repl", "--term",
                             str(DATA / "identity-apply.gt"))
        assert "unknown command 'bogus'" in out

    def test_net_stepping_matches_batch(self, monkeypatch, capsys):
        self.feed(monkeypatch, "step\nstep\nstep\ntrace\nquit\n")
        status, out, _ = run(capsys, "repl", "--net",
                             str(DATA / "convergent-pair.net"))
        assert status == 0
        assert "consumed (+,-) at 0 {1}" in out
        assert "consumed (+,-) at 0.1 {1}" in out
        assert "converged: † ⊢" in out
        # the trace lines agree with `interact --render trace-lines`
        assert "+ 0 {1}" in out and "+ 0.1 {1}" in out


class TestLoopDetection:
    def test_term_repl_reports_cycle(self):
        from conftest import pingpong_env, pingpong_term
        from groundkit.cli import _repl_term
        buf = io.StringIO()
        status = _repl_term(pingpong_term(), 1000,
                            inp=io.StringIO("step\nstep\nstep\nquit\n"),
                            out=buf, env=pingpong_env())
        assert status == 0
        assert "loop detected: cycle of length 2" in buf.getvalue()


class TestEntryPoint:
    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "groundkit.cli", "check",
             str(DATA / "identity-apply.gt")],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("ok: ")
