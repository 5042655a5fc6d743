import random

import pytest

from coinduct.cli import run
from coinduct.corpus import random_pair
from coinduct.syntax import render

SELF_RULES = "judgements: p\nrule r1: p |- p\n"


@pytest.fixture
def rules_file(tmp_path):
    path = tmp_path / "self.rules"
    path.write_text(SELF_RULES)
    return path


def test_prove_and_check(tmp_path, capsys):
    cert = tmp_path / "c.cert"
    assert run(["prove", "mu X. a.a.X", "mu Y. a.a.a.Y", "--emit", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "proved (relaxed)" in out and "11 distinct judgements" in out
    assert run(["check-cert", str(cert)]) == 0
    assert "circular proof: accepted" in capsys.readouterr().out
    assert run(["check-cert", str(cert), "--wellfounded"]) == 1
    assert run(["check-cert", str(cert), "--mode", "literal"]) == 0
    capsys.readouterr()
    assert run(["render-cert", str(cert)]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 12


def test_prove_literal_fails_on_duplicate(capsys):
    assert run(["prove", "a.0 + a.0", "a.0", "--mode", "literal"]) == 1
    assert run(["prove", "a.0 + a.0", "a.0"]) == 0


def test_check_fragment(tmp_path, capsys):
    cert = tmp_path / "f.cert"
    cert.write_text('node n0: judgement "mu X. a.X == mu Y. a.Y" rule rec-l children n1\n'
                    'node n1: judgement "a.mu X. a.X == mu Y. a.Y" rule rec-r children n2\n'
                    'node n2: judgement "a.mu X. a.X == a.mu Y. a.Y" rule act children n3\n'
                    'hyp n3: judgement "mu X. a.X == mu Y. a.Y" name S\n')
    hyps = tmp_path / "s.hyp"
    hyps.write_text('# coinduction hypotheses\n"mu X. a.X == mu Y. a.Y"\n')
    assert run(["check-cert", str(cert), "--fragment", str(hyps)]) == 0
    assert "fragment: accepted" in capsys.readouterr().out
    hyps.write_text("0 == 0\n")
    assert run(["check-cert", str(cert), "--fragment", str(hyps)]) == 1
    assert "unknown hypothesis" in capsys.readouterr().out
    assert run(["check-cert", str(cert)]) == 1


def test_fixpoint(tmp_path, rules_file, capsys):
    assert run(["fixpoint", str(rules_file), "--semantics", "lfp", "--prove", "p"]) == 1
    assert run(["fixpoint", str(rules_file), "--semantics", "lfp"]) == 0
    assert "lfp: {}" in capsys.readouterr().out
    cert = tmp_path / "p.cert"
    assert run(["fixpoint", str(rules_file), "--semantics", "gfp", "--prove", "p", "--emit", str(cert)]) == 0
    assert run(["check-cert", str(cert), "--rules", str(rules_file)]) == 0
    assert run(["check-cert", str(cert), "--rules", str(rules_file), "--wellfounded"]) == 1
    # the == schemata do not accept a generic rule certificate
    assert run(["check-cert", str(cert)]) == 1


def test_fixpoint_wf_certificate(tmp_path):
    rules = tmp_path / "chain.rules"
    rules.write_text("judgements: p q\nrule ax: |- p\nrule r: p |- q\n")
    cert = tmp_path / "q.cert"
    assert run(["fixpoint", str(rules), "--semantics", "lfp", "--prove", "q", "--emit", str(cert)]) == 0
    assert run(["check-cert", str(cert), "--rules", str(rules), "--wellfounded"]) == 0


def test_bisim(capsys):
    assert run(["bisim", "mu X. a.b.X", "mu X. b.a.X"]) == 1
    assert run(["bisim", "mu X. a.a.X", "mu Y. a.a.a.Y"]) == 0
    assert "bisimilar (5 states explored)" in capsys.readouterr().out


def test_parse(capsys):
    assert run(["parse", "a.X + b.0"]) == 0
    out = capsys.readouterr().out
    assert "free variables: X" in out and "process: no" in out


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["parse", "mu X. X"],
    ["prove", "X", "0"],
    ["prove", "0", "0", "--max-pairs", "0"],
    ["bisim", "a.", "0"],
    ["check-cert", "/nonexistent/file"],
    ["fixpoint", "/nonexistent/file", "--semantics", "lfp"],
    ["fixpoint", "x.rules"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_fixpoint_emit_requires_prove(rules_file):
    assert run(["fixpoint", str(rules_file), "--semantics", "gfp", "--emit", "x"]) == 2


def test_fixpoint_unknown_id(rules_file):
    assert run(["fixpoint", str(rules_file), "--semantics", "gfp", "--prove", "zz"]) == 2


def test_prove_status_matches_bisim(tmp_path):
    rng = random.Random(7)
    for k in range(40):
        p, q = map(render, random_pair(rng))
        cert = tmp_path / f"{k}.cert"
        status = run(["prove", p, q, "--emit", str(cert)])
        assert status == run(["bisim", p, q])
        if status == 0:
            assert run(["check-cert", str(cert)]) == 0


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "coinduct", "bisim", "a.0", "b.0"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "not bisimilar" in proc.stdout
