import random

import pytest
from hypothesis import given, settings, strategies as st

from coinduct.corpus import random_rulesystem
from coinduct.errors import ParseError
from coinduct.proofcert import Axiom, BackEdge, Inner, back_edges, check_circular, check_wellfounded, nodes
from coinduct.ruleset import (Rule, RuleSystem, closed_under_rules, derivable_within, extract_circular_proof,
                              extract_wf_proof, gfp, lfp, parse_rulesystem, step, subsets, supported)

SELF = parse_rulesystem("judgements: p\nrule r1: p |- p")
CHAIN = parse_rulesystem("judgements: p q\nrule ax: |- p\nrule r: p |- q")


@st.composite
def rulesystems(draw, max_judgements=6, max_rules=8):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_rulesystem(random.Random(seed), max_judgements, max_rules)


def test_parse_rulesystem():
    assert SELF.universe == ("p",)
    assert SELF.rules == (Rule("r1", ("p",), "p"),)
    assert len(CHAIN.universe) == 2 and len(CHAIN.rules) == 2
    assert CHAIN.rules[0].premises == ()


def test_parse_comments_and_round_trip():
    text = "# header\n\njudgements: a b c  # three\nrule x: a b |- c\nrule y: |- a\n"
    rs = parse_rulesystem(text)
    assert rs.universe == ("a", "b", "c")
    assert parse_rulesystem(rs.to_text()) == rs


@pytest.mark.parametrize("text, message", [
    ("judgements: p\nrule: |-", "expected 'rule"),
    ("rule r: |- p", "expected 'judgements"),
    ("judgements: p\nrule r: |- q", "unknown judgement id 'q'"),
    ("judgements: p\nrule r: q |- p", "unknown judgement id 'q'"),
    ("judgements: p\nrule r: |- p\nrule r: p |- p", "duplicate rule name"),
    ("judgements: p\nrule r: p", "expected 'rule"),
    ("judgements: p q\nrule r: |- p q", "exactly one conclusion"),
    ("judgements: p p", "duplicate judgement id"),
    ("", "missing"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_rulesystem(text)


def test_constructor_validates():
    with pytest.raises(ValueError):
        RuleSystem(("p",), (Rule("r", (), "q"),))


def test_lfp_gfp_examples():
    assert lfp(SELF) == set()
    assert gfp(SELF) == {"p"}
    assert lfp(CHAIN) == {"p", "q"}
    assert gfp(CHAIN) == {"p", "q"}


def test_extract_wf_proof_examples():
    rs = parse_rulesystem("judgements: p\nrule ax: |- p")
    assert extract_wf_proof(rs, "p") == Axiom("p", "ax")
    assert extract_wf_proof(SELF, "p") is None
    assert extract_wf_proof(CHAIN, "q") == Inner("q", "r", (Axiom("p", "ax"),))


def test_extract_circular_proof_examples():
    assert extract_circular_proof(SELF, "p") == Inner("p", "r1", (BackEdge("p", 1),))
    assert extract_circular_proof(parse_rulesystem("judgements: p"), "p") is None


def test_wf_proof_uses_earlier_rounds():
    # q is derivable only through p; the self-loop on q must not be chosen
    rs = parse_rulesystem("judgements: p q\nrule loop: q |- q\nrule ax: |- p\nrule up: p |- q")
    assert extract_wf_proof(rs, "q") == Inner("q", "up", (Axiom("p", "ax"),))


def brute_lfp(rs):
    sols = [v for v in subsets(rs.universe) if closed_under_rules(rs, v)]
    least = [v for v in sols if all(v <= w for w in sols)]
    assert len(least) == 1
    return least[0]


def brute_gfp(rs):
    sols = [v for v in subsets(rs.universe) if supported(rs, v)]
    return frozenset().union(*sols)


@settings(max_examples=150, deadline=None)
@given(rulesystems())
def test_fixpoints_match_brute_force(rs):
    assert lfp(rs) == brute_lfp(rs)
    assert gfp(rs) == brute_gfp(rs)
    assert lfp(rs) <= gfp(rs)


@settings(max_examples=150, deadline=None)
@given(rulesystems())
def test_fixpoints_satisfy_both_directions(rs):
    for v in (lfp(rs), gfp(rs)):
        assert step(rs, v) == v


@settings(max_examples=100, deadline=None)
@given(rulesystems(), st.randoms(use_true_random=False))
def test_rule_order_does_not_change_fixpoints(rs, rnd):
    rules = list(rs.rules)
    rnd.shuffle(rules)
    shuffled = RuleSystem(rs.universe, tuple(rules))
    assert lfp(shuffled) == lfp(rs)
    assert gfp(shuffled) == gfp(rs)


@settings(max_examples=150, deadline=None)
@given(rulesystems())
def test_observation_wf(rs):
    check = rs.instance_check()
    least = lfp(rs)
    for j in rs.universe:
        cert = extract_wf_proof(rs, j)
        assert (cert is not None) == (j in least) == derivable_within(rs, j, len(rs.universe))
        if cert is not None:
            assert check_wellfounded(cert, check)
            assert check_circular(cert, check)


@settings(max_examples=150, deadline=None)
@given(rulesystems())
def test_observation_circular(rs):
    check = rs.instance_check()
    greatest = gfp(rs)
    for j in rs.universe:
        cert = extract_circular_proof(rs, j)
        assert (cert is not None) == (j in greatest)
        if cert is not None:
            assert check_circular(cert, check)
            for edge, target in back_edges(cert):
                assert edge.up >= 1 and target == edge.judgement


@settings(max_examples=100, deadline=None)
@given(rulesystems())
def test_circular_proof_is_well_founded_when_no_cycles(rs):
    for j in gfp(rs):
        cert = extract_circular_proof(rs, j)
        if not any(isinstance(n, BackEdge) for n, _ in nodes(cert)):
            assert j in lfp(rs)
