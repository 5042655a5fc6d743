"""Inductive and coinductive validity of judgements, circular proofs, and
coinductive proofs of process equivalence checked against strong bisimilarity."""
from coinduct.equiv import EquivJudgement, MatchMode, prove_equiv
from coinduct.lts import bisimilar
from coinduct.proofcert import check_circular, check_fragment, check_wellfounded
from coinduct.ruleset import RuleSystem, gfp, lfp, parse_rulesystem
from coinduct.syntax import parse, render

__all__ = [
    "EquivJudgement", "MatchMode", "prove_equiv", "bisimilar",
    "check_circular", "check_fragment", "check_wellfounded",
    "RuleSystem", "gfp", "lfp", "parse_rulesystem", "parse", "render",
]
