"""Finite rule systems, their least and greatest validity sets, and proof extraction.

A judgement is valid iff some rule concludes it with all premises valid.
Sets that satisfy the "if" half of that reading are closed under rule
application; the least of them is the inductively valid set (``lfp``).
Sets that satisfy the "only if" half are supported by rules; the greatest of
them is the coinductively valid set (``gfp``).

Rule file format::

    # comment
    judgements: p q r
    rule ax: |- p
    rule step: p q |- r
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Sequence

from coinduct.errors import ParseError
from coinduct.proofcert import BackEdge, InstanceCheck, ProofCert, apply_rule


@dataclass(frozen=True)
class Rule:
    name: str
    premises: tuple[str, ...]
    conclusion: str

    @property
    def premise_set(self) -> frozenset[str]:
        return frozenset(self.premises)

    def __str__(self):
        lhs = "".join(p + " " for p in self.premises)
        return f"rule {self.name}: {lhs}|- {self.conclusion}"


@dataclass(frozen=True)
class RuleSystem:
    universe: tuple[str, ...]
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("duplicate judgement id in universe")
        known = set(self.universe)
        for r in self.rules:
            for j in (*r.premises, r.conclusion):
                if j not in known:
                    raise ValueError(f"unknown judgement id {j!r} in rule {r.name}")

    def rules_for(self, j: str) -> list[Rule]:
        return [r for r in self.rules if r.conclusion == j]

    def instance_check(self) -> InstanceCheck:
        """Table lookup: ``(premises, conclusion, name)`` must match a listed rule."""
        table = {(r.name, r.conclusion, r.premise_set) for r in self.rules}

        def check(premises: Sequence[str], conclusion: str, rule: str) -> bool:
            return (rule, conclusion, frozenset(premises)) in table

        return check

    def to_text(self) -> str:
        lines = ["judgements: " + " ".join(self.universe)]
        lines += [str(r) for r in self.rules]
        return "\n".join(lines) + "\n"


def parse_rulesystem(text: str) -> RuleSystem:
    universe: list[str] | None = None
    rules: list[Rule] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if universe is None:
            head, sep, rest = line.partition(":")
            if head.strip() != "judgements" or not sep:
                raise ParseError("expected 'judgements: <id> ...' first", line=lineno)
            universe = rest.split()
            if len(set(universe)) != len(universe):
                raise ParseError("duplicate judgement id", line=lineno)
            continue
        m = re.match(r"rule\s+([^\s:]+)\s*:(.*)\Z", line)
        if not m or "|-" not in m.group(2):
            raise ParseError("expected 'rule <name>: <id> ... |- <id>'", line=lineno)
        name = m.group(1)
        lhs, _, rhs = m.group(2).partition("|-")
        conclusion = rhs.split()
        if len(conclusion) != 1:
            raise ParseError("a rule has exactly one conclusion", line=lineno)
        if name in names:
            raise ParseError(f"duplicate rule name {name!r}", line=lineno)
        names.add(name)
        premises = tuple(dict.fromkeys(lhs.split()))
        for j in (*premises, conclusion[0]):
            if j not in universe:
                raise ParseError(f"unknown judgement id {j!r}", line=lineno)
        rules.append(Rule(name, premises, conclusion[0]))
    if universe is None:
        raise ParseError("missing 'judgements:' line")
    return RuleSystem(tuple(universe), tuple(rules))


# ---------------------------------------------------------------- validity sets

def step(rs: RuleSystem, v: AbstractSet[str]) -> frozenset[str]:
    """Conclusions of the rules whose premises all lie in ``v``."""
    return frozenset(r.conclusion for r in rs.rules if r.premise_set <= v)


def closed_under_rules(rs: RuleSystem, v: AbstractSet[str]) -> bool:
    """The "if" direction: every derivable conclusion is already in ``v``."""
    return step(rs, v) <= v


def supported(rs: RuleSystem, v: AbstractSet[str]) -> bool:
    """The "only if" direction: every member of ``v`` has a rule with premises in ``v``."""
    return v <= step(rs, v)


def lfp_rounds(rs: RuleSystem) -> dict[str, int]:
    """Kleene iteration from the empty set; maps each derived judgement to the round it appeared in."""
    rounds: dict[str, int] = {}
    current: frozenset[str] = frozenset()
    n = 0
    while True:
        n += 1
        nxt = step(rs, current)
        new = nxt - current
        if not new:
            return rounds
        for j in new:
            rounds[j] = n
        current = current | nxt


def lfp(rs: RuleSystem) -> frozenset[str]:
    return frozenset(lfp_rounds(rs))


def gfp(rs: RuleSystem) -> frozenset[str]:
    """Iterate downward from the full universe, dropping unsupported judgements."""
    current = frozenset(rs.universe)
    while True:
        nxt = current & step(rs, current)
        if nxt == current:
            return current
        current = nxt


# ---------------------------------------------------------------- proofs

def extract_wf_proof(rs: RuleSystem, j: str) -> ProofCert | None:
    """A well-founded proof of ``j``, or None when ``j`` is not inductively valid.

    Every judgement is proved by a rule whose premises entered the Kleene
    iteration in strictly earlier rounds, so the tree has height at most the
    number of rounds.
    """
    rounds = lfp_rounds(rs)
    if j not in rounds:
        return None
    memo: dict[str, ProofCert] = {}

    def prove(k: str) -> ProofCert:
        if k not in memo:
            rule = next(r for r in rs.rules_for(k) if all(rounds.get(p, 0) and rounds[p] < rounds[k] for p in r.premises))
            memo[k] = apply_rule(k, rule.name, [prove(p) for p in rule.premises])
        return memo[k]

    return prove(j)


def extract_circular_proof(rs: RuleSystem, j: str) -> ProofCert | None:
    """A proof of ``j`` with back-edges, or None when ``j`` is not coinductively valid.

    Only rules with all premises in ``gfp`` are used; a premise that repeats
    an ancestor is closed with a back-edge.
    """
    valid = gfp(rs)
    if j not in valid:
        return None
    usable = {k: next(r for r in rs.rules_for(k) if r.premise_set <= valid) for k in valid}

    def prove(k: str, path: list[str]) -> ProofCert:
        if k in path:
            return BackEdge(k, len(path) - path.index(k))
        rule = usable[k]
        path.append(k)
        kids = [prove(p, path) for p in rule.premises]
        path.pop()
        return apply_rule(k, rule.name, kids)

    return prove(j, [])


def derivable_within(rs: RuleSystem, j: str, height: int) -> bool:
    """Brute-force search for a well-founded proof of ``j`` of at most ``height`` levels."""
    memo: dict[tuple[str, int], bool] = {}

    def search(k: str, h: int) -> bool:
        if h <= 0:
            return False
        if (k, h) not in memo:
            memo[k, h] = any(all(search(p, h - 1) for p in r.premises) for r in rs.rules_for(k))
        return memo[k, h]

    return search(j, height)


def subsets(items: Iterable[str]) -> Iterable[frozenset[str]]:
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(x for i, x in enumerate(items) if mask >> i & 1)
