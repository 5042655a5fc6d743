"""Coinductive proofs of process equivalence.

Judgements have the form ``P == Q`` for processes ``P`` and ``Q``; three rule
schemata conclude them:

``act``    ``a1.P1 + ... + an.Pn == b1.Q1 + ... + bm.Qm`` from premises ``Pi == Qj``
``rec-l``  ``mu X. E == Q`` from ``E{X := mu X. E} == Q``
``rec-r``  ``P == mu X. E`` from ``P == E{X := mu X. E}``

``act`` has two readings, selected by :class:`MatchMode`. ``LITERAL`` needs
both sums to share one index family: same length, same action at every
position, premises ``Pi == Qi``. ``RELAXED`` only needs every summand on
either side to be answered by a summand with the same action on the other,
with the premises pairing the answering continuations. Every literal
instance is also a relaxed one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from coinduct.errors import BudgetExceeded, NotAProcess, ParseError
from coinduct.proofcert import BackEdge, InstanceCheck, ProofCert, apply_rule
from coinduct.syntax import Mu, ProcessExpr, Sum, free_vars, head_unfold, parse, render

SEP = " == "
DEFAULT_MAX_PAIRS = 10_000
REC_ORDER = ("rec-l", "rec-r")


class MatchMode(enum.Enum):
    LITERAL = "literal"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class EquivJudgement:
    left: ProcessExpr
    right: ProcessExpr

    def __post_init__(self):
        for side in (self.left, self.right):
            if free_vars(side):
                raise NotAProcess(f"not a process: {render(side)}")

    @property
    def key(self) -> str:
        return render(self.left) + SEP + render(self.right)

    def __str__(self):
        return self.key


@lru_cache(maxsize=65536)
def parse_judgement(key: str) -> EquivJudgement:
    """Parse a canonical judgement key. Non-canonical spellings are rejected."""
    parts = key.split(SEP)
    if len(parts) != 2:
        raise ParseError(f"expected '<process>{SEP}<process>'")
    j = EquivJudgement(parse(parts[0]), parse(parts[1]))
    if j.key != key:
        raise ParseError(f"judgement is not in canonical form: {key!r} (canonical: {j.key!r})")
    return j


def _cross_pairs(left: Sum, right: Sum) -> list[EquivJudgement] | None:
    """All same-action pairs of continuations, or None if some summand is unanswered."""
    if not all(any(a == b for b, _ in right.summands) for a, _ in left.summands):
        return None
    if not all(any(a == b for a, _ in left.summands) for b, _ in right.summands):
        return None
    pairs = {}
    for a, p in left.summands:
        for b, q in right.summands:
            if a == b:
                j = EquivJudgement(p, q)
                pairs.setdefault(j.key, j)
    return list(pairs.values())


def _positional_pairs(left: Sum, right: Sum) -> list[EquivJudgement] | None:
    if len(left.summands) != len(right.summands):
        return None
    if any(a != b for (a, _), (b, _) in zip(left.summands, right.summands)):
        return None
    pairs = {}
    for (_, p), (_, q) in zip(left.summands, right.summands):
        j = EquivJudgement(p, q)
        pairs.setdefault(j.key, j)
    return list(pairs.values())


def applicable_rules(j: EquivJudgement, mode: MatchMode = MatchMode.RELAXED) -> list[tuple[str, list[EquivJudgement]]]:
    """Rule instances concluding ``j``, in the order rec-l, rec-r, act.

    In relaxed mode the single ``act`` entry lists every same-action pair;
    any sub-selection that still answers every summand is also an instance.
    """
    out = []
    if isinstance(j.left, Mu):
        out.append(("rec-l", [EquivJudgement(head_unfold(j.left), j.right)]))
    if isinstance(j.right, Mu):
        out.append(("rec-r", [EquivJudgement(j.left, head_unfold(j.right))]))
    if isinstance(j.left, Sum) and isinstance(j.right, Sum):
        pick = _positional_pairs if mode is MatchMode.LITERAL else _cross_pairs
        premises = pick(j.left, j.right)
        if premises is not None:
            out.append(("act", premises))
    return out


def _relaxed_act_ok(left: Sum, right: Sum, premises: list[EquivJudgement]) -> bool:
    prem = {(render(p.left), render(p.right)) for p in premises}
    lhs = [(a, render(p)) for a, p in left.summands]
    rhs = [(b, render(q)) for b, q in right.summands]
    for p, q in prem:
        if not any(a == b and p == lp and q == rq for a, lp in lhs for b, rq in rhs):
            return False
    for a, p in lhs:
        if not any(a == b and (p, q) in prem for b, q in rhs):
            return False
    for b, q in rhs:
        if not any(a == b and (p, q) in prem for a, p in lhs):
            return False
    return True


def instance_check(mode: MatchMode = MatchMode.RELAXED) -> InstanceCheck:
    """Schema check for certificates over ``==`` judgements."""

    def check(premises: Sequence[str], conclusion: str, rule: str) -> bool:
        j = parse_judgement(conclusion)
        prem = [parse_judgement(k) for k in premises]
        keys = {p.key for p in prem}
        if rule == "rec-l":
            return isinstance(j.left, Mu) and keys == {EquivJudgement(head_unfold(j.left), j.right).key}
        if rule == "rec-r":
            return isinstance(j.right, Mu) and keys == {EquivJudgement(j.left, head_unfold(j.right)).key}
        if rule == "act":
            if not (isinstance(j.left, Sum) and isinstance(j.right, Sum)):
                return False
            if mode is MatchMode.LITERAL:
                expected = _positional_pairs(j.left, j.right)
                return expected is not None and keys == {e.key for e in expected}
            return _relaxed_act_ok(j.left, j.right, prem)
        return False

    return check


# ---------------------------------------------------------------- proof search

_CLOSED = float("inf")


class _Search:
    """Depth-first search for a circular proof.

    The judgements on the current branch serve as coinduction hypotheses:
    meeting one again closes the branch with a back-edge. A subproof is
    cached only when none of its back-edges leave it. A failed judgement
    is cached as refuted: the search tries every rule instance, so a failure
    under any set of hypotheses means no proof exists at all.
    """

    def __init__(self, mode: MatchMode, max_pairs: int, rec_order: Sequence[str]):
        if max_pairs < 1:
            raise ValueError("max_pairs must be at least 1")
        if sorted(rec_order) != ["rec-l", "rec-r"]:
            raise ValueError("rec_order must be a permutation of ('rec-l', 'rec-r')")
        self.mode = mode
        self.max_pairs = max_pairs
        self.rec_order = tuple(rec_order)
        self.seen: set[str] = set()
        self.proved: dict[str, ProofCert] = {}
        self.refuted: set[str] = set()
        self.path: dict[str, int] = {}

    def visit(self, j: EquivJudgement) -> tuple[ProofCert | None, float]:
        """Prove ``j`` under the current branch; returns the proof and the
        shallowest branch depth its back-edges reach."""
        key = j.key
        here = len(self.path)
        if key in self.path:
            return BackEdge(key, here - self.path[key]), self.path[key]
        if key in self.proved:
            return self.proved[key], _CLOSED
        if key in self.refuted:
            return None, _CLOSED
        if key not in self.seen:
            self.seen.add(key)
            if len(self.seen) > self.max_pairs:
                raise BudgetExceeded(f"pair budget exceeded ({self.max_pairs} judgements)")

        self.path[key] = here
        try:
            result = None
            for rule in self.rec_order:
                side = j.left if rule == "rec-l" else j.right
                if isinstance(side, Mu):
                    result = self.rec(j, rule)
                    if result is not None:
                        break
            if result is None and isinstance(j.left, Sum) and isinstance(j.right, Sum):
                result = self.act(j)
        finally:
            del self.path[key]

        if result is None:
            self.refuted.add(key)
            return None, _CLOSED
        node, low = result
        if low >= here:
            self.proved[key] = node
        return node, low

    def rec(self, j: EquivJudgement, rule: str):
        if rule == "rec-l":
            premise = EquivJudgement(head_unfold(j.left), j.right)
        else:
            premise = EquivJudgement(j.left, head_unfold(j.right))
        child, low = self.visit(premise)
        if child is None:
            return None
        return apply_rule(j.key, rule, [child]), low

    def act(self, j: EquivJudgement):
        left, right = j.left.summands, j.right.summands
        chosen: dict[str, ProofCert] = {}
        low = _CLOSED
        tried: dict[str, bool] = {}

        def attempt(p: ProcessExpr, q: ProcessExpr) -> bool:
            nonlocal low
            premise = EquivJudgement(p, q)
            if premise.key not in tried:
                child, child_low = self.visit(premise)
                tried[premise.key] = child is not None
                if child is not None:
                    chosen[premise.key] = child
                    low = min(low, child_low)
            return tried[premise.key]

        if self.mode is MatchMode.LITERAL:
            if len(left) != len(right) or any(a != b for (a, _), (b, _) in zip(left, right)):
                return None
            for (_, p), (_, q) in zip(left, right):
                if not attempt(p, q):
                    return None
            return apply_rule(j.key, "act", list(chosen.values())), low

        for a, p in left:
            if not any(a == b and attempt(p, q) for b, q in right):
                return None
        for b, q in right:
            # reuse an answer found while covering the left side
            if any(a == b and tried.get(EquivJudgement(p, q).key) for a, p in left):
                continue
            if not any(a == b and attempt(p, q) for a, p in left):
                return None
        return apply_rule(j.key, "act", list(chosen.values())), low


def prove_equiv(p: ProcessExpr, q: ProcessExpr, mode: MatchMode = MatchMode.RELAXED,
                max_pairs: int = DEFAULT_MAX_PAIRS, rec_order: Sequence[str] = REC_ORDER) -> ProofCert | None:
    """Search for a circular proof of ``p == q``; None if there is none.

    Raises BudgetExceeded when more than ``max_pairs`` distinct judgements
    are encountered.
    """
    root = EquivJudgement(p, q)
    node, _ = _Search(mode, max_pairs, rec_order).visit(root)
    return node
