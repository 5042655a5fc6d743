"""Seeded random generators for processes, process pairs and rule systems."""
from __future__ import annotations

import random

from coinduct.ruleset import Rule, RuleSystem
from coinduct.syntax import Mu, ProcessExpr, Sum, Var, _subst, depth, head_unfold, subterms

ACTIONS = ("a", "b")
BINDERS = ("X", "Y")


def random_process(rng: random.Random, max_depth: int = 4, actions=ACTIONS, max_summands: int = 3) -> ProcessExpr:
    """A closed expression of AST depth at most ``max_depth`` (at least 1)."""

    def gen_sum(budget: int, bound: tuple[str, ...]) -> Sum:
        # a sum node uses one level; its continuations get the rest
        if budget <= 1:
            return Sum()
        n = rng.randint(0, max_summands)
        return Sum(tuple((rng.choice(actions), gen(budget - 1, bound)) for _ in range(n)))

    def gen(budget: int, bound: tuple[str, ...]) -> ProcessExpr:
        options = ["sum"]
        if bound:
            options.append("var")
        if budget >= 3:
            options.append("mu")
        kind = rng.choice(options)
        if kind == "var":
            return Var(rng.choice(bound))
        if kind == "mu":
            x = rng.choice(BINDERS)
            return Mu(x, gen_sum(budget - 1, bound + (x,)))
        return gen_sum(budget, bound)

    return gen(max_depth, ())


def _reorder(rng: random.Random, p: ProcessExpr) -> ProcessExpr:
    if isinstance(p, Mu):
        return Mu(p.binder, _reorder(rng, p.body))
    if isinstance(p, Sum):
        summands = list(p.summands)
        rng.shuffle(summands)
        return Sum(tuple(summands))
    return p


def _duplicate(rng: random.Random, p: ProcessExpr) -> ProcessExpr:
    if isinstance(p, Mu):
        return Mu(p.binder, _duplicate(rng, p.body))
    if isinstance(p, Sum) and p.summands:
        return Sum(p.summands + (rng.choice(p.summands),))
    return p


def _rename(p: ProcessExpr) -> ProcessExpr:
    if not isinstance(p, Mu):
        return p
    fresh = next(x for x in BINDERS + ("Z",) if x != p.binder)
    if any(isinstance(t, Mu) and t.binder == fresh for t in subterms(p.body)):
        return p
    return Mu(fresh, _subst(p.body, p.binder, Var(fresh)))


def variant(rng: random.Random, p: ProcessExpr, max_depth: int = 4) -> ProcessExpr:
    """A perturbed copy of ``p``, bisimilar to it, no deeper than ``max_depth``."""
    kind = rng.randrange(4)
    if kind == 0:
        q = head_unfold(p)
    elif kind == 1:
        q = _duplicate(rng, p)
    elif kind == 2:
        q = _rename(p)
    else:
        q = p
    if depth(q) > max_depth:
        q = p
    return _reorder(rng, q)


def random_pair(rng: random.Random, max_depth: int = 4, actions=ACTIONS, max_summands: int = 3) -> tuple[ProcessExpr, ProcessExpr]:
    """Half independent draws, half a draw and a perturbed (bisimilar) copy."""
    p = random_process(rng, max_depth, actions, max_summands)
    if rng.random() < 0.5:
        return p, random_process(rng, max_depth, actions, max_summands)
    return p, variant(rng, p, max_depth)


def random_rulesystem(rng: random.Random, max_judgements: int = 8, max_rules: int = 12, max_premises: int = 3) -> RuleSystem:
    n = rng.randint(1, max_judgements)
    universe = tuple(f"j{i}" for i in range(n))
    rules = []
    for k in range(rng.randint(0, max_rules)):
        width = rng.randint(0, max_premises)
        premises = tuple(dict.fromkeys(rng.choice(universe) for _ in range(width)))
        rules.append(Rule(f"r{k}", premises, rng.choice(universe)))
    return RuleSystem(universe, tuple(rules))
