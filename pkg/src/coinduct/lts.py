"""Labelled transition semantics and a naive strong-bisimilarity checker.

The checker is deliberately independent of the proof search in
:mod:`coinduct.equiv`: it explores the reachable states and computes the
greatest bisimulation by repeatedly deleting pairs that cannot match a move.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from coinduct.errors import BudgetExceeded, NotAProcess
from coinduct.syntax import ProcessExpr, free_vars, head_unfold, render

DEFAULT_MAX_STATES = 10_000


def transitions(p: ProcessExpr) -> frozenset[tuple[str, ProcessExpr]]:
    """The ``(action, successor)`` pairs of a process."""
    if free_vars(p):
        raise NotAProcess(f"not a process: {render(p)}")
    return frozenset(head_unfold(p).summands)


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[ProcessExpr, ...]
    edges: tuple[frozenset[tuple[str, int]], ...]
    roots: tuple[int, ...]

    def __len__(self):
        return len(self.states)

    def index(self, p: ProcessExpr) -> int:
        return [render(s) for s in self.states].index(render(p))


def explore(roots: Sequence[ProcessExpr], max_states: int = DEFAULT_MAX_STATES) -> TransitionSystem:
    """Breadth-first closure of ``roots`` under transitions.

    States are identified by their rendered text.
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    index: dict[str, int] = {}
    states: list[ProcessExpr] = []
    edges: list[frozenset[tuple[str, int]]] = []
    queue: deque[int] = deque()

    def intern(p: ProcessExpr) -> int:
        key = render(p)
        if key not in index:
            if len(states) >= max_states:
                raise BudgetExceeded(f"state budget exceeded ({max_states} states)")
            index[key] = len(states)
            states.append(p)
            edges.append(frozenset())
            queue.append(index[key])
        return index[key]

    root_ids = []
    for r in roots:
        if free_vars(r):
            raise NotAProcess(f"not a process: {render(r)}")
        root_ids.append(intern(r))
    while queue:
        i = queue.popleft()
        edges[i] = frozenset((a, intern(q)) for a, q in transitions(states[i]))
    return TransitionSystem(tuple(states), tuple(edges), tuple(root_ids))


def bisimulation(ts: TransitionSystem) -> set[tuple[int, int]]:
    """Greatest strong bisimulation on ``ts`` as a set of index pairs."""
    n = len(ts)
    rel = {(i, j) for i in range(n) for j in range(n)}

    def matched(moves, other_moves, flip):
        for a, s in moves:
            if not any(b == a and ((t, s) if flip else (s, t)) in rel for b, t in other_moves):
                return False
        return True

    changed = True
    while changed:
        changed = False
        for i, j in sorted(rel):
            if not (matched(ts.edges[i], ts.edges[j], False) and matched(ts.edges[j], ts.edges[i], True)):
                rel.discard((i, j))
                changed = True
    return rel


def bisimilar(p: ProcessExpr, q: ProcessExpr, max_states: int = DEFAULT_MAX_STATES) -> bool:
    ts = explore([p, q], max_states)
    i, j = ts.roots
    return (i, j) in bisimulation(ts)
