"""Proof certificates: finite trees of rule applications.

A certificate node is labelled by a judgement key (a string) and is one of

* ``Inner``      a rule application with premises above it,
* ``Axiom``      a rule application without premises,
* ``BackEdge``   a leaf standing for the ancestor ``up`` levels below it,
                 which carries the identical judgement,
* ``Hypothesis`` a leaf citing a coinduction hypothesis.

Unrolling every back-edge yields a possibly infinite proof tree; a
certificate without back-edges and hypotheses is a well-founded proof.

Whether a node is a legal rule instance is decided by a caller-supplied
``InstanceCheck``: ``check(premises, conclusion, rule_name) -> bool`` where
``premises`` are the judgement keys of the children.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Collection, Iterator, Sequence, Union

from coinduct.errors import ParseError

InstanceCheck = Callable[[Sequence[str], str, str], bool]


@dataclass(frozen=True)
class Inner:
    judgement: str
    rule: str
    children: tuple["ProofCert", ...]


@dataclass(frozen=True)
class Axiom:
    judgement: str
    rule: str


@dataclass(frozen=True)
class BackEdge:
    judgement: str
    up: int


@dataclass(frozen=True)
class Hypothesis:
    judgement: str
    name: str


ProofCert = Union[Inner, Axiom, BackEdge, Hypothesis]


def apply_rule(judgement: str, rule: str, children: Sequence[ProofCert]) -> ProofCert:
    """Build a rule application, using ``Axiom`` when there are no premises."""
    if not children:
        return Axiom(judgement, rule)
    return Inner(judgement, rule, tuple(children))


def nodes(c: ProofCert) -> Iterator[tuple[ProofCert, int]]:
    """Preorder traversal yielding ``(node, depth)``."""
    stack = [(c, 0)]
    while stack:
        node, d = stack.pop()
        yield node, d
        if isinstance(node, Inner):
            stack.extend((child, d + 1) for child in reversed(node.children))


def judgements(c: ProofCert) -> set[str]:
    return {node.judgement for node, _ in nodes(c)}


def back_edges(c: ProofCert) -> list[tuple[BackEdge, str]]:
    """Every back-edge together with the judgement of the node it points to."""
    out = []
    path: list[str] = []
    for node, d in nodes(c):
        del path[d:]
        path.append(node.judgement)
        if isinstance(node, BackEdge) and 1 <= node.up <= d:
            out.append((node, path[d - node.up]))
    return out


def count_rules(c: ProofCert) -> dict[str, int]:
    counts: dict[str, int] = {}
    for node, _ in nodes(c):
        if isinstance(node, (Inner, Axiom)):
            counts[node.rule] = counts.get(node.rule, 0) + 1
    return counts


# ---------------------------------------------------------------- checking

@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    path: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "accepted"
        return f"rejected: {self.reason}" + (f" at {self.path}" if self.path else "")


ACCEPT = Verdict(True)


def _check(c: ProofCert, instance_check: InstanceCheck, *, allow_back: bool,
           hypotheses: Collection[str] | None) -> Verdict:
    # iterative walk; path holds the judgements of the ancestors, addr the child indices
    stack: list[tuple[ProofCert, int, str]] = [(c, 0, "root")]
    path: list[str] = []
    while stack:
        node, d, addr = stack.pop()
        del path[d:]
        path.append(node.judgement)
        if isinstance(node, BackEdge):
            if not allow_back:
                return Verdict(False, "back-edge present", addr)
            if node.up < 1:
                return Verdict(False, "back-edge to self (empty fragment)", addr)
            if node.up > d:
                return Verdict(False, "back-edge target out of range", addr)
            if path[d - node.up] != node.judgement:
                return Verdict(False, "back-edge judgement mismatch", addr)
        elif isinstance(node, Hypothesis):
            if hypotheses is None:
                return Verdict(False, "hypothesis leaf present", addr)
            if node.judgement not in hypotheses:
                return Verdict(False, "unknown hypothesis", addr)
        else:
            kids = node.children if isinstance(node, Inner) else ()
            try:
                ok = instance_check([k.judgement for k in kids], node.judgement, node.rule)
            except Exception:
                ok = False
            if not ok:
                return Verdict(False, "invalid rule instance", addr)
            for i in reversed(range(len(kids))):
                stack.append((kids[i], d + 1, f"{addr}.{i}"))
    return ACCEPT


def check_wellfounded(c: ProofCert, instance_check: InstanceCheck) -> Verdict:
    """Accept iff ``c`` is a finite proof: valid instances, no back-edges, no hypotheses."""
    return _check(c, instance_check, allow_back=False, hypotheses=None)


def check_circular(c: ProofCert, instance_check: InstanceCheck) -> Verdict:
    """Accept iff ``c`` unrolls to a (possibly infinite) proof.

    Every back-edge must point to a proper ancestor with the same judgement.
    """
    return _check(c, instance_check, allow_back=True, hypotheses=None)


def check_fragment(c: ProofCert, hypotheses: Collection[str], instance_check: InstanceCheck) -> Verdict:
    """Accept iff ``c`` derives its root from ``hypotheses`` using at least one rule."""
    if isinstance(c, Hypothesis):
        return Verdict(False, "empty fragment", "root")
    return _check(c, instance_check, allow_back=False, hypotheses=frozenset(hypotheses))


# ---------------------------------------------------------------- fragments

def to_fragment(c: ProofCert, name: str = "S") -> ProofCert:
    """Replace every back-edge by a hypothesis on the same judgement."""
    if isinstance(c, BackEdge):
        return Hypothesis(c.judgement, name)
    if isinstance(c, Inner):
        return Inner(c.judgement, c.rule, tuple(to_fragment(k, name) for k in c.children))
    return c


def close_fragment(c: ProofCert) -> ProofCert:
    """Turn each hypothesis leaf into a back-edge to its nearest ancestor with that judgement.

    Hypotheses with no such ancestor are left in place.
    """
    def go(node: ProofCert, path: list[str]) -> ProofCert:
        if isinstance(node, Hypothesis):
            for up in range(1, len(path) + 1):
                if path[-up] == node.judgement:
                    return BackEdge(node.judgement, up)
            return node
        if isinstance(node, Inner):
            path.append(node.judgement)
            kids = tuple(go(k, path) for k in node.children)
            path.pop()
            return Inner(node.judgement, node.rule, kids)
        return node

    return go(c, [])


def fragments(c: ProofCert) -> dict[str, ProofCert]:
    """A fragment for every judgement targeted by a back-edge, plus the root.

    The hypothesis set of the family is its key set; each fragment is the
    subtree at the first node carrying its judgement, with back-edges turned
    into hypotheses. Back-edges of a subtree never leave it, except to
    judgements that are themselves keys, so each fragment checks against
    the key set.
    """
    targets = {c.judgement} | {t for _, t in back_edges(c)}
    out: dict[str, ProofCert] = {}
    for node, _ in nodes(c):
        if node.judgement in targets and node.judgement not in out and isinstance(node, (Inner, Axiom)):
            out[node.judgement] = to_fragment(node)
    return out


# ---------------------------------------------------------------- serialization

def serialize(c: ProofCert) -> str:
    """Line-based text form; node ids are assigned in preorder and the root comes first."""
    lines: list[str] = []
    counter = 0

    def go(node: ProofCert) -> str:
        nonlocal counter
        nid = f"n{counter}"
        counter += 1
        slot = len(lines)
        lines.append("")
        j = json.dumps(node.judgement, ensure_ascii=False)
        if isinstance(node, Inner):
            kids = [go(k) for k in node.children]
            lines[slot] = f"node {nid}: judgement {j} rule {node.rule} children {' '.join(kids)}"
        elif isinstance(node, Axiom):
            lines[slot] = f"axiom {nid}: judgement {j} rule {node.rule}"
        elif isinstance(node, BackEdge):
            lines[slot] = f"back {nid}: judgement {j} up {node.up}"
        else:
            lines[slot] = f"hyp {nid}: judgement {j} name {node.name}"
        return nid

    go(c)
    return "\n".join(lines) + "\n"


_LINE_RE = re.compile(r'(node|axiom|back|hyp)\s+(\S+):\s+judgement\s+("(?:[^"\\]|\\.)*")\s*(.*)\Z')
_TAIL_RE = {
    "node": re.compile(r"rule\s+(\S+)\s+children((?:\s+\S+)+)\Z"),
    "axiom": re.compile(r"rule\s+(\S+)\Z"),
    "back": re.compile(r"up\s+(-?\d+)\Z"),
    "hyp": re.compile(r"name\s+(\S+)\Z"),
}


def deserialize(text: str) -> ProofCert:
    """Inverse of :func:`serialize`. Raises ParseError on malformed input."""
    entries: dict[str, tuple[str, str, tuple, int]] = {}
    order: list[str] = []
    # judgement strings may hold unicode line separators, so split on "\n" only
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip(" \t\r")
        if not line or line.startswith("#"):
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise ParseError("malformed certificate line", line=lineno)
        kind, nid, jtext, tail = m.groups()
        tm = _TAIL_RE[kind].match(tail)
        if not tm:
            raise ParseError(f"malformed {kind} entry", line=lineno)
        if nid in entries:
            raise ParseError(f"duplicate node id {nid}", line=lineno)
        entries[nid] = (kind, json.loads(jtext), tm.groups(), lineno)
        order.append(nid)
    if not order:
        raise ParseError("empty certificate")

    used: set[str] = set()
    for nid in order:
        kind, _, fields, lineno = entries[nid]
        if kind == "node":
            for kid in fields[1].split():
                if kid not in entries:
                    raise ParseError(f"unknown child id {kid}", line=lineno)
                if kid in used or kid == order[0]:
                    raise ParseError(f"node {kid} has more than one parent", line=lineno)
                used.add(kid)
    if len(used) != len(order) - 1:
        raise ParseError("certificate is not a single tree")

    def build(nid: str) -> ProofCert:
        kind, judgement, fields, _ = entries[nid]
        if kind == "node":
            return Inner(judgement, fields[0], tuple(build(k) for k in fields[1].split()))
        if kind == "axiom":
            return Axiom(judgement, fields[0])
        if kind == "back":
            return BackEdge(judgement, int(fields[0]))
        return Hypothesis(judgement, fields[0])

    # every non-root node has exactly one parent and the root has none, so this terminates
    return build(order[0])


# ---------------------------------------------------------------- display

def render_cert(c: ProofCert) -> str:
    """One numbered line per node, indented by depth, conclusion at the top."""
    lines: list[str] = []
    line_of: list[int] = []
    for node, d in nodes(c):
        del line_of[d:]
        n = len(lines) + 1
        line_of.append(n)
        pad = "  " * d
        if isinstance(node, (Inner, Axiom)):
            note = f"({node.rule})"
        elif isinstance(node, BackEdge):
            target = line_of[d - node.up] if 1 <= node.up <= d else "?"
            note = f"[back-edge to line {target}, up {node.up}]"
        else:
            note = f"[hypothesis {node.name}]"
        lines.append(f"{n:>3}  {pad}{node.judgement}  {note}")
    return "\n".join(lines)
