"""Process expressions with guarded recursion.

Three constructors cover the language::

    E ::= a1.E1 + ... + an.En  |  mu X. a1.E1 + ... + an.En  |  X

A ``Mu`` body is always a ``Sum``, which is what keeps recursion guarded.
Summands are an ordered tuple: position is the index, and duplicates are kept.

Concrete syntax::

    expr   := sum | mu | var
    sum    := "0" | prefix ("+" prefix)*
    prefix := action "." atom
    atom   := "0" | var | "(" expr ")" | mu | prefix
    mu     := "mu" VAR "." sum

``.`` binds tighter than ``+`` and ``mu X.`` extends as far right as possible.
``μ`` is accepted as a spelling of ``mu``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from coinduct.errors import NotAProcess, ParseError

ACTION_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Sum:
    summands: tuple[tuple[str, "ProcessExpr"], ...] = ()

    def __post_init__(self):
        for action, _ in self.summands:
            if not ACTION_RE.match(action):
                raise ValueError(f"invalid action name {action!r}")

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Mu:
    binder: str
    body: Sum

    def __post_init__(self):
        if not VAR_RE.match(self.binder):
            raise ValueError(f"invalid variable name {self.binder!r}")
        if not isinstance(self.body, Sum):
            raise ValueError("unguarded mu body: the body of mu must be a sum")

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not VAR_RE.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self):
        return render(self)


ProcessExpr = Union[Sum, Mu, Var]

NIL = Sum()


def prefix(action: str, cont: ProcessExpr) -> Sum:
    """The singleton sum ``action.cont``."""
    return Sum(((action, cont),))


def choice(*summands: Sum) -> Sum:
    """Concatenate the summands of several sums: ``choice(a.0, b.0)`` is ``a.0 + b.0``."""
    return Sum(tuple(s for part in summands for s in part.summands))


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<mu>μ)|(?P<sym>[.+()])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        pos = m.end()
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        kind = m.lastgroup
        if kind == "ident":
            if ACTION_RE.match(value):
                kind = "action"
            elif VAR_RE.match(value):
                kind = "var"
            else:
                raise ParseError(f"invalid identifier {value!r}", start)
        elif kind == "num":
            if value != "0":
                raise ParseError(f"unexpected number {value!r}", start)
            kind = "zero"
        elif kind == "bad":
            raise ParseError(f"unexpected character {value!r}", start)
        tokens.append((kind, value, start))
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise ParseError(f"expected {want}, got {got}", tok[2])
        return tok

    def at_mu(self) -> bool:
        kind, value, _ = self.peek()
        if kind == "mu":
            return True
        return kind == "action" and value == "mu" and self.peek(1)[0] == "var"

    def expr(self) -> ProcessExpr:
        kind = self.peek()[0]
        if self.at_mu():
            return self.mu()
        if kind == "var":
            return Var(self.next()[1])
        if kind == "sym" and self.peek()[1] == "(":
            return self.paren()
        return self.sum()

    def paren(self) -> ProcessExpr:
        self.expect("sym", "(")
        e = self.expr()
        self.expect("sym", ")")
        return e

    def sum(self) -> Sum:
        if self.peek()[0] == "zero":
            self.next()
            return NIL
        summands = [self.prefix()]
        while self.peek()[:2] == ("sym", "+"):
            self.next()
            summands.append(self.prefix())
        return Sum(tuple(summands))

    def prefix(self) -> tuple[str, ProcessExpr]:
        action = self.expect("action")[1]
        self.expect("sym", ".")
        return action, self.atom()

    def atom(self) -> ProcessExpr:
        kind, value, pos = self.peek()
        if kind == "zero":
            self.next()
            return NIL
        if self.at_mu():
            return self.mu()
        if kind == "var":
            self.next()
            return Var(value)
        if kind == "sym" and value == "(":
            return self.paren()
        if kind == "action":
            return Sum((self.prefix(),))
        got = repr(value) if kind != "eof" else "end of input"
        raise ParseError(f"expected a continuation after '.', got {got}", pos)

    def mu(self) -> Mu:
        self.next()
        binder = self.expect("var")[1]
        self.expect("sym", ".")
        kind, value, pos = self.peek()
        if kind == "var" or self.at_mu():
            raise ParseError("unguarded mu body", pos)
        if kind == "sym" and value == "(":
            body = self.paren()
            if not isinstance(body, Sum):
                raise ParseError("unguarded mu body", pos)
        else:
            body = self.sum()
        return Mu(binder, body)


def parse(text: str) -> ProcessExpr:
    """Parse concrete syntax into an expression. Raises ParseError."""
    p = _Parser(text)
    e = p.expr()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {value!r} after expression", pos)
    return e


# ---------------------------------------------------------------- printing

def _render(e: ProcessExpr, followed: bool) -> str:
    # followed: more summands come to the right, so a trailing mu must be closed off
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Mu):
        return f"mu {e.binder}. {_render(e.body, followed)}"
    if not e.summands:
        return "0"
    n = len(e.summands)
    parts = []
    for i, (action, cont) in enumerate(e.summands):
        tail = followed or i < n - 1
        if isinstance(cont, Sum) and len(cont.summands) > 1:
            text = f"({_render(cont, False)})"
        elif isinstance(cont, Mu) and tail:
            text = f"({_render(cont, False)})"
        else:
            text = _render(cont, tail)
        parts.append(f"{action}.{text}")
    return " + ".join(parts)


def render(e: ProcessExpr) -> str:
    """Canonical concrete syntax; ``parse(render(e)) == e``."""
    return _render(e, False)


# ---------------------------------------------------------------- variables and substitution

def free_vars(e: ProcessExpr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Mu):
        return free_vars(e.body) - {e.binder}
    out: frozenset[str] = frozenset()
    for _, cont in e.summands:
        out |= free_vars(cont)
    return out


def is_process(e: ProcessExpr) -> bool:
    return not free_vars(e)


def _subst(e: ProcessExpr, x: str, p: ProcessExpr) -> ProcessExpr:
    if isinstance(e, Var):
        return p if e.name == x else e
    if isinstance(e, Mu):
        if e.binder == x:
            return e
        return Mu(e.binder, _subst(e.body, x, p))
    return Sum(tuple((a, _subst(cont, x, p)) for a, cont in e.summands))


def substitute(e: ProcessExpr, x: str, p: ProcessExpr) -> ProcessExpr:
    """Replace the free occurrences of variable ``x`` in ``e`` by the closed term ``p``.

    Substitution stops at binders that rebind ``x``. No renaming is needed
    because ``p`` is closed.
    """
    if free_vars(p):
        raise NotAProcess(f"open substituend: {render(p)} has free variables {sorted(free_vars(p))}")
    return _subst(e, x, p)


def head_unfold(p: ProcessExpr) -> Sum:
    """Expose the top-level summands of a process by unrolling one mu."""
    if free_vars(p):
        raise NotAProcess(f"not a process: {render(p)}")
    if isinstance(p, Mu):
        return _subst(p.body, p.binder, p)
    return p


def subterms(e: ProcessExpr) -> Iterator[ProcessExpr]:
    """Every node of the syntax tree, root first."""
    yield e
    if isinstance(e, Mu):
        yield from subterms(e.body)
    elif isinstance(e, Sum):
        for _, cont in e.summands:
            yield from subterms(cont)


def size(e: ProcessExpr) -> int:
    return sum(1 for _ in subterms(e))


def depth(e: ProcessExpr) -> int:
    if isinstance(e, Var):
        return 1
    if isinstance(e, Mu):
        return 1 + depth(e.body)
    return 1 + max((depth(c) for _, c in e.summands), default=0)
