"""Command-line interface.

Exit status: 0 when the verdict is positive (valid, accepted, bisimilar),
1 when it is negative, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from coinduct import equiv, lts, proofcert, ruleset
from coinduct.errors import CoinductError
from coinduct.syntax import free_vars, parse

OK, NO, ERROR = 0, 1, 2


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _summary(cert: proofcert.ProofCert) -> str:
    rules = ", ".join(f"{name} x{n}" for name, n in sorted(proofcert.count_rules(cert).items()))
    n_back = len(proofcert.back_edges(cert))
    return f"{len(proofcert.judgements(cert))} distinct judgements; rules: {rules or 'none'}; back-edges: {n_back}"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_parse(args) -> int:
    e = parse(args.expr)
    print(repr(e))
    fv = sorted(free_vars(e))
    print("free variables: " + (" ".join(fv) if fv else "(none)"))
    print("process: " + ("yes" if not fv else "no"))
    return OK


def cmd_prove(args) -> int:
    p, q = parse(args.left), parse(args.right)
    mode = equiv.MatchMode(args.mode)
    cert = equiv.prove_equiv(p, q, mode, args.max_pairs)
    j = equiv.EquivJudgement(p, q)
    if cert is None:
        print(f"not provable ({mode.value}): {j}")
        return NO
    print(f"proved ({mode.value}): {j}")
    print(_summary(cert))
    if args.show:
        print(proofcert.render_cert(cert))
    if args.emit:
        _write(args.emit, proofcert.serialize(cert))
        print(f"certificate written to {args.emit}")
    return OK


def _read_hypotheses(path: str) -> set[str]:
    out = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.add(json.loads(line) if line.startswith('"') else line)
    return out


def cmd_check_cert(args) -> int:
    cert = proofcert.deserialize(Path(args.file).read_text(encoding="utf-8"))
    if args.rules:
        check = ruleset.parse_rulesystem(Path(args.rules).read_text(encoding="utf-8")).instance_check()
    else:
        check = equiv.instance_check(equiv.MatchMode(args.mode))
    if args.fragment:
        verdict = proofcert.check_fragment(cert, _read_hypotheses(args.fragment), check)
        kind = "fragment"
    elif args.wellfounded:
        verdict = proofcert.check_wellfounded(cert, check)
        kind = "well-founded proof"
    else:
        verdict = proofcert.check_circular(cert, check)
        kind = "circular proof"
    print(f"{kind}: {verdict}")
    if verdict and not args.fragment and not args.wellfounded:
        wf = proofcert.check_wellfounded(cert, check)
        print("well-founded: " + ("yes" if wf else "no"))
    return OK if verdict else NO


def cmd_bisim(args) -> int:
    p, q = parse(args.left), parse(args.right)
    ts = lts.explore([p, q], args.max_states)
    i, j = ts.roots
    same = (i, j) in lts.bisimulation(ts)
    print(f"{'bisimilar' if same else 'not bisimilar'} ({len(ts)} states explored)")
    return OK if same else NO


def cmd_fixpoint(args) -> int:
    rs = ruleset.parse_rulesystem(Path(args.file).read_text(encoding="utf-8"))
    valid = ruleset.lfp(rs) if args.semantics == "lfp" else ruleset.gfp(rs)
    members = [j for j in rs.universe if j in valid]
    print(f"{args.semantics}: {{{', '.join(members)}}}")
    if not args.prove:
        return OK
    if args.prove not in rs.universe:
        raise CoinductError(f"unknown judgement id {args.prove!r}")
    if args.semantics == "lfp":
        cert = ruleset.extract_wf_proof(rs, args.prove)
    else:
        cert = ruleset.extract_circular_proof(rs, args.prove)
    if cert is None:
        print(f"{args.prove}: not valid under {args.semantics}")
        return NO
    print(f"{args.prove}: valid under {args.semantics}")
    print(proofcert.render_cert(cert))
    if args.emit:
        _write(args.emit, proofcert.serialize(cert))
        print(f"certificate written to {args.emit}")
    return OK


def cmd_render_cert(args) -> int:
    cert = proofcert.deserialize(Path(args.file).read_text(encoding="utf-8"))
    print(proofcert.render_cert(cert))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coinduct", description="Inductive and coinductive validity, circular proofs, process equivalence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a process expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("prove", help="search for a coinductive proof of P == Q")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=[m.value for m in equiv.MatchMode], default="relaxed")
    p.add_argument("--emit", metavar="FILE", help="write the certificate here")
    p.add_argument("--show", action="store_true", help="print the certificate")
    p.add_argument("--max-pairs", type=_positive, default=equiv.DEFAULT_MAX_PAIRS)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check-cert", help="check a certificate")
    p.add_argument("file")
    p.add_argument("--fragment", metavar="HYPFILE", help="check as a proof fragment over these hypotheses")
    p.add_argument("--rules", metavar="RULEFILE", help="check against a rule file instead of the == schemata")
    p.add_argument("--mode", choices=[m.value for m in equiv.MatchMode], default="relaxed")
    p.add_argument("--wellfounded", action="store_true", help="require a proof without back-edges")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("bisim", help="decide strong bisimilarity")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--max-states", type=_positive, default=lts.DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("fixpoint", help="validity sets of a rule file")
    p.add_argument("file")
    p.add_argument("--semantics", choices=["lfp", "gfp"], required=True)
    p.add_argument("--prove", metavar="ID")
    p.add_argument("--emit", metavar="FILE")
    p.set_defaults(func=cmd_fixpoint)

    p = sub.add_parser("render-cert", help="pretty-print a certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_render_cert)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    if args.command == "fixpoint" and args.emit and not args.prove:
        print("coinduct fixpoint: error: --emit requires --prove", file=sys.stderr)
        return ERROR
    try:
        return args.func(args)
    except (CoinductError, OSError, ValueError) as exc:
        print(f"coinduct {args.command}: error: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())
