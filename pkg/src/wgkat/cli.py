"""Command-line entry point: ``wgkat check|nf|dot|axioms``.

Exit codes: 0 all good, 1 an assertion or axiom failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from .axioms import ALL, MUTANTS, run_suite
from .equivalence import decide, normal_form
from .semantics import explore
from .semiring import SEMIRINGS, SemiringError, format_weight, get_semiring
from .session import SessionError, load_session
from .syntax import DEFAULT_MAX_TESTS, pretty
from .weighting import ACCEPT, REJECT, Step


def _session(args):
    return load_session(args.file, max_tests=args.max_tests)


def cmd_check(args, out) -> int:
    s = _session(args)
    failed = 0
    for c in s.checks:
        v = decide(c.lhs, c.rhs, s.signature, s.semiring)
        verdict = "EQUIVALENT" if v.equivalent else "NOT EQUIVALENT"
        ok = v.equivalent == c.expect_equal
        failed += not ok
        if ok and args.quiet:
            continue
        line = f"{s.source}:{c.line}: {verdict} (states={v.states}, iterations={v.iterations})"
        if not ok:
            line += f" ASSERTION FAILED: expected {'EQUIVALENT' if c.expect_equal else 'NOT EQUIVALENT'}"
        print(line, file=out)
    if not args.quiet:
        print(f"{len(s.checks)} checks, {failed} failed", file=out)
    return 1 if failed else 0


def cmd_nf(args, out) -> int:
    s = _session(args)
    e = s.lookup(args.name)
    print(pretty(normal_form(e, s.signature, s.semiring), s.semiring), file=out)
    return 0


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(aut) -> str:
    """Deterministic DOT rendering; state 0 is the root."""
    lines = ["digraph wgkat {", "  rankdir=LR;", "  node [shape=circle];",
             "  start [shape=point];", "  start -> s0;"]
    for i in range(aut.n):
        lines.append(f"  s{i} [label={_dot_quote(str(i))}];")
    terminals: dict = {}
    edges = []
    for i, row in enumerate(aut.trans):
        for alpha, w in zip(aut.atoms, row):
            for t, x in w.sorted_items():
                weight = format_weight(x)
                if type(t) is Step:
                    edges.append(f"  s{i} -> s{t.state} [label={_dot_quote(f'{alpha} | {t.action} | {weight}')}];")
                    continue
                if t is ACCEPT:
                    node, label = "accept", "✓"
                elif t is REJECT:
                    node, label = "reject", "✗"
                else:
                    node, label = f"out_{t.name}", t.name
                terminals[node] = label
                edges.append(f"  s{i} -> {node} [label={_dot_quote(f'{alpha} | {weight}')}];")
    for node in sorted(terminals):
        lines.append(f"  {node} [shape=box, label={_dot_quote(terminals[node])}];")
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(args, out) -> int:
    s = _session(args)
    e = s.lookup(args.name)
    out.write(to_dot(explore(e, s.signature, s.semiring)))
    return 0


def cmd_axioms(args, out) -> int:
    ids = [x.strip() for x in args.semiring.split(",") if x.strip()]
    semirings = [get_semiring(x) for x in ids]
    axioms = dict(ALL)
    if args.mutants:
        axioms.update(MUTANTS)
    results = run_suite(semirings, seed=args.seed, count=args.count, axioms=axioms)
    failed = 0
    for r in results:
        failed += not r.ok
        if r.ok and args.quiet:
            continue
        status = "ok" if r.ok else "FAIL"
        print(f"{r.semiring:<22} {r.name:<10} {r.passed}/{r.total} {status}", file=out)
        if not r.ok:
            lhs, rhs = r.failures[0]
            sr = get_semiring(r.semiring)
            print(f"  first failure: {pretty(lhs, sr)}  vs  {pretty(rhs, sr)}", file=out)
    if not args.quiet:
        print(f"{len(results)} axiom runs, {failed} failed", file=out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-tests", type=int, default=DEFAULT_MAX_TESTS,
                        help="maximum number of primitive tests (atoms = 2**N)")
    common.add_argument("--quiet", action="store_true", help="print failures only")

    ap = argparse.ArgumentParser(prog="wgkat", description="Weighted guarded program equivalence checker.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the checks in a session file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("nf", parents=[common], help="print the one-step normal form of a binding")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("dot", parents=[common], help="print the automaton of a binding as DOT")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("axioms", parents=[common], help="check axiom instances against the decision procedure")
    p.add_argument("--semiring", default="boolean",
                   help="comma-separated ids: " + ",".join(SEMIRINGS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--mutants", action="store_true",
                   help="also run corrupted axioms, which are expected to fail")
    p.set_defaults(func=cmd_axioms)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args, out)
    except (SessionError, SemiringError, LookupError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, LookupError) and exc.args else exc
        print(f"wgkat: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
