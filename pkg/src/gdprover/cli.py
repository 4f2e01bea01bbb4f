"""Command-line entry point: parse -> transform -> prove -> check -> report.

Exit codes: 0 success/proved, 1 not proved (or check failed, or
disagreements found), 2 input/fragment/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import engine, kernel, oracle, proofio
from .parser import ParseError, parse, parse_sequent
from .syntax import to_text
from .transform import NormalizedProblem, TransformError, normalize_problem


def _read_sequent_file(path: str):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 1:
        raise ValueError(f"{path}: expected exactly one sequent line, "
                         f"found {len(lines)}")
    return parse_sequent(lines[0])


def _problem_json(problem: NormalizedProblem) -> dict:
    return {
        "clauses": [to_text(c) for c in problem.clauses],
        "goal": to_text(problem.goal),
        "signature_extension": [
            {"name": n, "arity": a, "origin": o}
            for n, a, o in problem.signature_ext.entries],
        "trace": list(problem.trace),
    }


def _trace_lines(tree: kernel.ProofTree):
    yield f"{tree.rule} {tree.conclusion!r}"
    for p in tree.premises:
        yield from _trace_lines(p)


def cmd_prove(args) -> int:
    try:
        ant, succ = _read_sequent_file(args.input)
        problem = normalize_problem(ant, succ)
    except (ParseError, TransformError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    config = engine.SearchConfig(max_sequents=args.max_sequents,
                                 restart_enabled=not args.no_restart)
    result = engine.prove(list(problem.clauses), problem.goal, config)
    out = {"verdict": result.status, "transform": _problem_json(problem)}
    if result.status == engine.PROVED:
        report = kernel.check(result.proof, "reduced", goal=problem.goal)
        og_tree = engine.expand_to_og(result, list(problem.clauses), problem.goal)
        og_report = kernel.check(og_tree, "og", goal=problem.goal)
        if not (report.ok and og_report.ok):
            print("error: internal kernel gate failed; proof withheld",
                  file=sys.stderr)
            for v in (report.violations + og_report.violations)[:10]:
                print(f"  {v}", file=sys.stderr)
            return 2
        if args.trace:
            for line in _trace_lines(result.proof):
                print(line)
        if args.emit_proof:
            proofio.save(result.proof, args.emit_proof)
        if args.emit_og:
            proofio.save(og_tree, args.emit_og)
    if args.stats:
        out["stats"] = {
            "rules": result.stats.rules,
            "sequents_in_proof": result.stats.sequents_in_proof,
            "nodes_expanded": result.stats.nodes_expanded,
            "rungs_tried": result.stats.rungs_tried,
            "exhaustive": result.stats.exhaustive,
        }
    print(json.dumps(out, indent=2))
    return 0 if result.status == engine.PROVED else 1


def cmd_check(args) -> int:
    try:
        tree = proofio.load(args.proof)
        goal = None
        if args.goal is not None:
            goal = parse(args.goal, allow_reserved=True)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = kernel.check(tree, args.discipline, goal=goal)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report.ok:
        print(f"ok: proof passes discipline {args.discipline}")
        return 0
    print(f"FAIL: {len(report.violations)} violation(s)")
    for path, rule, reason in report.violations:
        print(f"  {path} [{rule}]: {reason}")
    return 1


def cmd_transform(args) -> int:
    try:
        ant, succ = _read_sequent_file(args.input)
        problem = normalize_problem(ant, succ)
    except (ParseError, TransformError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for c in problem.clauses:
        print(f"clause: {to_text(c)}")
    print(f"goal: {to_text(problem.goal)}")
    for name, arity, origin in problem.signature_ext.entries:
        print(f"fresh: {name}/{arity} ({origin})")
    print(json.dumps(_problem_json(problem), indent=2))
    return 0


def cmd_compare(args) -> int:
    if (args.corpus is None) == (args.random is None):
        print("error: give a corpus path or --random N", file=sys.stderr)
        return 2
    try:
        if args.corpus is not None:
            with open(args.corpus) as fh:
                cases = oracle.parse_corpus(fh.read())
        else:
            import random as _random
            rng = _random.Random(args.seed)
            cases = []
            for i in range(args.random):
                clauses, goal = oracle.random_problem(rng)
                text = "; ".join(to_text(c) for c in clauses) + " |- " + to_text(goal)
                cases.append(oracle.CorpusCase(tuple(clauses), goal, text, i + 1))
    except (OSError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = oracle.differential(cases, max_sequents=args.max_sequents,
                                 check_proofs=args.check_proofs)
    print(report.summary())
    for d in report.disagreements:
        print(f"disagreement: {d.label}: engine={d.engine_verdict} "
              f"oracle={d.oracle_verdict} expect={d.expect} {d.detail}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gdprover",
        description="goal-directed classical prover with restart/atomic/backchain")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="prove the sequent in a file")
    p.add_argument("input")
    p.add_argument("--max-sequents", type=int, default=200)
    p.add_argument("--no-restart", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--emit-proof", metavar="PATH")
    p.add_argument("--emit-og", metavar="PATH")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(fn=cmd_prove)

    c = sub.add_parser("check", help="check a proof document")
    c.add_argument("proof")
    c.add_argument("--discipline", required=True, choices=kernel.DISCIPLINES)
    c.add_argument("--goal", help="goal formula for ig/og/reduced")
    c.set_defaults(fn=cmd_check)

    t = sub.add_parser("transform", help="normalize a sequent to clause form")
    t.add_argument("input")
    t.set_defaults(fn=cmd_transform)

    d = sub.add_parser("compare", help="differential engine-vs-oracle run")
    d.add_argument("corpus", nargs="?")
    d.add_argument("--random", type=int)
    d.add_argument("--seed", type=int, default=42)
    d.add_argument("--max-sequents", type=int, default=200)
    d.add_argument("--check-proofs", action="store_true")
    d.set_defaults(fn=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
