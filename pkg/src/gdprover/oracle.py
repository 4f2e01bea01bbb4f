"""Brute-force classical validity checking for desk-scale verification.

prop_valid enumerates all valuations exactly (capped at 20 distinct atoms;
the oracle refuses rather than sample). ground_valid expands quantifiers
over a declared finite constant set and defers to prop_valid; finite-domain
validity is necessary but not sufficient for provability in general, so it
is only used on the curated corpus. differential cross-checks the search
engine against the oracle on a corpus or a seeded random stream.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .parser import parse_sequent
from .syntax import (
    And, App, Atom, BOT, Bot, Const, Exists, Forall, Formula, Implies, Or,
    Top, TOP, substitute, to_text,
)

ATOM_LIMIT = 20


class OracleLimitError(ValueError):
    """Raised when an exact check would exceed the enumeration cap."""


def _collect_atoms(fs) -> list:
    seen = {}
    stack = list(fs)
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            seen.setdefault(f, None)
        elif isinstance(f, (And, Or, Implies)):
            stack.append(f.right)
            stack.append(f.left)
        elif isinstance(f, (Exists, Forall)):
            raise ValueError("prop_valid requires quantifier-free input")
    return sorted(seen, key=to_text)


def eval_formula(f: Formula, valuation: dict) -> bool:
    """Recursive truth-value semantics over a total valuation of atoms."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        return valuation[f]
    if isinstance(f, And):
        return eval_formula(f.left, valuation) and eval_formula(f.right, valuation)
    if isinstance(f, Or):
        return eval_formula(f.left, valuation) or eval_formula(f.right, valuation)
    if isinstance(f, Implies):
        return (not eval_formula(f.left, valuation)) or eval_formula(f.right, valuation)
    raise ValueError(f"not a propositional formula: {f!r}")


def prop_valid(antecedent, succedent: Formula) -> bool:
    """True iff every valuation satisfying all of antecedent satisfies
    succedent. Ground atoms are treated as propositional variables."""
    atoms = _collect_atoms(list(antecedent) + [succedent])
    if len(atoms) > ATOM_LIMIT:
        raise OracleLimitError(
            f"{len(atoms)} distinct atoms exceeds the exact-enumeration cap "
            f"of {ATOM_LIMIT}")
    for bits in itertools.product((False, True), repeat=len(atoms)):
        valuation = dict(zip(atoms, bits))
        if all(eval_formula(a, valuation) for a in antecedent):
            if not eval_formula(succedent, valuation):
                return False
    return True


def _function_free(f: Formula) -> bool:
    if isinstance(f, Atom):
        return all(not isinstance(a, App) for a in f.args)
    if isinstance(f, (And, Or, Implies)):
        return _function_free(f.left) and _function_free(f.right)
    if isinstance(f, (Exists, Forall)):
        return _function_free(f.body)
    return True


def _expand(f: Formula, domain) -> Formula:
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_expand(f.left, domain), _expand(f.right, domain))
    if isinstance(f, (Exists, Forall)):
        parts = [_expand(substitute(f.body, f.var, Const(d)), domain) for d in domain]
        out = parts[0]
        conn = Or if isinstance(f, Exists) else And
        for p in parts[1:]:
            out = conn(out, p)
        return out
    return f


def ground_valid(antecedent, succedent: Formula, domain) -> bool:
    """Finite-domain validity: expand forall/exists to conjunctions and
    disjunctions over domain, then truth-table the ground sequent."""
    if not domain:
        raise ValueError("domain must be nonempty")
    for f in list(antecedent) + [succedent]:
        if not _function_free(f):
            raise ValueError(f"ground_valid requires function-free input: {to_text(f)}")
    ant = [_expand(f, domain) for f in antecedent]
    return prop_valid(ant, _expand(succedent, domain))


# --- corpus --------------------------------------------------------------

@dataclass(frozen=True)
class CorpusCase:
    antecedent: tuple
    succedent: Formula
    text: str
    lineno: int
    domain: Optional[tuple] = None
    expect: Optional[bool] = None


def parse_corpus(text: str, allow_reserved: bool = False) -> List[CorpusCase]:
    """One sequent per line; `# domain: a,b` and `# expect: valid|invalid`
    directives apply to the next sequent line; other `#` lines are comments."""
    cases = []
    domain = None
    expect = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("domain:"):
                names = [n.strip() for n in body[len("domain:"):].split(",")]
                domain = tuple(n for n in names if n)
            elif body.startswith("expect:"):
                word = body[len("expect:"):].strip()
                if word not in ("valid", "invalid"):
                    raise ValueError(f"line {lineno}: expect must be valid|invalid")
                expect = word == "valid"
            continue
        ant, succ = parse_sequent(line, allow_reserved=allow_reserved)
        cases.append(CorpusCase(tuple(ant), succ, line, lineno, domain, expect))
        domain = None
        expect = None
    return cases


# --- random problem generation -------------------------------------------

_ATOM_NAMES = ("p", "q", "r", "s")


def _rand_heads(rng: random.Random, atoms, allow_bot=True) -> Formula:
    n = rng.randint(1, 3)
    pool = list(atoms)
    if allow_bot and rng.random() < 0.15:
        pool = pool + [BOT]
    picks = [rng.choice(pool) for _ in range(n)]
    out = picks[0]
    for h in picks[1:]:
        out = Or(out, h)  # left-leaning
    return out


def random_goal(rng: random.Random, depth: int, atoms, allow_imp=True) -> Formula:
    if depth <= 0 or rng.random() < 0.35:
        return rng.choice(atoms)
    kinds = ["and", "or"]
    if allow_imp:
        kinds.append("imp")
    kind = rng.choice(kinds)
    if kind == "and":
        return And(random_goal(rng, depth - 1, atoms, allow_imp),
                   random_goal(rng, depth - 1, atoms, allow_imp))
    if kind == "or":
        return Or(random_goal(rng, depth - 1, atoms, allow_imp),
                  random_goal(rng, depth - 1, atoms, allow_imp))
    return Implies(random_clause(rng, depth - 1, atoms),
                   random_goal(rng, depth - 1, atoms, allow_imp))


def random_clause(rng: random.Random, depth: int, atoms) -> Formula:
    heads = _rand_heads(rng, atoms)
    if depth > 0 and rng.random() < 0.5:
        return Implies(random_goal(rng, min(depth - 1, 2), atoms), heads)
    return heads


def random_problem(rng: random.Random, max_atoms=4, max_clauses=6, goal_depth=4):
    """A random propositional problem in the reduced syntax."""
    atoms = [Atom(n) for n in _ATOM_NAMES[:rng.randint(2, max_atoms)]]
    clauses = [random_clause(rng, 2, atoms) for _ in range(rng.randint(0, max_clauses))]
    goal = random_goal(rng, goal_depth, atoms)
    return clauses, goal


def random_horn_problem(rng: random.Random, max_atoms=4, max_clauses=6, goal_depth=3):
    """Horn restriction: single-atom heads, no falsehood, no implications
    anywhere in goals or clause bodies."""
    atoms = [Atom(n) for n in _ATOM_NAMES[:rng.randint(2, max_atoms)]]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.choice(atoms)
        if rng.random() < 0.5:
            body = random_goal(rng, 2, atoms, allow_imp=False)
            clauses.append(Implies(body, head))
        else:
            clauses.append(head)
    goal = random_goal(rng, goal_depth, atoms, allow_imp=False)
    return clauses, goal


# --- differential testing -------------------------------------------------

@dataclass
class Disagreement:
    label: str
    engine_verdict: str
    oracle_verdict: Optional[bool]
    expect: Optional[bool]
    detail: str = ""


@dataclass
class DifferentialReport:
    total: int = 0
    compared: int = 0
    skipped: int = 0
    disagreements: List[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def summary(self) -> str:
        return (f"{self.total} cases, {self.compared} compared, "
                f"{self.skipped} skipped (no oracle), "
                f"{len(self.disagreements)} disagreement(s)")


def _oracle_verdict(case: CorpusCase) -> Optional[bool]:
    fs = list(case.antecedent) + [case.succedent]
    quantified = any(isinstance(g, (Exists, Forall))
                     for f in fs for g in _walk(f))
    if not quantified:
        return prop_valid(case.antecedent, case.succedent)
    if case.domain is not None and all(_function_free(f) for f in fs):
        return ground_valid(case.antecedent, case.succedent, case.domain)
    return None


def _walk(f: Formula):
    yield f
    if isinstance(f, (And, Or, Implies)):
        yield from _walk(f.left)
        yield from _walk(f.right)
    elif isinstance(f, (Exists, Forall)):
        yield from _walk(f.body)


def differential(cases, max_sequents: int = 200, restart_enabled: bool = True,
                 check_proofs: bool = False) -> DifferentialReport:
    """Run transform + engine and the oracle on each case; report every
    disagreement. Engine proved + oracle invalid is a soundness bug;
    oracle valid + exhausted-at-bound on propositional input is a
    completeness bug; an `expect` annotation must match both sides."""
    from . import engine as _engine
    from . import kernel as _kernel
    from .transform import normalize_problem

    report = DifferentialReport()
    for case in cases:
        report.total += 1
        label = f"line {case.lineno}: {case.text}"
        problem = normalize_problem(list(case.antecedent), case.succedent)
        config = _engine.SearchConfig(max_sequents=max_sequents,
                                      restart_enabled=restart_enabled)
        result = _engine.prove(list(problem.clauses), problem.goal, config)
        oracle = _oracle_verdict(case)
        if oracle is None and case.expect is None:
            report.skipped += 1
            continue
        report.compared += 1
        proved = result.status == "proved"
        verdicts = {v for v in (oracle, case.expect) if v is not None}
        if len(verdicts) > 1 or (verdicts and proved != verdicts.pop()):
            report.disagreements.append(Disagreement(
                label, result.status, oracle, case.expect))
            continue
        if proved and check_proofs:
            rep = _kernel.check(result.proof, "reduced", goal=problem.goal)
            if not rep.ok:
                report.disagreements.append(Disagreement(
                    label, result.status, oracle, case.expect,
                    detail=f"reduced check failed: {rep.violations[:3]}"))
                continue
            og = _engine.expand_to_og(result, list(problem.clauses), problem.goal)
            rep2 = _kernel.check(og, "og", goal=problem.goal)
            if not rep2.ok:
                report.disagreements.append(Disagreement(
                    label, result.status, oracle, case.expect,
                    detail=f"og check failed: {rep2.violations[:3]}"))
    return report
