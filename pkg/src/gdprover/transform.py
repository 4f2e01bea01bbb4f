"""Normalization of sequents into the reduced syntax.

Pipeline: negation expansion happens at parse time (`~F` is already
`F => false`, so expand_negations is the identity on ASTs); Herbrandization
replaces every eigenvariable-rule quantifier with a fresh function term;
clause/goal normalization then rewrites assumptions into
`(A v ... v A) | G => (A v ... v A) | forall x. D` form and goal
subformulas in assumption position into nested implications over single
clauses. Head disjunctions are rebuilt left-leaning, which downstream
proof expansion relies on.

Fresh names use the reserved prefixes `_h<N>` (the user-facing parser
rejects them, so they cannot collide with input symbols).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import fragments
from .syntax import (
    And, App, Atom, BOT, Bot, Const, Exists, Forall, Formula, Implies, Or,
    Term, Top, TOP, Var, build_or, constants_of, flatten_or, free_vars,
    substitute, to_text,
)


class TransformError(ValueError):
    """Input outside the supported fragment; carries the classification."""

    def __init__(self, message: str, fragment: Optional[fragments.FragmentClass] = None):
        super().__init__(message)
        self.fragment = fragment


@dataclass(frozen=True)
class HerbrandSignatureExtension:
    """Fresh function symbols introduced by Herbrandization.

    Each entry is (name, arity, origin) where origin is the path of the
    eliminated quantifier occurrence and arity equals the number of
    enclosing dual-quantifier variables in scope there.
    """
    entries: Tuple[Tuple[str, int, str], ...] = ()

    def names(self) -> set:
        return {name for name, _, _ in self.entries}


@dataclass(frozen=True)
class NormalizedProblem:
    clauses: Tuple[Formula, ...]
    goal: Formula
    signature_ext: HerbrandSignatureExtension
    trace: Tuple[str, ...]


def expand_negations(f: Formula) -> Formula:
    """Negation is parser-level sugar (~A reads as A => false); on ASTs,
    which have no negation constructor, this is the identity."""
    return f


# --- Herbrandization -------------------------------------------------------

_H_NAME = re.compile(r"_h(\d+)$")


class _FreshNames:
    def __init__(self, start: int):
        self.n = start

    def next(self) -> str:
        name = f"_h{self.n}"
        self.n += 1
        return name


def _herb_start(formulas) -> int:
    """First fresh index not colliding with any _h<N> already present."""
    top = 0
    for f in formulas:
        for name in constants_of(f):
            m = _H_NAME.match(name)
            if m:
                top = max(top, int(m.group(1)) + 1)
    return max(top, 1)


def _herbrandize_formula(f: Formula, positive: bool, duals: list,
                         fresh: _FreshNames, path: str, out_entries: list) -> Formula:
    """Eliminate quantifiers at eigenvariable positions.

    With `positive` tracking effective polarity (succedent formulas start
    positive, antecedent formulas negative), the eigenvariable positions
    are exactly positive forall and negative exists; the dual quantifiers
    remain and their variables parameterize the fresh function terms.
    """
    if isinstance(f, (Top, Bot, Atom)):
        return f
    if isinstance(f, And) or isinstance(f, Or):
        op = "and" if isinstance(f, And) else "or"
        return type(f)(
            _herbrandize_formula(f.left, positive, duals, fresh, f"{path}.{op}.left", out_entries),
            _herbrandize_formula(f.right, positive, duals, fresh, f"{path}.{op}.right", out_entries))
    if isinstance(f, Implies):
        return Implies(
            _herbrandize_formula(f.left, not positive, duals, fresh, f"{path}.imp.left", out_entries),
            _herbrandize_formula(f.right, positive, duals, fresh, f"{path}.imp.right", out_entries))
    eigen = (isinstance(f, Forall) and positive) or (isinstance(f, Exists) and not positive)
    q = "forall" if isinstance(f, Forall) else "exists"
    if eigen:
        name = fresh.next()
        args = [Var(v) for v in duals]
        term: Term = App(name, tuple(args)) if args else Const(name)
        out_entries.append((name, len(args), f"{path}.{q} {f.var}"))
        body = substitute(f.body, f.var, term)
        return _herbrandize_formula(body, positive, duals, fresh, f"{path}.{q}", out_entries)
    duals2 = [v for v in duals if v != f.var] + [f.var]
    body = _herbrandize_formula(f.body, positive, duals2, fresh, f"{path}.{q}", out_entries)
    return type(f)(f.var, body)


def herbrandize(antecedent, succedent: Formula, start: Optional[int] = None):
    """Replace eigenvariable-rule quantifiers (positive forall / negative
    exists in the succedent, the duals in the antecedent) by fresh function
    terms over the enclosing surviving quantifier variables. Classical
    provability of the sequent is preserved in both directions."""
    formulas = list(antecedent) + [succedent]
    fresh = _FreshNames(start if start is not None else _herb_start(formulas))
    entries: list = []
    ant_out = [
        _herbrandize_formula(f, False, [], fresh, f"antecedent[{i}]", entries)
        for i, f in enumerate(antecedent)
    ]
    succ_out = _herbrandize_formula(succedent, True, [], fresh, "succedent", entries)
    return ant_out, succ_out, HerbrandSignatureExtension(tuple(entries))


# --- simplification ---------------------------------------------------------

def simplify(f: Formula) -> Formula:
    """Bottom-up true/false simplification; A => false is kept (negation)."""
    if isinstance(f, (Top, Bot, Atom)):
        return f
    if isinstance(f, (Exists, Forall)):
        body = simplify(f.body)
        if isinstance(body, (Top, Bot)):
            return body
        return type(f)(f.var, body)
    left = simplify(f.left)
    right = simplify(f.right)
    if isinstance(f, And):
        if isinstance(left, Top):
            return right
        if isinstance(right, Top):
            return left
        if isinstance(left, Bot) or isinstance(right, Bot):
            return BOT
        return And(left, right)
    if isinstance(f, Or):
        if isinstance(left, Top) or isinstance(right, Top):
            return TOP
        if isinstance(left, Bot):
            return right
        if isinstance(right, Bot):
            return left
        return Or(left, right)
    # Implies
    if isinstance(left, Top):
        return right
    if isinstance(left, Bot):
        return TOP
    if isinstance(right, Top):
        return TOP
    return Implies(left, right)


# --- clause form -------------------------------------------------------------

@dataclass
class _Clause:
    """Working form: forall-prefix, optional body, flat head list."""
    vars: List[str]
    body: Optional[Formula]
    heads: List[Formula]

    def to_formula(self) -> Formula:
        heads = simplify(build_or(self.heads))
        f = heads if self.body is None else Implies(self.body, heads)
        for v in reversed(self.vars):
            if v in free_vars(f):
                f = Forall(v, f)
        return f


def _used_names(f: Formula) -> set:
    names = set(constants_of(f)) | set(free_vars(f))
    def bound(g):
        if isinstance(g, (And, Or, Implies)):
            return bound(g.left) | bound(g.right)
        if isinstance(g, (Exists, Forall)):
            return {g.var} | bound(g.body)
        return set()
    return names | bound(f)


class _Renamer:
    def __init__(self, avoid: set):
        self.avoid = set(avoid)

    def fresh(self, base: str) -> str:
        if base not in self.avoid:
            self.avoid.add(base)
            return base
        i = 1
        while f"{base}{i}" in self.avoid:
            i += 1
        name = f"{base}{i}"
        self.avoid.add(name)
        return name


def _norm_d(f: Formula, ren: _Renamer, trace: list) -> List[_Clause]:
    """Rewrite an assumption into clauses, innermost-out."""
    f = simplify(f)
    if isinstance(f, Top):
        trace.append("drop tautologous assumption")
        return []
    if isinstance(f, (Bot, Atom)):
        return [_Clause([], None, [f])]
    if isinstance(f, And):
        return _norm_d(f.left, ren, trace) + _norm_d(f.right, ren, trace)
    if isinstance(f, Forall):
        out = []
        for c in _norm_d(f.body, ren, trace):
            out.append(_Clause([f.var] + c.vars, c.body, c.heads))
        if len(out) > 1:
            trace.append(f"distribute forall {f.var} over {len(out)} clauses")
        return out
    if isinstance(f, Or):
        left = _norm_d(f.left, ren, trace)
        right = _norm_d(f.right, ren, trace)
        if len(left) > 1 or len(right) > 1:
            trace.append("distribute disjunction over conjunction of clauses")
        return [_or_clauses(a, b) for a in left for b in right]
    if isinstance(f, Implies):
        body = _norm_goal(f.left, ren, trace)
        out = []
        for c in _norm_d(f.right, ren, trace):
            # freshen the clause prefix against the new body, then curry
            c2 = _freshen(c, _used_names(body), ren)
            merged = body if c2.body is None else And(body, c2.body)
            out.append(_Clause(c2.vars, simplify(merged), c2.heads))
        if len(out) > 1:
            trace.append("curry implication into each head clause")
        return out
    if isinstance(f, Exists):
        raise TransformError(
            f"existential assumption not eliminated by Herbrandization: {to_text(f)}")
    raise TransformError(f"cannot normalize assumption: {to_text(f)}")


def _freshen(c: _Clause, avoid: set, ren: _Renamer) -> _Clause:
    mapping = {}
    vars2 = []
    for v in c.vars:
        if v in avoid:
            nv = ren.fresh(v)
            mapping[v] = Var(nv)
            vars2.append(nv)
        else:
            vars2.append(v)
    if not mapping:
        return c
    body = None if c.body is None else _subst_many(c.body, mapping)
    heads = [_subst_many(h, mapping) for h in c.heads]
    return _Clause(vars2, body, heads)


def _subst_many(f: Formula, mapping: dict) -> Formula:
    for name, term in mapping.items():
        f = substitute(f, name, term)
    return f


def _clause_names(c: _Clause) -> set:
    names = set(c.vars)
    for f in ([] if c.body is None else [c.body]) + c.heads:
        names |= _used_names(f)
    return names


def _or_clauses(a: _Clause, b: _Clause) -> _Clause:
    avoid = set(a.vars) | _clause_names(a)
    b = _freshen(b, avoid, _Renamer(avoid | _clause_names(b)))
    if a.body is None and b.body is None:
        body = None
    elif a.body is None:
        body = b.body
    elif b.body is None:
        body = a.body
    else:
        body = And(a.body, b.body)
    return _Clause(a.vars + [v for v in b.vars if v not in a.vars], body, a.heads + b.heads)


def _norm_goal(f: Formula, ren: _Renamer, trace: list) -> Formula:
    f = simplify(f)
    if isinstance(f, (Top, Bot, Atom)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_norm_goal(f.left, ren, trace), _norm_goal(f.right, ren, trace))
    if isinstance(f, Exists):
        return Exists(f.var, _norm_goal(f.body, ren, trace))
    if isinstance(f, Implies):
        clauses = _norm_d(f.left, ren, trace)
        out = _norm_goal(f.right, ren, trace)
        for c in reversed(clauses):
            out = Implies(c.to_formula(), out)
        if len(clauses) != 1:
            trace.append(f"assumption position rewritten into {len(clauses)} nested implication(s)")
        return out
    raise TransformError(
        f"universal goal not eliminated by Herbrandization: {to_text(f)}")


def normalize_clauses(assumptions, trace: Optional[list] = None) -> List[Formula]:
    """Rewrite eigenvariable-free assumptions into reduced clauses,
    classically equivalent as a set to the input. Raises TransformError
    (with the offending subformula) for inputs outside the wide grammar."""
    trace = trace if trace is not None else []
    out = []
    for f in assumptions:
        frag = fragments.classify(f, "assumption", "section3")
        if not frag.ok:
            raise TransformError(
                f"assumption outside the supported fragment: "
                f"{to_text(frag.offender)} at {frag.polarity.value} polarity",
                fragment=frag)
        ren = _Renamer(_used_names(f))
        for c in _norm_d(f, ren, trace):
            formula = c.to_formula()
            got = fragments.classify(formula, "assumption", "section5")
            if not got.ok:
                raise TransformError(
                    f"internal: normalization produced a non-clause {to_text(formula)}")
            out.append(formula)
    return out


def normalize_goal(g: Formula, trace: Optional[list] = None) -> Formula:
    """Rewrite an eigenvariable-free goal into the reduced goal grammar."""
    trace = trace if trace is not None else []
    frag = fragments.classify(g, "goal", "section3")
    if not frag.ok:
        raise TransformError(
            f"goal outside the supported fragment: "
            f"{to_text(frag.offender)} at {frag.polarity.value} polarity",
            fragment=frag)
    ren = _Renamer(_used_names(g))
    out = _norm_goal(g, ren, trace)
    got = fragments.classify(out, "goal", "section5")
    if not got.ok:
        raise TransformError(f"internal: normalization produced a non-goal {to_text(out)}")
    return out


def normalize_problem(antecedent, succedent: Formula,
                      herbrandization: bool = True) -> NormalizedProblem:
    """Full pipeline: Herbrandize, then clause-normalize assumptions and
    goal. With herbrandization disabled (test hook), inputs outside the
    wide fragment are rejected instead of repaired."""
    trace: list = []
    antecedent = [expand_negations(f) for f in antecedent]
    succedent = expand_negations(succedent)
    if herbrandization:
        ant, succ, ext = herbrandize(antecedent, succedent)
        for name, arity, origin in ext.entries:
            trace.append(f"herbrandize: fresh {name}/{arity} at {origin}")
    else:
        ant, succ, ext = list(antecedent), succedent, HerbrandSignatureExtension()
    clauses = normalize_clauses(ant, trace)
    goal = normalize_goal(succ, trace)
    for c in clauses:
        trace.append(f"clause: {to_text(c)}")
    trace.append(f"goal: {to_text(goal)}")
    return NormalizedProblem(tuple(clauses), goal, ext, tuple(trace))
