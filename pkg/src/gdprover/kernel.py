"""Sequent/proof-tree data model and rule-by-rule proof checkers.

Disciplines:
  c        unrestricted classical derivations (multiset succedents)
  i        single-succedent derivations
  uniform  i + every non-atomic succedent introduced by its own connective
  ig       i + the goal-relativized rules OrLG/ResG, OrL forbidden,
           eigenvariable proviso strengthened to exclude goal constants
  og       ig + the uniformity condition
  reduced  Restart/Atomic/Backchain + right rules + axioms on true only

AllL and AndL are checked in their contraction-absorbing printed forms
(the principal formula is retained in the premise); the plain consuming
forms are additionally accepted under discipline c for hand-entered
classical proofs. Cut is not a checkable rule — it is admissible only —
and trees containing it are rejected with a dedicated violation.

Multiset comparisons are up to bound-variable renaming. OrLG accepts both
orientations (goal continues with the left or the right disjunct); the
mirrored form is derivable by the same argument that derives the printed
one, and clause-instance head sets are unordered anyway.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .syntax import (
    And, Atom, BOT, Bot, Const, Exists, Forall, Formula, Implies, MetaVar,
    Or, Term, Top, TOP, alpha_key, constants_of, flatten_or, substitute,
    to_text,
)

# rule names ----------------------------------------------------------------

AXIOM = "Axiom"
CONTR_L = "ContrL"
CONTR_R = "ContrR"
BOT_R = "BotR"
AND_L = "AndL"
AND_R = "AndR"
OR_L = "OrL"
OR_R_LEFT = "OrR_left"
OR_R_RIGHT = "OrR_right"
IMP_L = "ImpL"
IMP_R = "ImpR"
ALL_L = "AllL"
ALL_R = "AllR"
EX_L = "ExL"
EX_R = "ExR"
OR_L_G = "OrLG"
RES_G = "ResG"
RESTART = "Restart"
ATOMIC = "Atomic"
BACKCHAIN = "Backchain"

FIG1_RULES = frozenset({
    AXIOM, CONTR_L, CONTR_R, BOT_R, AND_L, AND_R, OR_L, OR_R_LEFT,
    OR_R_RIGHT, IMP_L, IMP_R, ALL_L, ALL_R, EX_L, EX_R,
})
REDUCED_RULES = frozenset({
    AXIOM, RESTART, ATOMIC, BACKCHAIN, OR_R_LEFT, OR_R_RIGHT, AND_R,
    IMP_R, EX_R,
})
RULE_NAMES = FIG1_RULES | {OR_L_G, RES_G, RESTART, ATOMIC, BACKCHAIN}

DISCIPLINES = ("c", "i", "uniform", "ig", "og", "reduced")


@dataclass(frozen=True)
class Sequent:
    antecedent: Tuple[Formula, ...]
    succedent: Tuple[Formula, ...]

    def __repr__(self):
        lhs = ", ".join(to_text(f) for f in self.antecedent)
        rhs = ", ".join(to_text(f) for f in self.succedent)
        return f"[{lhs} --> {rhs}]"


def seq(antecedent, succedent) -> Sequent:
    return Sequent(tuple(antecedent), tuple(succedent))


@dataclass(frozen=True)
class Instance:
    """A ground clause-instance pair as recorded in Atomic/Backchain nodes:
    optional body G', the head list, the index of the consumed head, and
    the terms instantiating the clause's universal prefix."""
    body: Optional[Formula]
    heads: Tuple[Formula, ...]
    used: int
    terms: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    premises: Tuple["ProofTree", ...] = ()
    principal: Optional[int] = None
    witness: Optional[Term] = None
    eigen: Optional[str] = None
    instance: Optional[Instance] = None

    def count_rules(self) -> Counter:
        c = Counter([self.rule])
        for p in self.premises:
            c += p.count_rules()
        return c

    def sequent_count(self) -> int:
        return 1 + sum(p.sequent_count() for p in self.premises)


@dataclass
class CheckReport:
    ok: bool
    violations: List[Tuple[str, str, str]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


# multiset helpers ------------------------------------------------------------

def _ms(fs) -> Counter:
    return Counter(alpha_key(f) for f in fs)


def _ms_eq(fs1, fs2) -> bool:
    return _ms(fs1) == _ms(fs2)


def _plus(counter: Counter, *fs) -> Counter:
    out = Counter(counter)
    for f in fs:
        out[alpha_key(f)] += 1
    return out


def _minus(counter: Counter, *fs):
    out = Counter(counter)
    for f in fs:
        k = alpha_key(f)
        if out[k] <= 0:
            return None
        out[k] -= 1
        if out[k] == 0:
            del out[k]
    return out


def is_axiom(s: Sequent) -> bool:
    """True iff true occurs in the succedent, or some atomic formula or
    false occurs on both sides."""
    if any(isinstance(f, Top) for f in s.succedent):
        return True
    left = {alpha_key(f) for f in s.antecedent if isinstance(f, (Atom, Bot))}
    return any(alpha_key(f) in left
               for f in s.succedent if isinstance(f, (Atom, Bot)))


# clause-instance matching -----------------------------------------------------

def _match_term(pat: Term, tgt: Term, env: dict, binders: dict):
    if isinstance(pat, MetaVar):
        if pat.id in env:
            return env[pat.id] == tgt
        env[pat.id] = tgt
        return True
    if type(pat) is not type(tgt):
        return False
    if hasattr(pat, "name"):  # Var/Const
        if pat.name in binders:
            return binders[pat.name] == getattr(tgt, "name", None)
        return pat.name == tgt.name
    # App
    if pat.fn != tgt.fn or len(pat.args) != len(tgt.args):
        return False
    return all(_match_term(p, t, env, binders) for p, t in zip(pat.args, tgt.args))


def _match_formula(pat: Formula, tgt: Formula, env: dict, binders: dict):
    if isinstance(pat, (Top, Bot)):
        return type(pat) is type(tgt)
    if isinstance(pat, Atom):
        return (isinstance(tgt, Atom) and pat.pred == tgt.pred
                and len(pat.args) == len(tgt.args)
                and all(_match_term(p, t, env, binders)
                        for p, t in zip(pat.args, tgt.args)))
    if isinstance(pat, (And, Or, Implies)):
        return (type(pat) is type(tgt)
                and _match_formula(pat.left, tgt.left, env, binders)
                and _match_formula(pat.right, tgt.right, env, binders))
    if isinstance(pat, (Exists, Forall)):
        if type(pat) is not type(tgt):
            return False
        binders2 = dict(binders)
        binders2[pat.var] = tgt.var
        return _match_formula(pat.body, tgt.body, env, binders2)
    return False


def clause_pattern(clause: Formula):
    """Strip the universal prefix into fresh holes; return
    (hole ids in prefix order, body pattern or None, head pattern list)."""
    holes = []
    core = clause
    counter = itertools.count()
    while isinstance(core, Forall):
        hole = MetaVar(-1000 - next(counter))
        holes.append(hole.id)
        core = substitute(core.body, core.var, hole)
    if isinstance(core, Implies):
        return holes, core.left, flatten_or(core.right)
    return holes, None, flatten_or(core)


def instance_of_clause(clause: Formula, inst: Instance) -> bool:
    """Does instantiating the clause's universal prefix yield this pair?
    Heads are matched as unordered collections (Definition-style sets)."""
    holes, body_pat, head_pats = clause_pattern(clause)
    if (body_pat is None) != (inst.body is None):
        return False
    if len(head_pats) != len(inst.heads):
        return False

    def assign(i, env, used):
        if i == len(head_pats):
            if body_pat is not None:
                env2 = dict(env)
                return _match_formula(body_pat, inst.body, env2, {})
            return True
        for j, h in enumerate(inst.heads):
            if j in used:
                continue
            env2 = dict(env)
            if _match_formula(head_pats[i], h, env2, {}):
                if assign(i + 1, env2, used | {j}):
                    return True
        return False

    return assign(0, {}, frozenset())


def instance_in_antecedent(antecedent, inst: Instance) -> bool:
    return any(instance_of_clause(k, inst) for k in antecedent)


# schema validators -----------------------------------------------------------

class _Ctx:
    def __init__(self, discipline: str, goal: Optional[Formula]):
        self.discipline = discipline
        self.goal = goal
        self.violations: List[Tuple[str, str, str]] = []

    def bad(self, path: str, rule: str, reason: str):
        self.violations.append((path, rule, reason))


def _principal_candidates(node: ProofTree, side: str, want):
    fs = node.conclusion.antecedent if side == "ant" else node.conclusion.succedent
    if node.principal is not None:
        if 0 <= node.principal < len(fs) and isinstance(fs[node.principal], want):
            return [node.principal]
        return []
    seen = set()
    out = []
    for i, f in enumerate(fs):
        if isinstance(f, want):
            k = alpha_key(f)
            if k not in seen:
                seen.add(k)
                out.append(i)
    return out


def _check_node(node: ProofTree, path: str, ctx: _Ctx):
    rule = node.rule
    c = node.conclusion
    P = node.premises
    d = ctx.discipline

    if rule == "Cut":
        ctx.bad(path, rule, "cut is admissible, not a checkable rule")
        return
    if rule not in RULE_NAMES:
        ctx.bad(path, rule, f"unknown rule {rule!r}")
        return

    allowed = {
        "c": FIG1_RULES,
        "i": FIG1_RULES,
        "uniform": FIG1_RULES,
        "ig": (FIG1_RULES - {OR_L}) | {OR_L_G, RES_G},
        "og": (FIG1_RULES - {OR_L}) | {OR_L_G, RES_G},
        "reduced": REDUCED_RULES,
    }[d]
    if rule not in allowed:
        ctx.bad(path, rule, f"rule not available under discipline {d!r}")
        return

    if d != "c" and len(c.succedent) != 1:
        ctx.bad(path, rule, f"{len(c.succedent)} formulas in succedent "
                            f"(discipline {d!r} requires exactly one)")
        return

    if d in ("uniform", "og"):
        f = c.succedent[0]
        intro = {And: (AND_R,), Or: (OR_R_LEFT, OR_R_RIGHT),
                 Implies: (IMP_R,), Exists: (EX_R,), Forall: (ALL_R,)}
        need = intro.get(type(f))
        if need is not None and rule not in need:
            ctx.bad(path, rule,
                    f"succedent {to_text(f)} is non-atomic but rule is {rule}")
            return

    handler = _HANDLERS.get(rule)
    reason = handler(node, ctx)
    if reason is not None:
        ctx.bad(path, rule, reason)


def _arity(node, n):
    if len(node.premises) != n:
        return f"expected {n} premise(s), found {len(node.premises)}"
    return None


def _v_axiom(node, ctx):
    bad = _arity(node, 0)
    if bad:
        return bad
    if ctx.discipline == "reduced":
        if len(node.conclusion.succedent) == 1 and \
                isinstance(node.conclusion.succedent[0], Top):
            return None
        return "reduced axioms conclude true only"
    if not is_axiom(node.conclusion):
        return "sequent is not an axiom"
    return None


def _v_contr_l(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.succedent, p.succedent):
        return "succedents differ"
    for i in _principal_candidates(node, "ant", (Top, Bot, Atom, And, Or, Implies, Exists, Forall)):
        if _ms(p.antecedent) == _plus(_ms(c.antecedent), c.antecedent[i]):
            return None
    return "premise antecedent is not the conclusion's plus one duplicate"


def _v_contr_r(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    for i in _principal_candidates(node, "succ", (Top, Bot, Atom, And, Or, Implies, Exists, Forall)):
        if _ms(p.succedent) == _plus(_ms(c.succedent), c.succedent[i]):
            return None
    return "premise succedent is not the conclusion's plus one duplicate"


def _v_bot_r(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    for i in _principal_candidates(node, "succ", (Top, Bot, Atom, And, Or, Implies, Exists, Forall)):
        rest = _minus(_ms(c.succedent), c.succedent[i])
        if rest is not None and _ms(p.succedent) == _plus(rest, BOT):
            return None
    return "premise succedent must replace one formula by false"


def _v_and_l(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.succedent, p.succedent):
        return "succedents differ"
    pa, ca = _ms(p.antecedent), _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", And):
        f = c.antecedent[i]
        if pa == _plus(ca, f.left, f.right):
            return None
        if ctx.discipline == "c":
            rest = _minus(ca, f)
            if rest is not None and pa == _plus(rest, f.left, f.right):
                return None
    return "premise does not add both conjuncts (absorbing form)"


def _v_and_r(node, ctx):
    bad = _arity(node, 2)
    if bad:
        return bad
    c = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    if not (_ms_eq(c.antecedent, p1.antecedent) and _ms_eq(c.antecedent, p2.antecedent)):
        return "antecedents differ"
    cs = _ms(c.succedent)
    for i in _principal_candidates(node, "succ", And):
        f = c.succedent[i]
        rest = _minus(cs, f)
        if rest is None:
            continue
        if _ms(p1.succedent) == _plus(rest, f.left) and \
                _ms(p2.succedent) == _plus(rest, f.right):
            return None
    return "premises do not split the conjunction"


def _v_or_l(node, ctx):
    bad = _arity(node, 2)
    if bad:
        return bad
    c = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    if not (_ms_eq(c.succedent, p1.succedent) and _ms_eq(c.succedent, p2.succedent)):
        return "succedents differ"
    ca = _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", Or):
        f = c.antecedent[i]
        rest = _minus(ca, f)
        if rest is None:
            continue
        if _ms(p1.antecedent) == _plus(rest, f.left) and \
                _ms(p2.antecedent) == _plus(rest, f.right):
            return None
    return "premises do not case-split the disjunction"


def _v_or_r(which):
    def v(node, ctx):
        bad = _arity(node, 1)
        if bad:
            return bad
        c, p = node.conclusion, node.premises[0].conclusion
        if not _ms_eq(c.antecedent, p.antecedent):
            return "antecedents differ"
        cs = _ms(c.succedent)
        for i in _principal_candidates(node, "succ", Or):
            f = c.succedent[i]
            rest = _minus(cs, f)
            if rest is None:
                continue
            kept = f.left if which == "left" else f.right
            if _ms(p.succedent) == _plus(rest, kept):
                return None
        return f"premise does not keep the {which} disjunct"
    return v


def _v_imp_l(node, ctx):
    bad = _arity(node, 2)
    if bad:
        return bad
    c = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    ca = _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", Implies):
        f = c.antecedent[i]
        if _ms(p1.antecedent) != ca:
            continue
        rest = _minus(ca, f)
        if rest is None or _ms(p2.antecedent) != _plus(rest, f.right):
            continue
        delta1 = _minus(_ms(p1.succedent), f.left)
        if delta1 is None:
            continue
        if delta1 + _ms(p2.succedent) == _ms(c.succedent):
            return None
    return "premises do not fit the implication-left schema"


def _v_imp_r(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    cs = _ms(c.succedent)
    for i in _principal_candidates(node, "succ", Implies):
        f = c.succedent[i]
        rest = _minus(cs, f)
        if rest is None:
            continue
        if _ms(p.antecedent) == _plus(_ms(c.antecedent), f.left) and \
                _ms(p.succedent) == _plus(rest, f.right):
            return None
    return "premise does not move the hypothesis left"


def _v_all_l(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.succedent, p.succedent):
        return "succedents differ"
    pa, ca = _ms(p.antecedent), _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", Forall):
        f = c.antecedent[i]
        if node.witness is not None:
            inst = substitute(f.body, f.var, node.witness)
            if pa == _plus(ca, inst):
                return None
            if ctx.discipline == "c":
                rest = _minus(ca, f)
                if rest is not None and pa == _plus(rest, inst):
                    return None
            continue
        # infer the witness from the added formula
        added = _counter_diff_formula(p.antecedent, ca)
        if added is not None and _match_instance(f, added):
            return None
        if ctx.discipline == "c":
            rest = _minus(ca, f)
            if rest is not None:
                added = _counter_diff_formula(p.antecedent, rest)
                if added is not None and _match_instance(f, added):
                    return None
    return "premise does not add an instance of the quantified formula"


def _counter_diff_formula(fs, base: Counter):
    """The single formula of fs whose multiset exceeds base, if exactly one."""
    need = dict(base)
    extra = []
    for f in fs:
        k = alpha_key(f)
        if need.get(k, 0) > 0:
            need[k] -= 1
        else:
            extra.append(f)
    if len(extra) == 1 and all(v == 0 for v in need.values()):
        return extra[0]
    return None


def _match_instance(binder, added: Formula) -> bool:
    hole = MetaVar(-999999)
    pat = substitute(binder.body, binder.var, hole)
    env: dict = {}
    return _match_formula(pat, added, env, {})


def _v_ex_r(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    cs = _ms(c.succedent)
    for i in _principal_candidates(node, "succ", Exists):
        f = c.succedent[i]
        rest = _minus(cs, f)
        if rest is None:
            continue
        if node.witness is not None:
            inst = substitute(f.body, f.var, node.witness)
            if _ms(p.succedent) == _plus(rest, inst):
                return None
            continue
        added = _counter_diff_formula(p.succedent, rest)
        if added is not None and _match_instance(f, added):
            return None
    return "premise does not replace the existential with an instance"


def _eigen_ok(node, ctx):
    e = node.eigen
    if e is None:
        return "eigenvariable not recorded"
    used = set()
    for f in node.conclusion.antecedent + node.conclusion.succedent:
        used |= constants_of(f)
    if ctx.discipline in ("ig", "og") and ctx.goal is not None:
        used |= constants_of(ctx.goal)
    if e in used:
        return (f"eigenvariable {e} appears in the lower sequent"
                + (" or the goal" if ctx.discipline in ("ig", "og") else ""))
    return None


def _v_ex_l(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.succedent, p.succedent):
        return "succedents differ"
    e = _eigen_ok(node, ctx)
    if e is not None:
        return e
    ca = _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", Exists):
        f = c.antecedent[i]
        rest = _minus(ca, f)
        if rest is None:
            continue
        inst = substitute(f.body, f.var, Const(node.eigen))
        if _ms(p.antecedent) == _plus(rest, inst):
            return None
    return "premise does not replace the existential by the eigen constant"


def _v_all_r(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    e = _eigen_ok(node, ctx)
    if e is not None:
        return e
    cs = _ms(c.succedent)
    for i in _principal_candidates(node, "succ", Forall):
        f = c.succedent[i]
        rest = _minus(cs, f)
        if rest is None:
            continue
        inst = substitute(f.body, f.var, Const(node.eigen))
        if _ms(p.succedent) == _plus(rest, inst):
            return None
    return "premise does not replace the universal by the eigen constant"


def _v_or_l_g(node, ctx):
    bad = _arity(node, 2)
    if bad:
        return bad
    if ctx.goal is None:
        return "OrLG requires a goal"
    c = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    F = c.succedent[0]
    G = ctx.goal
    ca = _ms(c.antecedent)
    for i in _principal_candidates(node, "ant", Or):
        f = c.antecedent[i]
        rest = _minus(ca, f)
        if rest is None:
            continue
        if _ms(p1.antecedent) != _plus(rest, f.left) or \
                _ms(p2.antecedent) != _plus(rest, f.right):
            continue
        # printed orientation: left continues with F, right restarts to G
        if _ms_eq(p1.succedent, [F]) and _ms_eq(p2.succedent, [G]):
            return None
        # mirrored orientation
        if _ms_eq(p1.succedent, [G]) and _ms_eq(p2.succedent, [F]):
            return None
    return "premises do not fit either OrLG orientation"


def _v_res_g(node, ctx):
    bad = _arity(node, 1)
    if bad:
        return bad
    if ctx.goal is None:
        return "ResG requires a goal"
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    if not _ms_eq(p.succedent, [ctx.goal]):
        return "premise succedent is not the goal"
    return None


def _reduced_goal_c(node):
    f = node.conclusion.succedent[0]
    if isinstance(f, (Atom, Bot)):
        return None
    return f"conclusion goal {to_text(f)} is neither atomic nor false"


def _v_restart(node, ctx):
    bad = _arity(node, 1) or _reduced_goal_c(node)
    if bad:
        return bad
    c, p = node.conclusion, node.premises[0].conclusion
    if not _ms_eq(c.antecedent, p.antecedent):
        return "antecedents differ"
    if not _ms_eq(p.succedent, [ctx.goal]):
        return "premise succedent is not the goal"
    return None


def _check_spawned(node, ctx, premises):
    """Remainder premises: each adds one leftover head and re-attacks G."""
    inst = node.instance
    rest_heads = [h for j, h in enumerate(inst.heads) if j != inst.used]
    if len(premises) != len(rest_heads):
        return (f"expected {len(rest_heads)} remainder premise(s), "
                f"found {len(premises)}")
    ca = _ms(node.conclusion.antecedent)
    for h, p in zip(rest_heads, premises):
        if _ms(p.conclusion.antecedent) != _plus(ca, h):
            return f"remainder premise does not add head {to_text(h)}"
        if not _ms_eq(p.conclusion.succedent, [ctx.goal]):
            return "remainder premise succedent is not the goal"
    return None


def _v_atomic(node, ctx):
    bad = _reduced_goal_c(node)
    if bad:
        return bad
    inst = node.instance
    if inst is None or inst.body is not None:
        return "Atomic requires a bodiless clause instance"
    bad = _instance_shape(inst)
    if bad:
        return bad
    C = node.conclusion.succedent[0]
    consumed = inst.heads[inst.used]
    if not (isinstance(consumed, Bot) or alpha_key(consumed) == alpha_key(C)):
        return (f"consumed head {to_text(consumed)} matches neither the goal "
                f"{to_text(C)} nor false")
    if not instance_in_antecedent(node.conclusion.antecedent, inst):
        return "instance is not generated by any antecedent clause"
    return _check_spawned(node, ctx, node.premises)


def _v_backchain(node, ctx):
    bad = _reduced_goal_c(node)
    if bad:
        return bad
    inst = node.instance
    if inst is None or inst.body is None:
        return "Backchain requires a clause instance with a body"
    bad = _instance_shape(inst)
    if bad:
        return bad
    C = node.conclusion.succedent[0]
    consumed = inst.heads[inst.used]
    if not (isinstance(consumed, Bot) or alpha_key(consumed) == alpha_key(C)):
        return (f"consumed head {to_text(consumed)} matches neither the goal "
                f"{to_text(C)} nor false")
    if not instance_in_antecedent(node.conclusion.antecedent, inst):
        return "instance is not generated by any antecedent clause"
    if not node.premises:
        return "missing body premise"
    body_p = node.premises[0].conclusion
    if not _ms_eq(body_p.antecedent, node.conclusion.antecedent):
        return "body premise antecedent differs"
    if not _ms_eq(body_p.succedent, [inst.body]):
        return "body premise succedent is not the clause body"
    return _check_spawned(node, ctx, node.premises[1:])


def _instance_shape(inst: Instance):
    if not inst.heads:
        return "instance has no heads"
    if not (0 <= inst.used < len(inst.heads)):
        return "consumed head index out of range"
    for h in inst.heads:
        if not isinstance(h, (Atom, Top, Bot)):
            return f"instance head {to_text(h)} is not atomic/true/false"
    return None


_HANDLERS = {
    AXIOM: _v_axiom,
    CONTR_L: _v_contr_l,
    CONTR_R: _v_contr_r,
    BOT_R: _v_bot_r,
    AND_L: _v_and_l,
    AND_R: _v_and_r,
    OR_L: _v_or_l,
    OR_R_LEFT: _v_or_r("left"),
    OR_R_RIGHT: _v_or_r("right"),
    IMP_L: _v_imp_l,
    IMP_R: _v_imp_r,
    ALL_L: _v_all_l,
    ALL_R: _v_all_r,
    EX_L: _v_ex_l,
    EX_R: _v_ex_r,
    OR_L_G: _v_or_l_g,
    RES_G: _v_res_g,
    RESTART: _v_restart,
    ATOMIC: _v_atomic,
    BACKCHAIN: _v_backchain,
}


def check(tree: ProofTree, discipline: str, goal: Optional[Formula] = None) -> CheckReport:
    """Validate every node of the tree against the discipline's rule
    schemata. Violations are collected, not raised."""
    if discipline not in DISCIPLINES:
        raise ValueError(f"unknown discipline {discipline!r}")
    if discipline in ("ig", "og", "reduced") and goal is None:
        raise ValueError(f"discipline {discipline!r} requires a goal formula")
    ctx = _Ctx(discipline, goal)

    def walk(node, path):
        _check_node(node, path, ctx)
        for i, p in enumerate(node.premises):
            walk(p, f"{path}.{i}")

    walk(tree, "root")
    return CheckReport(ok=not ctx.violations, violations=ctx.violations)
