"""Goal-directed proof search in the reduced proof system.

Complex goals are simplified by their top connective; atomic (or false)
goals are attacked by ATOMIC (bodiless clause instance; one head is
consumed by unifying with the goal or by being false, the leftover heads
each spawn a re-attack of the top goal), BACKCHAIN (same with a clause
body proved first) and RESTART (re-attack the top goal), in that order.
Universal clause prefixes are instantiated lazily with metavariables and
unification. Search is depth-first with backtracking, bounded by the
number of sequents in the proof under iterative deepening, with a
branch-local repeated-sequent prune (clause set modulo multiplicity plus
current goal, under the current substitution).

expand_to_og rewrites a found proof into the goal-relativized calculus:
Restart becomes ResG, Atomic/Backchain become AllL/ContrL/ImpL bookkeeping
over an OrLG chain, and multi-atom leftover branches are embedded into the
restart subproof of their leftmost atom, splitting at the point where that
atom's unit clause is consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from . import fragments
from .kernel import (
    ALL_L, AND_R, ATOMIC, AXIOM, BACKCHAIN, BOT_R, CONTR_L, EX_R, IMP_L,
    IMP_R, OR_L_G, OR_R_LEFT, OR_R_RIGHT, RES_G, RESTART, Instance,
    ProofTree, Sequent, seq,
)
from .syntax import (
    And, App, Atom, BOT, Bot, Const, Exists, Forall, Formula, Implies,
    MetaVar, Or, Term, Top, Var, alpha_key, flatten_or, metavars_of,
    substitute, term_to_text, to_text,
)

WITNESS_DEFAULT = Const("_w0")


class EngineInputError(ValueError):
    """Input not in the reduced syntax."""


# --- substitutions and unification -----------------------------------------

class Substitution:
    """Immutable metavariable binding map; extension copies.

    Bindings are stored as written and resolved by walking, so the public
    `resolved()` view is idempotent: applying it twice equals applying it
    once, and the occurs check in unify keeps it acyclic.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: Optional[dict] = None):
        self._map = dict(mapping) if mapping else {}

    def __len__(self):
        return len(self._map)

    def __contains__(self, mid: int):
        return mid in self._map

    def __eq__(self, other):
        return isinstance(other, Substitution) and self._map == other._map

    def __repr__(self):
        inside = ", ".join(f"?{k} -> {term_to_text(v)}" for k, v in sorted(self._map.items()))
        return f"{{{inside}}}"

    def as_dict(self) -> dict:
        return dict(self._map)

    def bind(self, mid: int, term: Term) -> "Substitution":
        out = Substitution(self._map)
        out._map[mid] = term
        return out

    def walk(self, t: Term) -> Term:
        while isinstance(t, MetaVar) and t.id in self._map:
            t = self._map[t.id]
        return t

    def resolve(self, t: Term) -> Term:
        t = self.walk(t)
        if isinstance(t, App):
            return App(t.fn, tuple(self.resolve(a) for a in t.args))
        return t

    def apply(self, f: Formula) -> Formula:
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(self.resolve(a) for a in f.args))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(self.apply(f.left), self.apply(f.right))
        if isinstance(f, (Exists, Forall)):
            return type(f)(f.var, self.apply(f.body))
        return f

    def resolved(self) -> "Substitution":
        return Substitution({mid: self.resolve(MetaVar(mid)) for mid in self._map})

    def is_idempotent(self) -> bool:
        for v in self._map.values():
            if any(m in self._map for m in _term_mvs(v)):
                return False
        return True


EMPTY_SUBST = Substitution()


def _term_mvs(t: Term) -> set:
    if isinstance(t, MetaVar):
        return {t.id}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= _term_mvs(a)
        return out
    return set()


def _occurs(mid: int, t: Term, s: Substitution) -> bool:
    t = s.walk(t)
    if isinstance(t, MetaVar):
        return t.id == mid
    if isinstance(t, App):
        return any(_occurs(mid, a, s) for a in t.args)
    return False


def _unify_term(a: Term, b: Term, s: Substitution) -> Optional[Substitution]:
    a = s.walk(a)
    b = s.walk(b)
    if isinstance(a, MetaVar) and isinstance(b, MetaVar) and a.id == b.id:
        return s
    if isinstance(a, MetaVar):
        return None if _occurs(a.id, b, s) else s.bind(a.id, b)
    if isinstance(b, MetaVar):
        return None if _occurs(b.id, a, s) else s.bind(b.id, a)
    if type(a) is not type(b):
        return None
    if isinstance(a, (Const, Var)):
        return s if a.name == b.name else None
    if isinstance(a, App):
        if a.fn != b.fn or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            s = _unify_term(x, y, s)
            if s is None:
                return None
        return s
    return None


def unify(a, b, s: Substitution = EMPTY_SUBST) -> Optional[Substitution]:
    """Most general extension of s unifying two terms or two atoms
    (true/false unify with themselves only); None on failure."""
    if isinstance(a, (Top, Bot)) or isinstance(b, (Top, Bot)):
        return s if type(a) is type(b) else None
    if isinstance(a, Atom) and isinstance(b, Atom):
        if a.pred != b.pred or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            s = _unify_term(x, y, s)
            if s is None:
                return None
        return s
    if isinstance(a, Atom) or isinstance(b, Atom):
        return None
    return _unify_term(a, b, s)


# --- clause instance schemas -------------------------------------------------

@dataclass(frozen=True)
class ClauseInstanceSchema:
    """The pair-of-sets view of a clause, with the universal prefix left
    open as metavariables for unification."""
    body: Optional[Formula]
    heads: Tuple[Formula, ...]
    open_vars: Tuple[int, ...]


def _schema_of(clause: Formula, next_id) -> ClauseInstanceSchema:
    mvs: List[int] = []
    core = clause
    while isinstance(core, Forall):
        mv = MetaVar(next_id())
        mvs.append(mv.id)
        core = substitute(core.body, core.var, mv)
    if isinstance(core, Implies):
        return ClauseInstanceSchema(core.left, tuple(flatten_or(core.right)), tuple(mvs))
    return ClauseInstanceSchema(None, tuple(flatten_or(core)), tuple(mvs))


def instances(clauses) -> List[ClauseInstanceSchema]:
    """One schema per clause; rejects clauses outside the reduced grammar."""
    for c in clauses:
        frag = fragments.classify(c, "assumption", "section5")
        if not frag.ok:
            raise EngineInputError(
                f"not a reduced clause: {to_text(c)} "
                f"(offender {to_text(frag.offender)})")
    counter = iter(range(1, 10 ** 9))
    return [_schema_of(c, lambda: next(counter)) for c in clauses]


# --- search configuration and results ----------------------------------------

def _default_schedule(max_sequents: int) -> Tuple[int, ...]:
    out = []
    step = 25
    while step < max_sequents:
        out.append(step)
        step *= 2
    out.append(max_sequents)
    return tuple(out)


@dataclass(frozen=True)
class SearchConfig:
    max_sequents: int = 200
    deepening_schedule: Optional[Tuple[int, ...]] = None
    restart_enabled: bool = True
    clause_order: str = "input"       # "input" | "indexed-by-head"
    head_order: str = "left-to-right"

    def __post_init__(self):
        if self.max_sequents < 1:
            raise ValueError("max_sequents must be positive")
        if self.clause_order not in ("input", "indexed-by-head"):
            raise ValueError(f"unknown clause_order {self.clause_order!r}")
        if self.head_order != "left-to-right":
            raise ValueError("head_order is fixed to left-to-right")
        if self.deepening_schedule is not None:
            sched = tuple(self.deepening_schedule)
            if any(b <= a for a, b in zip(sched, sched[1:])):
                raise ValueError("deepening_schedule must be strictly increasing")
            if not sched or sched[-1] != self.max_sequents:
                raise ValueError("deepening_schedule must end at max_sequents")

    def schedule(self) -> Tuple[int, ...]:
        if self.deepening_schedule is not None:
            return tuple(self.deepening_schedule)
        return _default_schedule(self.max_sequents)


@dataclass
class SearchStats:
    rules: Dict[str, int] = field(default_factory=dict)
    sequents_in_proof: int = 0
    nodes_expanded: int = 0
    rungs_tried: int = 0
    exhaustive: bool = False   # final rung exhausted without hitting the bound


@dataclass
class SearchResult:
    status: str                  # "proved" | "exhausted-at-bound"
    proof: Optional[ProofTree]
    final_subst: Substitution
    stats: SearchStats


PROVED = "proved"
EXHAUSTED = "exhausted-at-bound"


# --- the search --------------------------------------------------------------

_INF = float("inf")
_MISSING = object()


class _Search:
    def __init__(self, clauses, goal: Formula, config: SearchConfig):
        self.top_goal = goal
        self.config = config
        self.clauses0 = tuple(clauses)
        self.mv_next = 0
        self.nodes_expanded = 0
        self.bound_hit = False
        # failure table: state key -> None (unprovable outright) or the
        # largest budget known to fail; valid only for metavariable-free
        # states whose exploration was not cut off by an ancestor repeat
        self.fail_cache: dict = {}
        self.prune_low = _INF
        self.sub_bound_hit = False
        self._mv_free: dict = {}

    def fresh_mv(self) -> MetaVar:
        self.mv_next += 1
        return MetaVar(self.mv_next)

    def _schema(self, clause: Formula) -> ClauseInstanceSchema:
        return _schema_of(clause, lambda: self.fresh_mv().id)

    def _key_formula(self, f: Formula, s: Substitution):
        free = self._mv_free.get(f)
        if free is None:
            free = not metavars_of(f)
            self._mv_free[f] = free
        if free:
            return alpha_key(f), False
        g = s.apply(f)
        return alpha_key(g), bool(metavars_of(g))

    def _branch_key(self, goal, clauses, s):
        gk, mv = self._key_formula(goal, s)
        ck = set()
        for c in clauses:
            k, m = self._key_formula(c, s)
            ck.add(k)
            mv = mv or m
        return (gk, frozenset(ck)), mv

    def _candidate_indices(self, clauses, goal, s):
        order = range(len(clauses))
        if self.config.clause_order != "indexed-by-head":
            return list(order)
        goal_r = s.apply(goal)
        out = []
        for i in order:
            core = _strip_forall(clauses[i])
            heads = flatten_or(core.right if isinstance(core, Implies) else core)
            for h in heads:
                if isinstance(h, Bot):
                    out.append(i)
                    break
                if isinstance(h, Atom) and isinstance(goal_r, Atom) and h.pred == goal_r.pred:
                    out.append(i)
                    break
        return out

    def solve(self, goal: Formula, clauses: tuple, s: Substitution,
              budget: int, seen: dict, depth: int = 0) -> Iterator:
        """Yields (proof tree, substitution, leftover budget); the tree's
        sequents still contain metavariables."""
        if budget < 1:
            self.bound_hit = True
            self.sub_bound_hit = True
            return
        key, has_mv = self._branch_key(goal, clauses, s)
        hit = seen.get(key)
        if hit is not None:
            if hit < self.prune_low:
                self.prune_low = hit
            return
        if not has_mv:
            cached = self.fail_cache.get(key, _MISSING)
            if cached is not _MISSING and (cached is None or budget <= cached):
                return
        seen2 = dict(seen)
        seen2[key] = depth
        self.nodes_expanded += 1

        if has_mv:
            yield from self._solve_cases(goal, clauses, s, budget, seen2, depth)
            return

        # metavariable-free: the outcome depends only on (state, budget),
        # so repeated yields that do not improve the leftover budget are
        # redundant and a completed no-yield run is a cacheable failure
        # (unless an ancestor repeat interfered from above this node).
        saved_low, self.prune_low = self.prune_low, _INF
        saved_bh, self.sub_bound_hit = self.sub_bound_hit, False
        try:
            yielded = False
            best_left = -1
            for item in self._solve_cases(goal, clauses, s, budget, seen2, depth):
                if item[2] > best_left:
                    best_left = item[2]
                    yielded = True
                    yield item
            if not yielded and self.prune_low >= depth:
                if not self.sub_bound_hit:
                    self.fail_cache[key] = None
                else:
                    old = self.fail_cache.get(key, _MISSING)
                    if old is _MISSING:
                        self.fail_cache[key] = budget
                    elif old is not None:
                        self.fail_cache[key] = max(old, budget)
        finally:
            if self.prune_low < saved_low:
                self.prune_low = min(saved_low, self.prune_low)
            else:
                self.prune_low = saved_low
            self.sub_bound_hit = saved_bh or self.sub_bound_hit

    def _solve_cases(self, goal, clauses, s, budget, seen, depth) -> Iterator:
        here = seq(clauses, [goal])
        d1 = depth + 1

        if isinstance(goal, Top):
            yield ProofTree(here, AXIOM), s, budget - 1
            return

        if isinstance(goal, And):
            for t1, s1, b1 in self.solve(goal.left, clauses, s, budget - 1, seen, d1):
                for t2, s2, b2 in self.solve(goal.right, clauses, s1, b1, seen, d1):
                    yield ProofTree(here, AND_R, (t1, t2), principal=0), s2, b2
            return

        if isinstance(goal, Or):
            for t1, s1, b1 in self.solve(goal.left, clauses, s, budget - 1, seen, d1):
                yield ProofTree(here, OR_R_LEFT, (t1,), principal=0), s1, b1
            for t1, s1, b1 in self.solve(goal.right, clauses, s, budget - 1, seen, d1):
                yield ProofTree(here, OR_R_RIGHT, (t1,), principal=0), s1, b1
            return

        if isinstance(goal, Implies):
            bigger = clauses + (goal.left,)
            for t1, s1, b1 in self.solve(goal.right, bigger, s, budget - 1, seen, d1):
                yield ProofTree(here, IMP_R, (t1,), principal=0), s1, b1
            return

        if isinstance(goal, Exists):
            mv = self.fresh_mv()
            body = substitute(goal.body, goal.var, mv)
            for t1, s1, b1 in self.solve(body, clauses, s, budget - 1, seen, d1):
                yield ProofTree(here, EX_R, (t1,), principal=0, witness=mv), s1, b1
            return

        # atomic or false goal
        order = self._candidate_indices(clauses, goal, s)
        for with_body in (False, True):
            for ci in order:
                schema = self._schema(clauses[ci])
                if (schema.body is not None) != with_body:
                    continue
                yield from self._try_clause(here, goal, clauses, ci, schema,
                                            s, budget, seen, depth)
        if self.config.restart_enabled:
            for t1, s1, b1 in self.solve(self.top_goal, clauses, s, budget - 1, seen, d1):
                yield ProofTree(here, RESTART, (t1,)), s1, b1

    def _try_clause(self, here, goal, clauses, ci, schema, s, budget, seen, depth):
        heads = schema.heads
        rule = ATOMIC if schema.body is None else BACKCHAIN
        for hi, h in enumerate(heads):
            matches = []
            s_c = unify(h, goal, s)
            if s_c is not None:
                matches.append(s_c)
            if isinstance(h, Bot) and not isinstance(goal, Bot):
                matches.append(s)  # falsehood-headed consumption
            for s0 in matches:
                items = []
                if schema.body is not None:
                    items.append((schema.body, clauses))
                for j, other in enumerate(heads):
                    if j != hi:
                        items.append((self.top_goal, clauses + (other,)))
                inst = Instance(schema.body, heads, hi,
                                tuple(MetaVar(m) for m in schema.open_vars))
                for trees, s1, b1 in self._conj(items, s0, budget - 1, seen, depth):
                    yield (ProofTree(here, rule, trees, principal=ci,
                                     instance=inst), s1, b1)

    def _conj(self, items, s, budget, seen, depth):
        if not items:
            yield (), s, budget
            return
        (g0, cl0) = items[0]
        for t0, s0, b0 in self.solve(g0, cl0, s, budget, seen, depth + 1):
            for rest, s1, b1 in self._conj(items[1:], s0, b0, seen, depth):
                yield (t0,) + rest, s1, b1

    def run(self) -> SearchResult:
        stats = SearchStats()
        found = None
        for rung in self.config.schedule():
            stats.rungs_tried += 1
            self.bound_hit = False
            self.sub_bound_hit = False
            self.prune_low = _INF
            for tree, s, _ in self.solve(self.top_goal, self.clauses0,
                                         EMPTY_SUBST, rung, {}):
                found = (tree, s)
                break
            if found is not None or not self.bound_hit:
                break
        stats.nodes_expanded = self.nodes_expanded
        if found is None:
            stats.exhaustive = not self.bound_hit
            return SearchResult(EXHAUSTED, None, EMPTY_SUBST, stats)
        tree, s = found
        final = _final_subst(tree, s)
        resolved = _resolve_tree(tree, final)
        counts = resolved.count_rules()
        stats.rules = {
            "Restart": counts.get(RESTART, 0),
            "Atomic": counts.get(ATOMIC, 0),
            "Backchain": counts.get(BACKCHAIN, 0),
            "OrR": counts.get(OR_R_LEFT, 0) + counts.get(OR_R_RIGHT, 0),
            "AndR": counts.get(AND_R, 0),
            "ImpR": counts.get(IMP_R, 0),
            "ExR": counts.get(EX_R, 0),
        }
        stats.sequents_in_proof = resolved.sequent_count()
        return SearchResult(PROVED, resolved, final, stats)


def _strip_forall(f: Formula) -> Formula:
    while isinstance(f, Forall):
        f = f.body
    return f


def _tree_metavars(tree: ProofTree) -> set:
    out = set()

    def on_seq(sq: Sequent):
        for f in sq.antecedent + sq.succedent:
            out.update(metavars_of(f))

    def walk(n: ProofTree):
        on_seq(n.conclusion)
        if n.witness is not None:
            out.update(_term_mvs(n.witness))
        if n.instance is not None:
            for t in n.instance.terms:
                out.update(_term_mvs(t))
        for p in n.premises:
            walk(p)

    walk(tree)
    return out


def _final_subst(tree: ProofTree, s: Substitution) -> Substitution:
    resolved = s.resolved()
    mapping = resolved.as_dict()
    leftover = set()
    for mid in _tree_metavars(tree):
        t = resolved.resolve(MetaVar(mid))
        leftover |= _term_mvs(t)
    for mid in leftover:
        mapping[mid] = WITNESS_DEFAULT
    # re-resolve right-hand sides against the defaults
    full = Substitution(mapping)
    return Substitution({k: full.resolve(v) for k, v in mapping.items()})


def _resolve_tree(tree: ProofTree, s: Substitution) -> ProofTree:
    def on_term(t):
        return s.resolve(t)

    def walk(n: ProofTree) -> ProofTree:
        concl = Sequent(tuple(s.apply(f) for f in n.conclusion.antecedent),
                        tuple(s.apply(f) for f in n.conclusion.succedent))
        inst = None
        if n.instance is not None:
            inst = Instance(
                None if n.instance.body is None else s.apply(n.instance.body),
                tuple(s.apply(h) for h in n.instance.heads),
                n.instance.used,
                tuple(on_term(t) for t in n.instance.terms))
        return ProofTree(
            concl, n.rule, tuple(walk(p) for p in n.premises),
            principal=n.principal,
            witness=None if n.witness is None else on_term(n.witness),
            eigen=n.eigen, instance=inst)

    return walk(tree)


def validate_reduced_inputs(clauses, goal: Formula):
    for c in clauses:
        frag = fragments.classify(c, "assumption", "section5")
        if not frag.ok:
            raise EngineInputError(
                f"clause outside the reduced grammar: {to_text(c)} "
                f"(offender {to_text(frag.offender)}, {frag.polarity.value})")
    frag = fragments.classify(goal, "goal", "section5")
    if not frag.ok:
        raise EngineInputError(
            f"goal outside the reduced grammar: {to_text(goal)} "
            f"(offender {to_text(frag.offender)}, {frag.polarity.value})")


def prove(clauses, goal: Formula, config: Optional[SearchConfig] = None) -> SearchResult:
    """Search for a reduced-system proof of clauses --> goal.

    The returned proof is ground (the final substitution is applied and
    leftover metavariables default to _w0) and passes the kernel's
    reduced-discipline check relative to goal."""
    config = config or SearchConfig()
    validate_reduced_inputs(clauses, goal)
    return _Search(clauses, goal, config).run()


# --- expansion into the relativized calculus ---------------------------------

@dataclass(frozen=True)
class _Swap:
    """A clause-list position whose unit atom is read as a whole leftover
    disjunction; splitting is deferred to the sites consuming that unit.

    leaf_trees maps the disjunction's leaf index (1..n-1; leaf 0 is the
    atom owning the embedding) to its reduced restart subtree.
    positional_base is the swap-adjusted antecedent of the node that
    spawned those subtrees; pads for expanding a leaf subtree at a
    consumption site are recovered as (site context) - positional_base.
    """
    disjunction: Formula
    leaf_trees: tuple
    positional_base: tuple
    swaps: tuple


class _Expander:
    def __init__(self, goal: Formula):
        self.goal = goal

    # environment: pads = tuple of extra antecedent formulas,
    # swaps = dict position -> _Swap
    def expand(self, node: ProofTree, pads: tuple, swaps: dict) -> ProofTree:
        ant = self._ant(node, pads, swaps)
        goal_f = node.conclusion.succedent[0]
        here = seq(ant, [goal_f])
        rule = node.rule

        if rule == AXIOM:
            return ProofTree(here, AXIOM)
        if rule in (AND_R, OR_R_LEFT, OR_R_RIGHT, IMP_R, EX_R):
            prems = tuple(self.expand(p, pads, swaps) for p in node.premises)
            return ProofTree(here, rule, prems, principal=0, witness=node.witness)
        if rule == RESTART:
            prem = self.expand(node.premises[0], pads, swaps)
            return ProofTree(here, RES_G, (prem,))
        if rule in (ATOMIC, BACKCHAIN):
            if node.principal in swaps:
                return self._consume_swapped(node, pads, swaps, ant, goal_f)
            return self._consume_clause(node, pads, swaps, ant, goal_f)
        raise ValueError(f"unexpected rule in reduced proof: {rule}")

    def _ant(self, node: ProofTree, pads: tuple, swaps: dict) -> list:
        out = []
        for i, f in enumerate(node.conclusion.antecedent):
            out.append(swaps[i].disjunction if i in swaps else f)
        out.extend(pads)
        return out

    def _pos(self, fs: list, f: Formula) -> int:
        k = alpha_key(f)
        for i, g in enumerate(fs):
            if alpha_key(g) == k:
                return i
        raise ValueError("principal formula not found")

    def _leaves(self, f: Formula) -> int:
        return len(flatten_or(f))

    # -- ordinary clause use ----------------------------------------------------

    def _consume_clause(self, node, pads, swaps, ant, goal_f) -> ProofTree:
        inst = node.instance
        clause = node.conclusion.antecedent[node.principal]
        degenerate_ground = not inst.terms and len(inst.heads) == 1
        # materialize a consumable ground copy next to the clause: AllL
        # retains the quantified formula, ContrL duplicates a ground one;
        # a ground clause without leftover heads is consumed in place
        wrappers = []   # (rule, principal formula, witness, added formula)
        core = clause
        if inst.terms:
            for t in inst.terms:
                added = substitute(core.body, core.var, t)
                wrappers.append((ALL_L, core, t, added))
                core = added
        elif not degenerate_ground:
            wrappers.append((CONTR_L, clause, None, clause))
        ground = core
        additions = tuple(w[3] for w in wrappers)
        cur = list(ant) + list(additions)
        if degenerate_ground:
            ctx = ant[:node.principal] + ant[node.principal + 1:]
            extra_branch = ()
            impl_principal = node.principal
        else:
            ctx = cur[:-1]                  # the ground copy gets consumed
            extra_branch = additions[:-1]   # survives into every branch
            impl_principal = len(cur) - 1
        heads_formula = ground.right if isinstance(ground, Implies) else ground

        remainders = node.premises[1:] if node.rule == BACKCHAIN else node.premises
        leaf_tree = {}
        k = 0
        for j in range(len(inst.heads)):
            if j == inst.used:
                continue
            leaf_tree[j] = remainders[k]
            k += 1

        if node.rule == BACKCHAIN:
            body_tree = self.expand(node.premises[0], pads + additions, swaps)
            right = self._split(ctx, heads_formula, 0, inst.used, goal_f,
                                leaf_tree, node, pads, swaps, extra_branch)
            top = ProofTree(seq(cur, [goal_f]), IMP_L, (body_tree, right),
                            principal=impl_principal)
        else:
            top = self._split(ctx, heads_formula, 0, inst.used, goal_f,
                              leaf_tree, node, pads, swaps, extra_branch)
        # wrap downward; the innermost wrapper sits closest to the split
        for rule, principal_f, witness, added in reversed(wrappers):
            cur = cur[:-1]
            top = ProofTree(seq(cur, [goal_f]), rule, (top,),
                            principal=self._pos(cur, principal_f),
                            witness=witness)
        return top

    # -- splitting a head disjunction --------------------------------------------

    def _split(self, ctx: list, J: Formula, base: int, used: int,
               goal_f: Formula, leaf_tree: dict, node, pads, swaps,
               extra: tuple) -> ProofTree:
        """Prove <J, ctx --> goal_f>: leaf `used` (global head index) is
        consumed by the goal, every other leaf re-attacks the top goal."""
        here = seq(ctx + [J], [goal_f])
        if not isinstance(J, Or):
            if isinstance(J, Bot) and not isinstance(goal_f, Bot):
                ax = ProofTree(seq(ctx + [J], [BOT]), AXIOM)
                return ProofTree(here, BOT_R, (ax,), principal=0)
            return ProofTree(here, AXIOM)
        nleft = self._leaves(J.left)
        if used < base + nleft:
            p1 = self._split(ctx, J.left, base, used, goal_f, leaf_tree,
                             node, pads, swaps, extra)
            p2 = self._attack(J.right, base + nleft, leaf_tree,
                              node, pads, swaps, extra)
        else:
            p1 = self._attack(J.left, base, leaf_tree,
                              node, pads, swaps, extra)
            p2 = self._split(ctx, J.right, base + nleft, used, goal_f,
                             leaf_tree, node, pads, swaps, extra)
        return ProofTree(here, OR_L_G, (p1, p2), principal=len(ctx))

    def _attack(self, J: Formula, base: int, leaf_tree: dict,
                node, pads, swaps, extra: tuple) -> ProofTree:
        """Prove <J, ...context... --> top goal> for an all-leftover
        subtree J; context is implicit in the leaf subtree expansions."""
        if not isinstance(J, Or):
            return self.expand(leaf_tree[base], pads + extra, swaps)
        # embed J into the restart proof of its leftmost leaf: replace that
        # leaf's unit-clause occurrence by J and split where it is consumed
        r0 = leaf_tree[base]
        others = {}
        for offset in range(1, self._leaves(J)):
            others[offset] = leaf_tree[base + offset]
        pos = len(node.conclusion.antecedent)
        swap = _Swap(J, tuple(sorted(others.items())),
                     tuple(self._ant(node, (), swaps)),
                     tuple(swaps.items()))
        swaps2 = dict(swaps)
        swaps2[pos] = swap
        return self.expand(r0, pads + extra, swaps2)

    # -- consuming a swapped (deferred) disjunction --------------------------------

    def _consume_swapped(self, node, pads, swaps, ant, goal_f) -> ProofTree:
        pos = node.principal
        swap = swaps[pos]
        J = swap.disjunction
        ctx = ant[:pos] + ant[pos + 1:]
        surplus = tuple(_list_minus(ctx, list(swap.positional_base)))
        return self._swap_split(ctx, J, 0, goal_f, swap, surplus)

    def _swap_split(self, ctx: list, J: Formula, base: int, goal_f: Formula,
                    swap: _Swap, surplus: tuple) -> ProofTree:
        here = seq(ctx + [J], [goal_f])
        if not isinstance(J, Or):
            if base == 0:
                # the owning atom: consumed against the goal here
                if isinstance(J, Bot) and not isinstance(goal_f, Bot):
                    ax = ProofTree(seq(ctx + [J], [BOT]), AXIOM)
                    return ProofTree(here, BOT_R, (ax,), principal=0)
                return ProofTree(here, AXIOM)
            return self._swap_leaf(J, base, swap, surplus)
        nleft = self._leaves(J.left)
        if base == 0:  # the owning (leftmost) leaf lies in the left subtree
            p1 = self._swap_split(ctx, J.left, base, goal_f, swap, surplus)
            p2 = self._swap_attack(ctx, J.right, base + nleft, swap, surplus)
        else:
            p1 = self._swap_attack(ctx, J.left, base, swap, surplus)
            p2 = self._swap_split(ctx, J.right, base + nleft, goal_f, swap, surplus)
        return ProofTree(here, OR_L_G, (p1, p2), principal=len(ctx))

    def _swap_leaf(self, leaf: Formula, index: int, swap: _Swap,
                   surplus: tuple) -> ProofTree:
        sub = dict(swap.leaf_trees)[index]
        return self.expand(sub, surplus, dict(swap.swaps))

    def _swap_attack(self, ctx: list, J: Formula, base: int, swap: _Swap,
                     surplus: tuple) -> ProofTree:
        if not isinstance(J, Or):
            return self._swap_leaf(J, base, swap, surplus)
        # nested embed within a deferred disjunction
        trees = dict(swap.leaf_trees)
        sub0 = trees[base]
        others = {}
        for offset in range(1, self._leaves(J)):
            others[offset] = trees[base + offset]
        pos = len(sub0.conclusion.antecedent) - 1
        inner = _Swap(J, tuple(sorted(others.items())),
                      swap.positional_base, swap.swaps)
        captured = dict(swap.swaps)
        captured[pos] = inner
        return self.expand(sub0, surplus, captured)


def _list_minus(xs: list, ys: list) -> list:
    from collections import Counter
    need = Counter(alpha_key(y) for y in ys)
    out = []
    for x in xs:
        k = alpha_key(x)
        if need.get(k, 0) > 0:
            need[k] -= 1
        else:
            out.append(x)
    return out


def expand_to_og(result: SearchResult, clauses, goal: Formula) -> ProofTree:
    """Rewrite a reduced proof into the goal-relativized calculus so the
    kernel's og-discipline check accepts it."""
    if result.status != PROVED or result.proof is None:
        raise ValueError("expand_to_og requires a proved result")
    return _Expander(goal).expand(result.proof, (), {})
