"""First-order syntax: terms, formulas, substitution, printing.

All values are immutable (frozen dataclasses) and hashable, so they can be
shared freely between concurrent searches and used as dict/multiset keys.
Negation is not a constructor: ~A is parsed as A => false.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union


# --- terms ---------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name})"


@dataclass(frozen=True)
class Const:
    name: str

    def __repr__(self):
        return f"Const({self.name})"


@dataclass(frozen=True)
class MetaVar:
    """Delayed existential witness, resolved by unification.

    Ids are unique within one search run; MetaVars never appear in user
    input and are distinct from object-level bound variables by
    construction, so binder capture cannot involve them.
    """
    id: int

    def __repr__(self):
        return f"?{self.id}"


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __repr__(self):
        return f"App({self.fn}, {list(self.args)})"


Term = Union[Var, Const, MetaVar, App]


# --- formulas ------------------------------------------------------------

@dataclass(frozen=True)
class Top:
    def __repr__(self):
        return "Top"


@dataclass(frozen=True)
class Bot:
    def __repr__(self):
        return "Bot"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()

    def __repr__(self):
        return f"Atom({self.pred}, {list(self.args)})" if self.args else f"Atom({self.pred})"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Top, Bot, Atom, And, Or, Implies, Exists, Forall]

TOP = Top()
BOT = Bot()

BINARY = (And, Or, Implies)
QUANT = (Exists, Forall)


def atom(pred: str, *args: Term) -> Atom:
    return Atom(pred, tuple(args))


# --- variable bookkeeping ------------------------------------------------

def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_vars(f: Formula) -> set:
    """Free object-level variable names of a formula."""
    if isinstance(f, Atom):
        out = set()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    return set()


def term_symbols(t: Term) -> set:
    """Constant and function names occurring in a term."""
    if isinstance(t, Const):
        return {t.name}
    if isinstance(t, App):
        out = {t.fn}
        for a in t.args:
            out |= term_symbols(a)
        return out
    return set()


def constants_of(f: Formula) -> set:
    """Constant and function names occurring in a formula.

    Function names are included so freshness/proviso checks are safe
    against every nonlogical term symbol.
    """
    if isinstance(f, Atom):
        out = set()
        for a in f.args:
            out |= term_symbols(a)
        return out
    if isinstance(f, BINARY):
        return constants_of(f.left) | constants_of(f.right)
    if isinstance(f, QUANT):
        return constants_of(f.body)
    return set()


def predicates_of(f: Formula) -> set:
    if isinstance(f, Atom):
        return {f.pred}
    if isinstance(f, BINARY):
        return predicates_of(f.left) | predicates_of(f.right)
    if isinstance(f, QUANT):
        return predicates_of(f.body)
    return set()


def term_metavars(t: Term) -> set:
    if isinstance(t, MetaVar):
        return {t.id}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_metavars(a)
        return out
    return set()


def metavars_of(f: Formula) -> set:
    if isinstance(f, Atom):
        out = set()
        for a in f.args:
            out |= term_metavars(a)
        return out
    if isinstance(f, BINARY):
        return metavars_of(f.left) | metavars_of(f.right)
    if isinstance(f, QUANT):
        return metavars_of(f.body)
    return set()


def flatten_or(f: Formula) -> list:
    """Leaves of a disjunction tree, left to right."""
    if isinstance(f, Or):
        return flatten_or(f.left) + flatten_or(f.right)
    return [f]


def build_or(parts) -> Formula:
    """Rebuild a disjunction left-leaning: ((h1 v h2) v h3) ..."""
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANT):
        yield from subformulas(f.body)


# --- substitution --------------------------------------------------------

def subst_term(t: Term, x: str, r: Term) -> Term:
    if isinstance(t, Var):
        return r if t.name == x else t
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, x, r) for a in t.args))
    return t


def _fresh_name(base: str, avoid: set) -> str:
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace free occurrences of x in f by t, renaming bound variables
    only when one would capture a variable of t."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(a, x, t) for a in f.args))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, x, t), substitute(f.right, x, t))
    if isinstance(f, QUANT):
        if f.var == x:
            return f
        if x not in free_vars(f.body):
            return f
        if f.var in term_vars(t):
            avoid = term_vars(t) | free_vars(f.body) | {x}
            fresh = _fresh_name(f.var, avoid)
            body = substitute(f.body, f.var, Var(fresh))
            return type(f)(fresh, substitute(body, x, t))
        return type(f)(f.var, substitute(f.body, x, t))
    return f


def apply_term_map(f: Formula, mapping: dict) -> Formula:
    """Simultaneously replace free variables per {name: Term}.

    Assumes replacement terms contain no variables that any binder in f
    could capture (true for ground terms and fresh metavariables).
    """
    def on_term(t: Term) -> Term:
        if isinstance(t, Var):
            return mapping.get(t.name, t)
        if isinstance(t, App):
            return App(t.fn, tuple(on_term(a) for a in t.args))
        return t

    def go(g: Formula, shadowed: frozenset) -> Formula:
        if isinstance(g, Atom):
            def on(t):
                if isinstance(t, Var) and t.name in shadowed:
                    return t
                if isinstance(t, Var):
                    return mapping.get(t.name, t)
                if isinstance(t, App):
                    return App(t.fn, tuple(on(a) for a in t.args))
                return t
            return Atom(g.pred, tuple(on(a) for a in g.args))
        if isinstance(g, BINARY):
            return type(g)(go(g.left, shadowed), go(g.right, shadowed))
        if isinstance(g, QUANT):
            return type(g)(g.var, go(g.body, shadowed | {g.var}))
        return g

    return go(f, frozenset())


# --- alpha-equivalence ---------------------------------------------------

@lru_cache(maxsize=1 << 16)
def alpha_key(f: Formula):
    """Canonical key identifying formulas up to bound-variable renaming
    (de Bruijn levels). Used wherever formulas act as multiset elements."""
    def term_key(t: Term, env: dict):
        if isinstance(t, Var):
            if t.name in env:
                return ("b", env[t.name])
            return ("v", t.name)
        if isinstance(t, Const):
            return ("c", t.name)
        if isinstance(t, MetaVar):
            return ("m", t.id)
        return ("f", t.fn) + tuple(term_key(a, env) for a in t.args)

    def go(g: Formula, env: dict, depth: int):
        if isinstance(g, Top):
            return ("top",)
        if isinstance(g, Bot):
            return ("bot",)
        if isinstance(g, Atom):
            return ("atom", g.pred) + tuple(term_key(a, env) for a in g.args)
        if isinstance(g, BINARY):
            tag = {And: "and", Or: "or", Implies: "imp"}[type(g)]
            return (tag, go(g.left, env, depth), go(g.right, env, depth))
        tag = "ex" if isinstance(g, Exists) else "all"
        env2 = dict(env)
        env2[g.var] = depth
        return (tag, go(g.body, env2, depth + 1))

    return go(f, {}, 0)


def alpha_equal(a: Formula, b: Formula) -> bool:
    return alpha_key(a) == alpha_key(b)


# --- printing ------------------------------------------------------------

def term_to_text(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, MetaVar):
        return f"?{t.id}"
    return f"{t.fn}({', '.join(term_to_text(a) for a in t.args)})"


_PREC = {Implies: 1, Or: 2, And: 3}


def to_text(f: Formula, pretty: bool = False) -> str:
    """Render a formula in the ASCII grammar.

    Default output is fully parenthesized (byte-stable for golden tests);
    pretty mode drops parentheses redundant under the declared
    precedences (=> right-associative, quantifier scope maximal).
    """
    if not pretty:
        return _full(f)
    return _pretty(f, 0)


def _full(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(term_to_text(a) for a in f.args)})"
    if isinstance(f, And):
        return f"({_full(f.left)} /\\ {_full(f.right)})"
    if isinstance(f, Or):
        return f"({_full(f.left)} \\/ {_full(f.right)})"
    if isinstance(f, Implies):
        return f"({_full(f.left)} => {_full(f.right)})"
    if isinstance(f, Exists):
        return f"(exists {f.var}. {_full(f.body)})"
    return f"(forall {f.var}. {_full(f.body)})"


def _pretty(f: Formula, minprec: int) -> str:
    if isinstance(f, (Top, Bot, Atom)):
        return _full(f)
    if isinstance(f, QUANT):
        q = "exists" if isinstance(f, Exists) else "forall"
        s = f"{q} {f.var}. {_pretty(f.body, 0)}"
        return f"({s})" if minprec > 0 else s
    prec = _PREC[type(f)]
    op = {And: "/\\", Or: "\\/", Implies: "=>"}[type(f)]
    # binary connectives are right-associative
    s = f"{_pretty(f.left, prec + 1)} {op} {_pretty(f.right, prec)}"
    return f"({s})" if prec < minprec else s
