"""Polarity analysis and membership tests for the goal/clause grammars.

Two grammars are supported: the wide one (`section3`), where goals exclude
universal quantifiers and assumptions exclude them negatively, and the
reduced one (`section5`), where assumptions are clauses
`(A v ... v A) | G => (A v ... v A) | forall x. D` and goals are built from
atoms (plus true/false) with /\\, \\/, =>-with-clause-antecedent and exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .syntax import And, Atom, Bot, Exists, Forall, Formula, Implies, Or, Top


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


GFORMULA = "g-formula"
DFORMULA = "d-formula"
REDUCED_GOAL = "reduced-goal"
REDUCED_CLAUSE = "reduced-clause"
OUTSIDE = "outside-fragment"


@dataclass(frozen=True)
class FragmentClass:
    kind: str
    offender: Optional[Formula] = None
    polarity: Optional[Polarity] = None

    @property
    def ok(self) -> bool:
        return self.kind != OUTSIDE


def _first(*results):
    for r in results:
        if r is not None:
            return r
    return None


# Each checker returns None on success, else (offender, polarity).

def _g3(f: Formula, pol: Polarity):
    if isinstance(f, (Top, Bot, Atom)):
        return None
    if isinstance(f, (And, Or)):
        return _first(_g3(f.left, pol), _g3(f.right, pol))
    if isinstance(f, Implies):
        return _first(_d3(f.left, pol.flip()), _g3(f.right, pol))
    if isinstance(f, Exists):
        return _g3(f.body, pol)
    return (f, pol)  # Forall in a goal position


def _d3(f: Formula, pol: Polarity):
    if isinstance(f, (Top, Bot, Atom)):
        return None
    if isinstance(f, Implies):
        return _first(_g3(f.left, pol.flip()), _d3(f.right, pol))
    if isinstance(f, (And, Or)):
        return _first(_d3(f.left, pol), _d3(f.right, pol))
    if isinstance(f, (Exists, Forall)):
        return _d3(f.body, pol)
    return (f, pol)


def _heads5(f: Formula, pol: Polarity):
    """Head part of a reduced clause: a disjunction of atoms/true/false."""
    if isinstance(f, (Top, Bot, Atom)):
        return None
    if isinstance(f, Or):
        return _first(_heads5(f.left, pol), _heads5(f.right, pol))
    return (f, pol)


def _d5(f: Formula, pol: Polarity):
    if isinstance(f, Forall):
        return _d5(f.body, pol)
    if isinstance(f, Implies):
        return _first(_g5(f.left, pol.flip()), _heads5(f.right, pol))
    return _heads5(f, pol)


def _g5(f: Formula, pol: Polarity):
    if isinstance(f, (Top, Bot, Atom)):
        return None
    if isinstance(f, (And, Or)):
        return _first(_g5(f.left, pol), _g5(f.right, pol))
    if isinstance(f, Implies):
        return _first(_d5(f.left, pol.flip()), _g5(f.right, pol))
    if isinstance(f, Exists):
        return _g5(f.body, pol)
    return (f, pol)


_CHECKERS = {
    ("goal", "section3"): (_g3, GFORMULA),
    ("assumption", "section3"): (_d3, DFORMULA),
    ("goal", "section5"): (_g5, REDUCED_GOAL),
    ("assumption", "section5"): (_d5, REDUCED_CLAUSE),
}


def classify(f: Formula, role: str, grammar: str) -> FragmentClass:
    """Classify f as a goal or assumption of the requested grammar.

    On failure returns OutsideFragment with the first offending subformula
    (leftmost-innermost in traversal order) and its polarity relative to f.
    """
    try:
        checker, kind = _CHECKERS[(role, grammar)]
    except KeyError:
        raise ValueError(f"unknown role/grammar: {role!r}/{grammar!r}") from None
    bad = checker(f, Polarity.POSITIVE)
    if bad is None:
        return FragmentClass(kind)
    return FragmentClass(OUTSIDE, offender=bad[0], polarity=bad[1])


def is_reduced_goal(f: Formula) -> bool:
    return classify(f, "goal", "section5").ok


def is_reduced_clause(f: Formula) -> bool:
    return classify(f, "assumption", "section5").ok
