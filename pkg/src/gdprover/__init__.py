"""Classical first-order proof search via goal-directed restart/atomic/
backchain rules, with an independent sequent-calculus proof checker and a
brute-force validity oracle."""

from .engine import (
    ClauseInstanceSchema, EngineInputError, SearchConfig, SearchResult,
    Substitution, expand_to_og, instances, prove, unify,
)
from .fragments import FragmentClass, Polarity, classify
from .kernel import CheckReport, Instance, ProofTree, Sequent, check, is_axiom, seq
from .oracle import differential, ground_valid, prop_valid
from .parser import ParseError, parse, parse_sequent
from .syntax import (
    And, App, Atom, Bot, BOT, Const, Exists, Forall, Formula, Implies,
    MetaVar, Or, Term, Top, TOP, Var, alpha_equal, constants_of, free_vars,
    metavars_of, substitute, to_text,
)
from .transform import (
    HerbrandSignatureExtension, NormalizedProblem, TransformError,
    expand_negations, herbrandize, normalize_clauses, normalize_goal,
    normalize_problem,
)

__version__ = "0.1.0"
