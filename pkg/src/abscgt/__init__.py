"""Exact engine for short partizan game forms under normal and misère play."""

from .errors import (
    ContractError,
    DomainError,
    FrozenArenaError,
    GameError,
    ResourceError,
    StructuralError,
)
from .forms import Arena, FormId, FormNode
from .notation import ParseError, SemanticError, parse, render
from .order import (
    Distinction,
    RefutationWitness,
    Verdict,
    VerdictKind,
    distinguish,
    equal_bounded,
    geq_absolute,
    replay_witness,
)
from .replication import CHECKS, CheckReport, verify
from .solvers import Convention, Outcome, PartialOutcome, Side, geq_np, outcome, outcome_partial
from .universes import (
    Budget,
    BudgetExceeded,
    FormFlags,
    Membership,
    UniverseSpec,
    classify_form,
    closure_enumerate,
    member_bounded,
    parse_universe,
    universe_spec,
)

__all__ = [
    "Arena", "Budget", "BudgetExceeded", "CHECKS", "CheckReport", "ContractError",
    "Convention", "Distinction", "DomainError", "FormFlags", "FormId", "FormNode",
    "FrozenArenaError", "GameError", "Membership", "Outcome", "ParseError",
    "PartialOutcome", "RefutationWitness", "ResourceError", "SemanticError", "Side",
    "StructuralError", "UniverseSpec", "Verdict", "VerdictKind", "classify_form",
    "closure_enumerate", "distinguish", "equal_bounded", "geq_absolute", "geq_np",
    "member_bounded", "outcome", "outcome_partial", "parse", "parse_universe",
    "render", "replay_witness", "universe_spec", "verify",
]
