"""Absolute misère order, bounded equality and distinguishing-game search.

:func:`geq_absolute` decides ``G >= H`` modulo a parental universe by the
proviso/maintenance characterization: atomic perturbations ``X`` must not
make ``G`` worse than ``H`` for the player who starts, and every Right option
of ``G`` and Left option of ``H`` must be answered recursively.  Failing the
normal-play order refutes the inequality in every such universe, so it is
checked first.

The proviso quantifies over infinitely many atomic forms except in the dicot
universe, so positive answers elsewhere are stamped with the budget used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ContractError, ResourceError
from .forms import Arena, FormId
from .notation import sort_key
from .solvers import Outcome, PartialOutcome, Side, geq_np, outcome, outcome_partial
from .universes import (
    DEFAULT_BUDGET,
    Budget,
    Membership,
    UniverseSpec,
    closure_enumerate,
    left_ends,
    member_bounded,
)


class VerdictKind(str, Enum):
    REFUTED = "Refuted"
    HOLDS_EXACT = "HoldsExact"
    HOLDS_AT_BOUND = "HoldsAtBound"


@dataclass(frozen=True)
class RefutationWitness:
    """Why ``g >= h`` fails.

    ``proviso``: ``x`` is ``side``-atomic and ``outcomes`` holds the two
    partial outcomes of ``g + x`` and ``h + x``.  ``maintenance``: ``option``
    is a Right option of ``g`` (``side`` Right) or a Left option of ``h``
    (``side`` Left) and ``alternatives`` refutes every possible answer.
    ``normal_play``: Left loses ``g - h`` moving second in normal play.
    """

    kind: str
    g: FormId
    h: FormId
    side: Side | None = None
    x: FormId | None = None
    outcomes: tuple[PartialOutcome, PartialOutcome] | None = None
    option: FormId | None = None
    alternatives: tuple[RefutationWitness, ...] = ()


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: RefutationWitness | None = None
    budget: Budget | None = None

    @property
    def refuted(self) -> bool:
        return self.kind is VerdictKind.REFUTED

    @property
    def holds(self) -> bool:
        return not self.refuted

    def __str__(self) -> str:
        if self.kind is VerdictKind.HOLDS_AT_BOUND:
            return f"HoldsAtBound({self.budget.max_birthday},{self.budget.max_summands},{self.budget.max_forms})"
        return self.kind.value


class _Comparator:
    def __init__(self, arena: Arena, spec: UniverseSpec, budget: Budget, np_filter: bool):
        self.arena = arena
        self.spec = spec
        self.budget = budget
        self.np_filter = np_filter
        self.memo: dict[tuple[FormId, FormId], RefutationWitness | None] = {}
        self._atomic: dict[Side, list[FormId]] = {}

    def atomic(self, side: Side) -> list[FormId]:
        found = self._atomic.get(side)
        if found is None:
            found = self._atomic[side] = self.spec.atomic_members(self.arena, side, self.budget)
        return found

    def refute(self, g: FormId, h: FormId) -> RefutationWitness | None:
        if g == h:
            return None
        key = (g, h)
        if key in self.memo:
            return self.memo[key]
        witness = self._refute(g, h)
        self.memo[key] = witness
        return witness

    def _refute(self, g: FormId, h: FormId) -> RefutationWitness | None:
        arena = self.arena
        if self.np_filter and not geq_np(arena, g, h):
            return RefutationWitness("normal_play", g, h)
        for side in (Side.LEFT, Side.RIGHT):
            for x in self.atomic(side):
                og = outcome_partial(arena, arena.sum(g, x), side)
                oh = outcome_partial(arena, arena.sum(h, x), side)
                if og < oh:
                    return RefutationWitness("proviso", g, h, side=side, x=x, outcomes=(og, oh))
        for gr in arena.right(g):
            alternatives = []
            for hr in arena.right(h):
                sub = self.refute(gr, hr)
                if sub is None:
                    break
                alternatives.append(sub)
            else:
                for grl in arena.left(gr):
                    sub = self.refute(grl, h)
                    if sub is None:
                        break
                    alternatives.append(sub)
                else:
                    return RefutationWitness(
                        "maintenance", g, h, side=Side.RIGHT, option=gr, alternatives=tuple(alternatives)
                    )
        for hl in arena.left(h):
            alternatives = []
            for gl in arena.left(g):
                sub = self.refute(gl, hl)
                if sub is None:
                    break
                alternatives.append(sub)
            else:
                for hlr in arena.right(hl):
                    sub = self.refute(g, hlr)
                    if sub is None:
                        break
                    alternatives.append(sub)
                else:
                    return RefutationWitness(
                        "maintenance", g, h, side=Side.LEFT, option=hl, alternatives=tuple(alternatives)
                    )
        return None


def _comparator(arena: Arena, spec: UniverseSpec, budget: Budget, np_filter: bool) -> _Comparator:
    table = arena.cache("comparators")
    key = (spec, budget, np_filter)
    comp = table.get(key)
    if comp is None:
        comp = table[key] = _Comparator(arena, spec, budget, np_filter)
    return comp


def _require_members(arena: Arena, spec: UniverseSpec, forms, budget: Budget) -> None:
    for g in forms:
        if member_bounded(arena, spec, g, budget) is Membership.NO:
            raise ContractError(f"form {g} is not a member of {spec.token}")


def geq_absolute(
    arena: Arena,
    spec: UniverseSpec,
    g: FormId,
    h: FormId,
    budget: Budget = DEFAULT_BUDGET,
    np_filter: bool = True,
) -> Verdict:
    """Is ``g >= h`` modulo ``spec``?

    Raises :class:`~abscgt.universes.BudgetExceeded` if the atomic slice
    required by the proviso does not fit in ``budget``.  ``np_filter=False``
    skips the normal-play shortcut so that refutations come from the proviso
    or maintenance themselves.
    """
    _require_members(arena, spec, (g, h), budget)
    witness = _comparator(arena, spec, budget, np_filter).refute(g, h)
    if witness is not None:
        return Verdict(VerdictKind.REFUTED, witness)
    if spec.atomic_set_is_finite:
        return Verdict(VerdictKind.HOLDS_EXACT)
    return Verdict(VerdictKind.HOLDS_AT_BOUND, budget=budget)


def equal_bounded(
    arena: Arena,
    spec: UniverseSpec,
    g: FormId,
    h: FormId,
    budget: Budget = DEFAULT_BUDGET,
    np_filter: bool = True,
) -> Verdict:
    """Equality modulo ``spec`` as the conjunction of both inequalities."""
    forward = geq_absolute(arena, spec, g, h, budget, np_filter)
    if forward.refuted:
        return forward
    backward = geq_absolute(arena, spec, h, g, budget, np_filter)
    if backward.refuted:
        return backward
    if forward.kind is VerdictKind.HOLDS_EXACT and backward.kind is VerdictKind.HOLDS_EXACT:
        return forward
    return Verdict(VerdictKind.HOLDS_AT_BOUND, budget=budget)


def replay_witness(arena: Arena, witness: RefutationWitness) -> bool:
    """Re-check a refutation using only outcome computations."""
    g, h = witness.g, witness.h
    if witness.kind == "normal_play":
        return not geq_np(arena, g, h)
    if witness.kind == "proviso":
        side, x = witness.side, witness.x
        atomic = arena.is_left_atomic(x) if side is Side.LEFT else arena.is_right_atomic(x)
        og = outcome_partial(arena, arena.sum(g, x), side)
        oh = outcome_partial(arena, arena.sum(h, x), side)
        return atomic and og < oh and witness.outcomes == (og, oh)
    if witness.kind != "maintenance":
        return False
    opt = witness.option
    if witness.side is Side.RIGHT:
        if opt not in arena.right(g):
            return False
        needed = {(opt, hr) for hr in arena.right(h)} | {(grl, h) for grl in arena.left(opt)}
    else:
        if opt not in arena.left(h):
            return False
        needed = {(gl, opt) for gl in arena.left(g)} | {(g, hlr) for hlr in arena.right(opt)}
    covered = {(w.g, w.h) for w in witness.alternatives}
    return needed <= covered and all(replay_witness(arena, w) for w in witness.alternatives)


# ---------------------------------------------------------------------------
# distinguishing games


@dataclass(frozen=True)
class Distinction:
    x: FormId
    outcome_g: Outcome
    outcome_h: Outcome
    source: str = field(default="pool", compare=False)


def adjoint_cap(arena: Arena, g: FormId) -> FormId:
    """``{0 | adjoints of all followers of g}``, the usual building block."""
    return arena.intern([0], [arena.adjoint(f) for f in arena.followers(g)])


def template_witnesses(arena: Arena, pair: tuple[FormId, FormId], budget: Budget) -> list[FormId]:
    """Distinguishing games used in the extension proofs, in a fixed order."""
    top = budget.max_summands
    star = arena.star
    zero_star = arena.intern([0], [star])
    out = [zero_star, arena.intern([arena.moves(-1)], [0])]
    for n in range(top + 1):
        out.append(arena.intern([star], [arena.ostar(k) for k in range(n + 2)]))
    for n in range(1, top + 2):
        out.append(arena.moves(-n))
        out.append(arena.intern([arena.sum(arena.moves(-(n + 1)), star)], [0]))
    for j in range(1, 2 * top + 1):
        out.append(arena.sum_all([arena.zeta(2)] * j))
    for f in sorted(pair, key=lambda x: sort_key(x, arena)):
        cap = adjoint_cap(arena, f)
        adj_followers = [arena.adjoint(y) for y in arena.followers(f)]
        out.append(arena.intern([cap], [star, zero_star]))
        for n in range(top + 1):
            out.append(arena.intern([cap], [arena.ostar(k) for k in range(n + 2)]))
        tail = arena.intern(adj_followers, [0])
        for n in range(2, top + 3):
            hook = arena.intern([arena.intern([arena.moves(-n)], [])], [])
            out.append(arena.intern([arena.moves(-2), hook], [tail]))
    return out


def candidate_pool(
    arena: Arena, spec: UniverseSpec, g: FormId, h: FormId, budget: Budget = DEFAULT_BUDGET, closure_days: int = 2
) -> list[tuple[FormId, str]]:
    """Members of ``spec`` tried by :func:`distinguish`, in search order."""
    seen: set[FormId] = set()
    pool: list[tuple[FormId, str]] = []

    def extend(forms, source, order):
        ranked = sorted(set(forms) - seen, key=lambda x: sort_key(x, arena)) if order else forms
        for x in ranked:
            if x in seen:
                continue
            seen.add(x)
            if member_bounded(arena, spec, x, budget) is Membership.YES:
                pool.append((x, source))

    pair = (g, h) if g <= h else (h, g)
    extend(template_witnesses(arena, pair, budget), "template", order=False)
    generated: set[FormId] = set()
    for side in (Side.LEFT, Side.RIGHT):
        try:
            generated.update(spec.atomic_generator(arena, side, budget))
        except ResourceError:
            pass
    extend(generated, "atomic", order=True)
    try:
        base = closure_base(arena, spec, budget)
        result = closure_enumerate(arena, base, closure_days, budget)
        extend(result.forms, "closure", order=True)
    except ResourceError:
        pass
    return pool


def closure_base(arena: Arena, spec: UniverseSpec, budget: Budget) -> set[FormId]:
    """Hereditary seed whose closure lies inside ``spec``."""
    base = {0}
    if spec.kind == "Omega":
        base.update(arena.all_forms(1))
    elif spec.kind in ("Sbar", "Zbar", "Hook"):
        for gen in spec.generators(arena):
            base |= arena.followers(gen)
    if spec.kind in ("E", "Zbar", "Hook"):
        ends = list(left_ends(arena, min(budget.max_birthday, 2)))
        base.update(ends)
        base.update(arena.conjugate(x) for x in ends)
    return base


def distinguish(
    arena: Arena, spec: UniverseSpec, g: FormId, h: FormId, budget: Budget = DEFAULT_BUDGET
) -> Distinction | None:
    """First ``X`` in the candidate pool with different misère outcomes on
    ``g + X`` and ``h + X``; None when no candidate separates them."""
    _require_members(arena, spec, (g, h), budget)
    if g == h:
        return None
    for x, source in candidate_pool(arena, spec, g, h, budget):
        og = outcome(arena, arena.sum(g, x))
        oh = outcome(arena, arena.sum(h, x))
        if og is not oh:
            return Distinction(x, og, oh, source)
    return None
