"""Universe catalog, form classification and closure enumeration.

Supported universes (CLI tokens in parentheses):

* dicots (``D``), dead-ending forms (``E``) and the full space (``Omega``);
* ``Sbar:n`` -- the closure of the dicots together with ``hat(1..n+1)``;
* ``Zbar:n`` -- the closure of the dead-ending forms with the hooks
  ``zeta(2..n)``;
* ``Hook:m`` -- the closure of the dead-ending forms with the single hook
  ``{ | m}`` (``m >= 1``), e.g. ``Hook:1`` for ``{ | 1}``.

For the extension families the atomic members are known explicitly: the
Right-atomic members of ``Sbar:n`` are the sums of ``hat(k)`` with
``k <= n+1`` and the Left-atomic members of a hook universe are the sums of
hooks plus a Left-end (conjugates for the other side).  Since a parental
universe contains ``{A|B}`` for every pair of non-empty member sets, a form
belongs to such a universe exactly when each of its atomic followers has the
required shape; :func:`member_bounded` decides membership that way.
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, combinations_with_replacement

from .errors import ContractError, DomainError, ResourceError
from .forms import Arena, FormId, powerset
from .solvers import Side


class BudgetExceeded(ResourceError):
    """An enumeration would produce more forms than the budget allows."""


@dataclass(frozen=True)
class Budget:
    """Bounds for every enumeration driven by a universe.

    ``max_birthday`` bounds Left-/Right-ends (and whole forms in ``Omega``),
    ``max_summands`` bounds the number of generator summands in atomic
    members of the extension families and ``max_forms`` caps any single
    enumeration.
    """

    max_birthday: int = 3
    max_summands: int = 3
    max_forms: int = 100_000

    def __post_init__(self):
        for name in ("max_birthday", "max_summands", "max_forms"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be strictly positive")

    def scaled(self, factor: int) -> Budget:
        return Budget(self.max_birthday * factor, self.max_summands * factor, self.max_forms * factor)

    def as_dict(self) -> dict[str, int]:
        return {
            "max_birthday": self.max_birthday,
            "max_summands": self.max_summands,
            "max_forms": self.max_forms,
        }


DEFAULT_BUDGET = Budget()


class Membership(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class FormFlags:
    left_atomic: bool
    right_atomic: bool
    left_end: bool
    right_end: bool
    dicot: bool
    dead_ending: bool


def classify_form(arena: Arena, g: FormId) -> FormFlags:
    table = arena.cache("flags")
    hit = table.get(g)
    if hit is not None:
        return hit
    left, right = arena.node(g)
    lf = [classify_form(arena, x) for x in left]
    rf = [classify_form(arena, x) for x in right]
    left_end = not left and all(f.left_end for f in rf)
    right_end = not right and all(f.right_end for f in lf)
    flags = FormFlags(
        left_atomic=not left,
        right_atomic=not right,
        left_end=left_end,
        right_end=right_end,
        dicot=(not left) == (not right) and all(f.dicot for f in lf + rf),
        dead_ending=all(f.dead_ending for f in lf + rf)
        and (left_end or bool(left))
        and (right_end or bool(right)),
    )
    table[g] = flags
    return flags


# ---------------------------------------------------------------------------
# universe catalog

_KINDS = ("D", "E", "Omega", "Sbar", "Zbar", "Hook")


@dataclass(frozen=True)
class UniverseSpec:
    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown universe {self.kind!r}")
        if self.kind in ("D", "E", "Omega"):
            if self.n is not None:
                raise DomainError(f"{self.kind} takes no parameter")
        elif self.n is None:
            raise DomainError(f"{self.kind} needs a parameter")
        elif self.kind == "Sbar" and self.n < 0:
            raise DomainError("Sbar requires n >= 0")
        elif self.kind == "Zbar" and self.n < 2:
            raise DomainError("Zbar requires n >= 2")
        elif self.kind == "Hook" and self.n < 1:
            raise DomainError("Hook requires m >= 1")

    @property
    def token(self) -> str:
        return self.kind if self.n is None else f"{self.kind}:{self.n}"

    def __str__(self) -> str:
        return self.token

    @property
    def membership_mode(self) -> str:
        return "exact" if self.n is None else "bounded"

    @property
    def hooks(self) -> tuple[int, ...]:
        """Orders of the Left-hooks adjoined to the dead-ending forms."""
        if self.kind == "Zbar":
            return tuple(range(2, self.n + 1))
        if self.kind == "Hook":
            return (self.n,)
        return ()

    @property
    def atomic_set_is_finite(self) -> bool:
        return self.kind == "D"

    def atomic_generator(self, arena: Arena, side: Side | str, budget: Budget = DEFAULT_BUDGET) -> Iterator[FormId]:
        """Stream the ``side``-atomic members of this universe within ``budget``.

        Raises :class:`BudgetExceeded` before yielding anything if the bounded
        slice holds more than ``budget.max_forms`` forms.
        """
        side = Side(side)
        if side is Side.RIGHT:
            for g in self.atomic_generator(arena, Side.LEFT, budget):
                yield arena.conjugate(g)
            return
        if self.kind == "D":
            yield 0
        elif self.kind == "E":
            yield from left_ends(arena, budget.max_birthday, budget.max_forms)
        elif self.kind == "Omega":
            yield from _omega_left_atomic(arena, budget)
        elif self.kind == "Sbar":
            parts = [arena.conjugate(arena.hat(k)) for k in range(1, self.n + 2)]
            _check_count(_multiset_count(len(parts), budget.max_summands), budget)
            yield from _multiset_sums(arena, parts, budget.max_summands)
        else:
            hooks = self.generators(arena)
            count = _multiset_count(len(hooks), budget.max_summands) * _left_end_count(budget.max_birthday)
            _check_count(count, budget)
            ends = list(left_ends(arena, budget.max_birthday, budget.max_forms))
            for z in _multiset_sums(arena, hooks, budget.max_summands):
                for end in ends:
                    yield arena.sum(z, end)

    def atomic_members(self, arena: Arena, side: Side | str, budget: Budget = DEFAULT_BUDGET) -> list[FormId]:
        return list(self.atomic_generator(arena, side, budget))

    def generators(self, arena: Arena) -> list[FormId]:
        """Forms adjoined to the base universe (dicots or dead-ending forms)."""
        if self.kind == "Sbar":
            return [arena.hat(k) for k in range(1, self.n + 2)]
        return [arena.zeta(k) if k >= 2 else arena.intern([], [arena.moves(k)]) for k in self.hooks]


def universe_spec(name: str, n: int | None = None) -> UniverseSpec:
    return UniverseSpec(name, n)


def parse_universe(token: str) -> UniverseSpec:
    """Parse a CLI token such as ``D``, ``Sbar:1`` or ``Zbar:3``."""
    name, sep, param = token.partition(":")
    if not sep:
        return UniverseSpec(name)
    try:
        n = int(param)
    except ValueError:
        raise DomainError(f"bad universe parameter in {token!r}") from None
    return UniverseSpec(name, n)


def _check_count(count: int, budget: Budget) -> None:
    if count > budget.max_forms:
        raise BudgetExceeded(f"atomic slice has {count} forms, budget allows {budget.max_forms}")


def _multiset_count(kinds: int, max_size: int) -> int:
    return sum(math.comb(kinds + k - 1, k) for k in range(max_size + 1)) if kinds else 1


def _multiset_sums(arena: Arena, parts: list[FormId], max_size: int) -> Iterator[FormId]:
    if not parts:
        yield 0
        return
    for size in range(max_size + 1):
        for combo in combinations_with_replacement(parts, size):
            yield arena.sum_all(combo)


def _left_end_count(max_birthday: int) -> int:
    count = 1
    for _ in range(max_birthday):
        if count > 64:
            return math.inf
        count = 2**count
    return count


def left_ends(arena: Arena, max_birthday: int, max_forms: int | None = None) -> Iterator[FormId]:
    """All Left-ends of birthday at most ``max_birthday``, by increasing birthday."""
    if max_forms is not None and _left_end_count(max_birthday) > max_forms:
        raise BudgetExceeded(f"more than {max_forms} Left-ends of birthday <= {max_birthday}")
    table = arena.cache("left_ends")
    levels = table.setdefault("levels", [[0]])
    yield 0
    for day in range(1, max_birthday + 1):
        if day >= len(levels):
            older = [x for level in levels for x in level]
            newest = set(levels[-1])
            fresh = [
                arena.intern([], subset)
                for subset in powerset(older)
                if any(x in newest for x in subset)
            ]
            levels.append(fresh)
        yield from levels[day]


def _omega_left_atomic(arena: Arena, budget: Budget) -> Iterator[FormId]:
    sizes = [1]  # number of forms of birthday <= d
    for _ in range(budget.max_birthday - 1):
        sizes.append(4 ** sizes[-1] if sizes[-1] < 32 else math.inf)
    _check_count(2 ** sizes[-1] if sizes[-1] < 64 else math.inf, budget)
    yield 0
    below = [0]
    for day in range(1, budget.max_birthday + 1):
        youngest = day - 1
        for subset in powerset(below):
            if subset and max(arena.birthday(x) for x in subset) == youngest:
                yield arena.intern([], subset)
        if day < budget.max_birthday:
            below = arena.all_forms(day)


# ---------------------------------------------------------------------------
# membership


def member_bounded(arena: Arena, spec: UniverseSpec, g: FormId, budget: Budget = DEFAULT_BUDGET) -> Membership:
    """Decide whether ``g`` lies in ``spec``.

    ``Unknown`` is returned only when checking an atomic follower would need
    more than ``budget.max_forms`` candidate decompositions.
    """
    flags = classify_form(arena, g)
    if spec.kind == "Omega" or flags.dicot:
        return Membership.YES
    if spec.kind == "D":
        return Membership.NO
    if spec.kind == "E":
        return Membership.YES if flags.dead_ending else Membership.NO
    unknown = False
    for f in sorted(arena.followers(g)):
        left_atomic = arena.is_left_atomic(f)
        right_atomic = arena.is_right_atomic(f)
        if left_atomic == right_atomic:
            continue  # 0 or a non-atomic follower
        verdict = _atomic_conforms(arena, spec, f, budget)
        if verdict is None:
            unknown = True
        elif not verdict:
            return Membership.NO
    return Membership.UNKNOWN if unknown else Membership.YES


def _atomic_conforms(arena: Arena, spec: UniverseSpec, f: FormId, budget: Budget) -> bool | None:
    if spec.kind == "Sbar":
        # Right-atomic members are sums of hats; Left-atomic ones their conjugates
        target = f if arena.is_right_atomic(f) else arena.conjugate(f)
        return is_hat_sum(arena, target, spec.n + 1, budget)
    target = f if arena.is_left_atomic(f) else arena.conjugate(f)
    return is_hook_sum_plus_end(arena, target, spec.hooks, budget)


def _partitions(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def is_hat_sum(arena: Arena, g: FormId, max_k: int, budget: Budget = DEFAULT_BUDGET) -> bool | None:
    """Is ``g`` a sum of ``hat(k)`` with ``1 <= k <= max_k``?  None if over budget."""
    if not arena.is_right_atomic(g):
        return False
    table = arena.cache(("hat_sum", max_k))
    if g in table:
        return table[g]
    result: bool | None = False
    # hat(k) has birthday k and birthdays add under sum
    for count, parts in enumerate(_partitions(arena.birthday(g), max_k)):
        if count >= budget.max_forms:
            result = None
            break
        if arena.sum_all(arena.hat(k) for k in parts) == g:
            result = True
            break
    if result is not None:
        table[g] = result
    return result


def is_hook_sum_plus_end(arena: Arena, g: FormId, hooks: Iterable[int], budget: Budget = DEFAULT_BUDGET) -> bool | None:
    """Is ``g`` a sum of Left-hooks of the given orders plus a Left-end?"""
    hooks = tuple(sorted(hooks))
    if not arena.is_left_atomic(g):
        return False
    if classify_form(arena, g).left_end:
        return True
    hook_forms = [arena.intern([], [arena.moves(k)]) for k in hooks]
    size = arena.birthday(g)
    checked = 0
    for count in range(1, size + 1):
        for combo in combinations_with_replacement(range(len(hooks)), count):
            if sum(hooks[i] + 1 for i in combo) > size:
                continue
            checked += 1
            if checked > budget.max_forms:
                return None
            z = arena.sum_all(hook_forms[i] for i in combo)
            rest = _subtract_left_atomic(arena, g, z)
            if rest is not None and classify_form(arena, rest).left_end:
                return True
        if (min(hooks, default=size) + 1) * count > size:
            break
    return False


def _subtract_left_atomic(arena: Arena, g: FormId, z: FormId) -> FormId | None:
    """Find a Left-atomic ``x`` with ``z + x == g``, or None.

    ``z`` is a sum of hooks, so every Right option of ``z + x`` that is still
    Left-atomic has the shape ``z + x^R``; the other ones open a hook.
    """
    table = arena.cache("subtract")
    key = (g, z)
    if key in table:
        return table[key]
    result = None
    if g == z:
        result = 0
    elif arena.is_left_atomic(g) and arena.birthday(g) > arena.birthday(z):
        rights = []
        ok = True
        for option in arena.right(g):
            if arena.is_left_atomic(option):
                sub = _subtract_left_atomic(arena, option, z)
                if sub is None:
                    ok = False
                    break
                rights.append(sub)
        if ok:
            candidate = arena.intern([], rights)
            if arena.sum(z, candidate) == g:
                result = candidate
    table[key] = result
    return result


# ---------------------------------------------------------------------------
# closure enumeration


@dataclass(frozen=True)
class ClosureResult:
    forms: frozenset[FormId]
    truncated: bool
    birthday_pruned: bool
    days: int

    def __contains__(self, g: object) -> bool:
        return g in self.forms

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self) -> Iterator[FormId]:
        return iter(sorted(self.forms))


def _is_hereditary(arena: Arena, base: set[FormId]) -> bool:
    return all(arena.followers(g) <= base for g in base)


def closure_enumerate(
    arena: Arena,
    base: Iterable[FormId],
    days: int,
    budget: Budget = DEFAULT_BUDGET,
    max_option_set: int | None = 2,
) -> ClosureResult:
    """Accumulate the day-by-day closure of ``base`` under sum, conjugation and
    the parental operator, discarding forms born after ``budget.max_birthday``.

    The parental operator only uses option sets of at most ``max_option_set``
    forms (None for no limit).  ``truncated`` is set when ``budget.max_forms``
    stopped the enumeration early.
    """
    acc = set(base) | {0}
    if not _is_hereditary(arena, acc):
        raise ContractError("closure base must be hereditary closed")
    limit = budget.max_birthday
    by_day: dict[int, list[FormId]] = defaultdict(list)
    for g in sorted(acc):
        by_day[arena.birthday(g)].append(g)
    new = set(acc)
    pruned = False
    truncated = False
    ran = 0

    def admit(g: FormId) -> bool:
        nonlocal truncated
        if g in acc or g in produced:
            return True
        if len(acc) + len(produced) >= budget.max_forms:
            truncated = True
            return False
        produced.add(g)
        return True

    for _ in range(days):
        if not new:
            break
        ran += 1
        produced: set[FormId] = set()
        new_sorted = sorted(new)
        for g in new_sorted:
            if not admit(arena.conjugate(g)):
                break
        # sums with at least one new summand; birthdays add exactly
        for g in new_sorted if not truncated else ():
            bg = arena.birthday(g)
            if bg == 0:
                continue
            for b2 in range(1, limit - bg + 1):
                for h in by_day.get(b2, ()):
                    if h in new and h < g:
                        continue  # pair already seen from the other side
                    if not admit(arena.sum(g, h)):
                        break
                if truncated:
                    break
            if any(arena.birthday(g) + b > limit for b in by_day if b > 0):
                pruned = True
            if truncated:
                break
        # parental operator over forms young enough for the result to fit
        if not truncated:
            small = sorted(x for x in acc if arena.birthday(x) < limit)
            if any(arena.birthday(x) >= limit for x in acc):
                pruned = True
            width = len(small) if max_option_set is None else max_option_set
            subsets = [s for k in range(1, width + 1) for s in combinations(small, k)]
            fresh = [s for s in subsets if any(x in new for x in s)]
            stale = [s for s in subsets if not any(x in new for x in s)]
            for xs, ys in _pairs(fresh, subsets, stale):
                if not admit(arena.intern(xs, ys)):
                    break
        for g in produced:
            by_day[arena.birthday(g)].append(g)
        acc |= produced
        new = produced
        if truncated:
            break
    return ClosureResult(frozenset(acc), truncated, pruned, ran)


def _pairs(fresh, every, stale):
    for xs in fresh:
        for ys in every:
            yield xs, ys
    for xs in stale:
        for ys in fresh:
            yield xs, ys
