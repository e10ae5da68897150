"""Exact perfect-play outcomes under normal and misère play.

Outcomes are computed by memoized minimax over the form DAG.  Sums must be
materialized as forms first: misère play has no componentwise shortcut.
"""

from __future__ import annotations

from enum import Enum, IntEnum

from .forms import Arena, FormId


class Convention(str, Enum):
    NORMAL = "normal"
    MISERE = "misere"


class Side(str, Enum):
    LEFT = "Left"
    RIGHT = "Right"


class PartialOutcome(IntEnum):
    """Result of play with a fixed starting player; Left wins is the larger."""

    R = 0
    L = 1


class Outcome(str, Enum):
    L = "L"
    R = "R"
    N = "N"
    P = "P"

    @classmethod
    def from_partials(cls, left_first: PartialOutcome, right_first: PartialOutcome) -> Outcome:
        if left_first is PartialOutcome.L:
            return cls.L if right_first is PartialOutcome.L else cls.N
        return cls.P if right_first is PartialOutcome.L else cls.R

    def mirror(self) -> Outcome:
        return {Outcome.L: Outcome.R, Outcome.R: Outcome.L}.get(self, self)


def _tables(arena: Arena, conv: Convention) -> tuple[dict, dict]:
    key = ("outcome", Convention(conv))
    table = arena.caches.get(key)
    if table is None:
        table = arena.caches[key] = ({}, {})
    return table


def _left_first(arena: Arena, g: FormId, misere: bool, lt: dict, rt: dict) -> bool:
    hit = lt.get(g)
    if hit is not None:
        return hit
    left = arena.left(g)
    if not left:
        win = misere
    else:
        win = any(_right_first(arena, x, misere, lt, rt) for x in left)
    lt[g] = win
    return win


def _right_first(arena: Arena, g: FormId, misere: bool, lt: dict, rt: dict) -> bool:
    # True when Left wins with Right moving first
    hit = rt.get(g)
    if hit is not None:
        return hit
    right = arena.right(g)
    if not right:
        win = not misere
    else:
        win = all(_left_first(arena, x, misere, lt, rt) for x in right)
    rt[g] = win
    return win


def outcome_partial(
    arena: Arena, g: FormId, side: Side | str, conv: Convention | str = Convention.MISERE
) -> PartialOutcome:
    """Winner of ``g`` when ``side`` moves first (``o_L`` / ``o_R``)."""
    conv = Convention(conv)
    lt, rt = _tables(arena, conv)
    misere = conv is Convention.MISERE
    if Side(side) is Side.LEFT:
        win = _left_first(arena, g, misere, lt, rt)
    else:
        win = _right_first(arena, g, misere, lt, rt)
    return PartialOutcome.L if win else PartialOutcome.R


def o_left(arena: Arena, g: FormId, conv: Convention | str = Convention.MISERE) -> PartialOutcome:
    return outcome_partial(arena, g, Side.LEFT, conv)


def o_right(arena: Arena, g: FormId, conv: Convention | str = Convention.MISERE) -> PartialOutcome:
    return outcome_partial(arena, g, Side.RIGHT, conv)


def outcome(arena: Arena, g: FormId, conv: Convention | str = Convention.MISERE) -> Outcome:
    return Outcome.from_partials(o_left(arena, g, conv), o_right(arena, g, conv))


def geq_np(arena: Arena, g: FormId, h: FormId) -> bool:
    """Normal-play order: Left wins ``g - h`` moving second."""
    diff = arena.sum(g, arena.conjugate(h))
    return o_right(arena, diff, Convention.NORMAL) is PartialOutcome.L
