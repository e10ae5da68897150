"""Seeded random forms, for property checks and sampled witnesses."""

from __future__ import annotations

import random

from .forms import Arena, FormId
from .solvers import Side
from .universes import Budget, UniverseSpec

_SMALL = Budget(max_birthday=2, max_summands=2, max_forms=10_000)


def random_form(arena: Arena, rng: random.Random, max_birthday: int, max_options: int = 2) -> FormId:
    """A form of birthday at most ``max_birthday`` with small option sets."""
    if max_birthday <= 0:
        return 0
    sides = []
    for _ in range(2):
        count = rng.randint(0, max_options)
        sides.append([random_form(arena, rng, rng.randrange(max_birthday), max_options) for _ in range(count)])
    return arena.intern(*sides)


def random_member(
    arena: Arena,
    spec: UniverseSpec,
    rng: random.Random,
    depth: int,
    max_options: int = 2,
    atoms: list[FormId] | None = None,
) -> FormId:
    """A member of ``spec`` built from atomic members by the parental rule.

    Each internal node is ``{A | B}`` for non-empty lists of smaller members,
    so the result lies in the universe whenever the atoms do.
    """
    if atoms is None:
        atoms = spec.atomic_members(arena, Side.LEFT, _SMALL) + spec.atomic_members(arena, Side.RIGHT, _SMALL)
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(atoms)
    sides = []
    for _ in range(2):
        count = rng.randint(1, max_options)
        sides.append([random_member(arena, spec, rng, rng.randrange(depth), max_options, atoms) for _ in range(count)])
    return arena.intern(*sides)


def sample_members(arena, spec, rng, count, predicate, depth=3, max_options=2, max_tries=20_000) -> list[FormId]:
    """``count`` distinct members satisfying ``predicate``, in draw order."""
    atoms = spec.atomic_members(arena, Side.LEFT, _SMALL) + spec.atomic_members(arena, Side.RIGHT, _SMALL)
    found: list[FormId] = []
    for _ in range(max_tries):
        g = random_member(arena, spec, rng, depth, max_options, atoms)
        if g not in found and predicate(g):
            found.append(g)
            if len(found) == count:
                break
    return found
