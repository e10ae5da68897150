import random

import pytest
from hypothesis import given, settings

from abscgt.errors import DomainError, FrozenArenaError, ResourceError, StructuralError
from abscgt.forms import Arena, powerset
from abscgt.sampling import random_form

from conftest import form_strategy

_ARENA = Arena()


def test_zero_is_id_zero(arena):
    assert arena.intern([], []) == 0
    assert arena.birthday(0) == 0
    assert arena.left(0) == () and arena.right(0) == ()


def test_interning_dedupes_and_sorts(arena):
    s = arena.star
    assert arena.intern([s, 0, 0], [0]) == arena.intern([0, s], [0])
    assert arena.left(arena.intern([s, 0], [])) == (0, s)


def test_unknown_id_rejected(arena):
    with pytest.raises(StructuralError):
        arena.intern([12345], [])


def test_birthdays_of_families(arena):
    assert arena.birthday(arena.moves(3)) == 3
    assert arena.birthday(arena.moves(-2)) == 2
    assert arena.birthday(arena.hat(3)) == 3
    assert arena.birthday(arena.ostar(0)) == 1
    assert arena.birthday(arena.ostar(4)) == 5
    assert arena.birthday(arena.zeta(2)) == 3
    assert arena.birthday(arena.zeta(-2)) == 3


def test_family_shapes(arena):
    assert arena.moves(1) == arena.intern([0], [])
    assert arena.moves(-1) == arena.intern([], [0])
    assert arena.hat(1) == arena.moves(1)
    assert arena.hat(2) == arena.intern([0, arena.moves(1)], [])
    assert arena.ostar(0) == arena.star
    assert arena.ostar(1) == arena.intern([0], [arena.star])
    assert arena.zeta(3) == arena.intern([], [arena.moves(3)])
    assert arena.zeta(-3) == arena.conjugate(arena.zeta(3))


@pytest.mark.parametrize("kind,n", [("ostar", -1), ("zeta", 1), ("zeta", 0), ("zeta", -1)])
def test_family_domain_errors(arena, kind, n):
    with pytest.raises(DomainError):
        arena.construct_family(kind, n)


def test_enumeration_counts(arena):
    assert len(arena.all_forms(0)) == 1
    assert len(arena.all_forms(1)) == 4
    assert len(arena.all_forms(2)) == 256


def test_followers_are_hereditary(arena):
    g = arena.sum(arena.hat(2), arena.zeta(2))
    fol = arena.followers(g)
    assert g in fol and 0 in fol
    for f in fol:
        assert arena.followers(f) <= fol


def test_adjoint_cases(arena):
    assert arena.adjoint(0) == arena.star
    assert arena.adjoint(arena.moves(1)) == arena.intern([0], [arena.star])
    assert arena.adjoint(arena.moves(-1)) == arena.intern([arena.star], [0])
    star = arena.star
    assert arena.adjoint(star) == arena.intern([arena.adjoint(0)], [arena.adjoint(0)])


def test_node_budget():
    small = Arena(max_nodes=5)
    with pytest.raises(ResourceError):
        small.moves(10)


def test_birthday_budget():
    small = Arena(max_birthday=4)
    with pytest.raises(ResourceError):
        small.moves(5)


def test_frozen_arena_rejects_new_nodes(arena):
    one = arena.moves(1)
    arena.freeze()
    assert arena.intern([0], []) == one
    with pytest.raises(FrozenArenaError):
        arena.moves(4)


def test_powerset():
    assert [tuple(s) for s in powerset([1, 2])] == [(), (1,), (2,), (1, 2)]


def test_algebra_exhaustive_birthday_one(arena):
    forms = arena.all_forms(1)
    for a in forms:
        assert arena.sum(a, 0) == a
        for b in forms:
            assert arena.sum(a, b) == arena.sum(b, a)
            for c in forms:
                assert arena.sum(arena.sum(a, b), c) == arena.sum(a, arena.sum(b, c))


@settings(max_examples=60, deadline=None)
@given(form_strategy(_ARENA), form_strategy(_ARENA))
def test_sum_laws(g, h):
    a = _ARENA
    assert a.sum(g, h) == a.sum(h, g)
    assert a.sum(g, 0) == g
    assert a.birthday(a.sum(g, h)) == a.birthday(g) + a.birthday(h)


@settings(max_examples=60, deadline=None)
@given(form_strategy(_ARENA), form_strategy(_ARENA))
def test_conjugate_laws(g, h):
    a = _ARENA
    assert a.conjugate(a.conjugate(g)) == g
    assert a.conjugate(a.sum(g, h)) == a.sum(a.conjugate(g), a.conjugate(h))
    assert a.birthday(a.conjugate(g)) == a.birthday(g)


def test_random_form_respects_birthday(arena):
    rng = random.Random(3)
    for _ in range(50):
        assert arena.birthday(random_form(arena, rng, 3)) <= 3
