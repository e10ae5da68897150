import pytest
from hypothesis import given, settings

from abscgt.forms import Arena
from abscgt.notation import parse
from abscgt.solvers import Convention, Outcome, PartialOutcome, Side, geq_np, o_left, o_right, outcome, outcome_partial

from conftest import form_strategy

_ARENA = Arena()
MISERE, NORMAL = Convention.MISERE, Convention.NORMAL


def test_base_cases(arena):
    assert outcome_partial(arena, 0, Side.LEFT, MISERE) is PartialOutcome.L
    assert outcome_partial(arena, 0, Side.RIGHT, MISERE) is PartialOutcome.R
    assert outcome_partial(arena, 0, Side.LEFT, NORMAL) is PartialOutcome.R
    assert outcome_partial(arena, arena.star, Side.LEFT, MISERE) is PartialOutcome.R
    assert outcome(arena, 0, NORMAL) is Outcome.P
    assert outcome(arena, arena.star, NORMAL) is Outcome.N


@pytest.mark.parametrize(
    "text,expected",
    [
        ("0", Outcome.N),
        ("{0,1|}", Outcome.R),
        ("{0,1|}+{0|*}", Outcome.L),
        ("1+{0|*}", Outcome.P),
        ("1+1+{0|*}", Outcome.N),
        ("1+1+1+{0|*}", Outcome.R),
        ("*", Outcome.P),
        ("1", Outcome.R),
    ],
)
def test_misere_outcomes(arena, text, expected):
    assert outcome(arena, parse(text, arena)) is expected


def test_outcome_from_partials():
    L, R = PartialOutcome.L, PartialOutcome.R
    assert Outcome.from_partials(L, R) is Outcome.N
    assert Outcome.from_partials(R, L) is Outcome.P
    assert Outcome.from_partials(L, L) is Outcome.L
    assert Outcome.from_partials(R, R) is Outcome.R
    assert Outcome.L.mirror() is Outcome.R and Outcome.N.mirror() is Outcome.N


def test_string_conventions(arena):
    assert outcome(arena, 0, "normal") is Outcome.P
    assert o_left(arena, 0, "misere") is PartialOutcome.L


def test_geq_np_examples(arena):
    one, two = arena.moves(1), arena.moves(2)
    assert geq_np(arena, one, 0) and not geq_np(arena, 0, one)
    assert geq_np(arena, arena.hat(2), two) and geq_np(arena, two, arena.hat(2))
    g = parse("{0|3}", arena)
    assert geq_np(arena, g, one) and geq_np(arena, one, g)


def test_normal_play_integers(arena):
    for n in range(-3, 4):
        for m in range(-3, 4):
            assert geq_np(arena, arena.moves(n), arena.moves(m)) == (n >= m)


@settings(max_examples=80, deadline=None)
@given(form_strategy(_ARENA))
def test_conjugate_mirrors_outcome(g):
    a = _ARENA
    for conv in (MISERE, NORMAL):
        assert outcome(a, a.conjugate(g), conv) is outcome(a, g, conv).mirror()


@settings(max_examples=60, deadline=None)
@given(form_strategy(_ARENA), form_strategy(_ARENA))
def test_geq_np_is_reflexive_and_consistent(g, h):
    a = _ARENA
    assert geq_np(a, g, g)
    if geq_np(a, g, h) and geq_np(a, h, g):
        assert outcome(a, g, NORMAL) is outcome(a, h, NORMAL)


@settings(max_examples=60, deadline=None)
@given(form_strategy(_ARENA))
def test_partials_agree_with_recursion(g):
    a = _ARENA
    left_wins = not a.left(g) or any(o_right(a, x) is PartialOutcome.L for x in a.left(g))
    right_wins = not a.right(g) or any(o_left(a, x) is PartialOutcome.R for x in a.right(g))
    assert (o_left(a, g) is PartialOutcome.L) == left_wins
    assert (o_right(a, g) is PartialOutcome.R) == right_wins
