import itertools
import random

import pytest

from abscgt.errors import ContractError
from abscgt.forms import Arena
from abscgt.notation import parse
from abscgt.order import (
    VerdictKind,
    candidate_pool,
    distinguish,
    equal_bounded,
    geq_absolute,
    replay_witness,
)
from abscgt.replication import dicots_up_to
from abscgt.sampling import sample_members
from abscgt.solvers import Outcome, Side, geq_np, outcome
from abscgt.universes import Budget, BudgetExceeded, Membership, member_bounded, parse_universe

D, E, OMEGA = parse_universe("D"), parse_universe("E"), parse_universe("Omega")
SMALL = Budget(2, 2, 10_000)


def test_reflexivity(arena):
    assert geq_absolute(arena, D, 0, 0).kind is VerdictKind.HOLDS_EXACT
    g = arena.ostar(2)
    assert equal_bounded(arena, D, g, g).kind is VerdictKind.HOLDS_EXACT
    assert geq_absolute(arena, E, arena.moves(2), arena.moves(2)).kind is VerdictKind.HOLDS_AT_BOUND


def test_star_vs_zero_in_dicots(arena):
    verdict = geq_absolute(arena, D, arena.star, 0)
    assert verdict.refuted and verdict.witness.kind == "normal_play"
    verdict = geq_absolute(arena, D, arena.star, 0, np_filter=False)
    w = verdict.witness
    assert w.kind == "proviso" and w.x == 0 and w.side is Side.LEFT
    assert [o.name for o in w.outcomes] == ["R", "L"]
    assert replay_witness(arena, w)


def test_hat_two_against_two(arena):
    two, hat2 = arena.moves(2), arena.hat(2)
    assert geq_absolute(arena, E, hat2, two).kind is VerdictKind.HOLDS_AT_BOUND
    verdict = geq_absolute(arena, E, two, hat2)
    w = verdict.witness
    assert w.kind == "proviso" and w.x == arena.moves(-1)
    assert [o.name for o in w.outcomes] == ["R", "L"]
    assert replay_witness(arena, w)
    assert equal_bounded(arena, E, hat2, two).refuted


def test_normal_play_refutation(arena):
    verdict = geq_absolute(arena, E, 0, arena.moves(1))
    assert verdict.refuted and verdict.witness.kind == "normal_play"
    assert replay_witness(arena, verdict.witness)


def test_non_member_rejected(arena):
    with pytest.raises(ContractError):
        geq_absolute(arena, E, arena.zeta(2), 0)


def test_budget_exhaustion_is_explicit(arena):
    with pytest.raises(BudgetExceeded):
        geq_absolute(arena, OMEGA, arena.zeta(2), 0, Budget(4, 3, 100))


def test_holds_at_bound_carries_budget(arena):
    b = Budget(2, 2, 1000)
    verdict = geq_absolute(arena, E, arena.hat(2), arena.moves(2), b)
    assert verdict.budget == b
    assert str(verdict) == "HoldsAtBound(2,2,1000)"


def test_maintenance_witness_replays(arena):
    # with the normal-play shortcut off, every refutation must replay
    forms = dicots_up_to(arena, 2)
    kinds = set()
    for g, h in itertools.product(forms, repeat=2):
        verdict = geq_absolute(arena, D, g, h, np_filter=False)
        if verdict.refuted:
            kinds.add(verdict.witness.kind)
            assert replay_witness(arena, verdict.witness)
    assert kinds == {"proviso", "maintenance"}


def test_dicot_order_implies_normal_play(arena):
    forms = dicots_up_to(arena, 2)
    for g, h in itertools.product(forms, repeat=2):
        if geq_absolute(arena, D, g, h, np_filter=False).kind is VerdictKind.HOLDS_EXACT:
            assert geq_np(arena, g, h)


def test_np_filter_does_not_change_answers(arena):
    forms = dicots_up_to(arena, 2)
    for g, h in itertools.product(forms, repeat=2):
        a = geq_absolute(arena, D, g, h).refuted
        b = geq_absolute(arena, D, g, h, np_filter=False).refuted
        assert a == b


def test_dicot_order_is_transitive(arena):
    forms = dicots_up_to(arena, 2)
    ge = {(g, h): geq_absolute(arena, D, g, h).holds for g in forms for h in forms}
    for g, h, k in itertools.product(forms, repeat=3):
        if ge[g, h] and ge[h, k]:
            assert ge[g, k]


def test_dicot_order_antisymmetric_under_conjugation(arena):
    forms = dicots_up_to(arena, 2)
    for g, h in itertools.product(forms, repeat=2):
        forward = geq_absolute(arena, D, g, h).holds
        mirrored = geq_absolute(arena, D, arena.conjugate(h), arena.conjugate(g)).holds
        assert forward == mirrored


def test_order_compatible_with_sums(arena):
    forms = dicots_up_to(arena, 1) + [arena.ostar(1)]
    for g, h in itertools.product(forms, repeat=2):
        if geq_absolute(arena, D, g, h).holds:
            for x in forms:
                assert geq_absolute(arena, D, arena.sum(g, x), arena.sum(h, x)).holds


def test_holds_means_no_distinguishing_outcome_flip(arena):
    # if g >= h in D then for sampled dicot X the outcome of g+X is at least that of h+X
    rank = {Outcome.R: 0, Outcome.P: 1, Outcome.N: 1, Outcome.L: 2}
    forms = dicots_up_to(arena, 2)
    xs = dicots_up_to(arena, 2)
    for g, h in itertools.product(forms[:6], repeat=2):
        if geq_absolute(arena, D, g, h).holds:
            for x in xs:
                og, oh = outcome(arena, arena.sum(g, x)), outcome(arena, arena.sum(h, x))
                assert rank[og] >= rank[oh]
                if oh is Outcome.L:
                    assert og is Outcome.L


def test_distinguish_examples(arena):
    assert distinguish(arena, E, arena.hat(2), arena.hat(2)) is None
    found = distinguish(arena, E, arena.hat(2), arena.moves(1))
    assert found.x == parse("{0|*}", arena)
    assert (found.outcome_g, found.outcome_h) == (Outcome.L, Outcome.P)
    found = distinguish(arena, OMEGA, arena.zeta(2), 0)
    assert found.x == parse("{-1|0}", arena)


def test_distinguish_witness_is_member_and_separates(arena):
    rng = random.Random(2)
    spec = parse_universe("Sbar:1")
    forms = sample_members(arena, spec, rng, 6, lambda g: True, depth=2)
    for g, h in itertools.combinations(forms, 2):
        found = distinguish(arena, spec, g, h, SMALL)
        if found is not None:
            assert member_bounded(arena, spec, found.x, SMALL) is Membership.YES
            assert outcome(arena, arena.sum(g, found.x)) is found.outcome_g
            assert outcome(arena, arena.sum(h, found.x)) is found.outcome_h
            assert found.outcome_g is not found.outcome_h


def test_distinguish_is_deterministic(arena):
    first = distinguish(arena, E, arena.hat(2), arena.moves(2))
    other = Arena()
    again = distinguish(other, E, other.hat(2), other.moves(2))
    assert first is not None and again is not None
    assert first.outcome_g == again.outcome_g and first.outcome_h == again.outcome_h


def test_candidate_pool_members(arena):
    for x, _ in candidate_pool(arena, E, 0, arena.moves(1), SMALL):
        assert member_bounded(arena, E, x, SMALL) is Membership.YES


def test_observation_hook_one(arena):
    spec = parse_universe("Hook:1")
    verdict = equal_bounded(arena, spec, parse("{|1}", arena), 0)
    assert verdict.kind is VerdictKind.HOLDS_AT_BOUND
