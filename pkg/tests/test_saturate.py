"""Tests for saturation of deduction systems."""

import pytest

from fvsat.deduction import DeductionSystem, TheoryTag
from fvsat.order import RuleKind
from fvsat.saturate import (
    RuleOrigin,
    SaturationConfig,
    closure_children,
    closure_step,
    is_redundant,
    is_trivial,
    replay_closure,
    saturate,
    simplify,
    step1,
)
from fvsat.theories import parse_deduction_rule

DY_DESTRUCTORS = [
    'pair(X, Y) => X',
    'pair(X, Y) => Y',
    'Y, enc_s(X, Y) => X',
    'Y, dec_s(X, Y) => X',
    'sk(Y), enc_a(X, pk(Y)) => X',
    'pk(Y), dec_a(X, sk(Y)) => X',
]

BLIND_ADDED = [
    'pk(Y), sig(X, sk(Y)) => X',
    'Y, bl(X, Y) => X',
    'Y, sig(bl(X, Y), sk(Z)) => sig(X, sk(Z))',
    'X, pk(Y), sk(Y) => X',
]

DSKS_ADDED = [
    'X, sig(X, sk(Y)), pk(Y) => 1',
    'X, sig(X, sk2(Y1, Y2)), pk2(Y1, Y2) => 1',
    'X, sig(X, sk(Y)), pk2(pk(Y), sig(X, sk(Y))) => 1',
    'X, sk2(pk(Y), sig(X, sk(Y))) => sig(X, sk(Y))',
    'sk(Y), pk(Y) => 1',
    'sk2(Y1, Y2), pk2(Y1, Y2) => 1',
    'X, sk(Y), pk2(pk(Y), sig(X, sk(Y))) => 1',
    'X, pk(Y), sk(Y) => sig(X, sk(Y))',
    'Y1, Y2, pk2(Y1, Y2) => 1',
    'X, Y1, Y2, sig(X, sk2(Y1, Y2)) => 1',
    'Y1, Y2, sk2(Y1, Y2) => 1',
    'X, pk(Y), sk(Y), sig(X, sk(Y)) => 1',
    'X, sk(Y), pk(Y), pk2(pk(Y), sig(X, sk(Y))) => 1',
]

DSKS_CONCLUSION_IN_PREMISES = 'X, pk(Y), sig(X, sk(Y)) => sig(X, sk(Y))'


def rule(text, bundle):
    return parse_deduction_rule(text, bundle.sig)


def test_simplify(dy):
    assert simplify(rule('X, Y, pair(X, Z) => Z', dy)) == rule('X, pair(X, Z) => Z', dy)
    assert simplify(rule('X, Y => pair(X, Y)', dy)) == rule('X, Y => pair(X, Y)', dy)


@pytest.mark.parametrize('text, strict, expected', [
    ('X, Y => X', False, True),
    ('X, pk(Y), sk(Y) => X', False, False),
    ('X, pk(Y), sk(Y) => X', True, True),
    ('pair(X, Y), pk(X) => pk(X)', False, True),
    ('pair(X, Y) => X', True, False),
])
def test_is_trivial(dy, text, strict, expected):
    assert is_trivial(rule(text, dy), strict) == expected


def test_step1(dy):
    lifted = step1(dy.l0, dy.rewrite)

    assert lifted.theory_tag == TheoryTag.EMPTY
    assert len(lifted) == 13

    for text in DY_DESTRUCTORS:
        assert lifted.find_equivalent(rule(text, dy)) is not None

    for l0_rule in dy.l0:
        assert lifted.find_equivalent(l0_rule) is not None


def test_closure_children(dy):
    inc = rule('X, Y => enc_a(X, Y)', dy)
    target = rule('sk(Y), enc_a(X, pk(Y)) => X', dy)

    children = closure_children(inc, target)

    assert len(children) == 1
    assert children[0][0].equivalent(rule('X, pk(Y), sk(Y) => X', dy))
    assert children[0][1] == target.nonvar[1]
    assert replay_closure(children[0][0], inc, target)
    assert closure_children(inc, rule('pair(X, Y) => X', dy)) == []


def test_closure_step(dy):
    system = DeductionSystem(
        (rule('X, Y => enc_s(X, Y)', dy), rule('Y, enc_s(X, Y) => X', dy)),
        dy.sig,
    )

    assert closure_step(system) == []
    assert [str(child) for child in closure_step(system, delete_trivial=False)] == ['X => X']


def test_is_redundant(dy, blind):
    lifted = step1(blind.l0, blind.rewrite)
    unblind = rule('Y, bl(X, Y), sk(Z) => sig(X, sk(Z))', blind)

    assert is_redundant(unblind, lifted, 2)
    assert not is_redundant(unblind, lifted, 1)

    pairing = DeductionSystem((rule('X, Y => pair(X, Y)', dy),), dy.sig)

    assert not is_redundant(rule('X, Y, Z => pair(pair(X, Y), Z)', dy), pairing, 2)
    assert not is_redundant(rule('X => enc_s(X, X)', dy), pairing, 3)
    assert not is_redundant(rule('Y, enc_s(X, Y) => X', dy), step1(dy.l0, dy.rewrite), 3)
    assert is_redundant(rule('X, pk(Y), sk(Y) => X', dy), pairing, 1)


def test_decreasing_redundant_kept(dy_saturated, dy):
    kept = dy_saturated.system.find_equivalent(rule('X, pk(Y), sk(Y) => X', dy))

    assert kept is not None
    assert dy_saturated.system.kind(kept) == RuleKind.DECREASING
    assert is_redundant(kept, dy_saturated.system, 1)


def test_saturate_dy(dy_saturated, dy):
    result = dy_saturated
    system = result.system

    assert not result.diverged
    assert system.theory_tag == TheoryTag.EMPTY
    assert len(result.provenance) == len(system)
    assert len(system) == 14

    for text in DY_DESTRUCTORS:
        assert system.find_equivalent(rule(text, dy)) is not None

    closure = [entry for entry in result.provenance if entry.origin == RuleOrigin.CLOSURE]

    assert len(closure) == 1
    assert closure[0].rule.equivalent(rule('X, pk(Y), sk(Y) => X', dy))
    assert closure[0].generation == 1
    assert result.rounds == 1
    assert system.kind(closure[0].rule) == RuleKind.DECREASING


def test_saturate_provenance(dy_saturated, dy):
    origins = [entry.origin for entry in dy_saturated.provenance]

    assert origins.count(RuleOrigin.L0) == len(dy.l0)
    assert origins.count(RuleOrigin.VARIANT) == len(DY_DESTRUCTORS)
    assert len(dy_saturated.added_rules()) == len(DY_DESTRUCTORS) + 1

    for entry in dy_saturated.provenance:
        if entry.origin == RuleOrigin.VARIANT:
            assert entry.source in dy.l0.rules


def test_saturate_strict_trivial(dy):
    result = saturate(dy.l0, dy.rewrite, SaturationConfig(strict_trivial=True))

    assert not result.diverged
    assert len(result.system) == 13
    assert result.system.find_equivalent(rule('X, pk(Y), sk(Y) => X', dy)) is None


def test_saturate_literal(dy):
    result = saturate(dy.l0, dy.rewrite, SaturationConfig(delete_trivial=False))

    assert not result.diverged
    assert result.system.find_equivalent(rule('X => X', dy)) is not None


def test_saturate_replay_check(dy, dy_saturated):
    result = saturate(dy.l0, dy.rewrite, SaturationConfig(replay_check=True))

    assert result.stats['replayed'] == 1
    assert len(result.system) == len(dy_saturated.system)


def test_saturate_empty_tag(dy, dy_saturated):
    result = saturate(dy_saturated.system, dy.rewrite)

    assert not result.diverged
    assert len(result.system) == len(dy_saturated.system)
    assert all(entry.origin == RuleOrigin.L0 for entry in result.provenance)


def test_saturate_diverges(dy):
    result = saturate(dy.l0, dy.rewrite, SaturationConfig(max_rules=3))

    assert result.diverged
    assert result.offending
    assert all(found.equivalent(rule('X, pk(Y), sk(Y) => X', dy)) for found in result.offending)
    assert len(result.system) == len(dy.l0) + len(DY_DESTRUCTORS)


def assert_same_rules(system, expected):
    assert len(system) == len(expected)

    for found in expected:
        assert system.find_equivalent(found) is not None, str(found)


def test_saturate_blind(blind_saturated, blind):
    assert not blind_saturated.diverged
    assert_same_rules(
        blind_saturated.system,
        list(blind.l0.rules) + [rule(text, blind) for text in BLIND_ADDED],
    )


def test_saturate_blind_without_redundancy(blind):
    result = saturate(blind.l0, blind.rewrite, SaturationConfig(redundancy_steps=0, max_rules=60))

    assert result.diverged
    assert result.offending


def test_saturate_dsks(dsks):
    result = saturate(dsks.l0, dsks.rewrite)

    assert not result.diverged
    assert len(dsks.l0) == 6
    assert_same_rules(result.system, list(dsks.l0.rules) + [rule(text, dsks) for text in DSKS_ADDED])
    assert result.system.find_equivalent(rule(DSKS_CONCLUSION_IN_PREMISES, dsks)) is None


def test_saturate_dsks_literal(dsks):
    result = saturate(dsks.l0, dsks.rewrite, SaturationConfig(delete_trivial=False))

    assert not result.diverged
    assert_same_rules(
        result.system,
        list(dsks.l0.rules) + [rule(text, dsks) for text in DSKS_ADDED + [DSKS_CONCLUSION_IN_PREMISES]],
    )


def test_saturation_config_checks():
    with pytest.raises(ValueError):
        SaturationConfig(max_rules=0)

    with pytest.raises(ValueError):
        SaturationConfig(redundancy_steps=-1)


def test_to_frame(dy_saturated):
    df = dy_saturated.to_frame()

    assert df.height == len(dy_saturated.system)
    assert set(df['origin'].unique()) == {'l0', 'variant', 'closure'}
    assert df.columns == ['rule', 'origin', 'kind', 'generation', 'parents']