"""Tests for deduction rules and systems."""

import pytest

from fvsat.deduction import (
    DeductionRule, DeductionSystem, TheoryTag, constructor_rule, derivable_within, rule_instances,
)
from fvsat.order import RuleKind
from fvsat.term import App, Var, const
from fvsat.theories import parse_deduction_rule


def test_rule_shape(dy):
    rule = parse_deduction_rule('enc_s(X, Y), Y => X', dy.sig)

    assert rule.var_part == (Var('Y'),)
    assert [str(t) for t in rule.nonvar] == ['enc_s(X, Y)']
    assert str(rule) == 'Y, enc_s(X, Y) => X'
    assert rule.variables == {Var('X'), Var('Y')}


def test_rule_conclusion_variables():
    with pytest.raises(ValueError, match=r'not in the premises \(Y\): X => Y'):
        DeductionRule(frozenset([Var('X')]), Var('Y'))


def test_equivalent_up_to_renaming(dy):
    rule = parse_deduction_rule('enc_s(X, Y), Y => X', dy.sig)

    assert rule.equivalent(parse_deduction_rule('Z, enc_s(W, Z) => W', dy.sig))
    assert not rule.equivalent(parse_deduction_rule('enc_s(X, Y), X => Y', dy.sig))
    assert not rule.equivalent(parse_deduction_rule('enc_s(X, Y), Y, Z => X', dy.sig))


@pytest.mark.parametrize('left, right, expected', [
    ('Y1, Y2, Y3, Y4, Y5, Y6, Y7, Y8, sk(Z), bl(X, Y1) => sig(X, sk(Z))',
     'A1, A2, A3, A4, A5, A6, A7, A8, sk(C), bl(B, A1) => sig(B, sk(C))', True),
    ('Y1, Y2, Y3, Y4, Y5, Y6, Y7, Y8, sk(Z), bl(X, Y1) => sig(X, sk(Z))',
     'A1, A2, A3, A4, A5, A6, A7, A8, sk(C), bl(B, D) => sig(B, sk(C))', False),
    ('Y, sk(Z), bl(X, Y) => X', 'Y, sk(Y), bl(X, Z) => X', False),
    ('Y, Z, bl(X, Y) => X', 'Z, Y, bl(X, Y) => X', True),
])
def test_equivalent_variable_premises(blind, left, right, expected):
    assert parse_deduction_rule(left, blind.sig).equivalent(parse_deduction_rule(right, blind.sig)) == expected


def test_canonical(dy):
    rule = parse_deduction_rule('B, enc_s(A, B) => A', dy.sig)

    assert str(rule.canonical()) == 'Y, enc_s(X, Y) => X'
    assert rule.canonical().equivalent(rule)


def test_constructor_rule():
    rule = constructor_rule('pair', 2)

    assert str(rule) == 'X, Y => pair(X, Y)'
    assert str(constructor_rule('zero', 0)) == '=> zero'


def test_system_drops_renamed_duplicates(dy):
    system = DeductionSystem(
        (
            parse_deduction_rule('pair(X, Y) => X', dy.sig),
            parse_deduction_rule('pair(Z, W) => Z', dy.sig),
            parse_deduction_rule('X, Y => pair(X, Y)', dy.sig),
        ),
        dy.sig,
    )

    assert len(system) == 2
    assert system.increasing() == (parse_deduction_rule('X, Y => pair(X, Y)', dy.sig),)
    assert len(system.decreasing()) == 1
    assert system.kind(system.rules[0]) == RuleKind.DECREASING
    assert system.constructor_symbols() == {'pair'}
    assert system.constructor_for('pair') is not None
    assert system.constructor_for('pi1') is None
    assert system.find_equivalent(parse_deduction_rule('pair(U, V) => U', dy.sig)) is not None


def test_modulo_h_shape(dy):
    with pytest.raises(ValueError):
        DeductionSystem((parse_deduction_rule('pair(X, Y) => X', dy.sig),), dy.sig, TheoryTag.MODULO_H)

    with pytest.raises(ValueError):
        DeductionSystem((parse_deduction_rule('X => pair(X, X)', dy.sig),), dy.sig, TheoryTag.MODULO_H)

    assert len(dy.l0) == 7
    assert dy.l0.theory_tag == TheoryTag.MODULO_H


def test_rule_instances(dy, term):
    rule = parse_deduction_rule('enc_s(X, Y), Y => X', dy.sig)
    knowledge = [term('enc_s(s, k)'), term('k'), term('enc_s(t, j)')]

    found = list(rule_instances(rule, knowledge))

    assert len(found) == 1
    assert found[0][Var('X')] == const('s')


def test_derivable_within(dy, term):
    rules = [
        parse_deduction_rule('enc_s(X, Y), Y => X', dy.sig),
        parse_deduction_rule('pair(X, Y) => X', dy.sig),
        parse_deduction_rule('pair(X, Y) => Y', dy.sig),
        parse_deduction_rule('X, Y => pair(X, Y)', dy.sig),
    ]

    knowledge = [term('enc_s(s, k)'), term('pair(a, k)')]

    assert derivable_within(knowledge, const('s'), rules, 2)
    assert not derivable_within(knowledge, const('s'), rules, 1)
    assert derivable_within(knowledge, term('pair(s, a)'), rules, 3)
    assert not derivable_within(knowledge, const('b'), rules, 5)
    assert derivable_within(knowledge, term('enc_s(s, k)'), rules, 0)
    assert not derivable_within([], App('pair', (const('a'), const('a'))), rules, 4)
