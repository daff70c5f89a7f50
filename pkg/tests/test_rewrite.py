"""Tests for rewriting, orientation, and critical pairs."""

import pytest

from fvsat.rewrite import (
    NormalizationError,
    RewriteRule,
    RewriteSystem,
    UnorientedRuleError,
    check_subterm_convergent,
    critical_pairs,
    eq_mod_h,
    is_normal,
    joinable,
    normalize,
    normalize_subst,
)
from fvsat.term import App, Signature, Substitution, Symbol, Var, const
from fvsat.theories import parse_rewrite_rule

X = Var('X')


@pytest.mark.parametrize('text, expected', [
    ('pi1(pair(a, b))', 'a'),
    ('pi2(pair(a, pair(b, c)))', 'pair(b, c)'),
    ('dec_s(enc_s(a, k), k)', 'a'),
    ('enc_s(dec_s(a, k), k)', 'a'),
    ('dec_s(enc_s(a, k), j)', 'dec_s(enc_s(a, k), j)'),
    ('dec_a(enc_a(m, pk(n)), sk(n))', 'm'),
    ('pi1(pair(dec_s(enc_s(X, Y), Y), Z))', 'X'),
    ('pair(X, Y)', 'pair(X, Y)'),
])
def test_normalize(dy, term, text, expected):
    t = term(text)

    assert normalize(t, dy.rewrite) == term(expected)
    assert normalize(t, dy.rewrite, strategy='outermost') == term(expected)
    assert is_normal(normalize(t, dy.rewrite), dy.rewrite)


def test_normalize_bad_strategy(dy, term):
    with pytest.raises(ValueError):
        normalize(term('pi1(pair(a, b))'), dy.rewrite, strategy='random')


def test_normalize_budget(dy, term):
    t = term('pi1(pair(pi1(pair(a, b)), b))')

    assert normalize(t, dy.rewrite, step_budget=2) == term('a')

    with pytest.raises(NormalizationError):
        normalize(t, dy.rewrite, step_budget=1)


def test_normalize_subst(dy, term):
    sigma = normalize_subst(Substitution({X: term('pi2(pair(a, b))')}), dy.rewrite)
    assert sigma[X] == term('b')


def test_eq_mod_h(dy, term):
    assert eq_mod_h(term('pi1(pair(a, b))'), term('dec_s(enc_s(a, k), k)'), dy.rewrite)
    assert not eq_mod_h(term('a'), term('b'), dy.rewrite)


def test_rule_checks(dy):
    with pytest.raises(ValueError):
        RewriteRule(X, const('a'))

    with pytest.raises(ValueError):
        RewriteRule(App('pi1', (X,)), Var('Y'))

    with pytest.raises(UnorientedRuleError):
        RewriteSystem((RewriteRule(App('pk', (X,)), App('pi1', (X,))),), dy.sig)

    with pytest.raises(ValueError):
        RewriteSystem((RewriteRule(App('pi1', (const('free'),)), const('free')),), dy.sig)


def test_subterm_convergent(dy, blind):
    assert check_subterm_convergent(dy.rewrite)
    assert not check_subterm_convergent(blind.rewrite)


def test_critical_pairs_joinable(dy, blind):
    pairs = critical_pairs(dy.rewrite)

    assert pairs
    assert all(joinable(pair, dy.rewrite) for pair in pairs)
    assert all(joinable(pair, blind.rewrite) for pair in critical_pairs(blind.rewrite))


def test_critical_pair_not_joinable():
    sig = Signature(
        (Symbol('f', 1), Symbol('g', 1), Symbol('a', 0), Symbol('b', 0), Symbol('c', 0)),
        ('c', 'b', 'a', 'g', 'f'),
    )

    rules = RewriteSystem(
        (parse_rewrite_rule('f(g(X)) -> a', sig), parse_rewrite_rule('g(b) -> c', sig)),
        sig,
    )

    pairs = critical_pairs(rules)

    assert len(pairs) == 1
    assert pairs[0].overlap == App('f', (App('g', (const('b'),)),))
    assert pairs[0].position == (0,)
    assert {pairs[0].left, pairs[0].right} == {const('a'), App('f', (const('c'),))}
    assert not joinable(pairs[0], rules)
