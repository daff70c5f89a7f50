"""Tests for syntactic unification and matching."""

import pytest

from fvsat.randgen import make_rng, random_term
from fvsat.term import App, Substitution, Symbol, Var, apply, compose, const
from fvsat.unify import UnificationError, UnificationSystem, match, match_into_set, mgu, try_mgu, unifiable

X, Y, Z = Var('X'), Var('Y'), Var('Z')
a, b = const('a'), const('b')


def f(*args):
    return App('f', args)


def g(*args):
    return App('g', args)


@pytest.mark.parametrize('s, t', [
    (f(X, b), f(a, Y)),
    (f(X, g(X)), f(g(Y), Z)),
    (f(X, Y), f(Y, X)),
    (g(f(X, a)), g(f(b, Y))),
])
def test_mgu_unifies(s, t):
    sigma = mgu([(s, t)])
    assert apply(s, sigma) == apply(t, sigma)


def test_mgu_most_general():
    sigma = mgu([(f(X, b), f(a, Y))])

    assert sigma[X] == a
    assert sigma[Y] == b
    assert len(sigma) == 2


def test_mgu_idempotent():
    sigma = mgu([(f(X, Y), f(g(Y), g(Z)))])

    for var in sigma:
        assert apply(sigma[var], sigma) == sigma[var]


@pytest.mark.parametrize('s, t, reason', [
    (f(X, a), f(Y, b), 'clash'),
    (f(a), g(a), 'clash'),
    (X, g(X), 'occurs'),
    (f(X, X), f(Y, g(Y)), 'occurs'),
])
def test_mgu_fails(s, t, reason):
    with pytest.raises(UnificationError) as exc_info:
        mgu([(s, t)])

    assert exc_info.value.reason == reason
    assert try_mgu([(s, t)]) is None
    assert not unifiable(s, t)


def test_unification_system():
    system = UnificationSystem(((X, a), (f(X, Y), f(a, b))))

    assert len(system) == 2
    assert apply(f(X, Y), system.mgu()) == f(a, b)


def test_match():
    assert match(f(X, Y), f(a, g(b))) == mgu([(X, a), (Y, g(b))])
    assert match(f(X, X), f(a, b)) is None
    assert match(a, X) is None
    assert match(f(X, Z), f(Y, Z)) is not None
    assert match(f(X, Y), f(a, b), base=mgu([(X, b)])) is None


def test_match_into_set():
    found = list(match_into_set([f(X, Y), Y], [f(a, b), f(b, a), b]))

    assert [members for _, members in found] == [(f(a, b), b)]
    assert found[0][0] == mgu([(X, a), (Y, b)])
    assert list(match_into_set([f(X, Y), Y], [f(a, b), f(b, b), a])) == []


def test_match_into_set_shared_variable():
    found = list(match_into_set([f(X, Y), g(Y)], [f(a, b), f(b, a), g(a)]))

    assert [members for _, members in found] == [(f(b, a), g(a))]
    assert found[0][0][X] == b


@pytest.mark.parametrize('seed', range(10))
def test_mgu_factors_every_unifier(seed):
    rng = make_rng(seed)
    symbols = [Symbol('f', 2), Symbol('g', 1), Symbol('a', 0), Symbol('b', 0)]

    for _ in range(10):
        s = random_term(rng, symbols, [X, Y, Z], 3)
        rho = Substitution({X: random_term(rng, symbols, [Y, Z], 2)})
        t = apply(s, rho)
        tau = compose(rho, Substitution({Y: random_term(rng, symbols, [], 2), Z: random_term(rng, symbols, [], 2)}))

        assert apply(s, tau) == apply(t, tau)

        sigma = mgu([(s, t)])

        for var in (X, Y, Z):
            assert apply(apply(var, sigma), tau) == apply(var, tau)
