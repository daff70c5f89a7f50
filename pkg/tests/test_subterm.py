"""Tests for the subterm convergent decision procedure."""

import pytest

from fvsat.constraints import SolveStatus, prepare
from fvsat.randgen import make_rng, random_constraint_system
from fvsat.saturate import RuleOrigin
from fvsat.subterm import saturate_subterm, solve_subterm, solve_subterm_reachability
from fvsat.term import Var, apply, const, subterms
from fvsat.theories import parse_constraints


def prepared(text, bundle):
    systems = prepare(parse_constraints(text, bundle), bundle.rewrite)
    assert len(systems) == 1

    return systems[0]


def test_saturate_subterm_dy(dy_subterm, dy):
    assert not dy_subterm.diverged
    assert len(dy_subterm.system) == 13

    for entry in dy_subterm.provenance:
        if entry.origin != RuleOrigin.L0:
            assert entry.rule.rhs in subterms(entry.rule.lhs, strict=True)


def test_saturate_subterm_rejects_blind(blind):
    with pytest.raises(ValueError):
        saturate_subterm(blind.l0, blind.rewrite)


def test_solve_subterm_one_guess(dy_subterm, dy):
    outcome = solve_subterm(prepared('knows enc_s(s, k), k\ndeduce s', dy), dy_subterm.system)

    assert outcome.status == SolveStatus.SAT
    assert outcome.stats['max_guesses'] == 1
    assert outcome.stats['max_guesses'] <= outcome.stats['max_guess_bound']


def test_solve_subterm_no_guess(dy_subterm, dy):
    outcome = solve_subterm(prepared('knows a, b\ndeduce pair(a, pair(b, a))', dy), dy_subterm.system)

    assert outcome.status == SolveStatus.SAT
    assert outcome.stats['max_guesses'] == 0
    assert outcome.stats['guesses'] == 0


@pytest.mark.parametrize('text', [
    'knows enc_s(s, k)\ndeduce s',
    'knows enc_a(s, pk(n)), pk(n)\ndeduce s',
    'knows pair(a, enc_s(s, k)), b\ndeduce pair(s, b)',
])
def test_solve_subterm_fail(dy_subterm, dy, text):
    outcome = solve_subterm(prepared(text, dy), dy_subterm.system)

    assert outcome.status == SolveStatus.FAIL
    assert outcome.stats['max_guesses'] <= outcome.stats['max_guess_bound']


def test_solve_subterm_reachability(dy_subterm, dy):
    system = parse_constraints('knows a\ndeduce X\nknows enc_s(s, X)\ndeduce s', dy)
    outcome = solve_subterm_reachability(system, dy.rewrite, dy_subterm.system)

    assert outcome.sat
    assert apply(Var('X'), outcome.witness) == const('a')


@pytest.mark.parametrize('text, status', [
    ('knows pair(a, b)\ndeduce X\neq pi1(X) = a', SolveStatus.SAT),
    ('knows enc_s(s, k)\ndeduce X\neq X = s', SolveStatus.FAIL),
    ('knows enc_s(s, k), k\ndeduce X\neq X = s', SolveStatus.SAT),
])
def test_solve_subterm_reachability_equations(dy_subterm, dy, text, status):
    system = parse_constraints(text, dy)

    assert solve_subterm_reachability(system, dy.rewrite, dy_subterm.system).status == status


def test_solve_subterm_reachability_rejects_blind(blind):
    system = parse_constraints('knows a\ndeduce a', blind)

    with pytest.raises(ValueError):
        solve_subterm_reachability(system, blind.rewrite, blind.l0)


@pytest.mark.parametrize('seed', range(30))
def test_guesses_within_bound(dy, dy_subterm, seed):
    system = random_constraint_system(make_rng(seed), dy.sig, max_constraints=2)

    for branch in prepare(system, dy.rewrite):
        outcome = solve_subterm(branch, dy_subterm.system)

        assert outcome.status in {SolveStatus.SAT, SolveStatus.FAIL}
        assert outcome.stats['max_guesses'] <= outcome.stats['max_guess_bound']
