"""Tests for random generators, and randomized agreement between decision procedures and the oracle."""

import pytest

from fvsat.constraints import (
    GroundConstraintSystem,
    GroundVerdict,
    SolveStatus,
    decide_ground,
    ground_derivation,
    oracle_closure,
    prepare,
    replay_derivation,
    solve,
    solve_reachability,
    verify_witness,
    wellformed_violation,
)
from fvsat.randgen import make_rng, random_bundle, random_constraint_system, random_ground_instance, random_term
from fvsat.rewrite import is_normal, normalize
from fvsat.subterm import solve_subterm
from fvsat.term import Var, is_ground, positions
from fvsat.theories import bundle_to_dict, parse_theory, serialize_theory

SEEDS = range(12)

SYSTEM_SEEDS = range(100)


@pytest.fixture(scope='module')
def dy_constructors(dy):
    return [symbol for symbol in dy.sig.symbols if symbol.name in {'pair', 'enc_s', 'enc_a', 'pk', 'sk'}]


def test_seed_reproducible(dy):
    first = random_constraint_system(make_rng(7), dy.sig)
    second = random_constraint_system(make_rng(7), dy.sig)

    assert first == second
    assert random_ground_instance(make_rng(3), dy.sig) == random_ground_instance(make_rng(3), dy.sig)


def test_random_term_depth(dy):
    rng = make_rng(1)

    for _ in range(20):
        t = random_term(rng, dy.sig.symbols, [Var('X')], 3)
        assert max(len(pos) for pos, _ in positions(t)) <= 3

    with pytest.raises(ValueError):
        random_term(rng, dy.sig.symbols, [], 2)


@pytest.mark.parametrize('seed', SEEDS)
def test_random_constraint_system_wellformed(dy, seed):
    system = random_constraint_system(make_rng(seed), dy.sig, max_constraints=4)

    assert 1 <= len(system) <= 4
    assert wellformed_violation(system) is None

    for before, after in zip(system.constraints, system.constraints[1:]):
        assert before.knowledge <= after.knowledge


@pytest.mark.parametrize('seed', SEEDS)
def test_random_ground_instance(dy, seed):
    knowledge, goal = random_ground_instance(make_rng(seed), dy.sig, dy.rewrite)

    assert knowledge
    assert is_ground(goal)
    assert all(is_normal(member, dy.rewrite) for member in knowledge)


@pytest.mark.parametrize('seed', SYSTEM_SEEDS)
def test_random_bundle(seed):
    bundle = random_bundle(make_rng(seed))

    assert bundle.subterm_convergent
    assert bundle_to_dict(parse_theory(serialize_theory(bundle))) == bundle_to_dict(bundle)


@pytest.mark.parametrize('seed', SEEDS)
@pytest.mark.parametrize('name', ['dy', 'blind', 'dsks'])
def test_decide_ground_agrees_with_oracle(request, name, seed):
    bundle = request.getfixturevalue(name)
    rules = request.getfixturevalue(f'{name}_saturated').system
    rng = make_rng(seed)

    for _ in range(200 // len(SEEDS) + 1):
        knowledge, goal = random_ground_instance(rng, bundle.sig, bundle.rewrite, max_depth=2)
        system = GroundConstraintSystem(((knowledge, goal),))
        verdict = decide_ground(system, rules)

        if goal in oracle_closure(knowledge, rules, 6, universe=(goal,)):
            assert verdict == GroundVerdict.VAL

        if verdict == GroundVerdict.VAL:
            assert replay_derivation(knowledge, ground_derivation(knowledge, goal, rules), goal)


@pytest.mark.parametrize('seed', SEEDS)
@pytest.mark.parametrize('name', ['dy', 'blind', 'dsks'])
def test_decide_ground_complete_for_theory(request, name, seed):
    bundle = request.getfixturevalue(name)
    rules = request.getfixturevalue(f'{name}_saturated').system
    rng = make_rng(seed + 100)

    for _ in range(200 // len(SEEDS) + 1):
        knowledge, goal = random_ground_instance(rng, bundle.sig, bundle.rewrite, max_terms=2, max_depth=2)

        if goal in oracle_closure(knowledge, bundle.l0, 1, rewrite=bundle.rewrite):
            assert decide_ground(GroundConstraintSystem(((knowledge, goal),)), rules) == GroundVerdict.VAL


@pytest.mark.parametrize('seed', SYSTEM_SEEDS)
def test_solvers_agree(dy, dy_saturated, dy_subterm, dy_constructors, seed):
    system = random_constraint_system(make_rng(seed), dy.sig, max_constraints=2, symbols=dy_constructors)

    general = solve(system, dy_saturated.system, budget=2_000)
    decided = solve_subterm(system, dy_subterm.system)

    assert decided.status in {SolveStatus.SAT, SolveStatus.FAIL}

    if general.status != SolveStatus.UNKNOWN:
        assert general.status == decided.status


@pytest.mark.parametrize('seed', SYSTEM_SEEDS)
def test_contracting_solve_terminates(dy, dy_saturated, seed):
    system = random_constraint_system(make_rng(seed), dy.sig, max_constraints=2)

    for prepared in prepare(system, dy.rewrite):
        outcome = solve(prepared, dy_saturated.system, check_progress=True)

        assert outcome.status != SolveStatus.UNKNOWN

        if outcome.sat:
            assert verify_witness(prepared, dy_saturated.system, outcome.witness)


@pytest.mark.parametrize('seed', SEEDS)
def test_reachability_witness(dy, dy_saturated, seed):
    system = random_constraint_system(make_rng(seed), dy.sig, max_constraints=2)
    outcome = solve_reachability(system, dy.rewrite, dy_saturated.system, check_progress=True)

    assert outcome.status != SolveStatus.UNKNOWN

    if outcome.sat:
        instance = system.apply(outcome.witness)
        ground = GroundConstraintSystem(tuple(
            (frozenset(normalize(member, dy.rewrite) for member in c.knowledge), normalize(c.goal, dy.rewrite))
            for c in instance.constraints
        ))

        assert decide_ground(ground, dy_saturated.system) == GroundVerdict.VAL

        for knowledge, goal in ground.constraints:
            assert replay_derivation(knowledge, ground_derivation(knowledge, goal, dy_saturated.system), goal)
