"""Tests for constraint systems, ground decision, and the general solver."""

import pytest

from fvsat.constraints import (
    ConstraintError,
    ConstraintSystem,
    ConstraintTag,
    DeductionConstraint,
    GroundConstraintSystem,
    GroundVerdict,
    SolveStatus,
    apply_reduce1,
    apply_reduce2,
    apply_unif,
    check_wellformed,
    decide_ground,
    ground_derivation,
    oracle_closure,
    premise_mappings,
    prepare,
    prepare_branches,
    replay_derivation,
    solve,
    solve_reachability,
    solved_form_witness,
    verify_witness,
    wellformed_violation,
)
from fvsat.rewrite import normalize
from fvsat.term import App, Substitution, Var, apply, const, is_ground
from fvsat.theories import parse_constraints, parse_deduction_rule

X = Var('X')


def knowledge(term, *texts):
    return frozenset(term(text) for text in texts)


def test_system_basics(term):
    system = ConstraintSystem((
        DeductionConstraint(knowledge(term, 'a'), X),
        DeductionConstraint(knowledge(term, 'a', 'enc_s(s, X)'), term('s')),
    ))

    assert len(system) == 2
    assert system.variables == {X}
    assert not system.solved
    assert str(system.constraints[1]) == '{a, enc_s(s, X)} |> s'
    assert check_wellformed(system)

    renamed = system.apply(Substitution({X: Var('Q')}))
    assert renamed.canonical_key() == system.canonical_key()


@pytest.mark.parametrize('text, index', [
    ('knows X\ndeduce a', 0),
    ('knows a\ndeduce b\nknows Y\ndeduce X', 1),
])
def test_wellformed_violation(dy, text, index):
    with pytest.raises(ConstraintError) as exc_info:
        parse_constraints(text, dy)

    assert exc_info.value.index == index


def test_knowledge_shrinks(term):
    constraints = [
        DeductionConstraint(knowledge(term, 'a', 'b'), term('a')),
        DeductionConstraint(knowledge(term, 'a'), term('a')),
    ]

    index, message = wellformed_violation(constraints)

    assert index == 1
    assert 'shrinks' in message


def test_ground_system_checks(term):
    with pytest.raises(ConstraintError):
        GroundConstraintSystem(((knowledge(term, 'a'), X),))

    with pytest.raises(ConstraintError):
        GroundConstraintSystem(((knowledge(term, 'a', 'b'), term('a')), (knowledge(term, 'b'), term('b'))))


@pytest.mark.parametrize('members, goal, verdict', [
    (('enc_s(s, k)', 'k'), 's', GroundVerdict.VAL),
    (('enc_s(s, k)',), 's', GroundVerdict.INVAL),
    (('a', 'b'), 'pair(a, pair(b, a))', GroundVerdict.VAL),
    (('pair(a, enc_s(s, k))', 'b'), 'pair(s, b)', GroundVerdict.INVAL),
    (('pair(a, enc_s(s, k))', 'pair(k, b)'), 'pair(s, b)', GroundVerdict.VAL),
    (('enc_a(s, pk(n))', 'sk(n)'), 's', GroundVerdict.VAL),
    (('enc_a(s, pk(n))', 'pk(n)'), 's', GroundVerdict.INVAL),
    (('a',), 'a', GroundVerdict.VAL),
])
def test_decide_ground(dy_saturated, dy, term, members, goal, verdict):
    known = frozenset(normalize(term(member), dy.rewrite) for member in members)
    target = normalize(term(goal), dy.rewrite)

    system = GroundConstraintSystem(((known, target),))

    assert decide_ground(system, dy_saturated.system) == verdict

    steps = ground_derivation(known, target, dy_saturated.system)

    if verdict == GroundVerdict.VAL:
        assert steps is not None
        assert replay_derivation(known, steps, target)
    else:
        assert steps is None


def test_decide_ground_sequence(dy_saturated, term):
    first = knowledge(term, 'enc_s(s, k)')
    second = first | knowledge(term, 'k')

    sequence = GroundConstraintSystem(((first, term('enc_s(s, k)')), (second, term('s'))))
    assert decide_ground(sequence, dy_saturated.system) == GroundVerdict.VAL

    sequence = GroundConstraintSystem(((first, term('s')), (second, term('s'))))
    assert decide_ground(sequence, dy_saturated.system) == GroundVerdict.INVAL


def test_derivation_steps(dy_saturated, term):
    known = knowledge(term, 'enc_s(s, k)', 'k')
    steps = ground_derivation(known, term('s'), dy_saturated.system)

    assert steps[-1].conclusion == term('s')
    assert ' => s  [' in str(steps[-1])
    assert ground_derivation(known, term('k'), dy_saturated.system) == []
    assert not replay_derivation(known, steps, term('t'))
    assert not replay_derivation(knowledge(term, 'k'), steps, term('s'))


def test_oracle_closure(dy_saturated, dy, term):
    known = knowledge(term, 'pair(a, enc_s(s, k))', 'k')

    assert oracle_closure(known, dy_saturated.system, 0) == known
    assert term('a') in oracle_closure(known, dy_saturated.system, 1)
    assert term('s') not in oracle_closure(known, dy_saturated.system, 1)
    assert term('s') in oracle_closure(known, dy_saturated.system, 2)

    goal = term('pair(s, a)')
    assert goal in oracle_closure(known, dy_saturated.system, 3, universe=(goal,))
    assert term('a') in oracle_closure(known, dy.l0, 1, rewrite=dy.rewrite)


def test_premise_mappings(dy, term):
    rule = parse_deduction_rule('sk(Y), enc_a(X, pk(Y)) => X', dy.sig)
    members = [term('sk(a)'), term('sk(b)'), term('enc_a(m, pk(a))'), term('pair(a, b)')]

    found = list(premise_mappings(rule, members))

    assert len(found) == 2
    assert all(mapping[0].symbol == 'sk' and mapping[1].symbol == 'enc_a' for mapping in found)
    assert list(premise_mappings(rule, [term('sk(a)')])) == []
    assert list(premise_mappings(parse_deduction_rule('X, Y => pair(X, Y)', dy.sig), members)) == [()]


def test_apply_unif(term):
    system = ConstraintSystem((DeductionConstraint(knowledge(term, 'pair(a, b)'), term('pair(a, X)')),))

    step = apply_unif(system, 0, term('pair(a, b)'))

    assert len(step.system) == 0
    assert step.sigma[X] == term('b')
    assert apply_unif(system, 0, term('enc_s(a, b)')) is None


def test_apply_reduce1(dy, term):
    system = ConstraintSystem((DeductionConstraint(knowledge(term, 'a', 'b'), term('pair(a, b)')),))

    step = apply_reduce1(system, 0, dy.l0.constructor_for('pair'), ())

    assert [str(constraint.goal) for constraint in step.system] == ['a', 'b']
    assert all(constraint.knowledge == knowledge(term, 'a', 'b') for constraint in step.system)
    assert apply_reduce1(system, 0, dy.l0.constructor_for('pi1'), ()) is None

    with pytest.raises(ValueError):
        apply_reduce1(system, 5, dy.l0.constructor_for('pair'), ())


def test_apply_reduce2(dy, term):
    rule = parse_deduction_rule('Y, enc_s(X, Y) => X', dy.sig)
    system = ConstraintSystem((
        DeductionConstraint(knowledge(term, 'enc_s(s, k)', 'k'), term('s')),
        DeductionConstraint(knowledge(term, 'enc_s(s, k)', 'k', 'b'), term('b')),
    ))

    step = apply_reduce2(system, 0, rule, (term('enc_s(s, k)'),))

    assert len(step.system) == 3
    assert step.system.constraints[0].goal == term('k')
    assert all(term('s') in constraint.knowledge for constraint in step.system.constraints[1:])
    assert term('s') not in step.system.constraints[0].knowledge

    tagged = apply_reduce2(system, 0, rule, (term('enc_s(s, k)'),), premise_tag=ConstraintTag.INC)
    assert tagged.system.constraints[0].tag == ConstraintTag.INC
    assert tagged.system.constraints[1].tag == ConstraintTag.PLAIN

    known = ConstraintSystem((DeductionConstraint(knowledge(term, 'enc_s(s, k)', 'k', 's'), term('t')),))
    assert apply_reduce2(known, 0, rule, (term('enc_s(s, k)'),)) is None


def test_prepare_branches(dy, term):
    system = parse_constraints('knows pair(a, b)\ndeduce X\neq pi1(X) = a', dy)
    branches = prepare_branches(system, dy.rewrite)

    assert len(branches) == 1
    assert not branches[0].system.unif.equations
    assert branches[0].substitution[X].symbol == 'pair'
    assert branches[0].substitution[X].args[0] == term('a')

    assert prepare(parse_constraints('knows a\ndeduce X\neq X = b\neq X = a', dy), dy.rewrite) == []


def test_solved_form_witness(dy, term):
    system = ConstraintSystem((
        DeductionConstraint(knowledge(term, 'pair(a, b)', 'c'), X),
        DeductionConstraint(knowledge(term, 'pair(a, b)', 'c', 'enc_s(X, c)'), Var('Y')),
    ))

    witness = solved_form_witness(system, dy.l0)

    assert witness[X] == term('c')
    assert witness[Var('Y')] == term('c')
    assert verify_witness(system, dy.l0, witness)
    assert not verify_witness(system, dy.l0, Substitution({X: term('d'), Var('Y'): term('c')}))

    with pytest.raises(ValueError):
        solved_form_witness(ConstraintSystem((DeductionConstraint(knowledge(term, 'a'), term('a')),)), dy.l0)


@pytest.mark.parametrize('text, status', [
    ('knows enc_s(s, k), k\ndeduce s', SolveStatus.SAT),
    ('knows enc_s(s, k)\ndeduce s', SolveStatus.FAIL),
    ('knows a, b\ndeduce pair(a, pair(b, a))', SolveStatus.SAT),
    ('knows a\ndeduce X\nknows enc_s(s, X)\ndeduce s', SolveStatus.SAT),
    ('knows enc_s(s, k), k\ndeduce X\neq X = s', SolveStatus.SAT),
    ('knows enc_s(s, k)\ndeduce X\neq X = s', SolveStatus.FAIL),
])
def test_solve_reachability(dy_saturated, dy, text, status):
    system = parse_constraints(text, dy)
    outcome = solve_reachability(system, dy.rewrite, dy_saturated.system)

    assert outcome.status == status

    if status == SolveStatus.SAT:
        assert outcome.sat
        assert set(outcome.witness) <= system.variables
        assert is_ground([outcome.witness[var] for var in system.variables])
        assert outcome.trace[0].startswith('branch ')
    else:
        assert outcome.witness is None


def test_solve_reachability_equation_witness(dy_saturated, dy):
    system = parse_constraints('knows enc_s(s, k), k\ndeduce X\neq X = s', dy)
    outcome = solve_reachability(system, dy.rewrite, dy_saturated.system)

    assert outcome.witness[X] == const('s')


def test_solve_modulo_theory(dy_saturated, dy, term):
    system = parse_constraints('knows pair(a, b)\ndeduce X\neq pi1(X) = a', dy)
    outcome = solve_reachability(system, dy.rewrite, dy_saturated.system)

    assert outcome.sat
    assert normalize(App('pi1', (outcome.witness[X],)), dy.rewrite) == term('a')


def test_solve_reachability_not_wellformed(dy_saturated, dy, term):
    system = ConstraintSystem((DeductionConstraint(knowledge(term, 'enc_s(s, X)'), term('s')),))

    with pytest.raises(ConstraintError):
        solve_reachability(system, dy.rewrite, dy_saturated.system)


def test_solve_budget(dy_saturated, dy):
    system = prepare(parse_constraints('knows enc_s(s, k), k\ndeduce s', dy), dy.rewrite)[0]

    assert solve(system, dy_saturated.system).sat
    assert solve(system, dy_saturated.system, budget=1).status in {SolveStatus.UNKNOWN, SolveStatus.SAT}

    assert solve(system, dy_saturated.system, check_progress=True).sat


def test_solve_witness_satisfies(dy_saturated, dy):
    system = parse_constraints('knows a\ndeduce X\nknows enc_s(s, X)\ndeduce s', dy)
    outcome = solve_reachability(system, dy.rewrite, dy_saturated.system)

    instance = system.apply(outcome.witness)
    ground = GroundConstraintSystem(tuple((c.knowledge, c.goal) for c in instance.constraints))

    assert decide_ground(ground, dy_saturated.system) == GroundVerdict.VAL
    assert apply(X, outcome.witness) == const('a')
