"""Transformation rules on constraint systems."""

__all__ = [
    'StepResult',
    'apply_unif',
    'apply_reduce1',
    'apply_reduce2',
]

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from ..deduction import DeductionRule
from ..term import Substitution, Term, Var, apply, rename_apart
from ..unify import try_mgu

from ._system import ConstraintSystem, ConstraintTag, DeductionConstraint


@dataclass(frozen=True)
class StepResult:
    """Result of one transformation.

    :param system: Transformed system.
    :param sigma: Unifier applied to the system.
    :param label: Short description for traces.
    """
    system: ConstraintSystem
    sigma: Substitution
    label: str


def _check_goal(system: ConstraintSystem, index: int) -> DeductionConstraint:
    if index < 0 or index >= len(system.constraints):
        raise ValueError(f'Constraint index out of range: {index} (system has {len(system.constraints)} constraints)')

    constraint = system.constraints[index]

    if isinstance(constraint.goal, Var):
        raise ValueError(f'Constraint {index + 1} is already solved: {constraint}')

    return constraint


def _premise_equations(rule: DeductionRule, renaming: Substitution, mapping: Sequence[Term]) -> list:
    if len(mapping) != len(rule.nonvar):
        raise ValueError(
            f'Rule {rule} has {len(rule.nonvar)} non-variable premises, mapping has {len(mapping)} members'
        )

    return [(member, apply(premise, renaming)) for member, premise in zip(mapping, rule.nonvar)]


def apply_unif(system: ConstraintSystem, index: int, member: Term) -> Optional[StepResult]:
    """Solve a constraint by unifying its goal with a knowledge member.

    :param system: Constraint system.
    :param index: Index of a constraint with a non-variable goal.
    :param member: Non-variable knowledge member.

    :returns: System without the constraint, instantiated by the unifier, or `None` if the terms do not unify.
    """
    constraint = _check_goal(system, index)

    sigma = try_mgu(((member, constraint.goal),))

    if sigma is None:
        return None

    constraints = system.constraints[:index] + system.constraints[index + 1:]

    return StepResult(
        ConstraintSystem(constraints, system.unif).apply(sigma),
        sigma,
        f'unif {index + 1} with {member}',
    )


def apply_reduce1(
        system: ConstraintSystem,
        index: int,
        rule: DeductionRule,
        mapping: Sequence[Term],
) -> Optional[StepResult]:
    """Solve a constraint goal with the last step of an increasing rule.

    :param system: Constraint system.
    :param index: Index of a constraint with a non-variable goal.
    :param rule: Increasing rule.
    :param mapping: Knowledge members for the non-variable premises of `rule` (aligned with `rule.nonvar`).

    :returns: System where the constraint is replaced by one constraint per variable premise of the rule, or `None`
        if the premises and conclusion do not unify.
    """
    constraint = _check_goal(system, index)
    renaming = rename_apart(rule.variables)

    equations = _premise_equations(rule, renaming, mapping)
    equations.append((apply(rule.rhs, renaming), constraint.goal))

    sigma = try_mgu(equations, protected=system.variables)

    if sigma is None:
        return None

    inserted = tuple(
        DeductionConstraint(constraint.knowledge, apply(var, renaming), constraint.tag) for var in rule.var_part
    )

    constraints = system.constraints[:index] + inserted + system.constraints[index + 1:]

    return StepResult(
        ConstraintSystem(constraints, system.unif).apply(sigma),
        sigma,
        f'reduce1 {index + 1} with {rule}',
    )


def apply_reduce2(
        system: ConstraintSystem,
        index: int,
        rule: DeductionRule,
        mapping: Sequence[Term],
        premise_tag: Optional[ConstraintTag] = None,
) -> Optional[StepResult]:
    """Extend the knowledge of a constraint with the conclusion of a decreasing rule.

    The conclusion is added to the knowledge of the constraint and of every later constraint.

    :param system: Constraint system.
    :param index: Index of a constraint with a non-variable goal.
    :param rule: Decreasing rule.
    :param mapping: Knowledge members for the non-variable premises of `rule` (aligned with `rule.nonvar`).
    :param premise_tag: Tag of the constraints inserted for the variable premises. Defaults to the tag of the
        transformed constraint.

    :returns: Transformed system, or `None` if the premises do not unify or the instantiated conclusion is a
        variable or already known.
    """
    constraint = _check_goal(system, index)
    renaming = rename_apart(rule.variables)

    sigma = try_mgu(_premise_equations(rule, renaming, mapping), protected=system.variables)

    if sigma is None:
        return None

    conclusion = apply(apply(rule.rhs, renaming), sigma)
    knowledge = frozenset(apply(member, sigma) for member in constraint.knowledge)

    if isinstance(conclusion, Var) or conclusion in knowledge:
        return None

    tag = constraint.tag if premise_tag is None else premise_tag
    inserted = tuple(
        DeductionConstraint(constraint.knowledge, apply(var, renaming), tag) for var in rule.var_part
    )

    rhs = apply(rule.rhs, renaming)

    extended = (
        DeductionConstraint(constraint.knowledge | {rhs}, constraint.goal, constraint.tag),
    ) + tuple(
        DeductionConstraint(later.knowledge | {rhs}, later.goal, later.tag)
        for later in system.constraints[index + 1:]
    )

    constraints = system.constraints[:index] + inserted + extended

    return StepResult(
        ConstraintSystem(constraints, system.unif).apply(sigma),
        sigma,
        f'reduce2 {index + 1} with {rule}',
    )
