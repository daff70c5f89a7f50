"""Variant guessing: reduce a constraint system modulo a theory to syntactic constraint systems."""

__all__ = [
    'PreparedBranch',
    'prepare_branches',
    'prepare',
]

from dataclasses import dataclass
import logging

from .. import const

from ..rewrite import RewriteSystem, is_normal
from ..term import Substitution, Var, canonical_renaming, compose, positions
from ..unify import UnificationSystem, try_mgu
from ..variants import variants_tuple

from ._system import ConstraintSystem, DeductionConstraint

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreparedBranch:
    """A syntactic constraint system from one variant and unifier guess.

    :param system: Constraint system without equations.
    :param substitution: Maps each variable of the input system to a term over the variables of `system`. A solution
        `s` of `system` gives the solution `normalize(apply(substitution[x], s))` of the input.
    """
    system: ConstraintSystem
    substitution: Substitution


def _rebuild(system: ConstraintSystem, reducts: tuple) -> tuple[list[DeductionConstraint], list[tuple]]:
    """Rebuild constraints and equations from reducts aligned with `system.terms()`."""
    position = 0
    constraints = []

    for constraint in system.constraints:
        size = len(constraint.knowledge)
        knowledge = frozenset(reducts[position:position + size])
        goal = reducts[position + size]
        position += size + 1

        constraints.append(DeductionConstraint(knowledge, goal, constraint.tag))

    equations = []

    while position < len(reducts):
        equations.append((reducts[position], reducts[position + 1]))
        position += 2

    return constraints, equations


def prepare_branches(
        system: ConstraintSystem,
        rules: RewriteSystem,
        narrow_depth: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> list[PreparedBranch]:
    """Guess a variant substitution of all terms of a system and solve its equations syntactically.

    One branch is produced for each variant `theta` of the tuple of all terms of `system` whose normalized equations
    have a most general unifier `mu`. The branch holds the normalized constraints instantiated by `mu`, with variables
    renamed canonically. Branches whose instantiated terms are no longer normal are dropped (a more general variant
    covers them), and branches equal up to renaming are kept once.

    :param system: Constraint system modulo the theory of `rules`.
    :param rules: Rewrite system.
    :param narrow_depth: Narrowing depth bound.
    :param normalize_steps: Rewrite step budget.

    :returns: Branches in a deterministic order.

    :raises FiniteVariantError: If variant computation fails.
    """
    terms = system.terms()
    input_vars = system.variables

    branches = []
    seen = set()

    for theta, reducts in variants_tuple(terms, rules, narrow_depth, normalize_steps):
        constraints, equations = _rebuild(system, reducts)

        mu = try_mgu(equations)

        if mu is None:
            continue

        branch_system = ConstraintSystem(tuple(constraint.apply(mu) for constraint in constraints), UnificationSystem())

        if not all(is_normal(t, rules) for t in branch_system.terms()):
            continue

        ordered = []
        ordered_set = set()

        for t in branch_system.terms():
            for _, sub in positions(t):
                if isinstance(sub, Var) and sub not in ordered_set:
                    ordered_set.add(sub)
                    ordered.append(sub)

        renaming = canonical_renaming(ordered)
        branch_system = branch_system.apply(renaming)

        key = branch_system.canonical_key()

        if key in seen:
            continue

        seen.add(key)

        substitution = compose(compose(theta, mu), renaming).restrict(input_vars)

        branches.append(PreparedBranch(branch_system, substitution))

    logger.debug('Prepared %d branches from %d constraints', len(branches), len(system))

    return branches


def prepare(
        system: ConstraintSystem,
        rules: RewriteSystem,
        narrow_depth: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> list[ConstraintSystem]:
    """Get the syntactic constraint systems of :func:`prepare_branches`."""
    return [branch.system for branch in prepare_branches(system, rules, narrow_depth, normalize_steps)]
