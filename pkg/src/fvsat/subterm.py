"""Decision procedure for subterm convergent theories.

When every rewrite rule has a strict subterm of its left-hand side as its right-hand side, saturation of a
constructor system terminates and every added rule concludes a strict subterm of one of its premises. Constraints are
then solved without a search budget:

* A constraint tagged `inc` may only use increasing rules. Its goal is unified with a knowledge member or decomposed
  with the constructor rule of its head symbol.
* A plain constraint first extends its knowledge with a bounded number of decreasing rule applications, one for each
  non-variable subterm of the knowledge at most, and is then tagged `inc`.
"""

__all__ = [
    'ShapeError',
    'saturate_subterm',
    'solve_subterm',
    'solve_subterm_reachability',
]

from collections import deque
from collections.abc import Iterator
import dataclasses
import logging
from typing import Optional

from . import const

from .constraints import (
    ConstraintSystem,
    ConstraintTag,
    DeductionConstraint,
    SolveOutcome,
    SolveStatus,
    StepResult,
    apply_reduce1,
    apply_reduce2,
    apply_unif,
    premise_mappings,
    solve_reachability,
    solved_form_witness,
    verify_witness,
)
from .deduction import DeductionSystem
from .rewrite import RewriteSystem, check_subterm_convergent
from .saturate import RuleOrigin, SaturationConfig, SaturationResult, saturate
from .term import IDENTITY, Substitution, Var, compose, subterms

logger = logging.getLogger(__name__)


class ShapeError(RuntimeError):
    """A rule added by saturation does not conclude a strict subterm of a premise."""
    pass


def saturate_subterm(
        l0: DeductionSystem,
        rewrite: RewriteSystem,
        cfg: Optional[SaturationConfig] = None,
) -> SaturationResult:
    """Saturate a constructor system modulo a subterm convergent theory.

    Every rule with its conclusion among its premises is deleted, and every rule added to `l0` is checked to
    conclude a strict subterm of one of its premises.

    :param l0: Input system.
    :param rewrite: Subterm convergent rewrite system.
    :param cfg: Saturation bounds. Trivial-rule deletion is always on.

    :returns: Saturation result.

    :raises ValueError: If `rewrite` is not subterm convergent.
    :raises ShapeError: If an added rule does not have the expected shape.
    """
    if not check_subterm_convergent(rewrite):
        raise ValueError('Rewrite system is not subterm convergent: some right-hand side is not a strict subterm')

    cfg = dataclasses.replace(cfg or SaturationConfig(), delete_trivial=True, strict_trivial=True)

    result = saturate(l0, rewrite, cfg)

    for entry in result.provenance:
        if entry.origin == RuleOrigin.L0:
            continue

        if entry.rule.rhs not in subterms(entry.rule.lhs, strict=True):
            raise ShapeError(
                f'Saturated rule does not conclude a strict subterm of a premise (PROGRAM BUG): {entry.rule}'
            )

    return result


def _guess_bound(constraint: DeductionConstraint) -> int:
    return len([t for t in subterms(constraint.knowledge) if not isinstance(t, Var)])


class _SubtermSearch:
    """Depth-first search of the subterm procedure."""

    def __init__(self, root: ConstraintSystem, rules: DeductionSystem) -> None:
        self.root = root
        self.root_vars = root.variables
        self.rules = rules
        self.decreasing = rules.decreasing()

        self.visited: set[tuple] = set()

        self.stats = {
            'nodes': 0,
            'unif': 0,
            'decompose': 0,
            'guesses': 0,
            'max_guesses': 0,
            'max_guess_bound': 0,
            'revisited': 0,
            'unverified': 0,
        }

    def _inc_children(self, system: ConstraintSystem, index: int) -> Iterator[StepResult]:
        constraint = system.constraints[index]

        for member in constraint.sorted_knowledge():
            if isinstance(member, Var):
                continue

            step = apply_unif(system, index, member)

            if step is not None:
                self.stats['unif'] += 1
                yield step

        rule = self.rules.constructor_for(constraint.goal.symbol)

        if rule is not None:
            step = apply_reduce1(system, index, rule, ())

            if step is not None:
                self.stats['decompose'] += 1
                yield StepResult(step.system, step.sigma, f'decompose {index + 1} with {rule}')

    def _guesses(self, system: ConstraintSystem, index: int) -> Iterator[StepResult]:
        """Extend the knowledge of a plain constraint with decreasing rules, then tag it `inc`.

        Breadth-first over the number of applications, up to the number of non-variable subterms of the knowledge.
        """
        bound = _guess_bound(system.constraints[index])
        self.stats['max_guess_bound'] = max(self.stats['max_guess_bound'], bound)

        queue = deque([(system, index, IDENTITY, (), 0)])
        seen = {system.canonical_key()}

        while queue:
            current, current_index, sigma, labels, count = queue.popleft()

            if count > bound:
                raise RuntimeError(f'Guessed {count} decreasing rule applications, bound is {bound} (PROGRAM BUG)')

            self.stats['max_guesses'] = max(self.stats['max_guesses'], count)

            constraint = current.constraints[current_index]
            retagged = (
                current.constraints[:current_index]
                + (DeductionConstraint(constraint.knowledge, constraint.goal, ConstraintTag.INC),)
                + current.constraints[current_index + 1:]
            )

            yield StepResult(
                ConstraintSystem(retagged, current.unif),
                sigma,
                '; '.join(labels + (f'inc {current_index + 1}',)),
            )

            if count >= bound:
                continue

            members = [member for member in constraint.sorted_knowledge() if not isinstance(member, Var)]

            for rule in self.decreasing:
                for mapping in premise_mappings(rule, members):
                    step = apply_reduce2(current, current_index, rule, mapping, premise_tag=ConstraintTag.INC)

                    if step is None:
                        continue

                    key = step.system.canonical_key()

                    if key in seen:
                        continue

                    seen.add(key)
                    self.stats['guesses'] += 1

                    queue.append(
                        (
                            step.system,
                            current_index + len(rule.var_part),
                            compose(sigma, step.sigma),
                            labels + (step.label,),
                            count + 1,
                        )
                    )

    def _leaf(self, system: ConstraintSystem, sigma: Substitution) -> Optional[Substitution]:
        solved = solved_form_witness(system, self.rules)

        if solved is None:
            return None

        witness = compose(sigma, solved).restrict(self.root_vars)

        if not verify_witness(self.root, self.rules, witness):
            self.stats['unverified'] += 1
            logger.warning('Solved form witness could not be verified, continuing search: %s', witness)
            return None

        return witness

    def search(
            self,
            system: ConstraintSystem,
            sigma: Substitution,
            trace: tuple[str, ...],
    ) -> Optional[tuple[Substitution, tuple[str, ...]]]:
        self.stats['nodes'] += 1

        unsolved = [index for index, constraint in enumerate(system.constraints) if not constraint.solved]

        if not unsolved:
            witness = self._leaf(system, sigma)
            return None if witness is None else (witness, trace)

        key = system.canonical_key()

        if key in self.visited:
            self.stats['revisited'] += 1
            return None

        self.visited.add(key)

        inc = [index for index in unsolved if system.constraints[index].tag == ConstraintTag.INC]

        if inc:
            children = self._inc_children(system, inc[0])
        else:
            children = self._guesses(system, unsolved[0])

        for step in children:
            found = self.search(step.system, compose(sigma, step.sigma), trace + (step.label,))

            if found is not None:
                return found

        logger.debug('No solution below: %s', system)

        return None


def solve_subterm(system: ConstraintSystem, rules: DeductionSystem) -> SolveOutcome:
    """Solve a syntactic constraint system with the subterm procedure.

    `stats['max_guesses']` is the largest number of decreasing rule applications guessed for one constraint and never
    exceeds `stats['max_guess_bound']`, the largest number of non-variable knowledge subterms of a guessed constraint.

    :param system: Constraint system without residual equations (see :func:`fvsat.constraints.prepare`).
    :param rules: Result of :func:`saturate_subterm`.

    :returns: `SAT` with a verified witness, or `FAIL`.

    :raises RuntimeError: If more decreasing rule applications are guessed than the bound allows.
    """
    search = _SubtermSearch(system, rules)
    found = search.search(system, IDENTITY, ())

    if found is None:
        return SolveOutcome(SolveStatus.FAIL, stats=search.stats)

    witness, trace = found

    return SolveOutcome(SolveStatus.SAT, witness=witness, trace=trace, stats=search.stats)


def solve_subterm_reachability(
        system: ConstraintSystem,
        rewrite: RewriteSystem,
        rules: DeductionSystem,
        narrow_depth: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> SolveOutcome:
    """Solve a constraint system modulo a subterm convergent theory.

    Branches are prepared as in :func:`fvsat.constraints.solve_reachability` and solved with :func:`solve_subterm`.

    :param system: Well-formed constraint system.
    :param rewrite: Subterm convergent rewrite system.
    :param rules: Result of :func:`saturate_subterm`.
    :param narrow_depth: Narrowing depth bound.
    :param normalize_steps: Rewrite step budget.

    :returns: `SAT` with a witness for the variables of `system`, or `FAIL`.

    :raises ValueError: If `rewrite` is not subterm convergent.
    :raises ConstraintError: If `system` is not well formed.
    """
    if not check_subterm_convergent(rewrite):
        raise ValueError('Rewrite system is not subterm convergent: some right-hand side is not a strict subterm')

    return solve_reachability(
        system, rewrite, rules,
        narrow_depth=narrow_depth,
        normalize_steps=normalize_steps,
        solver=solve_subterm,
    )
