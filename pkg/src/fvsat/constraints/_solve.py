"""Backtracking constraint solver."""

__all__ = [
    'ProgressError',
    'premise_mappings',
    'solve',
    'solve_reachability',
    'solved_form_witness',
    'verify_witness',
]

from collections.abc import Callable, Iterator
import itertools
import logging
from typing import Optional

from .. import const

from ..deduction import DeductionRule, DeductionSystem
from ..rewrite import RewriteSystem, eq_mod_h, normalize
from ..term import App, IDENTITY, Substitution, Term, Var, apply, apply_map, compose, is_ground, term_sort_key

from ._ground import decide_ground
from ._prepare import prepare_branches
from ._rules import StepResult, apply_reduce1, apply_reduce2, apply_unif
from ._system import (
    ConstraintError,
    ConstraintSystem,
    GroundConstraintSystem,
    GroundVerdict,
    SolveOutcome,
    SolveStatus,
    wellformed_violation,
)

logger = logging.getLogger(__name__)


class ProgressError(RuntimeError):
    """A transformation kept the number of variables and instantiated some of them."""
    pass


class _BudgetExhausted(Exception):
    pass


def premise_mappings(rule: DeductionRule, members: list[Term]) -> Iterator[tuple[Term, ...]]:
    """Enumerate knowledge members for the non-variable premises of a rule.

    :param rule: Deduction rule.
    :param members: Non-variable knowledge members.

    :returns: Tuples aligned with `rule.nonvar`, each member with the symbol and arity of its premise.
    """
    pools = []

    for premise in rule.nonvar:
        pool = [
            member for member in members
            if member.symbol == premise.symbol and len(member.args) == len(premise.args)
        ]

        if not pool:
            return

        pools.append(pool)

    yield from itertools.product(*pools)


def solved_form_witness(system: ConstraintSystem, rules: DeductionSystem) -> Optional[Substitution]:
    """Build a solution of a system in solved form.

    Each goal variable is bound, in constraint order, to the smallest ground member of its instantiated knowledge set
    or to the smallest conclusion of a premise-free rule.

    :param system: Constraint system whose goals are all variables.
    :param rules: Deduction system.

    :returns: Ground substitution for every variable of the system, or `None` if a knowledge set has no ground member
        and no premise-free rule exists.
    """
    nullary = sorted(
        (rule.rhs for rule in rules.rules if not rule.lhs and is_ground(rule.rhs)), key=term_sort_key
    )

    bindings: dict[Var, Term] = {}
    candidates_all: list[Term] = list(nullary)

    for constraint in system.constraints:
        if not isinstance(constraint.goal, Var):
            raise ValueError(f'System is not in solved form: {constraint}')

        knowledge = [apply_map(member, bindings) for member in constraint.knowledge]
        candidates = [member for member in knowledge if is_ground(member)] + nullary
        candidates_all.extend(candidates)

        if constraint.goal in bindings:
            continue

        if not candidates:
            return None

        bindings[constraint.goal] = min(candidates, key=term_sort_key)

    leftover = system.variables - bindings.keys()

    if leftover:
        if not candidates_all:
            return None

        default = min(candidates_all, key=term_sort_key)

        for var in leftover:
            bindings[var] = default

    return Substitution(bindings)


def verify_witness(system: ConstraintSystem, rules: DeductionSystem, witness: Substitution) -> bool:
    """Check that a substitution grounds a syntactic constraint system and satisfies it.

    :param system: Constraint system.
    :param rules: Saturated deduction system.
    :param witness: Candidate solution.

    :returns: `True` if every instantiated goal is deducible and every equation holds syntactically.
    """
    instance = system.apply(witness)

    if not all(lhs == rhs for lhs, rhs in instance.unif):
        return False

    try:
        ground = GroundConstraintSystem(
            tuple((constraint.knowledge, constraint.goal) for constraint in instance.constraints)
        )
    except ConstraintError:
        return False

    return decide_ground(ground, rules) == GroundVerdict.VAL


class _Search:
    """Depth-first search over transformation rules."""

    def __init__(
            self,
            root: ConstraintSystem,
            rules: DeductionSystem,
            budget: int,
            check_progress: bool,
    ) -> None:
        self.root = root
        self.root_vars = root.variables
        self.rules = rules
        self.increasing = rules.increasing()
        self.decreasing = rules.decreasing()
        self.budget = budget
        self.check_progress = check_progress

        self.visited: set[tuple] = set()
        self.ground_cache: dict[tuple, bool] = {}
        self.deepest: tuple[int, Optional[ConstraintSystem], tuple[str, ...]] = (-1, None, ())

        self.stats = {
            'nodes': 0,
            'unif': 0,
            'reduce1': 0,
            'reduce2': 0,
            'discharged': 0,
            'subsumed': 0,
            'revisited': 0,
            'unverified': 0,
        }

    def _ground_ok(self, knowledge: frozenset[Term], goal: Term) -> bool:
        key = (knowledge, goal)

        if key not in self.ground_cache:
            self.ground_cache[key] = goal in knowledge or decide_ground(
                GroundConstraintSystem(((knowledge, goal),)), self.rules
            ) == GroundVerdict.VAL

        return self.ground_cache[key]

    def _reduce(self, system: ConstraintSystem) -> Optional[ConstraintSystem]:
        """Discharge ground constraints and drop subsumed constraints."""
        kept = []

        for constraint in system.constraints:
            if not constraint.solved and is_ground(constraint.goal) and is_ground(constraint.knowledge):
                if not self._ground_ok(constraint.knowledge, constraint.goal):
                    return None

                self.stats['discharged'] += 1
                continue

            if any(prev.goal == constraint.goal and prev.knowledge <= constraint.knowledge for prev in kept):
                self.stats['subsumed'] += 1
                continue

            kept.append(constraint)

        if len(kept) == len(system.constraints):
            return system

        return ConstraintSystem(tuple(kept), system.unif)

    def _children(self, system: ConstraintSystem, index: int) -> Iterator[StepResult]:
        constraint = system.constraints[index]
        goal = constraint.goal
        members = [member for member in constraint.sorted_knowledge() if not isinstance(member, Var)]

        for member in members:
            step = apply_unif(system, index, member)

            if step is not None:
                self.stats['unif'] += 1
                yield step

        for rule in self.increasing:
            if not isinstance(rule.rhs, App) or rule.rhs.symbol != goal.symbol:
                continue

            for mapping in premise_mappings(rule, members):
                step = apply_reduce1(system, index, rule, mapping)

                if step is not None:
                    self.stats['reduce1'] += 1
                    yield step

        for rule in self.decreasing:
            for mapping in premise_mappings(rule, members):
                step = apply_reduce2(system, index, rule, mapping)

                if step is not None:
                    self.stats['reduce2'] += 1
                    yield step

    def _progress(self, system: ConstraintSystem, step: StepResult) -> None:
        before = system.variables
        after = step.system.variables

        if len(after) < len(before):
            return

        if after == before and not (step.sigma.support & before):
            return

        raise ProgressError(
            f'Variable count did not decrease ({len(before)} -> {len(after)}) and variables were instantiated: '
            f'{step.label}'
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
            depth: int,
    ) -> Optional[tuple[Substitution, tuple[str, ...]]]:
        self.stats['nodes'] += 1

        if self.stats['nodes'] > self.budget:
            raise _BudgetExhausted()

        system = self._reduce(system)

        if system is None:
            return None

        if depth > self.deepest[0]:
            self.deepest = (depth, system, trace)

        index = next(
            (index for index, constraint in enumerate(system.constraints) if not constraint.solved), None
        )

        if index is None:
            witness = self._leaf(system, sigma)
            return None if witness is None else (witness, trace)

        key = system.canonical_key()

        if key in self.visited:
            self.stats['revisited'] += 1
            return None

        self.visited.add(key)

        for step in self._children(system, index):
            if self.check_progress:
                self._progress(system, step)

            found = self.search(step.system, compose(sigma, step.sigma), trace + (step.label,), depth + 1)

            if found is not None:
                return found

        return None


def solve(
        system: ConstraintSystem,
        rules: DeductionSystem,
        budget: int = const.DEFAULT_SOLVE_BUDGET,
        check_progress: bool = False,
) -> SolveOutcome:
    """Solve a syntactic constraint system.

    The search works on the leftmost constraint with a non-variable goal and branches over every applicable
    transformation (unification with a knowledge member, the last step of an increasing rule, or a decreasing rule
    extending the knowledge). Variable knowledge members are never used. Ground constraints are decided directly and
    systems already visited up to renaming are not searched again. A system in solved form is satisfied by binding
    each goal variable to a known term.

    :param system: Constraint system without residual equations (see :func:`prepare`).
    :param rules: Saturated deduction system.
    :param budget: Maximum number of search nodes.
    :param check_progress: Check that every transformation decreases the number of variables or leaves them
        uninstantiated. This holds when `rules` is contracting.

    :returns: `SAT` with a verified witness, `FAIL` if every branch fails, or `UNKNOWN` if the budget is exhausted.

    :raises ProgressError: If `check_progress` is set and a transformation violates it.
    """
    search = _Search(system, rules, budget, check_progress)

    try:
        found = search.search(system, IDENTITY, (), 0)

    except _BudgetExhausted:
        depth, deepest, trace = search.deepest

        logger.warning('Solver budget exhausted after %d nodes (deepest branch at depth %d)', budget, depth)

        return SolveOutcome(
            SolveStatus.UNKNOWN,
            trace=trace,
            stats=search.stats,
            diagnostics={'budget': budget, 'depth': depth, 'deepest': str(deepest) if deepest is not None else ''},
        )

    if found is None:
        return SolveOutcome(SolveStatus.FAIL, stats=search.stats)

    witness, trace = found

    return SolveOutcome(SolveStatus.SAT, witness=witness, trace=trace, stats=search.stats)


def _verify_modulo(
        system: ConstraintSystem,
        rewrite: RewriteSystem,
        rules: DeductionSystem,
        witness: Substitution,
        normalize_steps: int,
) -> bool:
    """Check a solution of a constraint system modulo a theory."""
    try:
        ground = GroundConstraintSystem(
            tuple(
                (
                    frozenset(normalize(apply(member, witness), rewrite, normalize_steps) for member in c.knowledge),
                    normalize(apply(c.goal, witness), rewrite, normalize_steps),
                )
                for c in system.constraints
            )
        )
    except ConstraintError:
        return False

    if decide_ground(ground, rules) != GroundVerdict.VAL:
        return False

    return all(
        eq_mod_h(apply(lhs, witness), apply(rhs, witness), rewrite, normalize_steps) for lhs, rhs in system.unif
    )


def solve_reachability(
        system: ConstraintSystem,
        rewrite: RewriteSystem,
        rules: DeductionSystem,
        budget: int = const.DEFAULT_SOLVE_BUDGET,
        narrow_depth: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
        check_progress: bool = False,
        solver: Optional[Callable[[ConstraintSystem, DeductionSystem], SolveOutcome]] = None,
) -> SolveOutcome:
    """Solve a constraint system modulo a theory.

    The system is prepared into syntactic branches, each branch is solved, and a branch witness is lifted back to
    the input variables, normalized, and verified against the input system modulo the theory.

    :param system: Well-formed constraint system.
    :param rewrite: Rewrite system of the theory.
    :param rules: Saturated deduction system of the theory.
    :param budget: Maximum number of search nodes per branch.
    :param narrow_depth: Narrowing depth bound.
    :param normalize_steps: Rewrite step budget.
    :param check_progress: See :func:`solve`.
    :param solver: Solver for the syntactic branches. Defaults to :func:`solve` with `budget` and `check_progress`.

    :returns: `SAT` with a witness for the variables of `system`, `UNKNOWN` if no branch is satisfiable and some
        branch exhausted its budget, `FAIL` otherwise.

    :raises ConstraintError: If `system` is not well formed.
    """
    violation = wellformed_violation(system)

    if violation is not None:
        raise ConstraintError(violation[1], index=violation[0])

    branches = prepare_branches(system, rewrite, narrow_depth, normalize_steps)
    input_vars = sorted(system.variables, key=lambda var: var.name)

    stats = {'branches': len(branches), 'nodes': 0}
    unknown = None

    for branch_index, branch in enumerate(branches):
        if solver is None:
            outcome = solve(branch.system, rules, budget, check_progress)
        else:
            outcome = solver(branch.system, rules)

        stats['nodes'] += outcome.stats.get('nodes', 0)

        if outcome.status == SolveStatus.UNKNOWN:
            unknown = unknown or outcome
            continue

        if outcome.status != SolveStatus.SAT:
            continue

        lifted = Substitution(
            {
                var: normalize(apply(branch.substitution[var], outcome.witness), rewrite, normalize_steps)
                for var in input_vars
            }
        )

        if not _verify_modulo(system, rewrite, rules, lifted, normalize_steps):
            logger.warning('Witness of branch %d does not verify modulo the theory: %s', branch_index + 1, lifted)
            continue

        return SolveOutcome(
            SolveStatus.SAT,
            witness=lifted,
            trace=(f'branch {branch_index + 1}',) + outcome.trace,
            stats=stats,
            diagnostics={'branch': str(branch.system)},
        )

    if unknown is not None:
        return SolveOutcome(SolveStatus.UNKNOWN, trace=unknown.trace, stats=stats, diagnostics=unknown.diagnostics)

    return SolveOutcome(SolveStatus.FAIL, stats=stats)
