"""Ground reachability."""

__all__ = [
    'DerivationStep',
    'decide_ground',
    'ground_derivation',
    'replay_derivation',
]

from collections.abc import Iterable
from dataclasses import dataclass
import logging
from typing import Optional

from .. import const

from ..deduction import DeductionRule, DeductionSystem
from ..term import App, IDENTITY, Term, apply, subterms, term_sort_key
from ..unify import match, match_into_set

from ._system import GroundConstraintSystem, GroundVerdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivationStep:
    """One rule application in a ground derivation.

    :param rule: Applied rule.
    :param premises: Instantiated premises, aligned with `rule.var_part + rule.nonvar`.
    :param conclusion: Instantiated conclusion.
    """
    rule: DeductionRule
    premises: tuple[Term, ...]
    conclusion: Term

    def __str__(self) -> str:
        """Get a "premises => conclusion [rule]" string."""
        return f'{", ".join(str(premise) for premise in self.premises)} => {self.conclusion}  [{self.rule}]'


class _KnowledgeState:
    """Closure of a ground knowledge set under a saturated system.

    `known` grows with conclusions of decreasing rules, whose non-variable premises are matched into `known` and
    whose variable premises are constructible. `constructible` holds the subterms of `known` and of the goals that
    can be built from `known` with increasing rules.
    """

    def __init__(self, knowledge: frozenset[Term], goals: frozenset[Term], rules: DeductionSystem) -> None:
        self.known: set[Term] = set(knowledge)
        self.goals = goals
        self.constructible: set[Term] = set()
        self.justification: dict[Term, tuple[DeductionRule, tuple[Term, ...]]] = {}

        self.increasing: dict[str, list[DeductionRule]] = {}

        for rule in rules.increasing():
            if isinstance(rule.rhs, App):
                self.increasing.setdefault(rule.rhs.symbol, []).append(rule)

        self.decreasing = rules.decreasing()

        self._run()

    def _premises(self, rule: DeductionRule, sigma) -> tuple[Term, ...]:
        return tuple(apply(member, sigma) for member in rule.var_part + rule.nonvar)

    def _vars_constructible(self, rule: DeductionRule, sigma):
        """Enumerate extensions of `sigma` binding every variable premise to a constructible term."""
        open_vars = [var for var in rule.var_part if var not in sigma]

        if not all(apply(var, sigma) in self.constructible for var in rule.var_part if var in sigma):
            return

        if not open_vars:
            yield sigma
            return

        for extended, _ in match_into_set(open_vars, self.constructible, base=sigma):
            yield extended

    def _build(self, t: Term) -> bool:
        """Try to construct a term from known terms with one increasing rule."""
        for rule in self.increasing.get(t.symbol, ()):
            sigma = match(rule.rhs, t)

            if sigma is None:
                continue

            for bound, _ in match_into_set(rule.nonvar, self.known, base=sigma):
                for full in self._vars_constructible(rule, bound):
                    self.justification.setdefault(t, (rule, self._premises(rule, full)))
                    return True

        return False

    def _construct(self) -> None:
        universe = sorted(subterms(self.known | self.goals) - self.constructible, key=term_sort_key)

        changed = True

        while changed:
            changed = False

            for t in universe:
                if t in self.constructible:
                    continue

                if t in self.known or (isinstance(t, App) and self._build(t)):
                    self.constructible.add(t)
                    changed = True

    def _run(self) -> None:
        changed = True

        while changed:
            changed = False
            self._construct()

            known = sorted(self.known, key=term_sort_key)

            for rule in self.decreasing:
                for sigma, _ in match_into_set(rule.nonvar, known):
                    for full in self._vars_constructible(rule, sigma):
                        conclusion = apply(rule.rhs, full)

                        if conclusion in self.known or conclusion in self.constructible:
                            continue

                        self.known.add(conclusion)
                        self.justification.setdefault(conclusion, (rule, self._premises(rule, full)))
                        changed = True

            if len(self.known) > const.GROUND_KNOWLEDGE_LIMIT:
                raise RuntimeError(
                    f'Ground knowledge closure exceeded {const.GROUND_KNOWLEDGE_LIMIT} terms '
                    f'(deduction system may not be saturated)'
                )

    def derivation(self, goal: Term, knowledge: frozenset[Term]) -> list[DerivationStep]:
        steps = []
        done = set(knowledge)

        def build(t: Term) -> None:
            if t in done:
                return

            rule, premises = self.justification[t]

            for premise in premises:
                build(premise)

            steps.append(DerivationStep(rule, premises, t))
            done.add(t)

        build(goal)

        return steps


def _state(
        knowledge: frozenset[Term],
        goal: Term,
        rules: DeductionSystem,
        memo: Optional[dict] = None,
) -> _KnowledgeState:
    key = (knowledge, goal)

    if memo is not None and key in memo:
        return memo[key]

    state = _KnowledgeState(knowledge, frozenset((goal,)), rules)

    if memo is not None:
        memo[key] = state

    return state


def decide_ground(system: GroundConstraintSystem, rules: DeductionSystem) -> GroundVerdict:
    """Decide a ground constraint system.

    The knowledge set of each constraint is extended forward with the conclusions of decreasing rules, and goals are
    built with increasing rules from subterms of the knowledge and the goal only. Decreasing rules conclude terms
    smaller than one of their premises, so the reachable knowledge stays within a finite set of terms and the
    closure reaches a fixed point.

    :param system: Ground constraint system (terms in normal form).
    :param rules: Saturated deduction system.

    :returns: `VAL` if every goal is deducible from its knowledge set, `INVAL` otherwise.

    :raises RuntimeError: If the knowledge closure grows beyond a safety limit.
    """
    memo = {}

    for index, (knowledge, goal) in enumerate(system.constraints):
        if goal in knowledge:
            continue

        state = _state(knowledge, goal, rules, memo)

        if goal not in state.constructible:
            logger.debug('Ground constraint %d is not deducible: %s', index + 1, goal)
            return GroundVerdict.INVAL

    return GroundVerdict.VAL


def ground_derivation(
        knowledge: Iterable[Term],
        goal: Term,
        rules: DeductionSystem,
) -> Optional[list[DerivationStep]]:
    """Get a derivation of a ground goal.

    :param knowledge: Ground knowledge set.
    :param goal: Ground goal.
    :param rules: Saturated deduction system.

    :returns: Rule applications in order (empty if the goal is known), or `None` if the goal is not deducible.
    """
    knowledge = frozenset(knowledge)

    if goal in knowledge:
        return []

    state = _state(knowledge, goal, rules)

    if goal not in state.constructible:
        return None

    return state.derivation(goal, knowledge)


def replay_derivation(knowledge: Iterable[Term], steps: Iterable[DerivationStep], goal: Term) -> bool:
    """Check a derivation step by step.

    :param knowledge: Ground knowledge set.
    :param steps: Rule applications.
    :param goal: Goal.

    :returns: `True` if each step instantiates its rule with known premises and the goal is known at the end.
    """
    current = set(knowledge)

    for step in steps:
        patterns = step.rule.var_part + step.rule.nonvar

        if len(patterns) != len(step.premises) or not all(premise in current for premise in step.premises):
            return False

        sigma = IDENTITY

        for pattern, premise in zip(patterns + (step.rule.rhs,), step.premises + (step.conclusion,)):
            sigma = match(pattern, premise, sigma)

            if sigma is None:
                return False

        current.add(step.conclusion)

    return goal in current
