"""Brute-force bounded deduction closure."""

__all__ = [
    'oracle_closure',
]

from collections.abc import Iterable
import logging
from typing import Optional

from ..deduction import DeductionSystem, rule_instances
from ..order import RuleKind
from ..rewrite import RewriteSystem, normalize
from ..term import App, Term, apply, subterms
from ..unify import match, match_into_set

logger = logging.getLogger(__name__)


def oracle_closure(
        knowledge: Iterable[Term],
        rules: DeductionSystem,
        depth: int,
        rewrite: Optional[RewriteSystem] = None,
        universe: Optional[Iterable[Term]] = None,
) -> frozenset[Term]:
    """Get every term derivable from a ground knowledge set in a bounded number of rounds.

    Each round applies every rule instance whose premises are known, simultaneously.

    :param knowledge: Ground knowledge set (normal forms if `rewrite` is given).
    :param rules: Deduction rules.
    :param depth: Number of rounds. 0 returns the knowledge set.
    :param rewrite: If given, conclusions are normalized, so rules apply modulo the equational theory of this
        rewrite system.
    :param universe: If given, conclusions of increasing rules are restricted to subterms of the current set and of
        `universe` and are found by matching the rule conclusion against these candidates (conclusions of decreasing
        rules are always kept).

    :returns: Derivable terms, including `knowledge`.
    """
    current = set(knowledge)
    universe = frozenset(universe) if universe is not None else None

    for round_index in range(depth):
        new = set()
        candidates = sorted(subterms(current | universe) - current, key=str) if universe is not None else None

        for rule in rules.rules:
            increasing = rules.kind(rule) == RuleKind.INCREASING

            if increasing and candidates is not None:
                for candidate in candidates:
                    if not isinstance(candidate, App) or not isinstance(rule.rhs, App):
                        continue

                    sigma = match(rule.rhs, candidate)

                    if sigma is None:
                        continue

                    if next(match_into_set(rule.var_part + rule.nonvar, current, base=sigma), None) is not None:
                        new.add(candidate)

                continue

            for sigma in rule_instances(rule, current):
                conclusion = apply(rule.rhs, sigma)

                if rewrite is not None:
                    conclusion = normalize(conclusion, rewrite)

                new.add(conclusion)

        new -= current

        if not new:
            break

        current |= new

        logger.debug('Oracle round %d: %d terms', round_index + 1, len(current))

    return frozenset(current)
