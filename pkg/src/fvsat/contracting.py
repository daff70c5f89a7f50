"""Contracting criterion for saturated deduction systems.

The measures work on sets of terms. `delta` compares the number of non-variable members of a set with the number of
their variables that are not members themselves. The decomposition system replaces a non-variable member by its
arguments; `mu` takes the minimum of `delta` over all decompositions of all instances of a set by most general
unifiers of its subterms. A saturated system is contracting if every rule has a positive measure, which guarantees
that the constraint solver terminates on it.
"""

__all__ = [
    'Measure',
    'INFINITY',
    'ContractingEntry',
    'ContractingReport',
    'delta',
    'decompositions',
    'strict_maximal_subterms',
    'mu',
    'mu_general',
    'mu_rule',
    'is_contracting',
]

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
import functools
import itertools
import logging
from typing import Any, Optional

import polars as pl

from .deduction import DeductionRule, DeductionSystem
from .order import RuleKind, classify
from .term import IDENTITY, App, Signature, Substitution, Term, Var, apply, compose, subterms, term_sort_key, variables
from .unify import try_mgu

logger = logging.getLogger(__name__)


@functools.total_ordering
@dataclass(frozen=True)
class Measure:
    """An integer or positive infinity.

    Compares with other measures and with integers.

    :param value: Integer value, or `None` for positive infinity.
    """
    value: Optional[int] = None

    @property
    def infinite(self) -> bool:
        """`True` for positive infinity."""
        return self.value is None

    @staticmethod
    def _other(other: Any) -> Optional['Measure']:
        if isinstance(other, Measure):
            return other

        if isinstance(other, int) and not isinstance(other, bool):
            return Measure(other)

        return None

    def __eq__(self, other: Any) -> bool:
        other = Measure._other(other)

        if other is None:
            return NotImplemented

        return self.value == other.value

    def __lt__(self, other: Any) -> bool:
        other = Measure._other(other)

        if other is None:
            return NotImplemented

        if self.value is None:
            return False

        return other.value is None or self.value < other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return '+inf' if self.value is None else str(self.value)

    def to_json(self) -> int | str:
        """Get the integer value, or "+inf"."""
        return '+inf' if self.value is None else self.value


INFINITY = Measure()


def _term_set(terms: Iterable[Term]) -> frozenset[Term]:
    return terms if isinstance(terms, frozenset) else frozenset(terms)


def delta(terms: Iterable[Term]) -> Measure:
    """Compute the size measure of a set of terms.

    :param terms: Set of terms.

    :returns: Infinity if every member is a variable, otherwise the number of non-variable members minus the number
        of their variables that are not members.
    """
    terms = _term_set(terms)
    nonvar = [t for t in terms if not isinstance(t, Var)]

    if not nonvar:
        return INFINITY

    return Measure(len(nonvar) - len(variables(nonvar) - terms))


def _decompose_once(terms: frozenset[Term]) -> list[frozenset[Term]]:
    return [
        (terms - {t}) | frozenset(t.args)
        for t in sorted(terms, key=term_sort_key) if isinstance(t, App)
    ]


def decompositions(terms: Iterable[Term]) -> list[frozenset[Term]]:
    """Get every set reachable by replacing non-variable members with their arguments.

    Constants have no arguments and are erased.

    :param terms: Set of terms.

    :returns: Reachable sets including `terms`, in breadth-first order.
    """
    start = _term_set(terms)

    found = [start]
    seen = {start}
    queue = deque([start])

    while queue:
        for child in _decompose_once(queue.popleft()):
            if child not in seen:
                seen.add(child)
                found.append(child)
                queue.append(child)

    return found


def strict_maximal_subterms(terms: Iterable[Term]) -> frozenset[Term]:
    """Get the arguments of the non-variable members of a set of terms."""
    return frozenset(arg for t in terms if isinstance(t, App) for arg in t.args)


def mu_general(terms: Iterable[Term]) -> Measure:
    """Get the minimum of :func:`delta` over all decompositions of a set of terms."""
    return min(delta(found) for found in decompositions(terms))


def _unifiers(terms: frozenset[Term]) -> list[Substitution]:
    """Get the identity and every composition of pairwise most general unifiers of subterms."""
    found = [IDENTITY]
    seen = {terms}
    queue = deque([(IDENTITY, terms)])

    while queue:
        sigma, current = queue.popleft()

        for left, right in itertools.combinations(sorted(subterms(current), key=term_sort_key), 2):
            step = try_mgu(((left, right),))

            if step is None:
                continue

            instance = frozenset(apply(t, step) for t in current)

            if instance in seen:
                continue

            seen.add(instance)
            composed = compose(sigma, step)
            found.append(composed)
            queue.append((composed, instance))

    return found


def mu(terms: Iterable[Term]) -> Measure:
    """Compute the contracting measure of a set of terms.

    The minimum of :func:`mu_general` over the instances of `terms` by the identity and by the most general unifiers
    of pairs of distinct subterms, closed under composition.

    :param terms: Set of terms.

    :returns: Measure, never greater than :func:`mu_general` of `terms`.
    """
    terms = _term_set(terms)

    return min(
        mu_general(frozenset(apply(t, sigma) for t in terms))
        for sigma in _unifiers(terms)
    )


def mu_rule(rule: DeductionRule, sig: Signature, kind: Optional[RuleKind] = None) -> Measure:
    """Compute the contracting measure of a deduction rule.

    :param rule: Deduction rule.
    :param sig: Signature ordering the rule.
    :param kind: Rule kind. Classified with `sig` if `None`.

    :returns: Measure of the strict maximal subterms of the non-variable premises, together with the conclusion if
        the rule is increasing.
    """
    if kind is None:
        kind = classify(rule, sig)

    terms = set(rule.nonvar)

    if kind == RuleKind.INCREASING:
        terms.add(rule.rhs)

    return mu(strict_maximal_subterms(terms))


@dataclass(frozen=True)
class ContractingEntry:
    """Measure of one rule.

    :param rule: Rule.
    :param kind: Rule kind.
    :param measure: Value of :func:`mu_rule`.
    """
    rule: DeductionRule
    kind: RuleKind
    measure: Measure

    @property
    def contracting(self) -> bool:
        """`True` if the measure is positive."""
        return self.measure > 0


@dataclass(frozen=True)
class ContractingReport:
    """Per-rule contracting report.

    :param contracting: `True` if every rule has a positive measure.
    :param entries: One entry per rule in system order.
    """
    contracting: bool
    entries: tuple[ContractingEntry, ...]

    def failing(self) -> tuple[ContractingEntry, ...]:
        """Get entries with a non-positive measure."""
        return tuple(entry for entry in self.entries if not entry.contracting)

    def to_frame(self) -> pl.DataFrame:
        """Get a table with one row per rule (infinite measures are null)."""
        return pl.DataFrame(
            {
                'rule': [str(entry.rule.canonical()) for entry in self.entries],
                'kind': [entry.kind.value for entry in self.entries],
                'measure': [entry.measure.value for entry in self.entries],
                'contracting': [entry.contracting for entry in self.entries],
            },
            schema={
                'rule': pl.String,
                'kind': pl.String,
                'measure': pl.Int64,
                'contracting': pl.Boolean,
            }
        )


def is_contracting(rules: DeductionSystem) -> ContractingReport:
    """Check the contracting criterion on a saturated deduction system.

    :param rules: Saturated deduction system.

    :returns: Report. Its `contracting` attribute is `True` if every rule has a positive measure.
    """
    entries = []

    for rule in rules:
        kind = rules.kind(rule)
        measure = mu_rule(rule, rules.sig, kind)

        if measure <= 0:
            logger.debug('Rule is not contracting (measure %s): %s', measure, rule)

        entries.append(ContractingEntry(rule, kind, measure))

    return ContractingReport(all(entry.contracting for entry in entries), tuple(entries))
