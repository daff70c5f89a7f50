"""Convergent rewrite systems and normalization.

A :class:`RewriteSystem` generates an equational theory: two terms are equal modulo the theory iff they have the same
normal form. Rules are checked to be oriented by the LPO of the signature when the system is built; confluence is
trusted, and :func:`critical_pairs` / :func:`joinable` are available as a diagnostic.
"""

__all__ = [
    'RewriteRule',
    'RewriteSystem',
    'CriticalPair',
    'UnorientedRuleError',
    'NormalizationError',
    'normalize',
    'normalize_subst',
    'is_normal',
    'eq_mod_h',
    'check_subterm_convergent',
    'critical_pairs',
    'joinable',
]

from collections.abc import Iterable
from dataclasses import dataclass, field
import logging
from typing import Optional

from frozendict import frozendict

from . import const

from .order import lpo_greater
from .term import (
    App,
    Signature,
    Substitution,
    Term,
    Var,
    apply,
    positions,
    rename_apart,
    replace_at,
    subterms,
    variables,
)
from .unify import match, try_mgu

logger = logging.getLogger(__name__)


class UnorientedRuleError(ValueError):
    """A rewrite rule is not oriented by the reduction order."""
    pass


class NormalizationError(RuntimeError):
    """Normalization exhausted its step budget (the rewrite system does not terminate on the input)."""
    pass


@dataclass(frozen=True)
class RewriteRule:
    """An oriented rewrite rule `lhs -> rhs`.

    :param lhs: Left-hand side (not a variable).
    :param rhs: Right-hand side, with variables occurring in `lhs`.
    """
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        """Check attributes."""
        if isinstance(self.lhs, Var):
            raise ValueError(f'Rewrite rule left-hand side is a variable: {self.lhs} -> {self.rhs}')

        extra = variables(self.rhs) - variables(self.lhs)

        if extra:
            raise ValueError(
                f'Rewrite rule right-hand side has variables not in the left-hand side '
                f'({", ".join(sorted(var.name for var in extra))}): {self}'
            )

    def __str__(self) -> str:
        """Get the rule in theory syntax."""
        return f'{self.lhs} -> {self.rhs}'


@dataclass(frozen=True)
class RewriteSystem:
    """A set of rewrite rules over a signature.

    :param rules: Rules.
    :param sig: Signature. Rules must use declared symbols only.
    """
    rules: tuple[RewriteRule, ...]
    sig: Signature
    _index: frozendict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check symbols and orientation, index rules by root symbol."""
        rules = tuple(self.rules)
        object.__setattr__(self, 'rules', rules)

        index = {}

        for rule in rules:
            if not isinstance(rule, RewriteRule):
                raise ValueError(f'Rewrite system rules must be RewriteRule objects: {type(rule)}')

            self.sig.check_term(rule.lhs, allow_free=False)
            self.sig.check_term(rule.rhs, allow_free=False)

            if not lpo_greater(rule.lhs, rule.rhs, self.sig):
                raise UnorientedRuleError(f'Rule is not oriented by the precedence ({self.sig_order_str()}): {rule}')

            index.setdefault(rule.lhs.symbol, []).append(rule)

        object.__setattr__(self, '_index', frozendict({key: tuple(val) for key, val in index.items()}))

    def sig_order_str(self) -> str:
        """Get the precedence as a string (highest first)."""
        return ' > '.join(reversed(self.sig.precedence))

    def rules_for(self, symbol: str) -> tuple[RewriteRule, ...]:
        """Get the rules whose left-hand side has a given root symbol."""
        return self._index.get(symbol, ())

    @staticmethod
    def empty(sig: Signature) -> 'RewriteSystem':
        """Get a rewrite system without rules."""
        return RewriteSystem((), sig)

    def __len__(self) -> int:
        """Get the number of rules."""
        return len(self.rules)

    def __iter__(self):
        """Iterate over rules."""
        return iter(self.rules)


@dataclass(frozen=True)
class CriticalPair:
    """A critical pair from an overlap of two rules.

    :param overlap: Overlapping term.
    :param left: Reduct by the outer rule at the root.
    :param right: Reduct by the inner rule at `position`.
    :param outer: Outer rule.
    :param inner: Inner rule.
    :param position: Position of the overlap in the outer left-hand side.
    """
    overlap: Term
    left: Term
    right: Term
    outer: RewriteRule
    inner: RewriteRule
    position: tuple[int, ...]


class _Budget:
    """Rewrite step counter."""

    def __init__(self, steps: int, start: Term) -> None:
        self.remaining = steps
        self.steps = steps
        self.start = start

    def consume(self) -> None:
        self.remaining -= 1

        if self.remaining < 0:
            raise NormalizationError(
                f'Normalization did not terminate in {self.steps} steps (non-terminating rewrite system?): '
                f'{self.start}'
            )


def _rewrite_root(t: App, rules: RewriteSystem) -> Optional[Term]:
    """Rewrite a term at its root or get `None` if no rule applies."""
    for rule in rules.rules_for(t.symbol):
        sigma = match(rule.lhs, t)

        if sigma is not None:
            return apply(rule.rhs, sigma)

    return None


def _normalize_innermost(t: Term, rules: RewriteSystem, budget: _Budget, memo: dict) -> Term:
    """Normalize with a leftmost-innermost strategy."""
    if isinstance(t, Var) or (not t.args and not rules.rules_for(t.symbol)):
        return t

    cached = memo.get(t, None)

    if cached is not None:
        return cached

    args = tuple(_normalize_innermost(arg, rules, budget, memo) for arg in t.args)
    current = t if args == t.args else App(t.symbol, args)

    reduct = _rewrite_root(current, rules)

    if reduct is None:
        result = current
    else:
        budget.consume()
        result = _normalize_innermost(reduct, rules, budget, memo)

    memo[t] = result

    return result


def _outermost_redex(t: Term, rules: RewriteSystem) -> Optional[tuple[tuple[int, ...], Term]]:
    """Find the leftmost-outermost redex and its reduct."""
    for pos, sub in positions(t):
        if isinstance(sub, App):
            reduct = _rewrite_root(sub, rules)

            if reduct is not None:
                return pos, reduct

    return None


def normalize(
        t: Term,
        rules: RewriteSystem,
        step_budget: int = const.DEFAULT_NORMALIZE_STEPS,
        strategy: str = 'innermost',
) -> Term:
    """Get the normal form of a term.

    :param t: Term.
    :param rules: Rewrite system.
    :param step_budget: Maximum number of rewrite steps.
    :param strategy: "innermost" (leftmost-innermost) or "outermost" (leftmost-outermost). For a convergent system
        both give the same result.

    :returns: Normal form.

    :raises NormalizationError: If the step budget is exhausted.
    """
    if not rules.rules:
        return t

    budget = _Budget(step_budget, t)

    if strategy == 'innermost':
        return _normalize_innermost(t, rules, budget, {})

    if strategy != 'outermost':
        raise ValueError(f'Unknown normalization strategy: {strategy}')

    while True:
        redex = _outermost_redex(t, rules)

        if redex is None:
            return t

        budget.consume()
        t = replace_at(t, redex[0], redex[1])


def normalize_subst(sigma: Substitution, rules: RewriteSystem, step_budget: int = const.DEFAULT_NORMALIZE_STEPS):
    """Normalize every image of a substitution."""
    return Substitution({key: normalize(val, rules, step_budget) for key, val in sigma.items()})


def is_normal(t: Term, rules: RewriteSystem) -> bool:
    """Determine if no rule applies anywhere in a term."""
    if not rules.rules:
        return True

    return all(
        isinstance(sub, Var) or _rewrite_root(sub, rules) is None
        for _, sub in positions(t)
    )


def eq_mod_h(s: Term, t: Term, rules: RewriteSystem, step_budget: int = const.DEFAULT_NORMALIZE_STEPS) -> bool:
    """Determine if two terms are equal modulo the equational theory of a rewrite system."""
    return s == t or normalize(s, rules, step_budget) == normalize(t, rules, step_budget)


def check_subterm_convergent(rules: RewriteSystem) -> bool:
    """Determine if every right-hand side is a strict subterm of its left-hand side."""
    return all(rule.rhs in subterms(rule.lhs, strict=True) for rule in rules)


def critical_pairs(rules: RewriteSystem | Iterable[RewriteRule]) -> list[CriticalPair]:
    """Compute the critical pairs of a set of rules.

    Every overlap of a renamed left-hand side onto a non-variable position of another left-hand side is computed.
    The trivial overlap of a rule with itself at the root is skipped.

    :param rules: Rewrite system or rules.

    :returns: Critical pairs in a deterministic order.
    """
    rule_list = list(rules.rules if isinstance(rules, RewriteSystem) else rules)
    pairs = []

    for outer in rule_list:
        for inner in rule_list:
            renaming = rename_apart(variables(inner.lhs))
            inner_lhs = apply(inner.lhs, renaming)
            inner_rhs = apply(inner.rhs, renaming)

            for pos, sub in positions(outer.lhs):
                if isinstance(sub, Var):
                    continue

                if not pos and inner is outer:
                    continue

                sigma = try_mgu(((sub, inner_lhs),))

                if sigma is None:
                    continue

                pairs.append(
                    CriticalPair(
                        overlap=apply(outer.lhs, sigma),
                        left=apply(outer.rhs, sigma),
                        right=apply(replace_at(outer.lhs, pos, inner_rhs), sigma),
                        outer=outer,
                        inner=inner,
                        position=pos,
                    )
                )

    return pairs


def joinable(pair: CriticalPair, rules: RewriteSystem, step_budget: int = const.DEFAULT_NORMALIZE_STEPS) -> bool:
    """Determine if both sides of a critical pair have the same normal form."""
    return eq_mod_h(pair.left, pair.right, rules, step_budget)

