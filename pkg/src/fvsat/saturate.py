"""Saturation of deduction systems.

Saturation turns a deduction system that applies modulo an equational theory into an equivalent one that applies
syntactically:

1. Variant lifting: each rule `X1, ..., Xn => f(X1, ..., Xn)` is replaced by one rule per variant of
   `f(X1, ..., Xn)`.
2. Closure: an increasing rule `l1 => r1` is composed into a non-variable premise `s` of another rule
   `l2, s => r2` giving `(l1, l2 => r2) sigma` with `sigma = mgu(r1, s)`, until no new rule appears.

New rules are simplified (unused variable premises are removed). Trivial rules are left out of the result, and new
increasing rules that decompose and recompose their premises within a bounded number of steps are deleted on creation.
Saturation stops with a diverged result when the configured bounds are exceeded.
"""

__all__ = [
    'SaturationConfig',
    'RuleOrigin',
    'RuleProvenance',
    'SaturationResult',
    'step1',
    'simplify',
    'is_trivial',
    'closure_children',
    'closure_step',
    'is_redundant',
    'replay_closure',
    'saturate',
]

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
import enum
import logging
from typing import Optional

import polars as pl

from . import const

from .deduction import DeductionRule, DeductionSystem, TheoryTag, derivable_within
from .order import RuleKind, classify
from .rewrite import RewriteSystem
from .term import App, Substitution, Term, Var, apply, rename_apart, variables
from .unify import try_mgu
from .variants import variants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SaturationConfig:
    """Saturation bounds and deletion policy.

    :param max_rules: Report divergence when the system would grow beyond this many rules.
    :param max_rounds: Report divergence when a closure rule of a later generation would be created.
    :param delete_trivial: Delete rules whose conclusion is one of their premises.
    :param redundancy_steps: Delete new increasing rules derivable from existing rules with a derivation of at most
        this depth. 0 disables the check.
    :param narrow_depth: Narrowing depth bound for variant lifting.
    :param normalize_steps: Rewrite step budget for each normalization.
    :param strict_trivial: With `delete_trivial`, delete every rule with its conclusion among its premises. Without
        it, a rule with a variable conclusion is only trivial if all of its premises are variables.
    :param replay_check: Check that every closure rule is derivable in two steps from its parents.
    """
    max_rules: int = const.DEFAULT_MAX_RULES
    max_rounds: int = const.DEFAULT_MAX_ROUNDS
    delete_trivial: bool = const.DEFAULT_DELETE_TRIVIAL
    redundancy_steps: int = const.DEFAULT_REDUNDANCY_STEPS
    narrow_depth: int = const.DEFAULT_NARROW_DEPTH
    normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS
    strict_trivial: bool = False
    replay_check: bool = False

    def __post_init__(self) -> None:
        """Check attributes."""
        for name in ('max_rules', 'max_rounds', 'narrow_depth', 'normalize_steps'):
            if getattr(self, name) < 1:
                raise ValueError(f'Saturation bound {name} must be positive: {getattr(self, name)}')

        if self.redundancy_steps < 0:
            raise ValueError(f'Saturation redundancy_steps must not be negative: {self.redundancy_steps}')

    @staticmethod
    def from_params(params, **kwargs) -> 'SaturationConfig':
        """Build from resolved configuration parameters.

        :param params: A :class:`fvsat.params.FvsatParams` object.
        :param kwargs: Fields overriding the parameters.
        """
        values = {
            'max_rules': params.max_rules,
            'max_rounds': params.max_rounds,
            'delete_trivial': params.delete_trivial,
            'redundancy_steps': params.redundancy_steps,
            'narrow_depth': params.narrow_depth,
            'normalize_steps': params.normalize_steps,
            'replay_check': params.debug,
        }

        values.update(kwargs)

        return SaturationConfig(**values)


class RuleOrigin(enum.Enum):
    """How a saturated rule was produced."""
    L0 = 'l0'
    VARIANT = 'variant'
    CLOSURE = 'closure'


@dataclass(frozen=True)
class RuleProvenance:
    """A saturated rule with its history.

    :param rule: Rule.
    :param origin: How the rule was produced.
    :param generation: 0 for input and variant rules, one more than the latest parent for closure rules.
    :param parents: Increasing parent and target parent of a closure rule.
    :param source: Input rule a variant rule was lifted from.
    """
    rule: DeductionRule
    origin: RuleOrigin
    generation: int = 0
    parents: tuple[DeductionRule, ...] = ()
    source: Optional[DeductionRule] = None


@dataclass(frozen=True)
class SaturationResult:
    """Outcome of saturation.

    :param system: Saturated system (partial if `diverged`).
    :param provenance: One entry per rule of `system`, same order.
    :param diverged: `True` if a bound was exceeded.
    :param offending: Rules that were refused when a bound was exceeded.
    :param rounds: Latest generation reached.
    :param stats: Counters.
    """
    system: DeductionSystem
    provenance: tuple[RuleProvenance, ...]
    diverged: bool = False
    offending: tuple[DeductionRule, ...] = ()
    rounds: int = 0
    stats: dict[str, int] = field(default_factory=dict)

    def added_rules(self) -> tuple[DeductionRule, ...]:
        """Get rules that are not input rules."""
        return tuple(entry.rule for entry in self.provenance if entry.origin != RuleOrigin.L0)

    def to_frame(self) -> pl.DataFrame:
        """Get a table with one row per rule."""
        return pl.DataFrame(
            {
                'rule': [str(entry.rule.canonical()) for entry in self.provenance],
                'origin': [entry.origin.value for entry in self.provenance],
                'kind': [self.system.kind(entry.rule).value for entry in self.provenance],
                'generation': [entry.generation for entry in self.provenance],
                'parents': [
                    ' | '.join(str(parent.canonical()) for parent in entry.parents) for entry in self.provenance
                ],
            },
            schema={
                'rule': pl.String,
                'origin': pl.String,
                'kind': pl.String,
                'generation': pl.Int64,
                'parents': pl.String,
            }
        )


def simplify(rule: DeductionRule) -> DeductionRule:
    """Remove variable premises that occur neither in a non-variable premise nor in the conclusion."""
    used = variables(rule.nonvar) | variables(rule.rhs)
    unused = [var for var in rule.var_part if var not in used]

    if not unused:
        return rule

    return DeductionRule(rule.lhs - frozenset(unused), rule.rhs)


def is_trivial(rule: DeductionRule, strict: bool = False) -> bool:
    """Determine if a rule never adds a term to a knowledge set.

    :param rule: Rule.
    :param strict: Every rule with its conclusion among its premises is trivial. Otherwise a rule with a variable
        conclusion is only trivial if all of its premises are variables.
    """
    if rule.rhs not in rule.lhs:
        return False

    return strict or not isinstance(rule.rhs, Var) or not rule.nonvar


def _step1_rules(
        l0: DeductionSystem,
        rules: RewriteSystem,
        narrow_depth: int,
        normalize_steps: int,
) -> list[tuple[DeductionRule, DeductionRule]]:
    """Lift every input rule to its variants, as (lifted rule, input rule) pairs."""
    lifted = []

    for source in l0.rules:
        premises = source.var_part

        for variant in variants(source.rhs, rules, narrow_depth, normalize_steps):
            rule = DeductionRule(frozenset(apply(var, variant.theta) for var in premises), variant.reduct)
            lifted.append((simplify(rule).canonical(), source))

    return lifted


def step1(
        l0: DeductionSystem,
        rules: RewriteSystem,
        narrow_depth: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> DeductionSystem:
    """Lift a deduction system modulo a theory to a syntactic one.

    :param l0: Input system, tagged `MODULO_H`.
    :param rules: Rewrite system of the theory.
    :param narrow_depth: Narrowing depth bound.
    :param normalize_steps: Rewrite step budget.

    :returns: System tagged `EMPTY` with one rule per variant of every input rule conclusion.

    :raises FiniteVariantError: If variant computation fails.
    """
    return DeductionSystem(
        tuple(rule for rule, _ in _step1_rules(l0, rules, narrow_depth, normalize_steps)),
        l0.sig,
        TheoryTag.EMPTY,
    )


def closure_children(inc: DeductionRule, other: DeductionRule) -> list[tuple[DeductionRule, Term]]:
    """Compose an increasing rule into each non-variable premise of another rule.

    :param inc: Increasing rule.
    :param other: Target rule.

    :returns: List of (simplified child, premise of `other` the child was composed into).
    """
    renaming = rename_apart(inc.variables)
    inc_lhs = frozenset(apply(member, renaming) for member in inc.lhs)
    inc_rhs = apply(inc.rhs, renaming)

    children = []

    for premise in other.nonvar:
        sigma = try_mgu(((inc_rhs, premise),))

        if sigma is None:
            continue

        child = DeductionRule(
            frozenset(apply(member, sigma) for member in inc_lhs | (other.lhs - {premise})),
            apply(other.rhs, sigma),
        )

        children.append((simplify(child), premise))

    return children


def closure_step(
        system: DeductionSystem,
        delete_trivial: bool = const.DEFAULT_DELETE_TRIVIAL,
        strict_trivial: bool = False,
) -> list[DeductionRule]:
    """Apply the closure rule once to every pair of rules of a system.

    :param system: System tagged `EMPTY`.
    :param delete_trivial: Drop trivial children.
    :param strict_trivial: Trivial-rule policy (see :func:`is_trivial`).

    :returns: Simplified children, renamed canonically, without duplicates up to renaming. Children already in
        `system` are included.
    """
    found = DeductionSystem(
        tuple(
            child.canonical()
            for inc in system.increasing()
            for other in system.rules
            for child, _ in closure_children(inc, other)
            if not (delete_trivial and is_trivial(child, strict_trivial))
        ),
        system.sig,
        TheoryTag.EMPTY,
    )

    return list(found.rules)


def _freeze(rule: DeductionRule) -> tuple[frozenset, App | Var]:
    """Replace the variables of a rule by fresh constants."""
    frozen = Substitution({var: App(f'#{var.name}') for var in rule.variables})
    return frozenset(apply(member, frozen) for member in rule.lhs), apply(rule.rhs, frozen)


def _frozen_derivable(rule: DeductionRule, rules: Iterable[DeductionRule], depth: int) -> bool:
    knowledge, goal = _freeze(rule)
    return derivable_within(knowledge, goal, (other for other in rules if not other.equivalent(rule)), depth)


def _is_redundant(
        rule: DeductionRule,
        rules: Iterable[DeductionRule],
        increasing: Iterable[DeductionRule],
        depth: int,
) -> bool:
    if rule.rhs in rule.lhs:
        return True

    return _frozen_derivable(rule, rules, depth) and not _frozen_derivable(rule, increasing, depth)


def is_redundant(rule: DeductionRule, system: DeductionSystem, depth: int) -> bool:
    """Determine if a rule can be replaced by a bounded derivation that decomposes and recomposes.

    The variables of `rule` are frozen to constants and its conclusion is searched from its premises. A rule whose
    conclusion is one of its premises is redundant. Otherwise the rule is redundant when a derivation of at most
    `depth` steps exists and none uses increasing rules only. Rules obtained by composition alone are kept.

    :param rule: Rule.
    :param system: Rules that may be used. Rules equal to `rule` up to renaming are ignored.
    :param depth: Maximum derivation depth.

    :returns: `True` if the rule is redundant.
    """
    return _is_redundant(rule, system.rules, system.increasing(), depth)


def replay_closure(child: DeductionRule, inc: DeductionRule, other: DeductionRule) -> bool:
    """Check that a closure rule is derivable in two steps from its parents."""
    knowledge, goal = _freeze(child)
    return derivable_within(knowledge, goal, (inc, other), 2)


class _Admitted:
    """Rules admitted so far, indexed for lookup modulo renaming."""

    def __init__(self) -> None:
        self.entries: list[RuleProvenance] = []
        self.buckets: dict[tuple, list[DeductionRule]] = {}

    def find(self, rule: DeductionRule) -> Optional[DeductionRule]:
        for other in self.buckets.get(rule.bucket_key, ()):
            if rule.equivalent(other):
                return other
        return None

    def add(self, entry: RuleProvenance) -> None:
        self.entries.append(entry)
        self.buckets.setdefault(entry.rule.bucket_key, []).append(entry.rule)

    def rules(self) -> list[DeductionRule]:
        return [entry.rule for entry in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def _dropped_on_creation(rule: DeductionRule) -> bool:
    """Trivial rules without a non-variable premise are never closure targets and are dropped when created."""
    return rule.rhs in rule.lhs and not rule.nonvar


def _seed(l0: DeductionSystem, rules: RewriteSystem, cfg: SaturationConfig, stats: dict) -> list[RuleProvenance]:
    """Get generation-0 rules."""
    if l0.theory_tag == TheoryTag.EMPTY:
        return [RuleProvenance(rule, RuleOrigin.L0) for rule in l0.rules]

    seeds = []

    for rule, source in _step1_rules(l0, rules, cfg.narrow_depth, cfg.normalize_steps):
        if rule.equivalent(source):
            seeds.append(RuleProvenance(source, RuleOrigin.L0, source=source))
            continue

        if cfg.delete_trivial and _dropped_on_creation(rule):
            stats['trivial'] += 1
            continue

        seeds.append(RuleProvenance(rule, RuleOrigin.VARIANT, source=source))

    return seeds


def saturate(
        l0: DeductionSystem,
        rules: RewriteSystem,
        cfg: Optional[SaturationConfig] = None,
) -> SaturationResult:
    """Saturate a deduction system.

    Rules are processed first-in first-out. When a rule is processed, it is composed with every processed rule
    (including itself) in both directions, and each new child is simplified, checked for duplication (modulo
    renaming) and, if increasing, for redundancy before it is queued.

    Trivial rules take part in the closure when they have a non-variable premise, because rules composed into that
    premise are not trivial. With `delete_trivial`, they are removed from the result when saturation ends.

    :param l0: Input system. If tagged `MODULO_H`, it is lifted to its variants first; if tagged `EMPTY`, its rules
        are used as they are.
    :param rules: Rewrite system of the theory.
    :param cfg: Configuration.

    :returns: Saturation result. A diverged result holds the rules admitted before the bound was hit.

    :raises FiniteVariantError: If variant computation fails.
    """
    cfg = cfg or SaturationConfig()
    sig = l0.sig
    kinds: dict[DeductionRule, RuleKind] = {}

    def kind(rule: DeductionRule) -> RuleKind:
        if rule not in kinds:
            kinds[rule] = classify(rule, sig)
        return kinds[rule]

    stats = {'trivial': 0, 'duplicate': 0, 'redundant': 0, 'children': 0, 'replayed': 0}

    admitted = _Admitted()
    increasing: list[DeductionRule] = []
    queue: deque[RuleProvenance] = deque()

    def admit(entry: RuleProvenance) -> None:
        admitted.add(entry)
        queue.append(entry)

        if kind(entry.rule) == RuleKind.INCREASING:
            increasing.append(entry.rule)

    for entry in _seed(l0, rules, cfg, stats):
        if admitted.find(entry.rule) is not None:
            stats['duplicate'] += 1
            continue

        admit(entry)

    processed: list[RuleProvenance] = []
    offending: list[DeductionRule] = []
    rounds = 0

    while queue and not offending:
        given = queue.popleft()
        processed.append(given)

        pairs = []

        for other in processed:
            if kind(given.rule) == RuleKind.INCREASING:
                pairs.append((given, other))

            if other is not given and kind(other.rule) == RuleKind.INCREASING:
                pairs.append((other, given))

        for inc, target in pairs:
            generation = max(inc.generation, target.generation) + 1

            for child, _ in closure_children(inc.rule, target.rule):
                stats['children'] += 1
                child = child.canonical()

                if cfg.delete_trivial and _dropped_on_creation(child):
                    stats['trivial'] += 1
                    continue

                if admitted.find(child) is not None:
                    stats['duplicate'] += 1
                    continue

                # Decreasing rules are never deleted as redundant
                if (
                        cfg.redundancy_steps > 0
                        and kind(child) == RuleKind.INCREASING
                        and _is_redundant(child, admitted.rules(), increasing, cfg.redundancy_steps)
                ):
                    logger.debug('Redundant rule deleted: %s', child)
                    stats['redundant'] += 1
                    continue

                if generation > cfg.max_rounds or len(admitted) >= cfg.max_rules:
                    offending.append(child)
                    continue

                if cfg.replay_check:
                    if not replay_closure(child, inc.rule, target.rule):
                        raise RuntimeError(
                            f'Closure rule is not derivable from its parents (PROGRAM BUG): {child} '
                            f'from {inc.rule} and {target.rule}'
                        )

                    stats['replayed'] += 1

                admit(RuleProvenance(child, RuleOrigin.CLOSURE, generation, (inc.rule, target.rule)))
                rounds = max(rounds, generation)

                logger.debug('Closure rule (generation %d, %s): %s', generation, kind(child).value, child)

    entries = admitted.entries

    if cfg.delete_trivial:
        entries = [entry for entry in entries if not is_trivial(entry.rule, cfg.strict_trivial)]
        stats['trivial'] += len(admitted) - len(entries)

    diverged = bool(offending)

    if diverged:
        logger.info(
            'Saturation diverged after %d rules and %d generations (max_rules=%d, max_rounds=%d)',
            len(admitted), rounds, cfg.max_rules, cfg.max_rounds
        )
    else:
        logger.info(
            'Saturation complete: %d rules (%d added), %d generations, %d trivial, %d redundant',
            len(entries), sum(entry.origin != RuleOrigin.L0 for entry in entries), rounds,
            stats['trivial'], stats['redundant']
        )

    return SaturationResult(
        system=DeductionSystem(tuple(entry.rule for entry in entries), sig, TheoryTag.EMPTY),
        provenance=tuple(entries),
        diverged=diverged,
        offending=tuple(offending),
        rounds=rounds,
        stats=stats,
    )
