"""Deduction rules and deduction systems.

A deduction rule `l1, ..., ln => r` lets an attacker who knows instances of every premise learn the instance of the
conclusion. The premises form a set. Its variable members are the variable part of the rule, the others are the
non-variable part. Rules are compared modulo variable renaming.
"""

__all__ = [
    'TheoryTag',
    'DeductionRule',
    'DeductionSystem',
    'constructor_rule',
    'rule_instances',
    'derivable_within',
]

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
import enum
from typing import Optional

from frozendict import frozendict

from .order import RuleKind, classify
from .term import (
    App,
    Signature,
    Substitution,
    Term,
    Var,
    apply,
    canonical_names,
    canonical_renaming,
    positions,
    term_sort_key,
    variables,
)
from .unify import match, match_into_set


class TheoryTag(enum.Enum):
    """Equational theory a deduction system is interpreted in."""
    MODULO_H = 'modulo-h'
    EMPTY = 'empty'


def _blind(t: Term) -> str:
    """Get a string of a term with every variable replaced by "_"."""
    if isinstance(t, Var):
        return '_'

    if not t.args:
        return t.symbol

    return f'{t.symbol}({",".join(_blind(arg) for arg in t.args)})'


def _rename_match(pattern: Term, subject: Term, forward: dict, backward: dict) -> bool:
    """Extend a bijective variable renaming (modified in place) so `pattern` maps to `subject`."""
    stack = [(pattern, subject)]

    while stack:
        pat, sub = stack.pop()

        if isinstance(pat, Var):
            if not isinstance(sub, Var):
                return False

            if forward.get(pat, sub) != sub or backward.get(sub, pat) != pat:
                return False

            forward[pat] = sub
            backward[sub] = pat
            continue

        if isinstance(sub, Var) or pat.symbol != sub.symbol or len(pat.args) != len(sub.args):
            return False

        stack.extend(zip(pat.args, sub.args))

    return True


@dataclass(frozen=True)
class DeductionRule:
    """A deduction rule `lhs => rhs`.

    :param lhs: Premises (a set).
    :param rhs: Conclusion. Its variables occur in `lhs`.
    """
    lhs: frozenset[Term]
    rhs: Term
    nonvar: tuple[Term, ...] = field(init=False, repr=False, compare=False)
    var_part: tuple[Var, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check attributes and split premises."""
        lhs = frozenset(self.lhs)
        object.__setattr__(self, 'lhs', lhs)

        for member in lhs:
            if not isinstance(member, Term):
                raise ValueError(f'Deduction rule premise is not a term: {member!r}')

        if not isinstance(self.rhs, Term):
            raise ValueError(f'Deduction rule conclusion is not a term: {self.rhs!r}')

        extra = variables(self.rhs) - variables(lhs)

        if extra:
            raise ValueError(
                f'Deduction rule conclusion has variables not in the premises '
                f'({", ".join(sorted(var.name for var in extra))}): '
                f'{", ".join(sorted(str(member) for member in lhs))} => {self.rhs}'
            )

        object.__setattr__(
            self, 'nonvar', tuple(sorted((member for member in lhs if not isinstance(member, Var)), key=term_sort_key))
        )

        object.__setattr__(
            self, 'var_part', tuple(sorted((member for member in lhs if isinstance(member, Var)), key=lambda v: v.name))
        )

    @property
    def variables(self) -> frozenset[Var]:
        """Variables of the rule."""
        return variables(self.lhs) | variables(self.rhs)

    def apply(self, sigma: Substitution) -> 'DeductionRule':
        """Instantiate the rule."""
        return DeductionRule(frozenset(apply(member, sigma) for member in self.lhs), apply(self.rhs, sigma))

    @property
    def bucket_key(self) -> tuple:
        """Key shared by all renamings of the rule."""
        return tuple(sorted(_blind(member) for member in self.lhs)), _blind(self.rhs)

    def equivalent(self, other: 'DeductionRule') -> bool:
        """Determine if two rules are equal up to a bijective renaming of variables.

        The conclusion and the non-variable premises fix the renaming. Variable premises are then checked against it
        without search.
        """
        if (
                len(self.nonvar) != len(other.nonvar)
                or len(self.var_part) != len(other.var_part)
                or self.bucket_key != other.bucket_key
        ):
            return False

        forward = {}
        backward = {}

        if not _rename_match(self.rhs, other.rhs, forward, backward):
            return False

        own_vars = frozenset(self.var_part)
        other_vars = frozenset(other.var_part)
        targets = [(target, _blind(target)) for target in other.nonvar]

        def var_parts_agree(fwd: dict, bwd: dict) -> bool:
            return (
                all(fwd[var] in other_vars for var in own_vars if var in fwd)
                and all(bwd[var] in own_vars for var in other_vars if var in bwd)
            )

        def search(index: int, fwd: dict, bwd: dict, used: frozenset) -> bool:
            if index == len(self.nonvar):
                return var_parts_agree(fwd, bwd)

            member = self.nonvar[index]
            shape = _blind(member)

            for target_index, (target, target_shape) in enumerate(targets):
                if target_index in used or target_shape != shape:
                    continue

                fwd_next = dict(fwd)
                bwd_next = dict(bwd)

                if _rename_match(member, target, fwd_next, bwd_next):
                    if search(index + 1, fwd_next, bwd_next, used | {target_index}):
                        return True

            return False

        return search(0, forward, backward, frozenset())

    def canonical(self) -> 'DeductionRule':
        """Get a renamed copy with readable variable names assigned in a naming-independent order."""
        ordered = []
        seen = set()

        def visit(t: Term) -> None:
            for _, sub in positions(t):
                if isinstance(sub, Var) and sub not in seen:
                    seen.add(sub)
                    ordered.append(sub)

        for member in sorted(self.nonvar, key=lambda t: (term_sort_key(t)[0], _blind(t), str(t))):
            visit(member)

        visit(self.rhs)

        for var in self.var_part:
            visit(var)

        return self.apply(canonical_renaming(ordered))

    def __str__(self) -> str:
        """Get the rule in theory syntax."""
        premises = ', '.join(str(member) for member in self.var_part + self.nonvar)

        if not premises:
            return f'=> {self.rhs}'

        return f'{premises} => {self.rhs}'


def constructor_rule(name: str, arity: int) -> DeductionRule:
    """Get the rule `X1, ..., Xn => name(X1, ..., Xn)`."""
    names = canonical_names()
    args = tuple(Var(next(names)) for _ in range(arity))

    return DeductionRule(frozenset(args), App(name, args))


def _l0_symbol(rule: DeductionRule) -> Optional[str]:
    """Get the symbol of a rule of shape `X1, ..., Xn => f(X1, ..., Xn)` or `None`."""
    if isinstance(rule.rhs, Var) or rule.nonvar:
        return None

    args = rule.rhs.args

    if not all(isinstance(arg, Var) for arg in args) or len(set(args)) != len(args):
        return None

    if frozenset(args) != rule.lhs:
        return None

    return rule.rhs.symbol


@dataclass(frozen=True)
class DeductionSystem:
    """A set of deduction rules over a signature.

    :param rules: Rules. Rules equal up to renaming are kept once (first occurrence).
    :param sig: Signature.
    :param theory_tag: `MODULO_H` if rules apply modulo the equational theory of a rewrite system (then every rule
        must have shape `X1, ..., Xn => f(X1, ..., Xn)`), `EMPTY` if they apply syntactically.
    """
    rules: tuple[DeductionRule, ...]
    sig: Signature
    theory_tag: TheoryTag = TheoryTag.EMPTY
    _kinds: frozendict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check rules, drop renamed duplicates, and classify."""
        kept = []
        buckets: dict[tuple, list[DeductionRule]] = {}

        for rule in self.rules:
            if not isinstance(rule, DeductionRule):
                raise ValueError(f'Deduction system rules must be DeductionRule objects: {type(rule)}')

            for member in rule.lhs:
                self.sig.check_term(member, allow_free=True)

            self.sig.check_term(rule.rhs, allow_free=True)

            if self.theory_tag == TheoryTag.MODULO_H and _l0_symbol(rule) is None:
                raise ValueError(
                    f'Rule modulo an equational theory must have shape X1, ..., Xn => f(X1, ..., Xn): {rule}'
                )

            bucket = buckets.setdefault(rule.bucket_key, [])

            if any(rule.equivalent(other) for other in bucket):
                continue

            bucket.append(rule)
            kept.append(rule)

        object.__setattr__(self, 'rules', tuple(kept))
        object.__setattr__(self, '_kinds', frozendict({rule: classify(rule, self.sig) for rule in kept}))

    def kind(self, rule: DeductionRule) -> RuleKind:
        """Get the kind of a rule (classified against the system's signature)."""
        cached = self._kinds.get(rule, None)
        return cached if cached is not None else classify(rule, self.sig)

    def increasing(self) -> tuple[DeductionRule, ...]:
        """Get increasing rules."""
        return tuple(rule for rule in self.rules if self._kinds[rule] == RuleKind.INCREASING)

    def decreasing(self) -> tuple[DeductionRule, ...]:
        """Get decreasing rules."""
        return tuple(rule for rule in self.rules if self._kinds[rule] == RuleKind.DECREASING)

    def find_equivalent(self, rule: DeductionRule) -> Optional[DeductionRule]:
        """Get the member equal to a rule up to renaming or `None`."""
        for other in self.rules:
            if rule.equivalent(other):
                return other

        return None

    def constructor_symbols(self) -> frozenset[str]:
        """Get symbols `f` with a rule `X1, ..., Xn => f(X1, ..., Xn)`."""
        return frozenset(symbol for rule in self.rules if (symbol := _l0_symbol(rule)) is not None)

    def constructor_for(self, symbol: str) -> Optional[DeductionRule]:
        """Get the rule `X1, ..., Xn => symbol(X1, ..., Xn)` or `None`."""
        for rule in self.rules:
            if _l0_symbol(rule) == symbol:
                return rule

        return None

    def with_rules(self, rules: Iterable[DeductionRule], theory_tag: Optional[TheoryTag] = None) -> 'DeductionSystem':
        """Get a system over the same signature with other rules."""
        return DeductionSystem(tuple(rules), self.sig, self.theory_tag if theory_tag is None else theory_tag)

    def __len__(self) -> int:
        """Get the number of rules."""
        return len(self.rules)

    def __iter__(self) -> Iterator[DeductionRule]:
        """Iterate over rules."""
        return iter(self.rules)


def rule_instances(rule: DeductionRule, knowledge: Iterable[Term]) -> Iterator[Substitution]:
    """Enumerate instances of a rule whose premises are all members of a knowledge set.

    :param rule: Rule.
    :param knowledge: Knowledge set (ground terms).

    :returns: Iterator of substitutions grounding every premise into `knowledge`.
    """
    knowledge = frozenset(knowledge)

    for sigma, _ in match_into_set(rule.nonvar, knowledge):
        open_vars = [var for var in rule.var_part if var not in sigma]

        if not open_vars:
            if all(apply(var, sigma) in knowledge for var in rule.var_part):
                yield sigma
            continue

        for extended, _ in match_into_set(open_vars, knowledge, base=sigma):
            if all(apply(var, extended) in knowledge for var in rule.var_part):
                yield extended


def derivable_within(
        knowledge: Iterable[Term],
        goal: Term,
        rules: Iterable[DeductionRule],
        depth: int,
) -> bool:
    """Determine if a goal has a derivation of bounded depth from a knowledge set.

    The search is goal-directed: a rule is tried when its conclusion matches the goal. Premises left open by the
    conclusion are bound by matching some of them into `knowledge`, after which the remaining premises are derived
    recursively.

    :param knowledge: Ground knowledge set.
    :param goal: Ground goal term.
    :param rules: Rules (interpreted syntactically).
    :param depth: Maximum derivation depth. Depth 0 means membership.

    :returns: `True` if a derivation is found.
    """
    knowledge = frozenset(knowledge)
    rules = tuple(rules)
    memo: dict[tuple[Term, int], bool] = {}

    def premises_hold(premises: tuple[Term, ...], sigma: Substitution, remaining: int) -> bool:
        open_premises = [member for member in premises if not variables(member) <= sigma.support]

        if not open_premises:
            return all(derivable(apply(member, sigma), remaining) for member in premises)

        for member in open_premises:
            for extended, _ in match_into_set((member,), knowledge, base=sigma):
                if premises_hold(premises, extended, remaining):
                    return True

        return False

    def derivable(target: Term, remaining: int) -> bool:
        if target in knowledge:
            return True

        if remaining == 0:
            return False

        key = (target, remaining)

        if key not in memo:
            memo[key] = False
            memo[key] = any(
                premises_hold(rule.var_part + rule.nonvar, sigma, remaining - 1)
                for rule in rules
                if (sigma := match(rule.rhs, target)) is not None
            )

        return memo[key]

    return derivable(goal, depth)
