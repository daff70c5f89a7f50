"""Finite variants by basic narrowing.

The variants of a term `t` are pairs `(theta, reduct)` with `reduct` the normal form of `t theta`. Every normal
instance of `t` factors through one of them. Variants are computed by basic narrowing from `t`: narrowing is only
applied at positions that come from `t` or from right-hand sides introduced by earlier steps, never inside the
substitution part. Branches whose substitution is not normal are pruned, and variants that are instances of a more
general variant are dropped.
"""

__all__ = [
    'Variant',
    'FiniteVariantError',
    'variants',
    'variants_tuple',
]

from collections.abc import Sequence
from dataclasses import dataclass
import logging

from . import const

from .rewrite import RewriteSystem, is_normal, normalize
from .term import (
    App,
    IDENTITY,
    Substitution,
    Term,
    Var,
    apply,
    canonical_renaming,
    compose,
    positions,
    rename_apart,
    replace_at,
    subterm_at,
    term_sort_key,
    variables,
)
from .unify import match, try_mgu

logger = logging.getLogger(__name__)

_PACK_SYMBOL = '%variant'
_TUPLE_SYMBOL = '%tuple'


class FiniteVariantError(RuntimeError):
    """Narrowing still had open branches when the depth bound was reached."""
    pass


@dataclass(frozen=True)
class Variant:
    """A variant of a term.

    :param theta: Variant substitution (support within the variables of the term).
    :param reduct: Normal form of the term instantiated by `theta`.
    """
    theta: Substitution
    reduct: Term

    def __str__(self) -> str:
        """Get a "theta: reduct" string."""
        return f'{self.theta}: {self.reduct}'


@dataclass(frozen=True)
class _Node:
    """Basic narrowing node."""
    theta: Substitution
    term: Term
    basic: frozenset[tuple[int, ...]]


def _nonvar_positions(t: Term, prefix: tuple[int, ...] = ()) -> frozenset[tuple[int, ...]]:
    """Get the non-variable positions of a term, prefixed."""
    return frozenset(prefix + pos for pos, sub in positions(t) if not isinstance(sub, Var))


def _below(pos: tuple[int, ...], top: tuple[int, ...]) -> bool:
    """Determine if `pos` is `top` or below it."""
    return pos[:len(top)] == top


def _pack(images: Sequence[Term], reduct: Term) -> App:
    return App(_PACK_SYMBOL, tuple(images) + (reduct,))


def _new_vars(t: Term, known: tuple[Var, ...]) -> list[Var]:
    """Get variables of a term not in `known`, in order of first occurrence."""
    ordered = []
    seen = set(known)

    for _, sub in positions(t):
        if isinstance(sub, Var) and sub not in seen:
            seen.add(sub)
            ordered.append(sub)

    return ordered


def _node_key(node: _Node, t_vars: tuple[Var, ...]) -> tuple:
    """Key identifying a node up to renaming of its fresh variables."""
    packed = _pack([node.theta[var] for var in t_vars], node.term)
    renaming = canonical_renaming(_new_vars(packed, t_vars), avoid=t_vars)
    return apply(packed, renaming), node.basic


def _narrow(node: _Node, rules: RewriteSystem, t_vars: tuple[Var, ...]) -> list[_Node]:
    """Get all one-step basic narrowing children of a node with a normal substitution."""
    children = []
    protected = variables(node.term) | variables(node.theta.bindings.values())

    for pos in sorted(node.basic):
        sub = subterm_at(node.term, pos)

        if isinstance(sub, Var):
            continue

        for rule in rules.rules_for(sub.symbol):
            renaming = rename_apart(variables(rule.lhs))
            lhs = apply(rule.lhs, renaming)

            sigma = try_mgu(((sub, lhs),), protected=protected)

            if sigma is None:
                continue

            theta = compose(node.theta, sigma).restrict(t_vars)

            if not all(is_normal(theta[var], rules) for var in t_vars):
                continue

            rhs = apply(rule.rhs, renaming)

            children.append(
                _Node(
                    theta=theta,
                    term=apply(replace_at(node.term, pos, rhs), sigma),
                    basic=frozenset(
                        basic_pos for basic_pos in node.basic if not _below(basic_pos, pos)
                    ) | _nonvar_positions(rhs, pos),
                )
            )

    return children


def _readable(
        theta: Substitution,
        reduct: Term,
        t_vars: tuple[Var, ...],
) -> Variant:
    """Rename the fresh variables of a variant to stable names."""
    packed = _pack([theta[var] for var in t_vars], reduct)

    avoid = {var.name for var in t_vars}
    bindings = {}
    index = 1

    for var in _new_vars(packed, t_vars):
        while f'_v{index}' in avoid:
            index += 1

        bindings[var] = Var(f'_v{index}')
        index += 1

    renaming = Substitution(bindings)

    return Variant(
        theta=Substitution({var: apply(theta[var], renaming) for var in t_vars}),
        reduct=apply(reduct, renaming),
    )


def _prune_subsumed(found: list[Variant], t_vars: tuple[Var, ...]) -> list[Variant]:
    """Drop variants that are instances of another variant (renamed copies keep one representative)."""
    packed = [
        (_pack([variant.theta[var] for var in t_vars], variant.reduct), variant)
        for variant in found
    ]

    packed.sort(key=lambda item: (term_sort_key(item[0])[0], len(item[1].theta) > 0, str(item[0])))

    kept: list[tuple[App, Variant]] = []

    for pack, variant in packed:
        if any(match(kept_pack, pack) is not None for kept_pack, _ in kept):
            continue

        kept.append((pack, variant))

    return [variant for _, variant in kept]


def variants(
        t: Term,
        rules: RewriteSystem,
        depth_bound: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> list[Variant]:
    """Compute the variants of a term.

    :param t: Term.
    :param rules: Convergent rewrite system.
    :param depth_bound: Maximum number of narrowing steps on a branch.
    :param normalize_steps: Rewrite step budget for each normalization.

    :returns: Variants in a deterministic order, starting with the most general ones. The identity variant
        `(IDENTITY, normalize(t))` is always included.

    :raises FiniteVariantError: If a narrowing step is still possible after `depth_bound` steps.
    """
    t_vars = tuple(sorted(variables(t), key=lambda var: var.name))

    root = _Node(theta=IDENTITY, term=t, basic=_nonvar_positions(t))

    nodes = [root]
    frontier = [root]

    for depth in range(depth_bound + 1):
        children = []
        seen = set()

        for node in frontier:
            for child in _narrow(node, rules, t_vars):
                key = _node_key(child, t_vars)

                if key not in seen:
                    seen.add(key)
                    children.append(child)

        if not children:
            break

        if depth == depth_bound:
            raise FiniteVariantError(
                f'Basic narrowing of {t} has open branches after {depth_bound} steps '
                f'(theory may not have the finite variant property, or the depth bound is too small)'
            )

        nodes.extend(children)
        frontier = children

    found = []
    found_keys = set()

    for node in nodes:
        reduct = normalize(apply(t, node.theta), rules, normalize_steps)
        variant = _readable(node.theta, reduct, t_vars)

        key = (tuple(variant.theta[var] for var in t_vars), variant.reduct)

        if key not in found_keys:
            found_keys.add(key)
            found.append(variant)

    result = _prune_subsumed(found, t_vars)

    logger.debug('Variants of %s: %d narrowing nodes, %d variants', t, len(nodes), len(result))

    return result


def variants_tuple(
        ts: Sequence[Term],
        rules: RewriteSystem,
        depth_bound: int = const.DEFAULT_NARROW_DEPTH,
        normalize_steps: int = const.DEFAULT_NORMALIZE_STEPS,
) -> list[tuple[Substitution, tuple[Term, ...]]]:
    """Compute the variants of a sequence of terms taken together.

    The terms are variants of a single term under a fresh tupling symbol, so shared variables are instantiated
    simultaneously.

    :param ts: Terms.
    :param rules: Convergent rewrite system.
    :param depth_bound: Maximum number of narrowing steps on a branch.
    :param normalize_steps: Rewrite step budget for each normalization.

    :returns: List of (variant substitution, reducts aligned with `ts`).

    :raises FiniteVariantError: If a narrowing step is still possible after `depth_bound` steps.
    """
    ts = tuple(ts)

    if not ts:
        return [(IDENTITY, ())]

    return [
        (variant.theta, variant.reduct.args)
        for variant in variants(App(_TUPLE_SYMBOL, ts), rules, depth_bound, normalize_steps)
    ]
