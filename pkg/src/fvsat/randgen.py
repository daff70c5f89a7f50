"""Seeded random terms, knowledge sets, constraint systems, and theory bundles.

All functions take a numpy `Generator` (see :func:`make_rng`), so a seed reproduces the same objects.
"""

__all__ = [
    'DEFAULT_CONSTANTS',
    'make_rng',
    'random_term',
    'random_ground_term',
    'random_ground_instance',
    'random_constraint_system',
    'random_bundle',
]

from collections.abc import Sequence
from typing import Optional, TypeVar

import numpy as np

from .constraints import ConstraintSystem, DeductionConstraint
from .deduction import DeductionSystem, TheoryTag, constructor_rule
from .rewrite import RewriteRule, RewriteSystem, normalize
from .term import App, Signature, Symbol, Term, Var, subterms, variables
from .theories import TheoryBundle

DEFAULT_CONSTANTS: tuple[str, ...] = ('a', 'b', 'c')
"""Free constants used as leaves of random ground terms."""

_T = TypeVar('_T')


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Get a random generator."""
    return np.random.default_rng(seed)


def _pick(rng: np.random.Generator, items: Sequence[_T]) -> _T:
    return items[int(rng.integers(len(items)))]


def random_term(
        rng: np.random.Generator,
        symbols: Sequence[Symbol],
        leaves: Sequence[Term],
        max_depth: int,
        leaf_prob: float = 0.3,
) -> Term:
    """Get a random term.

    :param rng: Random generator.
    :param symbols: Symbols for inner nodes (arity 0 symbols are leaves).
    :param leaves: Leaf terms. At least one leaf or nullary symbol is required.
    :param max_depth: Maximum depth (0 gives a leaf).
    :param leaf_prob: Probability of stopping at a leaf above the maximum depth.
    """
    inner = [symbol for symbol in symbols if symbol.arity > 0]
    all_leaves = list(leaves) + [App(symbol.name, ()) for symbol in symbols if symbol.arity == 0]

    if not all_leaves:
        raise ValueError('Random term needs at least one leaf or nullary symbol')

    if max_depth <= 0 or not inner or rng.random() < leaf_prob:
        return _pick(rng, all_leaves)

    symbol = _pick(rng, inner)

    return App(
        symbol.name,
        tuple(random_term(rng, symbols, leaves, max_depth - 1, leaf_prob) for _ in range(symbol.arity)),
    )


def random_ground_term(
        rng: np.random.Generator,
        sig: Signature,
        max_depth: int,
        constants: Sequence[str] = DEFAULT_CONSTANTS,
) -> Term:
    """Get a random ground term over a signature and free constants."""
    return random_term(rng, sig.symbols, [App(name, ()) for name in constants], max_depth)


def random_ground_instance(
        rng: np.random.Generator,
        sig: Signature,
        rewrite: Optional[RewriteSystem] = None,
        max_terms: int = 4,
        max_depth: int = 3,
        constants: Sequence[str] = DEFAULT_CONSTANTS,
) -> tuple[frozenset[Term], Term]:
    """Get a random ground knowledge set and goal.

    Half of the goals are subterms of the knowledge set, which makes deducible goals common.

    :param rng: Random generator.
    :param sig: Signature.
    :param rewrite: If given, knowledge and goal are normalized.
    :param max_terms: Maximum number of knowledge terms (at least 1).
    :param max_depth: Maximum term depth.
    :param constants: Free constants.

    :returns: (knowledge, goal).
    """
    def norm(t: Term) -> Term:
        return normalize(t, rewrite) if rewrite is not None else t

    count = int(rng.integers(1, max_terms + 1))
    knowledge = frozenset(norm(random_ground_term(rng, sig, max_depth, constants)) for _ in range(count))

    if rng.random() < 0.5:
        goal = _pick(rng, sorted(subterms(knowledge), key=str))
    else:
        goal = norm(random_ground_term(rng, sig, max_depth, constants))

    return knowledge, goal


def random_constraint_system(
        rng: np.random.Generator,
        sig: Signature,
        max_constraints: int = 3,
        max_depth: int = 2,
        constants: Sequence[str] = DEFAULT_CONSTANTS,
        var_prob: float = 0.4,
        symbols: Optional[Sequence[Symbol]] = None,
) -> ConstraintSystem:
    """Get a random well-formed constraint system.

    Knowledge sets grow monotonically and only use variables of earlier goals. Goals may introduce fresh variables.

    :param rng: Random generator.
    :param sig: Signature.
    :param max_constraints: Maximum number of constraints (at least 1).
    :param max_depth: Maximum term depth.
    :param constants: Free constants.
    :param var_prob: Probability that a goal is a fresh variable.
    :param symbols: Symbols to build terms with. Defaults to every symbol of `sig`.

    :returns: Constraint system without equations.
    """
    symbols = tuple(sig.symbols if symbols is None else symbols)
    count = int(rng.integers(1, max_constraints + 1))
    ground_leaves = [App(name, ()) for name in constants]

    knowledge: frozenset[Term] = frozenset()
    bound: list[Var] = []
    constraints = []

    for index in range(count):
        additions = int(rng.integers(1 if index == 0 else 0, 3))
        leaves = ground_leaves + bound

        knowledge = knowledge | frozenset(
            random_term(rng, symbols, leaves, max_depth) for _ in range(additions)
        )

        fresh = Var(f'X{index + 1}')

        if rng.random() < var_prob:
            goal = fresh
        else:
            goal = random_term(rng, symbols, leaves + [fresh], max_depth, leaf_prob=0.2)

        constraints.append(DeductionConstraint(knowledge, goal))
        bound.extend(var for var in sorted(variables(goal), key=lambda v: v.name) if var not in bound)

    return ConstraintSystem(tuple(constraints))


def random_bundle(
        rng: np.random.Generator,
        name: str = 'random',
        max_symbols: int = 5,
        max_rules: int = 3,
) -> TheoryBundle:
    """Get a random theory bundle.

    Rewrite rules conclude a strict subterm of their left-hand side, so they are oriented under every precedence.
    The bundle is meant for format tests: its rewrite system is not checked for confluence.

    :param rng: Random generator.
    :param name: Bundle name.
    :param max_symbols: Maximum number of symbols (at least 2).
    :param max_rules: Maximum number of rewrite rules.

    :returns: Theory bundle.
    """
    count = int(rng.integers(2, max_symbols + 1))
    symbols = [Symbol(f'f{index}', int(rng.integers(0, 3))) for index in range(count)]

    if all(symbol.arity == 0 for symbol in symbols):
        symbols[0] = Symbol(symbols[0].name, 2)

    order = [symbols[int(index)].name for index in rng.permutation(count)]
    sig = Signature(tuple(symbols), tuple(order))

    var_leaves = [Var('X'), Var('Y'), Var('Z')]
    inner = [symbol for symbol in symbols if symbol.arity > 0]

    rules = []

    for _ in range(int(rng.integers(0, max_rules + 1))):
        head = _pick(rng, inner)
        lhs = App(head.name, tuple(random_term(rng, symbols, var_leaves, 1) for _ in range(head.arity)))
        candidates = sorted(subterms(lhs, strict=True), key=str)

        if not candidates:
            continue

        rule = RewriteRule(lhs, _pick(rng, candidates))

        if rule not in rules:
            rules.append(rule)

    l0_symbols = [symbol for symbol in symbols if rng.random() < 0.7] or symbols[:1]

    return TheoryBundle(
        name,
        sig,
        RewriteSystem(tuple(rules), sig),
        DeductionSystem(
            tuple(constructor_rule(symbol.name, symbol.arity) for symbol in l0_symbols), sig, TheoryTag.MODULO_H
        ),
    )
