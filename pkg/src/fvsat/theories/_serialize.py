"""Serialize theories, rules, and constraint systems to the text formats read by the parsers."""

__all__ = [
    'serialize_theory',
    'serialize_rules',
    'serialize_constraints',
]

from collections.abc import Iterable

from ..constraints import ConstraintSystem
from ..deduction import DeductionRule
from ..rewrite import RewriteRule
from ..term import term_sort_key

from ._bundle import TheoryBundle

_INDENT = '  '


def serialize_rules(rules: Iterable[RewriteRule | DeductionRule], indent: str = '') -> str:
    """Get one rule per line."""
    return ''.join(f'{indent}{rule}\n' for rule in rules)


def serialize_theory(bundle: TheoryBundle) -> str:
    """Get the theory file text of a bundle.

    Parsing the text gives back an equal bundle.
    """
    lines = [f'name {bundle.name}', '', 'signature']

    if bundle.sig.symbols:
        lines.append(_INDENT + ' '.join(str(symbol) for symbol in bundle.sig.symbols))

    lines.extend(['', 'precedence'])

    if bundle.sig.precedence:
        lines.append(_INDENT + ' > '.join(reversed(bundle.sig.precedence)))

    text = '\n'.join(lines) + '\n\nrules\n' + serialize_rules(bundle.rewrite, _INDENT)
    text += '\ndeduction\n' + serialize_rules(bundle.l0, _INDENT)

    return text


def serialize_constraints(system: ConstraintSystem) -> str:
    """Get the constraint file text of a system.

    :param system: Constraint system with monotone knowledge.

    :returns: Text with one `knows` statement per knowledge increment, one `deduce` statement per constraint, and
        one `eq` statement per equation.

    :raises ValueError: If a knowledge set does not contain the previous one.
    """
    lines = []
    previous = frozenset()

    for index, constraint in enumerate(system.constraints):
        if not previous <= constraint.knowledge:
            raise ValueError(f'Constraint {index + 1}: knowledge is not monotone, cannot serialize')

        added = sorted(constraint.knowledge - previous, key=term_sort_key)

        if added:
            lines.append('knows ' + ', '.join(str(t) for t in added))

        lines.append(f'deduce {constraint.goal}')
        previous = constraint.knowledge

    lines.extend(f'eq {lhs} = {rhs}' for lhs, rhs in system.unif)

    return ''.join(f'{line}\n' for line in lines)
