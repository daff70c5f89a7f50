"""Theory bundles."""

__all__ = [
    'TheoryBundle',
    'bundle_to_dict',
]

from dataclasses import dataclass
import re
from typing import Any

from ..deduction import DeductionSystem, TheoryTag
from ..rewrite import RewriteSystem, check_subterm_convergent
from ..term import Signature

_NAME_PATTERN = re.compile(r'^[A-Za-z0-9_][A-Za-z0-9_.-]*$')


@dataclass(frozen=True)
class TheoryBundle:
    """A signature, a rewrite system, and the initial deduction rules of an intruder.

    :param name: Theory name.
    :param sig: Signature.
    :param rewrite: Convergent rewrite system over `sig`.
    :param l0: Initial deduction rules, applied modulo the theory of `rewrite`.
    """
    name: str
    sig: Signature
    rewrite: RewriteSystem
    l0: DeductionSystem

    def __post_init__(self) -> None:
        """Check attributes."""
        if not isinstance(self.name, str) or not _NAME_PATTERN.match(self.name):
            raise ValueError(f'Theory name must be a non-empty identifier: {self.name!r}')

        if self.rewrite.sig != self.sig:
            raise ValueError(f'Theory {self.name}: Rewrite system signature does not match the theory signature')

        if self.l0.sig != self.sig:
            raise ValueError(f'Theory {self.name}: Deduction system signature does not match the theory signature')

        if self.l0.theory_tag != TheoryTag.MODULO_H:
            raise ValueError(f'Theory {self.name}: Initial deduction rules must apply modulo the theory')

    @property
    def subterm_convergent(self) -> bool:
        """`True` if every rewrite rule has a strict subterm of its left-hand side on the right."""
        return check_subterm_convergent(self.rewrite)

    def __str__(self) -> str:
        """Get a one-line summary."""
        return (
            f'{self.name}: {len(self.sig.symbols)} symbols, {len(self.rewrite)} rewrite rules, '
            f'{len(self.l0)} deduction rules'
        )


def bundle_to_dict(bundle: TheoryBundle) -> dict[str, Any]:
    """Get a JSON-ready structure mirroring the theory file format."""
    return {
        'name': bundle.name,
        'signature': [{'name': symbol.name, 'arity': symbol.arity} for symbol in bundle.sig.symbols],
        'precedence': list(reversed(bundle.sig.precedence)),
        'rules': [str(rule) for rule in bundle.rewrite],
        'deduction': [str(rule) for rule in bundle.l0],
        'subterm_convergent': bundle.subterm_convergent,
    }
