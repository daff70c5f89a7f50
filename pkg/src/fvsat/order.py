"""Lexicographic path ordering and deduction rule classification.

The reduction order is the lexicographic path ordering (LPO) induced by the total symbol precedence of a
:class:`fvsat.term.Signature`. It is well-founded, closed under substitution, compatible with contexts, has the
subterm property, and is total on ground terms.
"""

__all__ = [
    'OrderResult',
    'RuleKind',
    'lpo_compare',
    'lpo_greater',
    'lpo_greater_eq',
    'classify',
]

import enum
from typing import Optional

from .term import Signature, Term, Var


class OrderResult(enum.Enum):
    """Result of comparing two terms."""
    GREATER = 'greater'
    LESS = 'less'
    EQUAL = 'equal'
    INCOMPARABLE = 'incomparable'


class RuleKind(enum.Enum):
    """Classification of a deduction rule."""
    INCREASING = 'increasing'
    DECREASING = 'decreasing'


def _check_symbols(t: Term, sig: Signature) -> None:
    """Check that a term only uses symbols the order can rank."""
    sig.check_term(t, allow_free=True)


def _lpo_gt(s: Term, t: Term, sig: Signature, memo: dict) -> bool:
    """Strict LPO without symbol checks."""
    if isinstance(s, Var):
        return False

    if isinstance(t, Var):
        return t in s._vars

    key = (s, t)
    cached = memo.get(key, None)

    if cached is not None:
        return cached

    # Subterm case
    result = any(arg == t or _lpo_gt(arg, t, sig, memo) for arg in s.args)

    if not result:
        cmp = sig.compare_symbols(s.symbol, t.symbol)

        if cmp > 0:
            result = all(_lpo_gt(s, arg, sig, memo) for arg in t.args)

        elif cmp == 0:
            # Same symbol, same arity
            for index, (s_arg, t_arg) in enumerate(zip(s.args, t.args)):
                if s_arg != t_arg:
                    result = (
                        _lpo_gt(s_arg, t_arg, sig, memo)
                        and all(_lpo_gt(s, arg, sig, memo) for arg in t.args[index + 1:])
                    )
                    break

    memo[key] = result

    return result


def lpo_greater(s: Term, t: Term, sig: Signature, memo: Optional[dict] = None) -> bool:
    """Determine if `s` is strictly greater than `t` in the LPO.

    :param s: Left term.
    :param t: Right term.
    :param sig: Signature providing the precedence.
    :param memo: Optional cache shared between calls with the same signature.

    :returns: `True` if `s > t`.

    :raises SignatureError: If a term uses an undeclared non-constant symbol or a wrong arity.
    """
    _check_symbols(s, sig)
    _check_symbols(t, sig)

    return _lpo_gt(s, t, sig, {} if memo is None else memo)


def lpo_greater_eq(s: Term, t: Term, sig: Signature) -> bool:
    """Determine if `s` is greater than or equal to `t` in the LPO."""
    return s == t or lpo_greater(s, t, sig)


def lpo_compare(s: Term, t: Term, sig: Signature) -> OrderResult:
    """Compare two terms in the LPO.

    :param s: Left term.
    :param t: Right term.
    :param sig: Signature providing the precedence.

    :returns: Comparison result. `EQUAL` only for identical terms.

    :raises SignatureError: If a term uses an undeclared non-constant symbol or a wrong arity.
    """
    _check_symbols(s, sig)
    _check_symbols(t, sig)

    if s == t:
        return OrderResult.EQUAL

    memo = {}

    if _lpo_gt(s, t, sig, memo):
        return OrderResult.GREATER

    if _lpo_gt(t, s, sig, memo):
        return OrderResult.LESS

    return OrderResult.INCOMPARABLE


def classify(rule, sig: Signature) -> RuleKind:
    """Classify a deduction rule as increasing or decreasing.

    A rule is decreasing if some member of its left-hand side is greater than or equal to its right-hand side, and
    increasing otherwise.

    :param rule: Deduction rule (any object with `lhs` and `rhs` attributes).
    :param sig: Signature providing the precedence.

    :returns: Rule kind.
    """
    memo = {}

    _check_symbols(rule.rhs, sig)

    for member in rule.lhs:
        _check_symbols(member, sig)

        if member == rule.rhs or _lpo_gt(member, rule.rhs, sig, memo):
            return RuleKind.DECREASING

    return RuleKind.INCREASING
