"""Syntactic unification and matching."""

__all__ = [
    'UnificationError',
    'UnificationSystem',
    'mgu',
    'try_mgu',
    'unifiable',
    'match',
    'match_into_set',
]

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Optional

from .term import App, Substitution, Term, Var, apply_map, term_sort_key


class UnificationError(ValueError):
    """Terms cannot be unified.

    :ivar reason: "clash" for a symbol mismatch, "occurs" for an occurs-check failure.
    """

    def __init__(self, message: str, reason: str) -> None:
        """Initialize the error."""
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class UnificationSystem:
    """A finite set of equations between terms.

    :param equations: Equations as (left, right) pairs.
    """
    equations: tuple[tuple[Term, Term], ...] = ()

    def __post_init__(self) -> None:
        """Freeze equations."""
        object.__setattr__(self, 'equations', tuple((lhs, rhs) for lhs, rhs in self.equations))

    def mgu(self, protected: Iterable[Var] = ()) -> Substitution:
        """Get the most general unifier of the system."""
        return mgu(self.equations, protected)

    def __len__(self) -> int:
        """Get the number of equations."""
        return len(self.equations)

    def __iter__(self):
        """Iterate over equations."""
        return iter(self.equations)


def mgu(
        equations: Iterable[tuple[Term, Term]],
        protected: Iterable[Var] = (),
) -> Substitution:
    """Compute the most general unifier of a set of equations.

    Bindings are kept in solved form as they are created, so the result is idempotent.

    :param equations: Equations as (left, right) pairs.
    :param protected: Variables that should not be bound to another variable when the other side is an unprotected
        variable. Used to keep the variables of a constraint system when unifying with renamed rule variables.

    :returns: Most general unifier.

    :raises UnificationError: If the equations have no unifier.
    """
    protected = frozenset(protected)
    bindings: dict[Var, Term] = {}
    work = list(equations)
    work.reverse()

    while work:
        lhs, rhs = work.pop()

        lhs = apply_map(lhs, bindings)
        rhs = apply_map(rhs, bindings)

        if lhs == rhs:
            continue

        if isinstance(lhs, Var) or isinstance(rhs, Var):
            if isinstance(lhs, Var) and isinstance(rhs, Var):
                if lhs in protected and rhs not in protected:
                    lhs, rhs = rhs, lhs

            elif not isinstance(lhs, Var):
                lhs, rhs = rhs, lhs

            if isinstance(rhs, App) and lhs in rhs._vars:
                raise UnificationError(f'Occurs check: {lhs} occurs in {rhs}', reason='occurs')

            single = {lhs: rhs}

            for key in bindings:
                bindings[key] = apply_map(bindings[key], single)

            bindings[lhs] = rhs
            continue

        if lhs.symbol != rhs.symbol or len(lhs.args) != len(rhs.args):
            raise UnificationError(f'Symbol clash: {lhs} and {rhs}', reason='clash')

        work.extend(reversed(list(zip(lhs.args, rhs.args))))

    return Substitution(bindings)


def try_mgu(
        equations: Iterable[tuple[Term, Term]],
        protected: Iterable[Var] = (),
) -> Optional[Substitution]:
    """Compute the most general unifier or get `None` if the equations have no unifier."""
    try:
        return mgu(equations, protected)
    except UnificationError:
        return None


def unifiable(s: Term, t: Term) -> bool:
    """Determine if two terms are unifiable."""
    return try_mgu(((s, t),)) is not None


def _match_dict(pattern: Term, subject: Term, bindings: dict) -> Optional[dict]:
    """Extend `bindings` (modified in place) so `pattern` matches `subject`."""
    stack = [(pattern, subject)]

    while stack:
        pat, sub = stack.pop()

        if isinstance(pat, Var):
            bound = bindings.get(pat, None)

            if bound is None:
                bindings[pat] = sub
            elif bound != sub:
                return None

            continue

        if isinstance(sub, Var) or pat.symbol != sub.symbol or len(pat.args) != len(sub.args):
            return None

        if not pat.args:
            continue

        if not pat._vars:
            if pat != sub:
                return None

            continue

        stack.extend(zip(pat.args, sub.args))

    return bindings


def match(
        pattern: Term,
        subject: Term,
        base: Optional[Substitution] = None,
) -> Optional[Substitution]:
    """Match a pattern against a subject term.

    Variables of the subject are treated as constants.

    :param pattern: Pattern term.
    :param subject: Subject term.
    :param base: Bindings the matcher must extend.

    :returns: A substitution `sigma` with `apply(pattern, sigma) == subject`, or `None` if there is none.
    """
    bindings = dict(base.bindings) if base is not None else {}

    if _match_dict(pattern, subject, bindings) is None:
        return None

    return Substitution(bindings)


def match_into_set(
        patterns: Sequence[Term],
        terms: Iterable[Term],
        base: Optional[Substitution] = None,
) -> Iterator[tuple[Substitution, tuple[Term, ...]]]:
    """Enumerate simultaneous matchers of several patterns into members of a term set.

    Different patterns may be matched to the same member.

    :param patterns: Patterns.
    :param terms: Candidate subjects.
    :param base: Bindings every matcher must extend.

    :returns: Iterator of (matcher, chosen members) pairs, chosen members aligned with `patterns`. Order is
        deterministic.
    """
    by_symbol: dict[Optional[str], list[Term]] = {}
    all_terms = sorted(set(terms), key=term_sort_key)

    for term in all_terms:
        by_symbol.setdefault(None if isinstance(term, Var) else term.symbol, []).append(term)

    patterns = tuple(patterns)

    def candidates(pattern: Term) -> list[Term]:
        if isinstance(pattern, Var):
            return all_terms
        return by_symbol.get(pattern.symbol, [])

    start = dict(base.bindings) if base is not None else {}

    def search(index: int, bindings: dict, chosen: tuple[Term, ...]):
        if index == len(patterns):
            yield Substitution(bindings), chosen
            return

        for subject in candidates(patterns[index]):
            extended = _match_dict(patterns[index], subject, dict(bindings))

            if extended is not None:
                yield from search(index + 1, extended, chosen + (subject,))

    yield from search(0, start, ())
