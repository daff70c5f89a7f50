"""Constraint system types."""

__all__ = [
    'ConstraintTag',
    'ConstraintError',
    'DeductionConstraint',
    'ConstraintSystem',
    'GroundConstraintSystem',
    'SolveStatus',
    'SolveOutcome',
    'GroundVerdict',
    'check_wellformed',
    'wellformed_violation',
]

from collections.abc import Iterable
from dataclasses import dataclass, field
import enum
from typing import Any, Optional

from ..term import Substitution, Term, Var, apply, canonical_renaming, positions, term_sort_key, variables
from ..unify import UnificationSystem


class ConstraintTag(enum.Enum):
    """Rules a deduction constraint may be solved with."""
    PLAIN = 'plain'
    INC = 'inc'


class ConstraintError(ValueError):
    """A constraint system is not well formed.

    :ivar index: Index of the offending constraint (0-based), or `None`.
    :ivar line: Input line of the offending constraint, or `None`.
    """

    def __init__(self, message: str, index: Optional[int] = None, line: Optional[int] = None) -> None:
        """Initialize the error."""
        super().__init__(message)
        self.index = index
        self.line = line


@dataclass(frozen=True)
class DeductionConstraint:
    """A deduction constraint `knowledge |> goal`.

    :param knowledge: Knowledge set.
    :param goal: Goal term.
    :param tag: `INC` if only increasing rules may be used.
    """
    knowledge: frozenset[Term]
    goal: Term
    tag: ConstraintTag = ConstraintTag.PLAIN

    def __post_init__(self) -> None:
        """Freeze knowledge."""
        object.__setattr__(self, 'knowledge', frozenset(self.knowledge))

    def apply(self, sigma: Substitution) -> 'DeductionConstraint':
        """Instantiate the constraint."""
        return DeductionConstraint(
            frozenset(apply(member, sigma) for member in self.knowledge), apply(self.goal, sigma), self.tag
        )

    @property
    def solved(self) -> bool:
        """`True` if the goal is a variable."""
        return isinstance(self.goal, Var)

    def sorted_knowledge(self) -> list[Term]:
        """Get knowledge members in a deterministic order."""
        return sorted(self.knowledge, key=term_sort_key)

    def __str__(self) -> str:
        """Get a "E |> t" string."""
        arrow = '|>inc' if self.tag == ConstraintTag.INC else '|>'
        return f'{{{", ".join(str(member) for member in self.sorted_knowledge())}}} {arrow} {self.goal}'


@dataclass(frozen=True)
class ConstraintSystem:
    """An ordered sequence of deduction constraints with a unification system.

    :param constraints: Deduction constraints.
    :param unif: Equations.
    """
    constraints: tuple[DeductionConstraint, ...] = ()
    unif: UnificationSystem = field(default_factory=UnificationSystem)

    def __post_init__(self) -> None:
        """Freeze constraints."""
        object.__setattr__(self, 'constraints', tuple(self.constraints))

        if not isinstance(self.unif, UnificationSystem):
            object.__setattr__(self, 'unif', UnificationSystem(tuple(self.unif)))

    def apply(self, sigma: Substitution) -> 'ConstraintSystem':
        """Instantiate every constraint and equation."""
        return ConstraintSystem(
            tuple(constraint.apply(sigma) for constraint in self.constraints),
            UnificationSystem(tuple((apply(lhs, sigma), apply(rhs, sigma)) for lhs, rhs in self.unif)),
        )

    def terms(self) -> list[Term]:
        """Get every term of the system (knowledge, goals, then equation sides) in a deterministic order."""
        found = []

        for constraint in self.constraints:
            found.extend(constraint.sorted_knowledge())
            found.append(constraint.goal)

        for lhs, rhs in self.unif:
            found.extend((lhs, rhs))

        return found

    @property
    def variables(self) -> frozenset[Var]:
        """Variables of the system."""
        return variables(self.terms())

    def count_vars(self) -> int:
        """Get the number of distinct variables."""
        return len(self.variables)

    @property
    def solved(self) -> bool:
        """`True` if every goal is a variable and there are no equations."""
        return not self.unif.equations and all(constraint.solved for constraint in self.constraints)

    def canonical_key(self) -> tuple:
        """Get a key shared by systems equal up to variable renaming (variables named by first occurrence)."""
        ordered = []
        seen = set()

        for t in self.terms():
            for _, sub in positions(t):
                if isinstance(sub, Var) and sub not in seen:
                    seen.add(sub)
                    ordered.append(sub)

        renamed = self.apply(canonical_renaming(ordered))

        return (
            tuple(
                (tuple(sorted(str(member) for member in constraint.knowledge)), str(constraint.goal), constraint.tag)
                for constraint in renamed.constraints
            ),
            tuple((str(lhs), str(rhs)) for lhs, rhs in renamed.unif),
        )

    def __len__(self) -> int:
        """Get the number of deduction constraints."""
        return len(self.constraints)

    def __iter__(self):
        """Iterate over deduction constraints."""
        return iter(self.constraints)

    def __str__(self) -> str:
        """Get one constraint or equation per line."""
        lines = [str(constraint) for constraint in self.constraints]
        lines.extend(f'{lhs} = {rhs}' for lhs, rhs in self.unif)
        return '\n'.join(lines)


@dataclass(frozen=True)
class GroundConstraintSystem:
    """A sequence of ground deduction constraints.

    :param constraints: (knowledge, goal) pairs. Knowledge sets must be ground and grow monotonically; goals must be
        ground.
    """
    constraints: tuple[tuple[frozenset[Term], Term], ...]

    def __post_init__(self) -> None:
        """Check groundness and monotonicity."""
        constraints = tuple((frozenset(knowledge), goal) for knowledge, goal in self.constraints)
        object.__setattr__(self, 'constraints', constraints)

        previous = frozenset()

        for index, (knowledge, goal) in enumerate(constraints):
            if variables(knowledge) or variables(goal):
                raise ConstraintError(f'Ground constraint {index + 1} has variables', index=index)

            if not previous <= knowledge:
                raise ConstraintError(f'Ground constraint {index + 1}: knowledge shrinks', index=index)

            previous = knowledge

    @staticmethod
    def from_system(system: ConstraintSystem) -> 'GroundConstraintSystem':
        """Convert a ground constraint system without equations."""
        if system.unif.equations:
            raise ConstraintError('Ground constraint system cannot have equations')

        return GroundConstraintSystem(
            tuple((constraint.knowledge, constraint.goal) for constraint in system.constraints)
        )

    def __len__(self) -> int:
        """Get the number of constraints."""
        return len(self.constraints)

    def __iter__(self):
        """Iterate over (knowledge, goal) pairs."""
        return iter(self.constraints)


def wellformed_violation(system: ConstraintSystem | Iterable[DeductionConstraint]) -> Optional[tuple[int, str]]:
    """Find the first well-formedness violation.

    A system is well formed if knowledge sets grow monotonically and every variable of a knowledge set is the goal
    of an earlier constraint.

    :param system: Constraint system or constraints.

    :returns: (index, message) of the first violation or `None`.
    """
    constraints = system.constraints if isinstance(system, ConstraintSystem) else tuple(system)

    previous = frozenset()
    bound: set[Var] = set()

    for index, constraint in enumerate(constraints):
        if not previous <= constraint.knowledge:
            missing = ', '.join(sorted(str(member) for member in previous - constraint.knowledge))
            return index, f'Constraint {index + 1}: knowledge shrinks (missing {missing})'

        unbound = variables(constraint.knowledge) - bound

        if unbound:
            names = ', '.join(sorted(var.name for var in unbound))
            return index, f'Constraint {index + 1}: knowledge uses variables before they are deduced ({names})'

        previous = constraint.knowledge
        bound |= variables(constraint.goal)

    return None


def check_wellformed(system: ConstraintSystem | Iterable[DeductionConstraint]) -> bool:
    """Determine if a constraint system is well formed (see :func:`wellformed_violation`)."""
    return wellformed_violation(system) is None


class SolveStatus(enum.Enum):
    """Solver verdict."""
    SAT = 'sat'
    FAIL = 'fail'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class SolveOutcome:
    """Result of solving a constraint system.

    :param status: Verdict.
    :param witness: Satisfying substitution for `SAT`.
    :param trace: Transformation labels along the accepted branch (`SAT`) or the deepest branch (`UNKNOWN`).
    :param stats: Counters.
    :param diagnostics: Extra information, such as the deepest open system when the budget is exhausted.
    """
    status: SolveStatus
    witness: Optional[Substitution] = None
    trace: tuple[str, ...] = ()
    stats: dict[str, Any] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        """`True` if satisfiable."""
        return self.status == SolveStatus.SAT


class GroundVerdict(enum.Enum):
    """Ground reachability verdict."""
    VAL = 'val'
    INVAL = 'inval'
