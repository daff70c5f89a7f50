"""Deduction constraint systems, transformation rules, and solvers."""

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
    'PreparedBranch',
    'prepare_branches',
    'prepare',
    'StepResult',
    'apply_unif',
    'apply_reduce1',
    'apply_reduce2',
    'DerivationStep',
    'decide_ground',
    'ground_derivation',
    'replay_derivation',
    'oracle_closure',
    'ProgressError',
    'premise_mappings',
    'solve',
    'solve_reachability',
    'solved_form_witness',
    'verify_witness',
]

from ._system import (
    ConstraintTag, ConstraintError, DeductionConstraint, ConstraintSystem, GroundConstraintSystem, SolveStatus,
    SolveOutcome, GroundVerdict, check_wellformed, wellformed_violation,
)

from ._prepare import PreparedBranch, prepare_branches, prepare

from ._rules import StepResult, apply_unif, apply_reduce1, apply_reduce2

from ._ground import DerivationStep, decide_ground, ground_derivation, replay_derivation

from ._oracle import oracle_closure

from ._solve import ProgressError, premise_mappings, solve, solve_reachability, solved_form_witness, verify_witness
