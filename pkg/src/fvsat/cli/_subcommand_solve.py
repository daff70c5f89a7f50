"""Solve subcommand."""

import argparse
from typing import Optional

from .. import const

from ..constraints import SolveStatus, solve_reachability
from ..contracting import is_contracting
from ..report import make_report, outcome_to_dict
from ..subterm import solve_subterm_reachability
from ..theories import parse_constraints

from ._common_opt import _add_opt_analysis, _add_opt_constraints
from ._context import _emit, _emit_diverged, _read_input, _saturate, _setup

_EXIT = {
    SolveStatus.SAT: const.EXIT_OK,
    SolveStatus.FAIL: const.EXIT_FALSE,
    SolveStatus.UNKNOWN: const.EXIT_UNKNOWN,
}


def subcommand_solve(
        constraints: str,
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
        subterm: bool = False,
) -> int:
    """Solve a constraint system modulo a theory.

    :param constraints: Constraint file.
    :param subterm: Use the procedure for subterm convergent theories.

    :returns: Exit code: 0 if satisfiable, 1 if not, 2 if unknown or saturation diverged.
    """
    bundle, params = _setup(theory, builtin, config, 'solve_budget', bound, redundancy_steps, verbose, debug)

    if subterm and not bundle.subterm_convergent:
        raise ValueError(f'Theory {bundle.name} is not subterm convergent: Option --subterm cannot be used')

    system = parse_constraints(_read_input(constraints), bundle)

    result = _saturate(bundle, params, subterm=subterm)

    if result.diverged:
        return _emit_diverged(result, 'solve', bundle.name, as_json)

    if subterm:
        outcome = solve_subterm_reachability(
            system, bundle.rewrite, result.system, params.narrow_depth, params.normalize_steps
        )
    else:
        outcome = solve_reachability(
            system, bundle.rewrite, result.system,
            budget=params.solve_budget,
            narrow_depth=params.narrow_depth,
            normalize_steps=params.normalize_steps,
            check_progress=params.debug and is_contracting(result.system).contracting,
        )

    lines = [outcome.status.value]

    if outcome.witness is not None:
        lines.extend(f'{var} = {t}' for var, t in sorted(outcome.witness.items(), key=lambda item: item[0].name))

    if verbose or debug:
        lines.extend(f'  {label}' for label in outcome.trace)

    _emit(
        make_report('solve', outcome.status.value, bundle.name, **outcome_to_dict(outcome)),
        '\n'.join(lines),
        as_json,
    )

    return _EXIT[outcome.status]


def _add_subparser_solve(subparsers) -> argparse.ArgumentParser:
    """Add solve subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'solve',
        description='Solve a deduction constraint system modulo a theory',
        help='Solve a constraint system.',
    )

    _add_opt_analysis(parser, 'solver search nodes per branch')
    _add_opt_constraints(parser)

    parser.add_argument(
        '--subterm',
        default=False, action='store_true',
        help='Use the procedure for subterm convergent theories (no search budget).',
    )

    return parser
