"""Ground subcommand."""

import argparse
from typing import Optional

from .. import const

from ..constraints import ConstraintError, GroundConstraintSystem, GroundVerdict, decide_ground, ground_derivation
from ..report import make_report
from ..rewrite import normalize
from ..theories import parse_constraints

from ._common_opt import _add_opt_analysis, _add_opt_constraints
from ._context import _emit, _emit_diverged, _read_input, _saturate, _setup


def subcommand_ground(
        constraints: str,
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
) -> int:
    """Decide a ground constraint system.

    :param constraints: Constraint file.

    :returns: Exit code: 0 if every goal is deducible, 1 if not, 2 if saturation diverged.
    """
    bundle, params = _setup(theory, builtin, config, 'max_rounds', bound, redundancy_steps, verbose, debug)

    system = parse_constraints(_read_input(constraints), bundle)

    if system.unif.equations:
        raise ConstraintError('Ground constraint system cannot have equations')

    ground = GroundConstraintSystem(
        tuple(
            (
                frozenset(normalize(member, bundle.rewrite, params.normalize_steps) for member in c.knowledge),
                normalize(c.goal, bundle.rewrite, params.normalize_steps),
            )
            for c in system.constraints
        )
    )

    result = _saturate(bundle, params)

    if result.diverged:
        return _emit_diverged(result, 'ground', bundle.name, as_json)

    verdict = decide_ground(ground, result.system)

    derivations = []

    if verdict == GroundVerdict.VAL:
        for knowledge, goal in ground:
            steps = ground_derivation(knowledge, goal, result.system)
            derivations.append([str(step) for step in steps])

    lines = [verdict.value]

    for index, steps in enumerate(derivations):
        lines.append(f'constraint {index + 1}:')
        lines.extend(f'  {step}' for step in steps)

    _emit(
        make_report('ground', verdict.value, bundle.name, derivations=derivations),
        '\n'.join(lines),
        as_json,
    )

    return const.EXIT_OK if verdict == GroundVerdict.VAL else const.EXIT_FALSE


def _add_subparser_ground(subparsers) -> argparse.ArgumentParser:
    """Add ground subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'ground',
        description='Decide a ground constraint system with the saturated deduction rules',
        help='Decide ground deducibility.',
    )

    _add_opt_analysis(parser, 'closure generations')
    _add_opt_constraints(parser)

    return parser
