"""Contracting subcommand."""

import argparse
from typing import Optional

from .. import const

from ..contracting import is_contracting
from ..report import contracting_to_dict, make_report

from ._common_opt import _add_opt_analysis
from ._context import _emit, _emit_diverged, _saturate, _setup


def subcommand_contracting(
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
        table: bool = False,
) -> int:
    """Saturate a theory and check the contracting criterion.

    :param table: Print the measure of every rule instead of the failing rules only.

    :returns: Exit code: 0 if contracting, 1 if not, 2 if saturation diverged.
    """
    bundle, params = _setup(theory, builtin, config, 'max_rounds', bound, redundancy_steps, verbose, debug)

    result = _saturate(bundle, params)

    if result.diverged:
        return _emit_diverged(result, 'contracting', bundle.name, as_json)

    report = is_contracting(result.system)

    if table:
        text = str(report.to_frame())
    else:
        lines = [f'contracting: {str(report.contracting).lower()}']
        lines.extend(f'{entry.measure}\t{entry.kind.value}\t{entry.rule.canonical()}' for entry in report.failing())
        text = '\n'.join(lines)

    _emit(
        make_report(
            'contracting', str(report.contracting).lower(), bundle.name, contracting=contracting_to_dict(report)
        ),
        text,
        as_json,
    )

    return const.EXIT_OK if report.contracting else const.EXIT_FALSE


def _add_subparser_contracting(subparsers) -> argparse.ArgumentParser:
    """Add contracting subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'contracting',
        description='Check that every saturated rule has a positive contracting measure (a sufficient condition for '
                    'the constraint solver to terminate)',
        help='Check the contracting criterion.',
    )

    _add_opt_analysis(parser, 'closure generations')

    parser.add_argument(
        '--table',
        default=False, action='store_true',
        help='Print the measure of every rule.',
    )

    return parser
