"""Saturate subcommand."""

import argparse
from typing import Optional

from .. import const

from ..report import format_rules, make_report, saturation_to_dict

from ._common_opt import _add_opt_analysis
from ._context import _emit, _emit_diverged, _saturate, _setup


def subcommand_saturate(
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
        literal: bool = False,
        subterm: bool = False,
        table: bool = False,
) -> int:
    """Saturate the deduction rules of a theory and print the result.

    :param literal: Keep rules whose conclusion is one of their premises.
    :param subterm: Use the subterm convergent procedure.
    :param table: Print the rule provenance table.

    :returns: Exit code.
    """
    bundle, params = _setup(theory, builtin, config, 'max_rounds', bound, redundancy_steps, verbose, debug)

    result = _saturate(bundle, params, literal=literal, subterm=subterm)

    if result.diverged:
        return _emit_diverged(result, 'saturate', bundle.name, as_json)

    if table:
        text = str(result.to_frame())
    else:
        text = format_rules(result.system)

    _emit(
        make_report('saturate', 'saturated', bundle.name, saturation=saturation_to_dict(result)),
        text,
        as_json,
    )

    return const.EXIT_OK


def _add_subparser_saturate(subparsers) -> argparse.ArgumentParser:
    """Add saturate subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'saturate',
        description='Saturate the deduction rules of a theory so they apply without the equational theory',
        help='Saturate deduction rules.',
    )

    _add_opt_analysis(parser, 'closure generations')

    mode = parser.add_mutually_exclusive_group()

    mode.add_argument(
        '--literal',
        default=False, action='store_true',
        help='Keep rules whose conclusion is one of their premises.',
    )

    mode.add_argument(
        '--subterm',
        default=False, action='store_true',
        help='Use the procedure for subterm convergent theories and check the shape of added rules.',
    )

    parser.add_argument(
        '--table',
        default=False, action='store_true',
        help='Print a table with the origin, kind, and generation of every rule.',
    )

    return parser
