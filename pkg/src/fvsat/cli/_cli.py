"""CLI entrypoint for all commands.

This module parses command-line arguments, routes to a subcommand routine, and maps errors to exit codes.
"""

import argparse
import inspect
import io
import logging
import sys
from typing import Any, Optional

from .. import const

from ..params import format_config_md
from ..rewrite import NormalizationError
from ..variants import FiniteVariantError

from ._common_opt import _add_opt_version
from ._subcommand_check_theory import _add_subparser_check_theory, subcommand_check_theory
from ._subcommand_classify import _add_subparser_classify, subcommand_classify
from ._subcommand_contracting import _add_subparser_contracting, subcommand_contracting
from ._subcommand_ground import _add_subparser_ground, subcommand_ground
from ._subcommand_normalize import _add_subparser_normalize, subcommand_normalize
from ._subcommand_oracle import _add_subparser_oracle, subcommand_oracle
from ._subcommand_saturate import _add_subparser_saturate, subcommand_saturate
from ._subcommand_solve import _add_subparser_solve, subcommand_solve
from ._subcommand_variants import _add_subparser_variants, subcommand_variants

logger = logging.getLogger(__name__)

_SUBCOMMANDS = {
    'normalize': subcommand_normalize,
    'variants': subcommand_variants,
    'saturate': subcommand_saturate,
    'classify': subcommand_classify,
    'contracting': subcommand_contracting,
    'ground': subcommand_ground,
    'solve': subcommand_solve,
    'oracle': subcommand_oracle,
    'check-theory': subcommand_check_theory,
}


def _epilog() -> str:
    """Help text after the option list: usage note and the configuration parameters."""
    config_help = io.StringIO()
    format_config_md(config_help, advanced=False)

    return (
        'The subcommand must be first followed by options and arguments. Use subcommand "saturate" to saturate the\n'
        'deduction rules of a theory.\n\n'
        f'Configuration parameters (--config or {const.CONFIG_ENV_VAR}):\n'
        + config_help.getvalue()
    )


def parse_arguments(
        argv: Optional[list[Any]] = None
) -> argparse.Namespace:
    """Parse command-line arguments.

    :param argv: Array of arguments. Defaults to `sys.argv`.

    :return: A configured argument object.

    :raises SystemExit: On a usage error or after printing help or the version.
    """
    parser = argparse.ArgumentParser(
        prog='fvsat',
        description='Intruder deduction and constraint solving modulo theories with the finite variant property',
        epilog=_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    _add_opt_version(parser)

    subparsers = parser.add_subparsers(
        title='subcommands',
        help='fvsat subcommand (select one)',
        dest='subcommand',
        required=True,
    )

    _add_subparser_normalize(subparsers)
    _add_subparser_variants(subparsers)
    _add_subparser_saturate(subparsers)
    _add_subparser_classify(subparsers)
    _add_subparser_contracting(subparsers)
    _add_subparser_ground(subparsers)
    _add_subparser_solve(subparsers)
    _add_subparser_oracle(subparsers)
    _add_subparser_check_theory(subparsers)

    return parser.parse_args(argv)


def main(
        argv: Optional[list[Any]] = None
) -> int:
    """fvsat CLI entrypoint.

    :param argv: Array of arguments. Defaults to `sys.argv`.

    :return: Exit code: 0 for sat, valid, or true; 1 for fail, invalid, or false; 2 for unknown or diverged; 3 for a
        usage error; 4 for an input error.
    """
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return const.EXIT_OK if e.code in {0, None} else const.EXIT_USAGE

    if hasattr(args, 'verbose') and hasattr(args, 'debug'):
        args.verbose = args.verbose or args.debug

    subcommand = _SUBCOMMANDS.get(args.subcommand, None)

    if subcommand is None:
        raise ValueError(f'Unknown subcommand: {args.subcommand}')

    try:
        return subcommand(
            **{
                attr: getattr(args, attr)
                for attr in list(inspect.signature(subcommand).parameters.keys())
            }
        )

    except (FiniteVariantError, NormalizationError) as e:
        logger.debug('Subcommand %s stopped on a bound', args.subcommand, exc_info=True)
        print(f'fvsat {args.subcommand}: {e}', file=sys.stderr, flush=True)
        return const.EXIT_UNKNOWN

    except (FileNotFoundError, ValueError) as e:
        logger.debug('Subcommand %s failed on its input', args.subcommand, exc_info=True)
        print(f'fvsat {args.subcommand}: {e}', file=sys.stderr, flush=True)
        return const.EXIT_INPUT
