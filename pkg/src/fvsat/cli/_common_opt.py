"""Common options.

Common options are defined here. Each subcommand explicitly adds the common options it uses instead of relying on
global parent parsers.
"""

import argparse

from .. import const
from .. import __version__


def _add_opt_version(parser: argparse.ArgumentParser) -> None:
    """Add version option to parser."""
    parser.add_argument(
        '--version',
        action='version',
        version=f'fvsat {__version__}',
        help='Show fvsat version and exit.'
    )


def _add_opt_verbose(parser: argparse.ArgumentParser) -> None:
    """Add verbose option to parser."""
    parser.add_argument(
        '--verbose', '-v',
        default=False, action='store_true',
        help='Generate verbose output',
    )


def _add_opt_debug(parser: argparse.ArgumentParser) -> None:
    """Add debug option to parser."""
    parser.add_argument(
        '--debug',
        default=False, action='store_true',
        help='Generate very verbose debugging output and run extra consistency checks'
    )


def _add_opt_theory(parser: argparse.ArgumentParser) -> None:
    """Add the theory source options (a theory file or a built-in theory, exactly one)."""
    group = parser.add_mutually_exclusive_group(required=True)

    group.add_argument(
        '--theory', '-t',
        type=str, default=None,
        help='Theory file (plain or gzipped).',
    )

    group.add_argument(
        '--builtin', '-b',
        type=str, default=None,
        choices=list(const.BUILTIN_THEORIES),
        help='Built-in theory.',
    )


def _add_opt_bound(parser: argparse.ArgumentParser, meaning: str) -> None:
    """Add the bound option.

    :param parser: Parser.
    :param meaning: What the bound limits for this subcommand (shown in help).
    """
    parser.add_argument(
        '--bound',
        type=int, default=None,
        help=f'Bound on {meaning}. Overrides the configured default.',
    )


def _add_opt_redundancy_steps(parser: argparse.ArgumentParser) -> None:
    """Add the saturation redundancy check option."""
    parser.add_argument(
        '--redundancy-steps',
        type=int, default=None,
        help='Derivation depth of the redundancy check applied to new increasing rules during saturation '
             '(0 disables the check).',
    )


def _add_opt_json(parser: argparse.ArgumentParser) -> None:
    """Add JSON output option."""
    parser.add_argument(
        '--json',
        dest='as_json',
        default=False, action='store_true',
        help='Write a JSON report instead of human-readable output.',
    )


def _add_opt_config(parser: argparse.ArgumentParser) -> None:
    """Add configuration override option."""
    parser.add_argument(
        '--config',
        type=str, default=None,
        help=f'Configuration overrides as "key=value;key=value" (takes precedence over {const.CONFIG_ENV_VAR}).',
    )


def _add_opt_constraints(parser: argparse.ArgumentParser) -> None:
    """Add constraint file option."""
    parser.add_argument(
        '--constraints', '-c',
        type=str, required=True,
        help='Constraint file (plain or gzipped).',
    )


def _add_opt_analysis(parser: argparse.ArgumentParser, bound_meaning: str) -> None:
    """Add the options shared by every theory analysis subcommand."""
    _add_opt_version(parser)
    _add_opt_verbose(parser)
    _add_opt_debug(parser)
    _add_opt_theory(parser)
    _add_opt_bound(parser, bound_meaning)
    _add_opt_redundancy_steps(parser)
    _add_opt_json(parser)
    _add_opt_config(parser)
