"""Normalize subcommand."""

import argparse
from typing import Optional

from .. import const

from ..report import make_report
from ..rewrite import normalize
from ..theories import parse_term

from ._common_opt import _add_opt_analysis
from ._context import _emit, _setup


def subcommand_normalize(
        term: str,
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
) -> int:
    """Print the normal form of a term.

    :param term: Term text.

    :returns: Exit code.
    """
    bundle, params = _setup(theory, builtin, config, 'normalize_steps', bound, redundancy_steps, verbose, debug)

    t = parse_term(term, bundle.sig)
    normal_form = normalize(t, bundle.rewrite, params.normalize_steps)

    _emit(
        make_report('normalize', 'ok', bundle.name, term=str(t), normal_form=str(normal_form)),
        str(normal_form),
        as_json,
    )

    return const.EXIT_OK


def _add_subparser_normalize(subparsers) -> argparse.ArgumentParser:
    """Add normalize subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'normalize',
        description='Rewrite a term to its normal form',
        help='Normalize a term.',
    )

    _add_opt_analysis(parser, 'rewrite steps')

    parser.add_argument(
        'term',
        type=str,
        help='Term, for example "pi1(pair(a, b))".',
    )

    return parser
