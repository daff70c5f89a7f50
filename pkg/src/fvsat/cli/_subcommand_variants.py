"""Variants subcommand."""

import argparse
from typing import Optional

from .. import const

from ..report import make_report, substitution_to_dict
from ..theories import parse_term
from ..variants import variants

from ._common_opt import _add_opt_analysis
from ._context import _emit, _setup


def subcommand_variants(
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
    """Print the variants of a term.

    :param term: Term text.

    :returns: Exit code.
    """
    bundle, params = _setup(theory, builtin, config, 'narrow_depth', bound, redundancy_steps, verbose, debug)

    t = parse_term(term, bundle.sig)
    found = variants(t, bundle.rewrite, params.narrow_depth, params.normalize_steps)

    _emit(
        make_report(
            'variants', 'ok', bundle.name,
            term=str(t),
            variants=[
                {'theta': substitution_to_dict(variant.theta), 'reduct': str(variant.reduct)} for variant in found
            ],
        ),
        '\n'.join(str(variant) for variant in found),
        as_json,
    )

    return const.EXIT_OK


def _add_subparser_variants(subparsers) -> argparse.ArgumentParser:
    """Add variants subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'variants',
        description='Compute the finite variants of a term by basic narrowing',
        help='Compute variants of a term.',
    )

    _add_opt_analysis(parser, 'narrowing depth')

    parser.add_argument(
        'term',
        type=str,
        help='Term, for example "dec_s(X, Y)".',
    )

    return parser
