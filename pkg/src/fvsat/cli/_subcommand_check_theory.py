"""Check-theory subcommand."""

import argparse
from typing import Optional

from .. import const

from ..report import make_report
from ..rewrite import critical_pairs, joinable
from ..theories import bundle_to_dict
from ..variants import variants

from ._common_opt import _add_opt_analysis
from ._context import _emit, _setup


def subcommand_check_theory(
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
) -> int:
    """Validate a theory.

    Loading checks the syntax, the signature, the orientation of rewrite rules, and the shape of deduction rules.
    This subcommand also checks that every critical pair is joinable and that the conclusion of every deduction rule
    has finitely many variants within the narrowing bound.

    :returns: Exit code: 0 if the theory is valid, 1 if a critical pair is not joinable, 2 if a variant computation
        exceeds the narrowing bound.
    """
    bundle, params = _setup(theory, builtin, config, 'narrow_depth', bound, redundancy_steps, verbose, debug)

    pairs = critical_pairs(bundle.rewrite)
    unjoinable = [
        pair for pair in pairs if not joinable(pair, bundle.rewrite, params.normalize_steps)
    ]

    variant_counts = {
        str(rule.rhs): len(variants(rule.rhs, bundle.rewrite, params.narrow_depth, params.normalize_steps))
        for rule in bundle.l0
    }

    valid = not unjoinable

    lines = [
        str(bundle),
        f'subterm convergent: {str(bundle.subterm_convergent).lower()}',
        f'critical pairs: {len(pairs)} ({len(unjoinable)} not joinable)',
    ]

    lines.extend(f'  not joinable: {pair.left} <- {pair.overlap} -> {pair.right}' for pair in unjoinable)
    lines.extend(f'variants of {term}: {count}' for term, count in variant_counts.items())

    _emit(
        make_report(
            'check-theory', 'ok' if valid else 'false', bundle.name,
            bundle=bundle_to_dict(bundle),
            unjoinable=[
                {'overlap': str(pair.overlap), 'left': str(pair.left), 'right': str(pair.right)} for pair in unjoinable
            ],
            variant_counts=variant_counts,
        ),
        '\n'.join(lines),
        as_json,
    )

    return const.EXIT_OK if valid else const.EXIT_FALSE


def _add_subparser_check_theory(subparsers) -> argparse.ArgumentParser:
    """Add check-theory subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'check-theory',
        description='Validate a theory: orientation, confluence of critical pairs, and finite variants of the '
                    'deduction rule conclusions',
        help='Validate a theory.',
    )

    _add_opt_analysis(parser, 'narrowing depth')

    return parser
