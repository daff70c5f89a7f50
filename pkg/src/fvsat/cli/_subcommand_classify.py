"""Classify subcommand."""

import argparse
from typing import Optional

from .. import const

from ..order import classify
from ..report import make_report
from ..theories import parse_deduction_rule

from ._common_opt import _add_opt_analysis
from ._context import _emit, _emit_diverged, _saturate, _setup


def subcommand_classify(
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
        rule: Optional[list[str]] = None,
) -> int:
    """Classify deduction rules as increasing or decreasing.

    :param rule: Rules to classify. If empty, the rules of the saturated theory are classified.

    :returns: Exit code.
    """
    bundle, params = _setup(theory, builtin, config, 'max_rounds', bound, redundancy_steps, verbose, debug)

    if rule:
        rules = [parse_deduction_rule(rule_text, bundle.sig) for rule_text in rule]
        kinds = [classify(parsed, bundle.sig) for parsed in rules]
    else:
        result = _saturate(bundle, params)

        if result.diverged:
            return _emit_diverged(result, 'classify', bundle.name, as_json)

        rules = [parsed.canonical() for parsed in result.system]
        kinds = [result.system.kind(parsed) for parsed in result.system]

    _emit(
        make_report(
            'classify', 'ok', bundle.name,
            rules=[{'rule': str(parsed), 'kind': kind.value} for parsed, kind in zip(rules, kinds)],
        ),
        '\n'.join(f'{kind.value}\t{parsed}' for parsed, kind in zip(rules, kinds)),
        as_json,
    )

    return const.EXIT_OK


def _add_subparser_classify(subparsers) -> argparse.ArgumentParser:
    """Add classify subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'classify',
        description='Classify deduction rules as increasing or decreasing under the theory precedence',
        help='Classify deduction rules.',
    )

    _add_opt_analysis(parser, 'closure generations when saturating')

    parser.add_argument(
        '--rule', '-r',
        type=str, action='append', default=None,
        help='Deduction rule, for example "enc_s(X, Y), Y => X". May be repeated. Without it, the rules of the '
             'saturated theory are classified.',
    )

    return parser
