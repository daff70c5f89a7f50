"""Oracle subcommand."""

import argparse
from collections.abc import Iterable
from typing import Optional

import polars as pl

from .. import const

from ..constraints import (
    ConstraintError,
    GroundConstraintSystem,
    GroundVerdict,
    decide_ground,
    ground_derivation,
    oracle_closure,
    replay_derivation,
)
from ..deduction import DeductionSystem
from ..randgen import make_rng, random_ground_instance
from ..report import make_report
from ..rewrite import normalize
from ..term import Term, is_ground
from ..theories import parse_constraints

from ._common_opt import _add_opt_analysis
from ._context import _emit, _emit_diverged, _read_input, _saturate, _setup


def _compare(
        instances: Iterable[tuple[frozenset[Term], Term]],
        rules: DeductionSystem,
        depth: int,
) -> pl.DataFrame:
    """Compare the ground decision procedure with the bounded oracle.

    An instance disagrees if the oracle derives the goal and the decision is negative, or if the decision is positive
    and its derivation does not replay.
    """
    rows = []

    for knowledge, goal in instances:
        verdict = decide_ground(GroundConstraintSystem(((knowledge, goal),)), rules) == GroundVerdict.VAL
        found = goal in oracle_closure(knowledge, rules, depth, universe=(goal,))

        if verdict:
            steps = ground_derivation(knowledge, goal, rules)
            agree = steps is not None and replay_derivation(knowledge, steps, goal)
        else:
            agree = not found

        rows.append(
            {
                'knowledge': ', '.join(sorted(str(member) for member in knowledge)),
                'goal': str(goal),
                'decide': verdict,
                'oracle': found,
                'agree': agree,
            }
        )

    return pl.DataFrame(
        rows,
        schema={
            'knowledge': pl.String,
            'goal': pl.String,
            'decide': pl.Boolean,
            'oracle': pl.Boolean,
            'agree': pl.Boolean,
        },
    )


def subcommand_oracle(
        theory: Optional[str] = None,
        builtin: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        as_json: bool = False,
        config: Optional[str] = None,
        verbose: bool = False,
        debug: bool = False,
        constraints: Optional[str] = None,
        random: Optional[int] = None,
        seed: Optional[int] = None,
) -> int:
    """Check the ground decision procedure against a brute-force oracle.

    :param constraints: Ground constraint file. Each constraint is one instance.
    :param random: Number of random ground instances.
    :param seed: Random seed.

    :returns: Exit code: 0 if every instance agrees, 1 if not, 2 if saturation diverged.
    """
    bundle, params = _setup(theory, builtin, config, 'oracle_depth', bound, redundancy_steps, verbose, debug)

    if (constraints is None) == (random is None):
        raise ValueError('Exactly one of --constraints and --random is required')

    if constraints is not None:
        system = parse_constraints(_read_input(constraints), bundle)

        if system.unif.equations or not is_ground(system.terms()):
            raise ConstraintError('Oracle constraint system must be ground without equations')

        instances = [
            (
                frozenset(normalize(member, bundle.rewrite, params.normalize_steps) for member in c.knowledge),
                normalize(c.goal, bundle.rewrite, params.normalize_steps),
            )
            for c in system.constraints
        ]
    else:
        if random < 0:
            raise ValueError(f'Number of random instances must not be negative: {random}')

        rng = make_rng(seed)
        instances = [random_ground_instance(rng, bundle.sig, bundle.rewrite) for _ in range(random)]

    result = _saturate(bundle, params)

    if result.diverged:
        return _emit_diverged(result, 'oracle', bundle.name, as_json)

    df = _compare(instances, result.system, params.oracle_depth)

    n_agree = int(df['agree'].sum())
    all_agree = n_agree == df.height

    summary = (
        f'{n_agree}/{df.height} instances agree '
        f'({int(df["decide"].sum())} deducible, {int(df["oracle"].sum())} found by the oracle at depth '
        f'{params.oracle_depth})'
    )

    text = summary

    if verbose or debug:
        text = str(df) + '\n' + summary
    elif not all_agree:
        text = str(df.filter(~pl.col('agree'))) + '\n' + summary

    _emit(
        make_report(
            'oracle', str(all_agree).lower(), bundle.name,
            depth=params.oracle_depth,
            seed=seed,
            instances=df.height,
            agree=n_agree,
            disagreements=df.filter(~pl.col('agree')).select('knowledge', 'goal', 'decide', 'oracle').to_dicts(),
        ),
        text,
        as_json,
    )

    return const.EXIT_OK if all_agree else const.EXIT_FALSE


def _add_subparser_oracle(subparsers) -> argparse.ArgumentParser:
    """Add oracle subcommand to parser.

    :param subparsers: Subparser object.

    :returns: Configured subparser.
    """
    parser = subparsers.add_parser(
        'oracle',
        description='Check the ground decision procedure against a bounded brute-force deduction oracle',
        help='Cross-check ground deducibility.',
    )

    _add_opt_analysis(parser, 'oracle rounds')

    source = parser.add_mutually_exclusive_group(required=True)

    source.add_argument(
        '--constraints', '-c',
        type=str, default=None,
        help='Ground constraint file (one instance per constraint).',
    )

    source.add_argument(
        '--random',
        type=int, default=None,
        help='Number of random ground instances.',
    )

    parser.add_argument(
        '--seed',
        type=int, default=None,
        help='Random seed for --random.',
    )

    return parser
