"""Shared subcommand plumbing: theory loading, parameters, logging, and output."""

import logging
import sys
from typing import Any, Optional

from .. import const

from ..io import read_text
from ..params import FvsatParams
from ..report import dumps, make_report, saturation_to_dict
from ..saturate import SaturationConfig, SaturationResult, saturate
from ..subterm import saturate_subterm
from ..theories import TheoryBundle, builtin, load_theory
from ..util import init_logger, parse_override_string

logger = logging.getLogger(__name__)


def _load_bundle(theory: Optional[str], builtin_name: Optional[str]) -> TheoryBundle:
    """Get the theory selected by `--theory` or `--builtin`."""
    if builtin_name is not None:
        return builtin(builtin_name)

    if theory is None:
        raise ValueError('No theory given: Use --theory or --builtin')

    return load_theory(theory)


def _read_input(path: str) -> str:
    """Read an input file given on the command line."""
    try:
        return read_text(path)
    except FileNotFoundError as e:
        raise FileNotFoundError(f'Input file not found: {path}') from e


def _make_params(
        config: Optional[str],
        bound_param: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        verbose: bool = False,
        debug: bool = False,
) -> FvsatParams:
    """Resolve parameters from command-line options.

    :param config: `--config` override string.
    :param bound_param: Parameter set by `--bound`.
    :param bound: Value of `--bound`.
    :param redundancy_steps: Value of `--redundancy-steps`.
    :param verbose: Value of `--verbose`.
    :param debug: Value of `--debug`.

    :returns: Parameters.
    """
    overrides: dict[str, Any] = parse_override_string(config, source='--config')

    if bound is not None:
        if bound_param is None:
            raise ValueError('Option --bound is not used by this subcommand (PROGRAM BUG)')

        overrides[bound_param] = bound

    if redundancy_steps is not None:
        overrides['redundancy_steps'] = redundancy_steps

    if verbose:
        overrides['verbose'] = True

    if debug:
        overrides['debug'] = True

    return FvsatParams(overrides)


def _init_logging(params: FvsatParams) -> None:
    """Set the package log level from verbosity parameters."""
    if params.debug:
        level = logging.DEBUG
    elif params.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING

    init_logger(level, force=True)


def _setup(
        theory: Optional[str],
        builtin_name: Optional[str],
        config: Optional[str],
        bound_param: Optional[str] = None,
        bound: Optional[int] = None,
        redundancy_steps: Optional[int] = None,
        verbose: bool = False,
        debug: bool = False,
) -> tuple[TheoryBundle, FvsatParams]:
    """Resolve parameters, initialize logging, and load the theory."""
    params = _make_params(config, bound_param, bound, redundancy_steps, verbose, debug)
    _init_logging(params)

    bundle = _load_bundle(theory, builtin_name)
    logger.info('Theory %s', bundle)

    return bundle, params


def _saturate(
        bundle: TheoryBundle,
        params: FvsatParams,
        literal: bool = False,
        subterm: bool = False,
) -> SaturationResult:
    """Saturate the initial rules of a theory.

    :param bundle: Theory.
    :param params: Parameters.
    :param literal: Keep rules whose conclusion is one of their premises.
    :param subterm: Use the subterm convergent procedure (all such rules are deleted).

    :returns: Saturation result.

    :raises ValueError: If `subterm` is set and the theory is not subterm convergent.
    """
    cfg = SaturationConfig.from_params(params, **({'delete_trivial': False} if literal else {}))

    if subterm:
        return saturate_subterm(bundle.l0, bundle.rewrite, cfg)

    return saturate(bundle.l0, bundle.rewrite, cfg)


def _emit(report: dict[str, Any], text: str, as_json: bool) -> None:
    """Write a JSON report or human-readable text to standard output."""
    if as_json:
        print(dumps(report), flush=True)
    elif text:
        print(text, flush=True)


def _emit_diverged(result: SaturationResult, command: str, theory: str, as_json: bool) -> int:
    """Report a diverged saturation and get the exit code."""
    _emit(
        make_report(command, 'diverged', theory, saturation=saturation_to_dict(result)),
        f'Saturation diverged after {len(result.system)} rules and {result.rounds} generations',
        as_json,
    )

    if not as_json:
        print('Saturation diverged: raise the bounds or enable the redundancy check', file=sys.stderr)

    return const.EXIT_UNKNOWN
