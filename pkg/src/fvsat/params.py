"""
fvsat configuration parameters.

Every saturation, variant and solver bound is a parameter resolved by `FvsatParams`. Values are taken from explicit
overrides (command line or API) first, then the `FVSAT_CONFIG` environment variable ("key=value;key=value"), then the
parameter default.
"""

__all__ = [
    'FvsatParams',
    'CONFIG_PARAM_DICT',
    'format_config_md',
]

from collections.abc import Mapping
from dataclasses import dataclass
import logging
import os
import sys
import textwrap
from typing import Any, Optional, TextIO

from frozendict import frozendict

from . import const

from .util import as_bool, parse_override_string

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _ConfigParamElement:
    """One configuration parameter.

    :param name: Parameter name (lower case).
    :param val_type: "int" or "bool".
    :param default: Default value.
    :param min: Inclusive lower bound for "int" parameters, or `None` for no bound.
    :param description: Description shown in help.
    :param advanced: Omitted from brief help if `True`.
    """

    name: str
    val_type: str
    default: Any
    min: Optional[int] = None
    description: str = ''
    advanced: bool = False

    def __post_init__(self) -> None:
        """Check attributes."""
        if self.name != self.name.strip().lower() or not self.name:
            raise ValueError(f'Parameter names must be non-empty and lower case: "{self.name}"')

        if self.val_type not in {'int', 'bool'}:
            raise ValueError(f'Unrecognized type for parameter {self.name}: {self.val_type}')

        if self.min is not None and self.val_type != 'int':
            raise ValueError(f'Lower bound on a non-integer parameter {self.name}')

    def get_value(self, val: Any) -> int | bool:
        """Cast and check a value, or return the default for `None`.

        :param val: Raw value (a string from the environment, or a Python value from an override).

        :returns: Checked value.

        :raises ValueError: If the value cannot be cast or is out of range.
        """
        if val is None:
            return self.default

        if self.val_type == 'bool':
            bool_val = as_bool(val, fail_to_none=True)

            if bool_val is None:
                raise ValueError(f'Failed casting {self.name} to bool: {val}')

            return bool_val

        if isinstance(val, bool):
            raise ValueError(f'Expected an integer for {self.name}: {val}')

        try:
            int_val = int(val)
        except ValueError as e:
            raise ValueError(f'Failed casting {self.name} to int: {val}') from e

        if self.min is not None and int_val < self.min:
            raise ValueError(f'Illegal range for {self.name}: Minimum allowed value is {self.min}, received {int_val}')

        return int_val

    def help_header(self) -> str:
        """Get the "name [type, default, range]" prefix used in help text."""
        fields = [self.val_type, str(self.default).lower() if self.val_type == 'bool' else str(self.default)]

        if self.min is not None:
            fields.append(f'[{self.min}:inf)')

        return f'{self.name} [{", ".join(fields)}]'


_CONFIG_PARAM_LIST: list[_ConfigParamElement] = [

    # Variants and rewriting
    _ConfigParamElement(
        'narrow_depth', 'int', const.DEFAULT_NARROW_DEPTH, min=1,
        description='Maximum basic-narrowing depth when computing variants. Open narrowing branches at this depth '
                    'are reported as a finite variant property violation.'
    ),
    _ConfigParamElement(
        'normalize_steps', 'int', const.DEFAULT_NORMALIZE_STEPS, min=1,
        description='Maximum number of rewrite steps in one normalization before the rewrite system is reported as '
                    'non-terminating.',
        advanced=True
    ),

    # Saturation
    _ConfigParamElement(
        'max_rules', 'int', const.DEFAULT_MAX_RULES, min=1,
        description='Saturation reports divergence when the rule set grows beyond this many rules.'
    ),
    _ConfigParamElement(
        'max_rounds', 'int', const.DEFAULT_MAX_ROUNDS, min=1,
        description='Saturation reports divergence when a closure rule of a later generation would be created.'
    ),
    _ConfigParamElement(
        'redundancy_steps', 'int', const.DEFAULT_REDUNDANCY_STEPS, min=0,
        description='New increasing rules whose conclusion is derivable from their premises by existing rules within '
                    'this derivation depth are deleted on creation. 0 disables the check.'
    ),
    _ConfigParamElement(
        'delete_trivial', 'bool', const.DEFAULT_DELETE_TRIVIAL,
        description='Delete rules whose right-hand side is a member of their left-hand side.'
    ),

    # Solving
    _ConfigParamElement(
        'solve_budget', 'int', const.DEFAULT_SOLVE_BUDGET, min=1,
        description='Maximum number of search nodes for the general constraint solver. When exhausted, the answer '
                    'is "unknown".'
    ),
    _ConfigParamElement(
        'oracle_depth', 'int', const.DEFAULT_ORACLE_DEPTH, min=0,
        description='Rounds of rule application in the brute-force deduction oracle.',
        advanced=True
    ),

    # Troubleshooting and verbosity
    _ConfigParamElement(
        'verbose', 'bool', False,
        description='Verbose output.'
    ),
    _ConfigParamElement(
        'debug', 'bool', False, advanced=True,
        description='Replay every saturation closure step and check variable accounting during solving. Slow.'
    ),
]

CONFIG_PARAM_DICT: Mapping[str, _ConfigParamElement] = frozendict({param.name: param for param in _CONFIG_PARAM_LIST})
"""Known configuration parameters keyed by name."""


class FvsatParams:
    """Resolve configuration parameters.

    Parameters are read as attributes (`params.max_rules`) and cached on first access.

    :param overrides: Explicit parameter values (highest priority). Keys with a `None` value are ignored so unset
        command-line options fall through to the environment and defaults.
    :param env: Environment mapping. Defaults to `os.environ`.

    :raises ValueError: If an override or the environment names an unknown parameter.
    """

    def __init__(
            self,
            overrides: Optional[Mapping[str, Any]] = None,
            env: Optional[Mapping[str, str]] = None,
    ) -> None:
        self._overrides = {
            key.strip().lower(): val for key, val in (overrides or {}).items() if val is not None
        }

        env = os.environ if env is None else env

        self._env_overrides = parse_override_string(
            env.get(const.CONFIG_ENV_VAR, None),
            source=f'environment variable {const.CONFIG_ENV_VAR}'
        )

        for source, keys in (('overrides', self._overrides), (const.CONFIG_ENV_VAR, self._env_overrides)):
            unknown = set(keys) - set(CONFIG_PARAM_DICT)

            if unknown:
                raise ValueError(f'Unknown configuration parameter(s) in {source}: {", ".join(sorted(unknown))}')

    def __getattr__(self, key: str) -> Any:
        if key.startswith('_') or key not in CONFIG_PARAM_DICT:
            raise AttributeError(f'Unknown configuration parameter "{key}"')

        val = CONFIG_PARAM_DICT[key].get_value(self._overrides.get(key, self._env_overrides.get(key)))
        setattr(self, key, val)

        logger.debug('Config: %s = %s', key, val)

        return val

    def to_dict(self) -> dict[str, Any]:
        """Get all resolved parameters."""
        return {key: getattr(self, key) for key in CONFIG_PARAM_DICT}

    def __repr__(self) -> str:
        return f'FvsatParams(overrides={sorted(self._overrides)}, env={sorted(self._env_overrides)})'


def format_config_md(
        out_file: TextIO = sys.stdout,
        width: int = 80,
        advanced: bool = True
) -> None:
    """Write markdown-formatted help for configuration parameters.

    :param out_file: Output file.
    :param width: Line-wrap length.
    :param advanced: Include advanced parameters.
    """
    for param in _CONFIG_PARAM_LIST:
        if param.advanced and not advanced:
            continue

        out_file.write(
            '\n'.join(textwrap.wrap(
                param.description,
                initial_indent=f'* {param.help_header()}: ',
                subsequent_indent='  ',
                width=width
            )) + '\n'
        )
