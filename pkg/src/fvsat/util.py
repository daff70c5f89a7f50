"""General utility functions."""

__all__ = [
    'as_bool',
    'init_logger',
    'parse_override_string',
]

import logging
from typing import (
    Any,
    Optional,
)

_TRUE_STRINGS = frozenset({'true', 't', 'yes', 'y', '1'})
_FALSE_STRINGS = frozenset({'false', 'f', 'no', 'n', '0'})


def as_bool(
        val: Any,
        fail_to_none: bool = False
) -> Optional[bool]:
    """Interpret a configuration value as a boolean.

    Booleans are returned unchanged. Other values are compared as lower-case strings against "true", "t", "yes",
    "y", "1" and "false", "f", "no", "n", "0".

    :param val: Value to interpret.
    :param fail_to_none: Return `None` for an unrecognized value instead of raising.

    :returns: Boolean value of `val`.

    :raises ValueError: If `val` is not recognized and `fail_to_none` is `False`.
    """
    if isinstance(val, bool):
        return val

    text = str(val).strip().lower()

    if text in _TRUE_STRINGS:
        return True

    if text in _FALSE_STRINGS:
        return False

    if fail_to_none:
        return None

    raise ValueError(f'Cannot interpret as boolean value: {val}')


def parse_override_string(
        config_string: Optional[str],
        source: str = 'configuration'
) -> dict[str, str]:
    """Parse a "key=value;key=value" override string.

    :param config_string: Override string. `None` or an empty string yields an empty dictionary.
    :param source: Where the string came from (used in error messages).

    :returns: Dictionary of keys (lower case) to unparsed values.

    :raises ValueError: If a token is missing "=", a key, or a value.
    """
    override = {}

    config_string = config_string.strip() if config_string is not None else None

    if not config_string:
        return override

    for tok in config_string.split(';'):
        tok = tok.strip()

        if not tok:
            continue

        if '=' not in tok:
            raise ValueError(f'Cannot parse {source}: Missing "=" in config token {tok}: {config_string}')

        key, val = tok.split('=', 1)

        key = key.strip().lower()
        val = val.strip()

        if not key:
            raise ValueError(f'Cannot parse {source}: Missing key (key=value) in config token {tok}: {config_string}')

        if not val:
            raise ValueError(
                f'Cannot parse {source}: Missing value (key=value) in config token {tok}: {config_string}'
            )

        override[key] = val

    return override


def init_logger(
        level: Optional[int | str] = logging.INFO,
        console_format: str = '[%(asctime)s]: %(levelname)s (%(name)s): %(message)s',
        force: bool = False,
) -> None:
    """Send fvsat log records to stderr.

    :param level: Logging level by name or integer. `None` is INFO.
    :param console_format: Format for the console handler.
    :param force: Replace existing handlers on the fvsat logger. Without it, an already configured logger is left
        unchanged.
    """
    package_logger = logging.getLogger(__name__.split('.')[0])

    if package_logger.handlers and not force:
        return

    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)

    if level is None:
        level = logging.INFO

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(console_format, datefmt='%Y-%m-%d %H:%M:%S'))

    package_logger.setLevel(level)
    package_logger.addHandler(handler)
