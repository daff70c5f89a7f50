"""Built-in theories shipped with the package."""

__all__ = [
    'builtin',
    'load_theory',
]

import functools
import logging
from pathlib import Path

from .. import const

from ..io import ResourceReader, read_text

from ._bundle import TheoryBundle
from ._parse import parse_theory

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def builtin(name: str) -> TheoryBundle:
    """Get a built-in theory.

    :param name: Theory name (see :data:`fvsat.const.BUILTIN_THEORIES`).

    :returns: Theory bundle.

    :raises ValueError: If `name` is not a built-in theory.
    """
    if name not in const.BUILTIN_THEORIES:
        raise ValueError(f'Unknown built-in theory "{name}": Expected one of {", ".join(const.BUILTIN_THEORIES)}')

    reader = ResourceReader(const.THEORY_RESOURCE_ANCHOR, name + const.THEORY_FILE_SUFFIX)

    if not reader.exists():
        raise RuntimeError(f'Built-in theory "{name}" is missing from {const.THEORY_RESOURCE_ANCHOR} (PROGRAM BUG)')

    with reader as in_file:
        text = in_file.read()

    logger.debug('Loaded built-in theory %s', name)

    return parse_theory(text, name=name)


def load_theory(path: str | Path) -> TheoryBundle:
    """Read a theory file (plain or gzipped).

    The theory name defaults to the file name without suffixes.

    :raises FileNotFoundError: If the file does not exist.
    :raises TheoryParseError: If the file cannot be parsed.
    """
    path = Path(path)

    if not path.is_file():
        raise FileNotFoundError(f'Theory file not found: {path}')

    return parse_theory(read_text(path), name=path.name.split('.')[0] or None)
