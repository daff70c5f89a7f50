"""Reading theory and constraint files and packaged theory resources."""

__all__ = [
    'PlainOrGzFile',
    'ResourceReader',
    'read_text',
]

import gzip
import importlib.resources
from pathlib import Path
from typing import TextIO


class PlainOrGzFile:
    """Open a plain or gzipped text file for reading in a context guard.

    Files ending in ".gz" are decompressed.

    Example::

        with PlainOrGzFile('dy.thy.gz') as in_file: ...
    """

    def __init__(self, file_name: str | Path) -> None:
        file_name = str(file_name).strip() if file_name is not None else ''

        if not file_name:
            raise ValueError('File name is missing or empty')

        self.file_name = file_name
        self.is_gz = file_name.lower().endswith('.gz')
        self.file_handle = None

    def __enter__(self) -> TextIO:
        if self.is_gz:
            self.file_handle = gzip.open(self.file_name, 'rt')
        else:
            self.file_handle = open(self.file_name, 'rt')

        return self.file_handle

    def __exit__(self, exc_type, exc_value, traceback) -> None:
        if self.file_handle is not None:
            self.file_handle.close()
            self.file_handle = None


class ResourceReader:
    """Open a text resource packaged with fvsat in a context guard.

    :ivar anchor: Package holding the resource (e.g. "fvsat.data.theories").
    :ivar name: Resource file name within `anchor`.
    """

    def __init__(self, anchor: str, name: str) -> None:
        self.anchor = str(anchor)
        self.name = str(name)
        self.file_handle = None

    def exists(self) -> bool:
        """Determine if the resource exists."""
        try:
            return importlib.resources.files(self.anchor).joinpath(self.name).is_file()
        except ModuleNotFoundError:
            return False

    def __enter__(self) -> TextIO:
        if self.file_handle is not None:
            raise RuntimeError(f'Resource is already open by this context guard: {self.anchor}/{self.name}')

        self.file_handle = importlib.resources.files(self.anchor).joinpath(self.name).open('r')

        return self.file_handle

    def __exit__(self, exc_type, exc_value, traceback) -> None:
        if self.file_handle is not None:
            self.file_handle.close()
            self.file_handle = None


def read_text(file_name: str | Path) -> str:
    """Read a plain or gzipped text file.

    :param file_name: File name.

    :returns: File contents.

    :raises FileNotFoundError: If the file does not exist.
    """
    with PlainOrGzFile(file_name) as in_file:
        return in_file.read()
