"""fvsat command-line interface (CLI), argument parsing, and subcommand routines."""

__all__ = [
    'parse_arguments',
    'main',
    'subcommand_normalize',
    'subcommand_variants',
    'subcommand_saturate',
    'subcommand_classify',
    'subcommand_contracting',
    'subcommand_ground',
    'subcommand_solve',
    'subcommand_oracle',
    'subcommand_check_theory',
]

from ._cli import (
    parse_arguments, main,
)

from ._subcommand_normalize import subcommand_normalize

from ._subcommand_variants import subcommand_variants

from ._subcommand_saturate import subcommand_saturate

from ._subcommand_classify import subcommand_classify

from ._subcommand_contracting import subcommand_contracting

from ._subcommand_ground import subcommand_ground

from ._subcommand_solve import subcommand_solve

from ._subcommand_oracle import subcommand_oracle

from ._subcommand_check_theory import subcommand_check_theory
