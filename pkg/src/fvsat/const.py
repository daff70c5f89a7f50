"""Program constants."""

__all__ = [
    'DEFAULT_NARROW_DEPTH',
    'DEFAULT_NORMALIZE_STEPS',
    'DEFAULT_SOLVE_BUDGET',
    'DEFAULT_MAX_RULES',
    'DEFAULT_MAX_ROUNDS',
    'DEFAULT_REDUNDANCY_STEPS',
    'DEFAULT_DELETE_TRIVIAL',
    'DEFAULT_ORACLE_DEPTH',
    'GROUND_KNOWLEDGE_LIMIT',
    'CONFIG_ENV_VAR',
    'REPORT_SCHEMA',
    'REPORT_SCHEMA_VERSION',
    'THEORY_RESOURCE_ANCHOR',
    'THEORY_FILE_SUFFIX',
    'BUILTIN_THEORIES',
    'EXIT_OK',
    'EXIT_FALSE',
    'EXIT_UNKNOWN',
    'EXIT_USAGE',
    'EXIT_INPUT',
]


#
# Term rewriting and variants
#

DEFAULT_NARROW_DEPTH: int = 10
"""Maximum basic-narrowing depth when computing variants.

Narrowing branches still open at this depth signal a theory without the finite variant property (or a bound that is
too small) and raise an error instead of silently truncating the variant set.
"""

DEFAULT_NORMALIZE_STEPS: int = 100_000
"""Maximum number of rewrite steps for a single normalization."""


#
# Saturation
#

DEFAULT_MAX_RULES: int = 500
"""Saturation stops and reports divergence when the rule set grows beyond this many rules."""

DEFAULT_MAX_ROUNDS: int = 25
"""Saturation stops and reports divergence when a rule of a later generation than this would be created.

A rule created by step 1 is generation 0. A closure child is one generation after its youngest parent.
"""

DEFAULT_REDUNDANCY_STEPS: int = 2
"""Derivation depth the redundancy check may use to derive a new rule from existing rules (0 disables)."""

DEFAULT_DELETE_TRIVIAL: bool = True
"""Delete rules whose right-hand side already occurs in their left-hand side."""


#
# Solving
#

DEFAULT_SOLVE_BUDGET: int = 10_000
"""Maximum number of search nodes for the general constraint solver before it answers "unknown"."""

DEFAULT_ORACLE_DEPTH: int = 6
"""Number of rounds of rule application in the brute-force deduction oracle."""

GROUND_KNOWLEDGE_LIMIT: int = 10_000
"""Guard on the size of a saturated ground knowledge set (a larger set signals a rule system that is not saturated)."""


#
# Configuration
#

CONFIG_ENV_VAR: str = 'FVSAT_CONFIG'
"""Environment variable holding "key=value;key=value" overrides of configuration parameter defaults."""


#
# Reports and resources
#

REPORT_SCHEMA: str = 'fvsat.report'
"""Schema identifier written to every JSON report."""

REPORT_SCHEMA_VERSION: int = 1
"""Version of the JSON report schema."""

THEORY_RESOURCE_ANCHOR: str = 'fvsat.data.theories'
"""Package resource directory containing built-in theory files."""

THEORY_FILE_SUFFIX: str = '.thy'
"""File name suffix of theory files."""

BUILTIN_THEORIES: tuple[str, ...] = ('dy', 'dsks', 'blind', 'twostack')
"""Names of built-in theories."""


#
# Exit codes
#

EXIT_OK: int = 0
"""Satisfiable, valid, or true."""

EXIT_FALSE: int = 1
"""Unsatisfiable, invalid, or false."""

EXIT_UNKNOWN: int = 2
"""Budget exhausted or saturation diverged."""

EXIT_USAGE: int = 3
"""Command-line usage error."""

EXIT_INPUT: int = 4
"""Missing file, parse error, or invalid input."""
