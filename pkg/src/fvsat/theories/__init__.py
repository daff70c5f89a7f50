"""Theory catalog, text formats, and parsers."""

__all__ = [
    'TheoryBundle',
    'TheoryParseError',
    'bundle_to_dict',
    'builtin',
    'load_theory',
    'parse_term',
    'parse_rewrite_rule',
    'parse_deduction_rule',
    'parse_rules',
    'parse_theory',
    'parse_constraints',
    'serialize_theory',
    'serialize_rules',
    'serialize_constraints',
]

from ._bundle import TheoryBundle, bundle_to_dict

from ._parse import (
    TheoryParseError, parse_term, parse_rewrite_rule, parse_deduction_rule, parse_rules, parse_theory,
    parse_constraints,
)

from ._serialize import serialize_theory, serialize_rules, serialize_constraints

from ._builtin import builtin, load_theory
