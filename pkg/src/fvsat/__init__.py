"""Saturation-based intruder deduction modulo theories with the finite variant property."""

__version__ = '0.4.0.dev3'

__all__ = [
    'cli',
    'const',
    'constraints',
    'contracting',
    'deduction',
    'io',
    'order',
    'params',
    'randgen',
    'report',
    'rewrite',
    'saturate',
    'subterm',
    'term',
    'theories',
    'unify',
    'util',
    'variants',
]

__license__ = 'MIT License'
__author__ = 'fvsat developers'
__copyright__ = 'Copyright (c) 2025 fvsat developers'
__credits__ = ['fvsat developers']
__maintainer__ = 'fvsat developers'
__status__ = 'Development'

import importlib

for name in __all__:
    globals()[name] = importlib.import_module(f'.{name}', package=__name__)
