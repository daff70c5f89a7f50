"""Shared fixtures: built-in theories and their saturated deduction systems."""

import pytest

from fvsat.saturate import saturate, SaturationResult
from fvsat.subterm import saturate_subterm
from fvsat.theories import TheoryBundle, builtin, parse_term


@pytest.fixture(scope='session')
def dy() -> TheoryBundle:
    return builtin('dy')


@pytest.fixture(scope='session')
def blind() -> TheoryBundle:
    return builtin('blind')


@pytest.fixture(scope='session')
def dy_saturated(dy) -> SaturationResult:
    return saturate(dy.l0, dy.rewrite)


@pytest.fixture(scope='session')
def dy_subterm(dy) -> SaturationResult:
    return saturate_subterm(dy.l0, dy.rewrite)


@pytest.fixture(scope='session')
def blind_saturated(blind) -> SaturationResult:
    return saturate(blind.l0, blind.rewrite)


@pytest.fixture
def term(dy):
    """Parse a term over the Dolev-Yao signature."""
    def parse(text: str):
        return parse_term(text, dy.sig)

    return parse


@pytest.fixture(scope='session')
def dsks() -> TheoryBundle:
    return builtin('dsks')


@pytest.fixture(scope='session')
def dsks_saturated(dsks) -> SaturationResult:
    return saturate(dsks.l0, dsks.rewrite)
