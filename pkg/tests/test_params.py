"""Tests for configuration parameters."""

import io
import logging

import pytest

from fvsat import const
from fvsat.params import CONFIG_PARAM_DICT, FvsatParams, format_config_md
from fvsat.util import as_bool, init_logger, parse_override_string


def test_defaults():
    params = FvsatParams(env={})

    assert params.narrow_depth == const.DEFAULT_NARROW_DEPTH
    assert params.max_rules == const.DEFAULT_MAX_RULES
    assert params.delete_trivial is True
    assert params.debug is False
    assert set(params.to_dict()) == set(CONFIG_PARAM_DICT.keys())


def test_priority():
    env = {const.CONFIG_ENV_VAR: 'max_rules=20; solve_budget=7'}
    params = FvsatParams({'max_rules': 30, 'narrow_depth': None}, env=env)

    assert params.max_rules == 30
    assert params.solve_budget == 7
    assert params.narrow_depth == const.DEFAULT_NARROW_DEPTH


def test_env_bool():
    params = FvsatParams(env={const.CONFIG_ENV_VAR: 'delete_trivial=no;DEBUG=yes'})

    assert params.delete_trivial is False
    assert params.debug is True


@pytest.mark.parametrize('overrides, env', [
    ({'nope': 1}, {}),
    ({}, {const.CONFIG_ENV_VAR: 'nope=1'}),
    ({}, {const.CONFIG_ENV_VAR: 'max_rules'}),
])
def test_unknown_or_malformed(overrides, env):
    with pytest.raises(ValueError):
        FvsatParams(overrides, env=env)


@pytest.mark.parametrize('key, val', [
    ('max_rules', 0),
    ('narrow_depth', 'ten'),
    ('redundancy_steps', -1),
    ('delete_trivial', 'maybe'),
])
def test_validation(key, val):
    params = FvsatParams({key: val}, env={})

    with pytest.raises(ValueError):
        getattr(params, key)


def test_unknown_attribute():
    with pytest.raises(AttributeError):
        getattr(FvsatParams(env={}), 'nope')


def test_format_config_md():
    out_file = io.StringIO()
    format_config_md(out_file, advanced=False)
    brief = out_file.getvalue()

    out_file = io.StringIO()
    format_config_md(out_file)
    full = out_file.getvalue()

    assert '* max_rules [int, 500, [1:inf)]' in brief
    assert 'normalize_steps' not in brief
    assert 'normalize_steps' in full


@pytest.mark.parametrize('val, expected', [
    (True, True),
    ('Yes', True),
    ('1', True),
    (0, False),
    ('f', False),
    ('maybe', None),
])
def test_as_bool(val, expected):
    assert as_bool(val, fail_to_none=True) == expected


def test_as_bool_fail():
    with pytest.raises(ValueError):
        as_bool('maybe')


def test_parse_override_string():
    assert parse_override_string(None) == {}
    assert parse_override_string(' ') == {}
    assert parse_override_string('A=1; b = two ;;') == {'a': '1', 'b': 'two'}
    assert parse_override_string('a=b=c') == {'a': 'b=c'}

    for bad in ('=1', 'a=', 'a'):
        with pytest.raises(ValueError):
            parse_override_string(bad)


def test_init_logger():
    package_logger = logging.getLogger('fvsat')
    saved = list(package_logger.handlers), package_logger.level

    try:
        init_logger(logging.DEBUG, force=True)

        assert package_logger.level == logging.DEBUG
        assert len(package_logger.handlers) == 1
        assert package_logger.handlers[0].formatter._fmt == '[%(asctime)s]: %(levelname)s (%(name)s): %(message)s'

        init_logger(logging.WARNING)
        assert package_logger.level == logging.DEBUG

        init_logger(None, console_format='%(message)s', force=True)
        assert package_logger.level == logging.INFO
        assert package_logger.handlers[0].formatter._fmt == '%(message)s'

    finally:
        package_logger.handlers[:] = saved[0]
        package_logger.setLevel(saved[1])
