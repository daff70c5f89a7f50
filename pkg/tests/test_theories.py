"""Tests for theory parsing, serialization, and the built-in catalog."""

import gzip

import pytest

from fvsat.constraints import ConstraintError
from fvsat.deduction import TheoryTag
from fvsat.rewrite import RewriteRule
from fvsat.term import App, Var, const
from fvsat.theories import (
    TheoryParseError,
    bundle_to_dict,
    builtin,
    load_theory,
    parse_constraints,
    parse_rewrite_rule,
    parse_rules,
    parse_term,
    parse_theory,
    serialize_constraints,
    serialize_theory,
)

MINI = """\
# Minimal theory
name mini

signature
  f/1 g/1 h/2

precedence
  f > g > h

rules
  f(g(X)) -> X

deduction
  X => f(X)
  X, Y => h(X, Y)
"""


def test_parse_term(dy):
    assert parse_term('pair(X, a)') == App('pair', (Var('X'), const('a')))
    assert parse_term('_v1') == Var('_v1')
    assert parse_term('s', dy.sig) == const('s')
    assert str(parse_term('pair( enc_s(s,k) ,  k )')) == 'pair(enc_s(s, k), k)'


@pytest.mark.parametrize('text, line, column', [
    ('a $', 1, 3),
    ('X(a)', 1, 1),
    ('pair(a, b) c', 1, 12),
    ('pair(a b)', 1, 8),
])
def test_parse_term_errors(text, line, column):
    with pytest.raises(TheoryParseError) as info:
        parse_term(text)

    assert info.value.line == line
    assert info.value.column == column


def test_parse_term_end_of_input():
    with pytest.raises(TheoryParseError) as info:
        parse_term('pair(a,')

    assert info.value.line == 1
    assert info.value.column is None


@pytest.mark.parametrize('text', ['pair(a)', 'pi1(a, b)', 'foo(a)'])
def test_parse_term_signature(dy, text):
    with pytest.raises(TheoryParseError):
        parse_term(text, dy.sig)


def test_parse_rewrite_rule(dy):
    rule = parse_rewrite_rule('pi1(pair(X, Y)) -> X', dy.sig)

    assert isinstance(rule, RewriteRule)
    assert str(rule) == 'pi1(pair(X, Y)) -> X'

    with pytest.raises(TheoryParseError):
        parse_rewrite_rule('pair(X, Y) -> pi1(pair(X, Y))', dy.sig)

    with pytest.raises(TheoryParseError):
        parse_rewrite_rule('pi1(X) -> Y', dy.sig)


def test_parse_rules(dy):
    rules = parse_rules('pi1(pair(X, Y)) -> X\nY, enc_s(X, Y) => X\n', dy.sig)

    assert [str(rule) for rule in rules] == ['pi1(pair(X, Y)) -> X', 'Y, enc_s(X, Y) => X']


def test_parse_theory():
    bundle = parse_theory(MINI)

    assert bundle.name == 'mini'
    assert [str(symbol) for symbol in bundle.sig.symbols] == ['f/1', 'g/1', 'h/2']
    assert bundle.sig.precedence == ('h', 'g', 'f')
    assert len(bundle.rewrite) == 1
    assert len(bundle.l0) == 2
    assert bundle.l0.theory_tag == TheoryTag.MODULO_H
    assert bundle.subterm_convergent


def test_parse_theory_default_name():
    assert parse_theory(MINI.replace('name mini\n', ''), name='other').name == 'other'
    assert parse_theory(MINI.replace('name mini\n', '')).name == 'theory'


@pytest.mark.parametrize('old, new, line', [
    ('f(g(X)) -> X', 'g(X) -> f(X)', 11),
    ('X => f(X)', 'X => f(f(X))', 14),
    ('  f/1 g/1 h/2', '  f/1 g/1 f/2', 5),
    ('  f > g > h', '  f > g > k', 8),
    ('# Minimal theory', 'f/1', 1),
    ('  f/1 g/1 h/2', '  f/1 g/1 h/x', 5),
])
def test_parse_theory_errors(old, new, line):
    with pytest.raises(TheoryParseError) as info:
        parse_theory(MINI.replace(old, new))

    assert info.value.line == line


@pytest.mark.parametrize('name', ['dy', 'dsks', 'blind', 'twostack'])
def test_builtin(name):
    bundle = builtin(name)

    assert bundle.name == name
    assert len(bundle.l0) > 0
    assert len(bundle.rewrite) > 0
    assert builtin(name) is bundle


@pytest.mark.parametrize('name, expected', [
    ('dy', True),
    ('blind', False),
    ('dsks', False),
    ('twostack', False),
])
def test_subterm_convergent(name, expected):
    assert builtin(name).subterm_convergent == expected


def test_builtin_unknown():
    with pytest.raises(ValueError):
        builtin('nope')


def test_load_theory(tmp_path):
    path = tmp_path / 'mini.thy'
    path.write_text(MINI.replace('name mini\n', ''))

    assert load_theory(path).name == 'mini'

    gz_path = tmp_path / 'zipped.thy.gz'

    with gzip.open(gz_path, 'wt') as out_file:
        out_file.write(MINI)

    assert load_theory(gz_path).name == 'mini'

    with pytest.raises(FileNotFoundError):
        load_theory(tmp_path / 'missing.thy')


@pytest.mark.parametrize('name', ['dy', 'dsks', 'blind', 'twostack'])
def test_serialize_theory(name):
    bundle = builtin(name)
    reparsed = parse_theory(serialize_theory(bundle))

    assert bundle_to_dict(reparsed) == bundle_to_dict(bundle)


def test_bundle_to_dict(dy):
    data = bundle_to_dict(dy)

    assert data['name'] == 'dy'
    assert data['precedence'][0] == 'dec_a'
    assert {'name': 'pair', 'arity': 2} in data['signature']
    assert 'pi1(pair(X, Y)) -> X' in data['rules']
    assert data['subterm_convergent']


def test_parse_constraints(dy):
    system = parse_constraints('knows enc_s(s, k), k; deduce V\neq V = s\n\n# comment\n', dy)

    assert len(system) == 1
    assert system.constraints[0].goal == Var('V')
    assert len(system.constraints[0].knowledge) == 2
    assert [(str(lhs), str(rhs)) for lhs, rhs in system.unif] == [('V', 's')]
    assert len(parse_constraints('', dy)) == 0


def test_parse_constraints_monotone(dy):
    system = parse_constraints('knows a\ndeduce a\nknows b\ndeduce pair(a, b)', dy)

    first, second = system.constraints
    assert first.knowledge < second.knowledge


def test_parse_constraints_errors(dy):
    with pytest.raises(TheoryParseError) as info:
        parse_constraints('knows a\nlearn b', dy)

    assert info.value.line == 2

    with pytest.raises(TheoryParseError):
        parse_constraints('knows pair(a)', dy)

    with pytest.raises(ConstraintError) as info:
        parse_constraints('knows a\ndeduce a\nknows X\ndeduce b', dy)

    assert info.value.index == 1
    assert info.value.line == 4


@pytest.mark.parametrize('text', [
    'knows a\ndeduce X\nknows enc_s(s, X)\ndeduce s\n',
    'knows pair(a, b)\ndeduce X\neq pi1(X) = a\n',
    'deduce a\n',
])
def test_serialize_constraints(dy, text):
    system = parse_constraints(text, dy)

    assert serialize_constraints(system) == text
    assert parse_constraints(serialize_constraints(system), dy) == system
