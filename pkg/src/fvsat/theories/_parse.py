"""Parsers for theory files, rules, terms, and constraint systems.

Theory files are line oriented::

    # Comment
    name dy

    signature
      pair/2 enc_s/2 dec_s/2

    precedence
      dec_s > enc_s > pair

    rules
      dec_s(enc_s(X, Y), Y) -> X

    deduction
      X, Y => pair(X, Y)

Identifiers starting with an upper-case letter or "_" are variables. Nullary symbols that are not declared are free
constants. The precedence lists every declared symbol from highest to lowest, as one or more `>` chains.

Constraint files are a sequence of statements separated by newlines or ";"::

    knows enc_s(s, k), k; deduce V
    eq V = s

`knows` adds terms to the current knowledge set, `deduce t` appends the constraint "current knowledge |> t", and
`eq s = t` adds an equation.
"""

__all__ = [
    'TheoryParseError',
    'parse_term',
    'parse_rewrite_rule',
    'parse_deduction_rule',
    'parse_rules',
    'parse_theory',
    'parse_constraints',
]

from collections import deque
from dataclasses import dataclass
import re
from typing import Optional

from ..constraints import ConstraintError, ConstraintSystem, DeductionConstraint, wellformed_violation
from ..deduction import DeductionRule, DeductionSystem, TheoryTag
from ..rewrite import RewriteRule, RewriteSystem
from ..term import App, Signature, SignatureError, Symbol, Term, Var
from ..unify import UnificationSystem

from ._bundle import TheoryBundle

SECTIONS = ('signature', 'precedence', 'rules', 'deduction')

_TOKEN_SPEC = [
    ('SKIP', r'[ \t\r]+'),
    ('COMMENT', r'#[^\n]*'),
    ('NEWLINE', r'\n'),
    ('ARROW', r'->'),
    ('DARROW', r'=>'),
    ('GT', r'>'),
    ('LP', r'\('),
    ('RP', r'\)'),
    ('COMMA', r','),
    ('SEMI', r';'),
    ('EQ', r'='),
    ('SLASH', r'/'),
    ('NAME', r"[A-Za-z0-9_][A-Za-z0-9_']*"),
    ('MISMATCH', r'.'),
]

_TOKEN_REGEX = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in _TOKEN_SPEC))

_DESCRIPTION = {
    'ARROW': '"->"',
    'DARROW': '"=>"',
    'GT': '">"',
    'LP': '"("',
    'RP': '")"',
    'COMMA': '","',
    'SEMI': '";"',
    'EQ': '"="',
    'SLASH': '"/"',
    'NAME': 'identifier',
}


class TheoryParseError(ValueError):
    """Syntax or validation error in a theory or constraint text.

    :param message: Error message.
    :param line: 1-based line number or `None`.
    :param column: 1-based column number or `None`.
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.message = message
        self.line = line
        self.column = column

        if line is not None:
            location = f'line {line}' if column is None else f'line {line}, column {column}'
            message = f'{message} ({location})'

        super().__init__(message)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    """Split text into tokens with 1-based line and column numbers."""
    tokens = []
    line = 1
    line_start = 0

    for match in _TOKEN_REGEX.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1

        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
            continue

        if kind in {'SKIP', 'COMMENT'}:
            continue

        if kind == 'MISMATCH':
            raise TheoryParseError(f'Unexpected character {match.group()!r}', line, column)

        tokens.append(_Token(kind, match.group(), line, column))

    return tokens


def _is_var_name(name: str) -> bool:
    return name[0].isupper() or name[0] == '_'


class _Parser:
    """Recursive descent parser over one statement."""

    def __init__(self, tokens: list[_Token], line: Optional[int] = None) -> None:
        self.tokens = deque(tokens)
        self.line = line if line is not None else (tokens[0].line if tokens else None)

    def peek(self) -> Optional[_Token]:
        return self.tokens[0] if self.tokens else None

    def at(self, kind: str) -> bool:
        return bool(self.tokens) and self.tokens[0].kind == kind

    def pop(self, kind: Optional[str] = None) -> _Token:
        if not self.tokens:
            expected = _DESCRIPTION.get(kind, 'more input') if kind is not None else 'more input'
            raise TheoryParseError(f'Unexpected end of input, expected {expected}', self.line)

        token = self.tokens.popleft()

        if kind is not None and token.kind != kind:
            raise TheoryParseError(
                f'Expected {_DESCRIPTION.get(kind, kind)}, found {token.value!r}', token.line, token.column
            )

        return token

    def end(self) -> None:
        if self.tokens:
            token = self.tokens[0]
            raise TheoryParseError(f'Unexpected {token.value!r}', token.line, token.column)

    def term(self) -> Term:
        token = self.pop('NAME')

        if not self.at('LP'):
            return Var(token.value) if _is_var_name(token.value) else App(token.value, ())

        if _is_var_name(token.value):
            raise TheoryParseError(f'Variable {token.value} cannot have arguments', token.line, token.column)

        self.pop('LP')
        args = []

        if not self.at('RP'):
            args.append(self.term())

            while self.at('COMMA'):
                self.pop('COMMA')
                args.append(self.term())

        self.pop('RP')

        return App(token.value, tuple(args))


def _check_term(t: Term, sig: Optional[Signature], token: Optional[_Token], allow_free: bool = True) -> None:
    if sig is None:
        return

    try:
        sig.check_term(t, allow_free=allow_free)
    except SignatureError as e:
        raise TheoryParseError(str(e), token.line if token else None, token.column if token else None) from e


def _located_term(parser: _Parser, sig: Optional[Signature], allow_free: bool = True) -> Term:
    token = parser.peek()
    t = parser.term()
    _check_term(t, sig, token, allow_free)
    return t


def _rewrite_rule(parser: _Parser, sig: Optional[Signature]) -> RewriteRule:
    start = parser.peek()
    lhs = _located_term(parser, sig, allow_free=False)
    parser.pop('ARROW')
    rhs = _located_term(parser, sig, allow_free=False)
    parser.end()

    try:
        rule = RewriteRule(lhs, rhs)

        if sig is not None:
            RewriteSystem((rule,), sig)

    except ValueError as e:
        raise TheoryParseError(str(e), start.line, start.column) from e

    return rule


def _deduction_rule(parser: _Parser, sig: Optional[Signature]) -> DeductionRule:
    start = parser.peek()
    lhs = []

    while not parser.at('DARROW'):
        lhs.append(_located_term(parser, sig))

        if not parser.at('DARROW'):
            parser.pop('COMMA')

    parser.pop('DARROW')
    rhs = _located_term(parser, sig)
    parser.end()

    try:
        return DeductionRule(frozenset(lhs), rhs)
    except ValueError as e:
        raise TheoryParseError(str(e), start.line if start else None, start.column if start else None) from e


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    """Parse a term.

    :param text: Term text.
    :param sig: Signature to check the term against (free constants allowed), or `None` to skip the check.

    :returns: Term.

    :raises TheoryParseError: On a syntax error or a signature violation.
    """
    parser = _Parser(_tokenize(text), 1)
    t = _located_term(parser, sig)
    parser.end()

    return t


def parse_rewrite_rule(text: str, sig: Optional[Signature] = None) -> RewriteRule:
    """Parse a rewrite rule `lhs -> rhs`.

    :param text: Rule text.
    :param sig: Signature. If given, symbols are checked and the rule must be oriented by its precedence.

    :returns: Rewrite rule.

    :raises TheoryParseError: On a syntax or validation error.
    """
    return _rewrite_rule(_Parser(_tokenize(text), 1), sig)


def parse_deduction_rule(text: str, sig: Optional[Signature] = None) -> DeductionRule:
    """Parse a deduction rule `l1, ..., ln => r` (`=> r` for a rule without premises).

    :param text: Rule text.
    :param sig: Signature to check symbols against, or `None`.

    :returns: Deduction rule.

    :raises TheoryParseError: On a syntax or validation error.
    """
    return _deduction_rule(_Parser(_tokenize(text), 1), sig)


def _lines(tokens: list[_Token]) -> list[list[_Token]]:
    """Group tokens by line."""
    lines: list[list[_Token]] = []

    for token in tokens:
        if lines and lines[-1][0].line == token.line:
            lines[-1].append(token)
        else:
            lines.append([token])

    return lines


def parse_rules(text: str, sig: Optional[Signature] = None) -> list[RewriteRule | DeductionRule]:
    """Parse one rule per line, rewrite rules (`->`) and deduction rules (`=>`) mixed.

    :param text: Rules text.
    :param sig: Signature to check rules against, or `None`.

    :returns: Rules in order.

    :raises TheoryParseError: On a syntax or validation error.
    """
    rules = []

    for line in _lines(_tokenize(text)):
        parser = _Parser(line)

        if any(token.kind == 'DARROW' for token in line):
            rules.append(_deduction_rule(parser, sig))
        else:
            rules.append(_rewrite_rule(parser, sig))

    return rules


def _signature_entries(line: list[_Token]) -> list[tuple[Symbol, _Token]]:
    parser = _Parser(line)
    entries = []

    while parser.peek() is not None:
        name = parser.pop('NAME')

        if _is_var_name(name.value):
            raise TheoryParseError(
                f'Symbol names must not start with an upper-case letter or "_": {name.value}', name.line, name.column
            )

        parser.pop('SLASH')
        arity = parser.pop('NAME')

        if not arity.value.isdigit():
            raise TheoryParseError(f'Arity must be a non-negative integer: {arity.value}', arity.line, arity.column)

        entries.append((Symbol(name.value, int(arity.value)), name))

        if parser.at('COMMA'):
            parser.pop('COMMA')

    return entries


def _precedence_chain(line: list[_Token]) -> list[_Token]:
    parser = _Parser(line)
    names = [parser.pop('NAME')]

    while parser.peek() is not None:
        parser.pop('GT')
        names.append(parser.pop('NAME'))

    return names


def parse_theory(text: str, name: Optional[str] = None) -> TheoryBundle:
    """Parse a theory file.

    :param text: Theory text.
    :param name: Theory name if the text has no `name` line. Defaults to "theory".

    :returns: Theory bundle with validated signature, oriented rewrite rules, and initial deduction rules.

    :raises TheoryParseError: On a syntax error, an undeclared symbol, an arity mismatch, an unoriented rewrite rule,
        or an initial deduction rule that is not of shape `X1, ..., Xn => f(X1, ..., Xn)`.
    """
    section = None
    theory_name = None

    symbols: list[Symbol] = []
    symbol_tokens: dict[str, _Token] = {}
    precedence: list[_Token] = []
    rule_lines: list[list[_Token]] = []
    deduction_lines: list[list[_Token]] = []

    for line in _lines(_tokenize(text)):
        first = line[0]

        if len(line) == 1 and first.kind == 'NAME' and first.value in SECTIONS:
            section = first.value
            continue

        if first.kind == 'NAME' and first.value == 'name' and section is None:
            if len(line) != 2 or line[1].kind != 'NAME':
                raise TheoryParseError('Expected "name <identifier>"', first.line, first.column)

            theory_name = line[1].value
            continue

        if section is None:
            raise TheoryParseError(
                f'Expected a section header ({", ".join(SECTIONS)}), found {first.value!r}', first.line, first.column
            )

        if section == 'signature':
            for symbol, token in _signature_entries(line):
                if symbol.name in symbol_tokens:
                    raise TheoryParseError(f'Duplicate symbol: {symbol.name}', token.line, token.column)

                symbols.append(symbol)
                symbol_tokens[symbol.name] = token

        elif section == 'precedence':
            precedence.extend(_precedence_chain(line))

        elif section == 'rules':
            rule_lines.append(line)

        else:
            deduction_lines.append(line)

    for token in precedence:
        if token.value not in symbol_tokens:
            raise TheoryParseError(f'Precedence lists an undeclared symbol: {token.value}', token.line, token.column)

    try:
        sig = Signature(tuple(symbols), tuple(reversed([token.value for token in precedence])))
    except ValueError as e:
        raise TheoryParseError(str(e), precedence[0].line if precedence else None) from e

    rewrite_rules = [_rewrite_rule(_Parser(line), sig) for line in rule_lines]
    deduction_rules = []

    for line in deduction_lines:
        rule = _deduction_rule(_Parser(line), sig)

        try:
            DeductionSystem((rule,), sig, TheoryTag.MODULO_H)
        except ValueError as e:
            raise TheoryParseError(str(e), line[0].line, line[0].column) from e

        deduction_rules.append(rule)

    return TheoryBundle(
        name=theory_name or name or 'theory',
        sig=sig,
        rewrite=RewriteSystem(tuple(rewrite_rules), sig),
        l0=DeductionSystem(tuple(deduction_rules), sig, TheoryTag.MODULO_H),
    )


def _statements(tokens: list[_Token]) -> list[list[_Token]]:
    """Split tokens into statements at line ends and ";"."""
    statements = []

    for line in _lines(tokens):
        current: list[_Token] = []

        for token in line:
            if token.kind == 'SEMI':
                if current:
                    statements.append(current)

                current = []
            else:
                current.append(token)

        if current:
            statements.append(current)

    return statements


def parse_constraints(text: str, bundle: TheoryBundle | Signature | None = None) -> ConstraintSystem:
    """Parse a constraint system.

    :param text: Constraint text.
    :param bundle: Theory bundle or signature to check terms against, or `None`.

    :returns: Well-formed constraint system (empty for an empty text).

    :raises TheoryParseError: On a syntax error or a signature violation.
    :raises ConstraintError: If the system is not well formed. The error carries the index and line of the
        offending constraint.
    """
    sig = bundle.sig if isinstance(bundle, TheoryBundle) else bundle

    knowledge: frozenset[Term] = frozenset()
    constraints = []
    constraint_lines = []
    equations = []

    for statement in _statements(_tokenize(text)):
        parser = _Parser(statement)
        keyword = parser.pop('NAME')

        if keyword.value == 'knows':
            members = [_located_term(parser, sig)]

            while parser.at('COMMA'):
                parser.pop('COMMA')
                members.append(_located_term(parser, sig))

            knowledge = knowledge | frozenset(members)

        elif keyword.value == 'deduce':
            goal = _located_term(parser, sig)
            constraints.append(DeductionConstraint(knowledge, goal))
            constraint_lines.append(keyword.line)

        elif keyword.value == 'eq':
            lhs = _located_term(parser, sig)
            parser.pop('EQ')
            rhs = _located_term(parser, sig)
            equations.append((lhs, rhs))

        else:
            raise TheoryParseError(
                f'Expected "knows", "deduce", or "eq", found {keyword.value!r}', keyword.line, keyword.column
            )

        parser.end()

    system = ConstraintSystem(tuple(constraints), UnificationSystem(tuple(equations)))
    violation = wellformed_violation(system)

    if violation is not None:
        index, message = violation
        raise ConstraintError(message, index=index, line=constraint_lines[index])

    return system
