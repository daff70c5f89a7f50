"""First-order terms, signatures, and substitutions.

Terms are immutable values: a term is either a variable (:class:`Var`) or the application of a function symbol to a
tuple of argument terms (:class:`App`). Constants are applications with no arguments. Structural equality is literal;
equality modulo an equational theory is handled by :mod:`fvsat.rewrite`.

Symbols are identified by name. A :class:`Signature` declares symbols with a fixed arity and a total precedence used
by the reduction order. Nullary symbols that are not declared are free constants. Free constants sit below every
declared symbol in the precedence and are ordered by name among themselves.
"""

__all__ = [
    'SymbolKind',
    'Symbol',
    'Signature',
    'SignatureError',
    'Term',
    'Var',
    'App',
    'Substitution',
    'IDENTITY',
    'const',
    'subterms',
    'positions',
    'subterm_at',
    'replace_at',
    'apply',
    'apply_map',
    'compose',
    'variables',
    'count_vars',
    'is_ground',
    'size',
    'fresh_var',
    'rename_apart',
    'canonical_names',
    'canonical_renaming',
    'term_sort_key',
]

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
import enum
import itertools
from typing import Any, Optional

from frozendict import frozendict

_FRESH_COUNTER = itertools.count(1)


class SignatureError(ValueError):
    """A term uses an undeclared symbol or a symbol with the wrong number of arguments."""
    pass


class SymbolKind(enum.Enum):
    """Kind of function symbol."""
    CONSTRUCTOR = 'constructor'
    FREE_CONSTANT = 'free-constant'


@dataclass(frozen=True)
class Symbol:
    """A declared function symbol.

    :param name: Symbol name.
    :param arity: Number of arguments.
    :param kind: Symbol kind.
    """
    name: str
    arity: int
    kind: SymbolKind = SymbolKind.CONSTRUCTOR

    def __post_init__(self) -> None:
        """Check attributes."""
        if not isinstance(self.name, str) or not self.name.strip():
            raise ValueError('Symbol name is missing or empty')

        object.__setattr__(self, 'name', self.name.strip())

        if not isinstance(self.arity, int) or self.arity < 0:
            raise ValueError(f'Symbol {self.name}: Arity must be a non-negative integer: {self.arity}')

        if self.kind == SymbolKind.FREE_CONSTANT and self.arity != 0:
            raise ValueError(f'Symbol {self.name}: Free constants must have arity 0: {self.arity}')

    def __str__(self) -> str:
        """Get a "name/arity" string."""
        return f'{self.name}/{self.arity}'


@dataclass(frozen=True)
class Signature:
    """A set of declared symbols with a total precedence.

    :param symbols: Declared symbols.
    :param precedence: Symbol names from lowest to highest. If empty, declaration order is used (symbols declared
        earlier are smaller). If given, it must list every declared symbol exactly once.
    """
    symbols: tuple[Symbol, ...] = ()
    precedence: tuple[str, ...] = ()
    _arity: frozendict = field(init=False, repr=False, compare=False)
    _rank: frozendict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check symbols and build lookup tables."""
        symbols = tuple(self.symbols)
        object.__setattr__(self, 'symbols', symbols)

        arity = {}

        for symbol in symbols:
            if not isinstance(symbol, Symbol):
                raise ValueError(f'Signature symbols must be Symbol objects: {type(symbol)}')

            if symbol.name in arity:
                raise ValueError(f'Duplicate symbol in signature: {symbol.name}')

            arity[symbol.name] = symbol.arity

        precedence = tuple(self.precedence) if self.precedence else tuple(symbol.name for symbol in symbols)

        if len(set(precedence)) != len(precedence):
            raise ValueError(f'Precedence lists a symbol more than once: {" < ".join(precedence)}')

        missing = set(arity) - set(precedence)
        extra = set(precedence) - set(arity)

        if missing:
            raise ValueError(f'Precedence is not total, missing symbols: {", ".join(sorted(missing))}')

        if extra:
            raise ValueError(f'Precedence lists undeclared symbols: {", ".join(sorted(extra))}')

        object.__setattr__(self, 'precedence', precedence)
        object.__setattr__(self, '_arity', frozendict(arity))
        object.__setattr__(self, '_rank', frozendict({name: index for index, name in enumerate(precedence)}))

    def declares(self, name: str) -> bool:
        """Determine if a symbol is declared."""
        return name in self._arity

    def arity(self, name: str) -> Optional[int]:
        """Get the arity of a declared symbol or `None` if it is not declared."""
        return self._arity.get(name, None)

    def compare_symbols(self, f: str, g: str) -> int:
        """Compare two symbols in the precedence.

        :param f: First symbol name.
        :param g: Second symbol name.

        :returns: A negative number if `f` is smaller, 0 if equal, and a positive number if `f` is greater.

        :raises SignatureError: If either symbol is not declared (free constants are accepted, the caller checks
            arity).
        """
        if f == g:
            return 0

        rank_f = self._rank.get(f, -1)
        rank_g = self._rank.get(g, -1)

        if rank_f != rank_g:
            return rank_f - rank_g

        # Both free constants
        return -1 if f < g else 1

    def check_term(self, t: 'Term', allow_free: bool = True) -> None:
        """Check that all symbols of a term are declared with the correct arity.

        :param t: Term to check.
        :param allow_free: Accept undeclared nullary symbols as free constants.

        :raises SignatureError: If a symbol is undeclared or used with the wrong number of arguments.
        """
        for _, sub in positions(t):
            if isinstance(sub, Var):
                continue

            declared_arity = self._arity.get(sub.symbol, None)

            if declared_arity is None:
                if allow_free and not sub.args:
                    continue

                raise SignatureError(f'Undeclared symbol "{sub.symbol}" in term {t}')

            if declared_arity != len(sub.args):
                raise SignatureError(
                    f'Arity mismatch for symbol "{sub.symbol}" in term {t}: '
                    f'Expected {declared_arity} arguments, found {len(sub.args)}'
                )

    def __str__(self) -> str:
        """Get a short string representation."""
        return ' '.join(str(symbol) for symbol in self.symbols)


class Term:
    """Base class for first-order terms."""
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    """A variable.

    :param name: Variable name. Parsed variables start with an upper-case letter; generated variables contain a
        character that cannot be parsed ("%") so they never collide with user variables.
    """
    name: str

    def __post_init__(self) -> None:
        """Check attributes."""
        if not isinstance(self.name, str) or not self.name:
            raise ValueError(f'Variable name must be a non-empty string: {self.name!r}')

    def __str__(self) -> str:
        """Get variable name."""
        return self.name


@dataclass(frozen=True, slots=True)
class App(Term):
    """A function symbol applied to arguments.

    :param symbol: Symbol name.
    :param args: Argument terms.
    """
    symbol: str
    args: tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)
    _vars: frozenset = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check arguments and cache the hash, variables, and size."""
        if not isinstance(self.args, tuple):
            object.__setattr__(self, 'args', tuple(self.args))

        term_vars = frozenset()
        term_size = 1

        for arg in self.args:
            if isinstance(arg, Var):
                term_vars = term_vars | {arg}
                term_size += 1
            elif isinstance(arg, App):
                term_vars = term_vars | arg._vars
                term_size += arg._size
            else:
                raise ValueError(f'Argument of {self.symbol} is not a term: {arg!r}')

        object.__setattr__(self, '_hash', hash((self.symbol, self.args)))
        object.__setattr__(self, '_vars', term_vars)
        object.__setattr__(self, '_size', term_size)

    def __hash__(self) -> int:
        """Get the cached hash."""
        return self._hash

    def __eq__(self, other: Any) -> bool:
        """Compare terms structurally."""
        if self is other:
            return True

        if not isinstance(other, App):
            return NotImplemented

        return self._hash == other._hash and self.symbol == other.symbol and self.args == other.args

    def __str__(self) -> str:
        """Get the term in theory syntax."""
        if not self.args:
            return self.symbol

        return f'{self.symbol}({", ".join(str(arg) for arg in self.args)})'


def const(name: str) -> App:
    """Get a constant (nullary application)."""
    return App(name, ())


@dataclass(frozen=True)
class Substitution:
    """A finite map from variables to terms.

    Bindings that map a variable to itself are dropped, so the support is exactly the set of keys.

    :param bindings: Variable bindings.
    """
    bindings: Mapping[Var, Term] = field(default_factory=frozendict)

    def __post_init__(self) -> None:
        """Check bindings and freeze them."""
        bindings = {}

        for key, val in dict(self.bindings).items():
            if not isinstance(key, Var):
                raise ValueError(f'Substitution key is not a variable: {key!r}')

            if not isinstance(val, Term):
                raise ValueError(f'Substitution value for {key} is not a term: {val!r}')

            if key != val:
                bindings[key] = val

        object.__setattr__(self, 'bindings', frozendict(bindings))

    @property
    def support(self) -> frozenset[Var]:
        """Variables moved by the substitution."""
        return frozenset(self.bindings.keys())

    def apply(self, t: Term) -> Term:
        """Apply the substitution to a term."""
        return apply_map(t, self.bindings)

    def __call__(self, t: Term) -> Term:
        """Apply the substitution to a term."""
        return apply_map(t, self.bindings)

    def compose(self, other: 'Substitution') -> 'Substitution':
        """Get the substitution applying `self` first and then `other`."""
        return compose(self, other)

    def restrict(self, keep: Iterable[Var]) -> 'Substitution':
        """Restrict the support to a set of variables."""
        keep = set(keep)
        return Substitution({key: val for key, val in self.bindings.items() if key in keep})

    def is_renaming(self) -> bool:
        """Determine if the substitution is an injective map from variables to variables."""
        images = list(self.bindings.values())
        return all(isinstance(val, Var) for val in images) and len(set(images)) == len(images)

    def image_vars(self) -> frozenset[Var]:
        """Get the variables occurring in the images of the support."""
        return variables(self.bindings.values())

    def __getitem__(self, key: Var) -> Term:
        """Get the image of a variable (the variable itself if it is not in the support)."""
        return self.bindings.get(key, key)

    def __contains__(self, key: Var) -> bool:
        """Determine if a variable is in the support."""
        return key in self.bindings

    def __len__(self) -> int:
        """Get the size of the support."""
        return len(self.bindings)

    def __iter__(self) -> Iterator[Var]:
        """Iterate over the support."""
        return iter(self.bindings)

    def items(self):
        """Get (variable, term) pairs."""
        return self.bindings.items()

    def __str__(self) -> str:
        """Get a string with bindings sorted by variable name."""
        return '{' + ', '.join(
            f'{key} -> {self.bindings[key]}' for key in sorted(self.bindings, key=lambda var: var.name)
        ) + '}'


IDENTITY: Substitution = Substitution()
"""The identity substitution."""


def apply_map(t: Term, bindings: Mapping[Var, Term]) -> Term:
    """Apply a binding map to a term."""
    if isinstance(t, Var):
        return bindings.get(t, t)

    if not t.args or t._vars.isdisjoint(bindings.keys()):
        return t

    return App(t.symbol, tuple(apply_map(arg, bindings) for arg in t.args))


def apply(t: Term, sigma: Substitution) -> Term:
    """Apply a substitution to a term.

    :param t: Term.
    :param sigma: Substitution.

    :returns: `t` with every variable in the support of `sigma` replaced by its image.
    """
    return apply_map(t, sigma.bindings)


def compose(sigma: Substitution, tau: Substitution) -> Substitution:
    """Compose two substitutions.

    For all terms, `apply(t, compose(sigma, tau)) == apply(apply(t, sigma), tau)`.

    :param sigma: First substitution.
    :param tau: Second substitution.

    :returns: Composed substitution.
    """
    bindings = {key: apply_map(val, tau.bindings) for key, val in sigma.bindings.items()}

    for key, val in tau.bindings.items():
        if key not in sigma.bindings:
            bindings[key] = val

    return Substitution(bindings)


def positions(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """Iterate over (position, subterm) pairs in pre-order.

    Positions are tuples of 0-based argument indices; the root is `()`.
    """
    stack = [((), t)]

    while stack:
        pos, sub = stack.pop()
        yield pos, sub

        if isinstance(sub, App):
            for index in range(len(sub.args) - 1, -1, -1):
                stack.append((pos + (index,), sub.args[index]))


def subterm_at(t: Term, pos: tuple[int, ...]) -> Term:
    """Get the subterm at a position."""
    for index in pos:
        if not isinstance(t, App) or index >= len(t.args):
            raise ValueError(f'Position {pos} is not a position of term {t}')

        t = t.args[index]

    return t


def replace_at(t: Term, pos: tuple[int, ...], replacement: Term) -> Term:
    """Replace the subterm at a position."""
    if not pos:
        return replacement

    if not isinstance(t, App) or pos[0] >= len(t.args):
        raise ValueError(f'Position {pos} is not a position of term {t}')

    args = list(t.args)
    args[pos[0]] = replace_at(args[pos[0]], pos[1:], replacement)

    return App(t.symbol, tuple(args))


def subterms(t: Term | Iterable[Term], strict: bool = False) -> frozenset[Term]:
    """Get the set of subterms of a term or of a collection of terms.

    :param t: Term or collection of terms.
    :param strict: Exclude the term itself (for a collection, exclude its members unless they are strict subterms of
        another member).

    :returns: Set of subterms.
    """
    if isinstance(t, Term):
        if strict:
            if isinstance(t, Var):
                return frozenset()

            return frozenset().union(*(subterms(arg) for arg in t.args))

        return frozenset(sub for _, sub in positions(t))

    terms = list(t)

    if strict:
        return frozenset().union(*(subterms(member, strict=True) for member in terms))

    return frozenset().union(*(subterms(member) for member in terms))


def variables(t: Term | Iterable[Term]) -> frozenset[Var]:
    """Get the variables of a term or of a collection of terms."""
    if isinstance(t, Var):
        return frozenset((t,))

    if isinstance(t, App):
        return t._vars

    return frozenset().union(*(variables(member) for member in t))


def count_vars(t: Term | Iterable[Term]) -> int:
    """Get the number of distinct variables of a term or of a collection of terms."""
    return len(variables(t))


def is_ground(t: Term | Iterable[Term]) -> bool:
    """Determine if a term (or every term of a collection) has no variables."""
    return not variables(t)


def size(t: Term) -> int:
    """Get the number of symbol and variable occurrences in a term."""
    return 1 if isinstance(t, Var) else t._size


def term_sort_key(t: Term) -> tuple[int, str]:
    """Get a deterministic sort key (size, then string)."""
    return size(t), str(t)


def fresh_var(base: str = 'v') -> Var:
    """Get a variable that has never been generated before.

    :param base: Readable prefix. Generated names contain "%" and never collide with parsed variables.
    """
    return Var(f'{base.split("%")[0] or "v"}%{next(_FRESH_COUNTER)}')


def rename_apart(vars_to_rename: Iterable[Var]) -> Substitution:
    """Get a renaming that maps each variable to a fresh variable."""
    return Substitution({var: fresh_var(var.name) for var in vars_to_rename})


def canonical_names() -> Iterator[str]:
    """Generate readable variable names: X, Y, Z, W, U, V, X1, Y1, ..."""
    base = ('X', 'Y', 'Z', 'W', 'U', 'V')

    yield from base

    for index in itertools.count(1):
        for name in base:
            yield f'{name}{index}'


def canonical_renaming(ordered_vars: Iterable[Var], avoid: Iterable[Var] = ()) -> Substitution:
    """Rename variables to readable canonical names in the order given.

    :param ordered_vars: Variables in the order they should receive names. Duplicates are ignored.
    :param avoid: Variables whose names must not be reused.

    :returns: Renaming substitution.
    """
    avoid_names = {var.name for var in avoid}
    names = (name for name in canonical_names() if name not in avoid_names)

    bindings = {}

    for var in ordered_vars:
        if var not in bindings:
            bindings[var] = Var(next(names))

    return Substitution(bindings)
