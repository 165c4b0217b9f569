"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in n variables is a finite map from exponent tuples (one
nonnegative int per variable) to nonzero Fraction coefficients.  The zero
polynomial is the empty map.  All arithmetic is exact; there is no
floating-point mode.  Values are immutable after construction, so every
operation here is a pure function and safe to call concurrently.

The companion expression grammar (see :func:`parse_polynomial`):

    expr   :=  term (('+' | '-') term)*
    term   :=  factor ('*' factor)*
    factor :=  ('-' | '+')* power
    power  :=  atom ('^' INT)*
    atom   :=  INT ('/' INT)?  |  NAME  |  '(' expr ')'

Rational constants are written ``a`` or ``a/b``; exponents must be
nonnegative integers.  The canonical printer emits terms in graded
lexicographic descending order, so parse(print(p)) == p.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionMismatch, ParseError

Exponents = tuple  # exponent tuple, one nonnegative int per variable
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, and 'a/b' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _grlex_key(exps: Exponents):
    # graded lexicographic: total degree first, then the exponent tuple
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions and must never be
    mutated after construction.  Use the classmethods or the arithmetic
    operators to build instances.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction], *, _trusted: bool = False):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        if not _trusted:
            terms = self._canonicalize(nvars, terms)
        self.nvars = nvars
        self.terms = dict(terms)

    @staticmethod
    def _canonicalize(nvars: int, terms: Mapping[Exponents, Fraction]) -> dict:
        out: dict = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DimensionMismatch(
                    f"exponent tuple {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 or not isinstance(e, int) for e in exps):
                raise ValueError(f"exponents must be nonnegative integers: {exps}")
            coeff = as_fraction(coeff)
            if coeff != 0:
                acc = out.get(exps, _ZERO) + coeff
                if acc == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = acc
        return out

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "MultiPoly":
        c = as_fraction(value)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, _trusted=True)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)}, _trusted=True)

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Exponents, Scalar]) -> "MultiPoly":
        return cls(nvars, {k: as_fraction(v) for k, v in terms.items()})

    # ------------------------------------------------------------------
    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        """Max exponent sum over terms, or None for the zero polynomial.

        None is the distinguished "minus infinity" marker: using it in a
        degree formula is an immediate TypeError instead of a silently
        corrupted bound.
        """
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, _ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # mutable dict inside; not hashable

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"MultiPoly[{self.nvars}]({poly_to_string(self, names)})"

    # ------------------------------------------------------------------
    # ring operations

    def _require_same_vars(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, _ZERO) + coeff
            if acc == 0:
                out.pop(exps, None)
            else:
                out[exps] = acc
        return MultiPoly(self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            if c == 0:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, {e: k * c for e, k in self.terms.items()}, _trusted=True)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_vars(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e, _ZERO) + c1 * c2
                if acc == 0:
                    out.pop(e, None)
                else:
                    out[e] = acc
        return MultiPoly(self.nvars, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # calculus and evaluation

    def partial_derivative(self, index: int) -> "MultiPoly":
        """Exact partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for {self.nvars} variables")
        out: dict = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            new = exps[:index] + (e - 1,) + exps[index + 1:]
            acc = out.get(new, _ZERO) + coeff * e
            if acc == 0:
                out.pop(new, None)
            else:
                out[new] = acc
        return MultiPoly(self.nvars, out, _trusted=True)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        values = [as_fraction(v) for v in point]
        if len(values) != self.nvars:
            raise DimensionMismatch(
                f"point has length {len(values)}, expected {self.nvars}")
        powers: dict = {}
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                v = values[i]
                if v == 0:
                    term = _ZERO
                    break
                key = (i, e)
                p = powers.get(key)
                if p is None:
                    p = v ** e
                    powers[key] = p
                term *= p
            total += term
        return total

    def sorted_terms(self) -> list:
        """Terms in graded-lex descending order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)


# ----------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_at)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        names = list(variables)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.index_of = {name: i for i, name in enumerate(names)}
        self.nvars = len(names)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2])

    def parse(self) -> MultiPoly:
        poly = self.expr()
        kind, value, _ = self.peek()
        if kind != "end":
            self.fail(f"unexpected {value!r}")
        return poly

    def expr(self) -> MultiPoly:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                node = node + rhs if value == "+" else node - rhs
            else:
                return node

    def term(self) -> MultiPoly:
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = node * self.factor()
            else:
                return node

    def factor(self) -> MultiPoly:
        sign = 1
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                if value == "-":
                    sign = -sign
            else:
                break
        node = self.power()
        return node if sign == 1 else -node

    def power(self) -> MultiPoly:
        node = self.atom()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "^":
                self.advance()
                kind, value, pos = self.peek()
                if kind == "op" and value == "-":
                    raise ParseError("negative exponent", pos)
                if kind != "int":
                    self.fail("expected a nonnegative integer exponent")
                self.advance()
                node = node ** value
            else:
                return node

    def atom(self) -> MultiPoly:
        kind, value, pos = self.peek()
        if kind == "int":
            self.advance()
            numerator = value
            kind, value, _ = self.peek()
            if kind == "op" and value == "/":
                self.advance()
                kind, value, dpos = self.peek()
                if kind != "int":
                    self.fail("expected an integer denominator")
                if value == 0:
                    raise ParseError("zero denominator in rational literal", dpos)
                self.advance()
                return MultiPoly.constant(self.nvars, Fraction(numerator, value))
            return MultiPoly.constant(self.nvars, numerator)
        if kind == "name":
            self.advance()
            index = self.index_of.get(value)
            if index is None:
                raise ParseError(f"unknown variable {value!r}", pos)
            return MultiPoly.variable(self.nvars, index)
        if kind == "op" and value == "(":
            self.advance()
            node = self.expr()
            kind, value, _ = self.peek()
            if not (kind == "op" and value == ")"):
                self.fail("expected ')'")
            self.advance()
            return node
        self.fail("expected a number, variable, or '('")


def parse_polynomial(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse an expression string into a canonical MultiPoly.

    Raises ParseError (with character position) on syntax errors, unknown
    variable names, negative exponents, or zero denominators.
    """
    return _Parser(text, variables).parse()


# ----------------------------------------------------------------------
# printing


def _format_monomial(exps: Exponents, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_string(poly: MultiPoly, variables: Sequence[str]) -> str:
    """Canonical printer: graded-lex descending terms, coefficients `a` or `a/b`."""
    if len(variables) != poly.nvars:
        raise DimensionMismatch(
            f"{len(variables)} names given for {poly.nvars} variables")
    if poly.is_zero:
        return "0"
    pieces = []
    for exps, coeff in poly.sorted_terms():
        mono = _format_monomial(exps, variables)
        magnitude = abs(coeff)
        if mono and magnitude == 1:
            body = mono
        elif mono:
            body = f"{magnitude}*{mono}"
        else:
            body = str(magnitude)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)
