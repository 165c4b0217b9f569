"""Truncated univariate power series with certified exactness order.

A TruncSeries holds coefficients of t^0 .. t^T, all exactly correct; T is
the ``exact_to`` order.  The construction rules keep the exactness order
honest:

  * ring operations truncate to the smaller exactness order,
  * antidifferentiation gains one order (coefficient k+1 of the integral
    depends only on coefficient k of the integrand),
  * differentiation loses one order,
  * reciprocals preserve the order (coefficient k of 1/s depends on
    coefficients 0..k of s).

Composing a polynomial with series exact to order T is exact to order T:
it is a finite combination of the truncated ring operations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, PreconditionError
from .poly import MultiPoly, as_fraction

_ZERO = Fraction(0)


class TruncSeries:
    """Univariate truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = tuple(as_fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a TruncSeries needs at least the t^0 coefficient")
        self.coeffs = cs

    @classmethod
    def constant(cls, value, exact_to: int) -> "TruncSeries":
        c = as_fraction(value)
        return cls((c,) + (_ZERO,) * exact_to)

    @classmethod
    def identity(cls, exact_to: int) -> "TruncSeries":
        """The series of t itself, exact to the given order."""
        if exact_to < 1:
            return cls((_ZERO,))
        return cls((_ZERO, Fraction(1)) + (_ZERO,) * (exact_to - 1))

    @property
    def exact_to(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.exact_to:
            raise PreconditionError(
                f"series exact to order {self.exact_to} cannot be read at order {order}")
        if order == self.exact_to:
            return self
        return TruncSeries(self.coeffs[:order + 1])

    # ------------------------------------------------------------------
    # ring operations (all truncate to the smaller exactness order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries([self.coeffs[k] + other.coeffs[k] for k in range(n)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries([self.coeffs[k] - other.coeffs[k] for k in range(n)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs])

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = min(len(self.coeffs), len(other.coeffs))
        out = [_ZERO] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out)

    __rmul__ = __mul__

    def scale(self, value) -> "TruncSeries":
        c = as_fraction(value)
        return TruncSeries([c * a for a in self.coeffs])

    def reciprocal(self) -> "TruncSeries":
        """Multiplicative inverse in the truncated series ring."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise PreconditionError("series with zero constant term has no reciprocal")
        n = len(self.coeffs)
        out = [_ZERO] * n
        out[0] = 1 / c0
        for k in range(1, n):
            acc = _ZERO
            for j in range(1, k + 1):
                cj = self.coeffs[j]
                if cj != 0:
                    acc += cj * out[k - j]
            out[k] = -acc / c0
        return TruncSeries(out)

    # ------------------------------------------------------------------
    # calculus

    def derivative(self) -> "TruncSeries":
        if len(self.coeffs) == 1:
            raise PreconditionError("cannot differentiate a series exact only to order 0")
        return TruncSeries([k * c for k, c in enumerate(self.coeffs)][1:])

    def integral(self, constant=0) -> "TruncSeries":
        """Antiderivative with the given t^0 value; gains one exact order."""
        out = [as_fraction(constant)]
        out.extend(c / (k + 1) for k, c in enumerate(self.coeffs))
        return TruncSeries(out)

    def first_nonzero(self):
        """Index of the first nonzero coefficient, or None if all vanish."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None


def compose_with_series(poly: MultiPoly, series: Sequence[TruncSeries], order: int) -> TruncSeries:
    """Substitute one series per variable into a polynomial, truncated at ``order``.

    Every input series must be exact to at least ``order``; the result is
    exact to exactly ``order``.  Evaluation is Horner-style in the last
    variable, recursing over the remaining ones, entirely inside the
    truncated series ring.
    """
    if len(series) != poly.nvars:
        raise DimensionMismatch(
            f"{len(series)} series given for {poly.nvars} variables")
    for i, s in enumerate(series):
        if s.exact_to < order:
            raise PreconditionError(
                f"series for variable {i} is exact to {s.exact_to} < requested order {order}")
    svec = [s.truncate(order) for s in series]
    return _compose(poly.terms, svec, order)


def _compose(terms: dict, svec: list, order: int) -> TruncSeries:
    if not terms:
        return TruncSeries.constant(0, order)
    if not svec:
        # only the empty exponent tuple can remain
        return TruncSeries.constant(terms.get((), _ZERO), order)
    last = svec[-1]
    buckets: dict = {}
    for exps, coeff in terms.items():
        buckets.setdefault(exps[-1], {})[exps[:-1]] = coeff
    acc = TruncSeries.constant(0, order)
    for e in range(max(buckets), -1, -1):
        if not acc.is_zero:
            acc = acc * last
        bucket = buckets.get(e)
        if bucket is not None:
            acc = acc + _compose(bucket, svec[:-1], order)
    return acc
