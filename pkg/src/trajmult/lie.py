"""Lie derivatives along polynomial vector fields, and Lie brackets.

The directional derivative of P along the field with components
(c_1, ..., c_n) is sum_j c_j * dP/dx_j.  Iterating it k times gives the
k-th derivative of P along the flow; when the field components have
degree q >= 1 and P has degree p, the k-th iterate has degree at most
p + k(q - 1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .poly import MultiPoly

_ZERO = Fraction(0)


class PolyVectorField:
    """A polynomial vector field: one component polynomial per variable."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[MultiPoly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        nvars = comps[0].nvars
        if len(comps) != nvars:
            raise DimensionMismatch(
                f"{len(comps)} components for polynomials in {nvars} variables")
        for c in comps:
            if c.nvars != nvars:
                raise DimensionMismatch("field components must share the variable count")
        self.components = comps

    @classmethod
    def zero(cls, nvars: int) -> "PolyVectorField":
        return cls([MultiPoly.zero(nvars)] * nvars)

    @property
    def nvars(self) -> int:
        return len(self.components)

    @property
    def coeff_degree(self) -> int:
        """Max component degree; 0 for the zero field."""
        degree = 0
        for c in self.components:
            d = c.total_degree
            if d is not None and d > degree:
                degree = d
        return degree

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def evaluate(self, point) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def scale(self, value) -> "PolyVectorField":
        return PolyVectorField([c * value for c in self.components])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __repr__(self) -> str:
        return f"PolyVectorField({list(self.components)!r})"


def lie_derivative(field: PolyVectorField, poly: MultiPoly) -> MultiPoly:
    """Directional derivative of ``poly`` along ``field``."""
    if field.nvars != poly.nvars:
        raise DimensionMismatch(
            f"field on {field.nvars} variables applied to a {poly.nvars}-variable polynomial")
    acc: dict = {}
    for j, comp in enumerate(field.components):
        if comp.is_zero:
            continue
        dp = poly.partial_derivative(j)
        if dp.is_zero:
            continue
        # accumulate comp * dp without building intermediate polynomials
        for e1, c1 in dp.terms.items():
            for e2, c2 in comp.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(e, _ZERO) + c1 * c2
                if s == 0:
                    acc.pop(e, None)
                else:
                    acc[e] = s
    return MultiPoly(poly.nvars, acc, _trusted=True)


class LieChain:
    """Lazily extended sequence P, LP, L^2 P, ... cached as computed.

    Multiplicity searches read increasing prefixes, so entries are kept
    once computed.
    """

    def __init__(self, field: PolyVectorField, poly: MultiPoly):
        if field.nvars != poly.nvars:
            raise DimensionMismatch("field and polynomial variable counts differ")
        self.field = field
        self._entries = [poly]

    def __getitem__(self, k: int) -> MultiPoly:
        if k < 0:
            raise IndexError("chain index must be nonnegative")
        while len(self._entries) <= k:
            self._entries.append(lie_derivative(self.field, self._entries[-1]))
        return self._entries[k]

    def prefix(self, kmax: int) -> list:
        self[kmax]
        return self._entries[:kmax + 1]


def iterated_lie_chain(field: PolyVectorField, poly: MultiPoly, kmax: int) -> list:
    """[P, LP, ..., L^kmax P] as a list of polynomials."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    return LieChain(field, poly).prefix(kmax)


def lie_bracket(a: PolyVectorField, b: PolyVectorField) -> PolyVectorField:
    """Bracket [a, b]: component i is a(b_i) - b(a_i)."""
    if a.nvars != b.nvars:
        raise DimensionMismatch("bracket of fields on different variable counts")
    return PolyVectorField([
        lie_derivative(a, bi) - lie_derivative(b, ai)
        for ai, bi in zip(a.components, b.components)
    ])
