"""Lifting chains of auxiliary functions to augmented polynomial systems.

A chain of order m and degree alpha is a tuple of function germs
f_1, ..., f_m whose partial derivatives are polynomials in (x, f):
df_i/dx_j = g_ij(x, f).  A function P(x, f(x)) with P polynomial is then
handled by adding one variable per chain entry: the lifted field gets
df_i/dt = sum_j g_ij * dx_j/dt, so its trajectories carry (x(t), f(x(t)))
exactly, and multiplicity and nonholonomy questions delegate to the core
machinery on n + m variables.

The chain is presented as (g, f0): the germ values f(0) are required
input because the g_ij alone do not determine f.  Integrability of the
mixed partials is the caller's responsibility; along a single trajectory
the lifted system is well posed regardless.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .bounds import VARIANT_CONSISTENT, bound_thm6
from .errors import DimensionMismatch
from .lie import PolyVectorField
from .nonholonomy import NonholonomyResult, VectorFieldSystem, degree_of_nonholonomy
from .poly import MultiPoly, as_fraction
from .trajectory import DEFAULT_CAP, AutonomousSystem, MultiplicityResult, multiplicity


class NoetherianChain:
    """m germs over n base variables, presented by (g, f0).

    ``g`` is an m x n matrix of polynomials in the n + m variables
    (x_1..x_n, f_1..f_m); ``f0`` holds the germ values at the origin.
    m = 0 (the empty chain) is accepted and degenerates to the plain
    polynomial setting.
    """

    def __init__(self, n: int, g: Sequence[Sequence[MultiPoly]], f0: Sequence):
        if n < 1:
            raise ValueError("need at least one base variable")
        rows = tuple(tuple(row) for row in g)
        values = tuple(as_fraction(v) for v in f0)
        m = len(rows)
        if len(values) != m:
            raise DimensionMismatch(f"{len(values)} germ values for a chain of order {m}")
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch(f"each chain row needs {n} entries, got {len(row)}")
            for entry in row:
                if entry.nvars != n + m:
                    raise DimensionMismatch(
                        f"chain entries must be polynomials in {n + m} variables")
        self.n = n
        self.m = m
        self.g = rows
        self.f0 = values

    @property
    def alpha(self) -> int:
        """Max degree of the chain entries, at least 1 by definition."""
        best = 1
        for row in self.g:
            for entry in row:
                d = entry.total_degree
                if d is not None and d > best:
                    best = d
        return best

    def augmented_basepoint(self) -> tuple:
        return (Fraction(0),) * self.n + self.f0


class NoetherianField:
    """A vector field whose n coefficients are polynomials in (x, f)."""

    def __init__(self, chain: NoetherianChain, Q: Sequence[MultiPoly]):
        Q = tuple(Q)
        if len(Q) != chain.n:
            raise DimensionMismatch(f"need {chain.n} field coefficients, got {len(Q)}")
        for entry in Q:
            if entry.nvars != chain.n + chain.m:
                raise DimensionMismatch(
                    f"field coefficients must be polynomials in {chain.n + chain.m} variables")
        self.chain = chain
        self.Q = Q

    @property
    def q(self) -> int:
        degree = 0
        for entry in self.Q:
            d = entry.total_degree
            if d is not None and d > degree:
                degree = d
        return degree


def lift_field(nf: NoetherianField) -> PolyVectorField:
    """Augmented field on n + m variables.

    x_j-components are the Q_j; the f_i-component is sum_j g_ij * Q_j,
    so the coefficient degree is at most q + alpha.
    """
    chain = nf.chain
    total = chain.n + chain.m
    comps = list(nf.Q)
    for i in range(chain.m):
        acc = MultiPoly.zero(total)
        for j in range(chain.n):
            acc = acc + chain.g[i][j] * nf.Q[j]
        comps.append(acc)
    return PolyVectorField(comps)


def noetherian_multiplicity(psi: MultiPoly, nf: NoetherianField, cap: int = DEFAULT_CAP,
                            method: str = "both", certify: bool = False) -> MultiplicityResult:
    """Multiplicity of psi(x, f(x)) along the trajectory through the origin.

    Delegates to the trajectory machinery on the lifted field with
    basepoint (0, f0).  The certificate threshold is the chain-lifted
    multiplicity bound with the stated degrees: recomputed deg(psi), the
    field degree clamped up to 1 (a degree-0 coefficient is of degree not
    exceeding 1, and the formula requires q >= 1), and the chain degree.
    """
    chain = nf.chain
    if psi.nvars != chain.n + chain.m:
        raise DimensionMismatch(
            f"psi must be a polynomial in {chain.n + chain.m} variables")
    system = AutonomousSystem(lift_field(nf), chain.augmented_basepoint())
    certificate: Optional[int] = None
    p = psi.total_degree
    if p is not None and p >= chain.n + chain.m - 1:
        certificate = bound_thm6(chain.n, chain.m, p, max(1, nf.q), chain.alpha)
    return multiplicity(psi, system, method=method, cap=cap, certify=certify,
                        certificate=certificate)


def lift_system(chain: NoetherianChain, Qs: Sequence[Sequence[MultiPoly]]) -> VectorFieldSystem:
    """Lift each coefficient tuple to an augmented field; bundle as a system."""
    return VectorFieldSystem([lift_field(NoetherianField(chain, Q)) for Q in Qs])


def noetherian_nonholonomy(chain: NoetherianChain, Qs: Sequence[Sequence[MultiPoly]],
                           max_order: int = 6,
                           bound_variant: str = VARIANT_CONSISTENT) -> NonholonomyResult:
    """Degree of nonholonomy of the lifted system at (0, f0)."""
    system = lift_system(chain, Qs)
    return degree_of_nonholonomy(system, chain.augmented_basepoint(), max_order, bound_variant)
