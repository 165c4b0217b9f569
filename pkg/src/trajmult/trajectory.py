"""Trajectory expansion and the multiplicity decision procedure.

Two independent routes compute the order of vanishing of a polynomial P
restricted to the trajectory through a basepoint:

  * the series route expands the trajectory as an exact truncated power
    series (Picard iteration, one certified order gained per pass),
    composes P with it, and reads off the first nonzero coefficient;
  * the Lie route iterates the directional derivative of P along the
    field and evaluates each iterate at the basepoint, using the
    chain-rule identity  k! * [t^k] P(x(t)) = (L^k P)(basepoint).

When the explicit multiplicity bound B applies (polynomial field of
degree q >= 1, deg P >= n - 1), vanishing of everything through order B
certifies that P restricted to the trajectory is identically zero.  Both
routes honor the same certificate, so running both cross-checks the
implementation; a contradiction raises InternalInconsistencyError.

Non-autonomous rational systems  S_i(x,t) dx_i/dt = Q_i(x,t)  with
S_i(basepoint, 0) != 0 are handled by adjoining t as an extra variable
with derivative 1, which makes the system autonomous with rational right
sides.  For the Lie route (and for certification) denominators are
cleared instead: the field with x_i-component Q_i * prod_{j != i} S_j and
t-component prod_j S_j traverses the same curve up to an invertible time
reparametrization, which preserves the order of vanishing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import bound_thm3
from .errors import DimensionMismatch, InternalInconsistencyError, PreconditionError
from .lie import LieChain, PolyVectorField
from .poly import MultiPoly, as_fraction
from .series import TruncSeries, compose_with_series

DEFAULT_CAP = 512

STATUS_FINITE = "finite"
STATUS_IDENTICALLY_ZERO = "identically_zero"
STATUS_INCONCLUSIVE = "inconclusive"

METHOD_SERIES = "series_composition"
METHOD_LIE = "lie_chain"
METHOD_CROSS_CHECKED = "cross_checked"


# ----------------------------------------------------------------------
# systems


class AutonomousSystem:
    """dx/dt = field(x) with a rational basepoint where the field does not vanish."""

    def __init__(self, field: PolyVectorField, basepoint: Sequence = None):
        self.field = field
        n = field.nvars
        if basepoint is None:
            basepoint = (Fraction(0),) * n
        point = tuple(as_fraction(v) for v in basepoint)
        if len(point) != n:
            raise DimensionMismatch(
                f"basepoint has length {len(point)}, expected {n}")
        if all(v == 0 for v in field.evaluate(point)):
            raise PreconditionError(
                f"requires ξ(0) ≠ 0: the field vanishes at basepoint {tuple(map(str, point))}")
        self.basepoint = point

    @property
    def nvars(self) -> int:
        return self.field.nvars

    @property
    def poly_nvars(self) -> int:
        """Number of variables a restricted polynomial ranges over."""
        return self.nvars

    def lie_data(self):
        return self.field, self.basepoint

    def rhs(self):
        """(numerators, denominators-or-None, initial values) for the Picard kernel."""
        return list(self.field.components), [None] * self.nvars, list(self.basepoint)

    def full_series(self, xs):
        return list(xs)


class RationalSystem:
    """S_i(x, t) dx_i/dt = Q_i(x, t) with S_i nonzero at (basepoint, 0).

    S and Q are polynomials over the x variables plus t as the last
    variable.  Restricted polynomials range over the same n + 1 variables.
    """

    def __init__(self, S: Sequence[MultiPoly], Q: Sequence[MultiPoly], basepoint: Sequence = None):
        S = tuple(S)
        Q = tuple(Q)
        if len(S) != len(Q) or not S:
            raise DimensionMismatch("need one S_i and one Q_i per variable")
        n = len(S)
        for poly in itertools.chain(S, Q):
            if poly.nvars != n + 1:
                raise DimensionMismatch(
                    f"S_i and Q_i must be polynomials in the {n} variables plus t")
        if basepoint is None:
            basepoint = (Fraction(0),) * n
        point = tuple(as_fraction(v) for v in basepoint)
        if len(point) != n:
            raise DimensionMismatch(f"basepoint has length {len(point)}, expected {n}")
        at_start = point + (Fraction(0),)
        for i, s in enumerate(S):
            if s.evaluate(at_start) == 0:
                raise PreconditionError(
                    f"requires S_i(0, 0) ≠ 0: S_{i + 1} vanishes at the basepoint")
        self.S = S
        self.Q = Q
        self.basepoint = point

    @property
    def nvars(self) -> int:
        return len(self.S)

    @property
    def poly_nvars(self) -> int:
        return self.nvars + 1

    def cleared_field(self) -> PolyVectorField:
        """Denominator-cleared polynomial field on (x, t).

        x_i-component: Q_i * prod_{j != i} S_j; t-component: prod_j S_j.
        Its trajectory is a reparametrization of the original one.
        """
        n = self.nvars
        comps = []
        for i in range(n):
            prod = self.Q[i]
            for j in range(n):
                if j != i:
                    prod = prod * self.S[j]
            comps.append(prod)
        total = MultiPoly.constant(n + 1, 1)
        for s in self.S:
            total = total * s
        comps.append(total)
        return PolyVectorField(comps)

    def lie_data(self):
        return self.cleared_field(), self.basepoint + (Fraction(0),)

    def rhs(self):
        n = self.nvars
        one = MultiPoly.constant(n + 1, 1)
        numerators = list(self.Q) + [one]
        denominators = list(self.S) + [None]
        consts = list(self.basepoint) + [Fraction(0)]
        return numerators, denominators, consts

    def full_series(self, xs):
        """x series plus the series of t itself, for composing (x, t) polynomials."""
        order = xs[0].exact_to
        return list(xs) + [TruncSeries.identity(order)]


System = object  # AutonomousSystem | RationalSystem


# ----------------------------------------------------------------------
# series expansion


def _picard(numerators, denominators, consts, order: int) -> list:
    """Solve dx_i/dt = N_i(x) / D_i(x) exactly to the requested order.

    Each pass composes the right side with the current iterate (exact to
    k), divides, and antidifferentiates, which certifies order k + 1.
    """
    current = [TruncSeries((c,)) for c in consts]
    for step in range(order):
        rhs = []
        for i, numer in enumerate(numerators):
            f = compose_with_series(numer, current, step)
            denom = denominators[i]
            if denom is not None:
                f = f * compose_with_series(denom, current, step).reciprocal()
            rhs.append(f)
        current = [f.integral(c) for f, c in zip(rhs, consts)]
    return current


def expand_trajectory(system, order: int) -> list:
    """Exact trajectory series x_1(t), ..., x_n(t) through the basepoint.

    Each returned series is exact to ``order`` and starts at the
    basepoint.  ``order`` = 0 returns the constants.
    """
    if order < 0:
        raise ValueError("expansion order must be nonnegative")
    numerators, denominators, consts = system.rhs()
    solved = _picard(numerators, denominators, consts, order)
    return solved[:system.nvars]


def ode_residual(system, xs: Sequence[TruncSeries], order: int) -> list:
    """Residual series of the ODE, one per variable, through ``order``.

    For autonomous systems: x_i' - field_i(x).  For rational systems:
    S_i(x, t) x_i' - Q_i(x, t).  A correct expansion to order T leaves
    all residual coefficients through T - 1 equal to zero.
    """
    full = system.full_series(xs)
    out = []
    if isinstance(system, AutonomousSystem):
        for i, comp in enumerate(system.field.components):
            lhs = xs[i].derivative().truncate(order)
            out.append(lhs - compose_with_series(comp, full, order))
    else:
        for i in range(system.nvars):
            s = compose_with_series(system.S[i], full, order)
            q = compose_with_series(system.Q[i], full, order)
            out.append(s * xs[i].derivative().truncate(order) - q)
    return out


# ----------------------------------------------------------------------
# certification


def certification_threshold(system, poly: MultiPoly) -> Optional[int]:
    """Order B such that vanishing through B certifies identical vanishing.

    Autonomous systems use the explicit multiplicity bound directly.
    Rational systems use it on the denominator-cleared field in n + 1
    variables (same multiplicity, reparametrized time).  Returns None
    when the bound's degree preconditions fail, e.g. for constant fields.
    """
    p = poly.total_degree
    if p is None:
        return None
    if isinstance(system, AutonomousSystem):
        n = system.nvars
        q = system.field.coeff_degree
    else:
        n = system.nvars + 1
        q = system.cleared_field().coeff_degree
    if q >= 1 and p >= n - 1:
        return bound_thm3(n, p, q)
    return None


# ----------------------------------------------------------------------
# results


@dataclass(frozen=True)
class MultiplicityResult:
    """Outcome of a multiplicity computation.

    status is one of the STATUS_* constants.  ``mu`` is set for finite
    results; ``certified_bound`` for identically-zero results (the order
    through which vanishing is established); ``checked_to`` for
    inconclusive ones.  ``bound_used`` records the certificate threshold
    when one applied.  ``stabilized_at`` is the chain index at which the
    Lie route hit the zero polynomial, if it did.
    """

    status: str
    method: str
    mu: Optional[int] = None
    certified_bound: Optional[int] = None
    checked_to: Optional[int] = None
    bound_used: Optional[int] = None
    stabilized_at: Optional[int] = None
    series: Optional[TruncSeries] = None

    def key(self):
        """The semantic content compared across methods."""
        return (self.status, self.mu, self.certified_bound, self.checked_to)

    def __str__(self) -> str:
        if self.status == STATUS_FINITE:
            return f"Finite({self.mu})"
        if self.status == STATUS_IDENTICALLY_ZERO:
            return f"IdenticallyZero({self.certified_bound})"
        return f"Inconclusive({self.checked_to})"


def _zero_poly_result(method: str) -> MultiplicityResult:
    return MultiplicityResult(
        status=STATUS_IDENTICALLY_ZERO, method=method,
        certified_bound=0, stabilized_at=0)


def _check_poly(system, poly: MultiPoly) -> None:
    expected = system.poly_nvars
    if poly.nvars != expected:
        raise DimensionMismatch(
            f"polynomial has {poly.nvars} variables, expected {expected} "
            f"(system variables{' plus t' if expected != system.nvars else ''})")


def _target_order(cap: int, bound: Optional[int], certify: bool) -> int:
    if bound is None:
        return cap
    if certify:
        return bound
    return min(cap, bound)


# ----------------------------------------------------------------------
# the two methods


def multiplicity_series(poly: MultiPoly, system, cap: int = DEFAULT_CAP,
                        certificate: Optional[int] = None,
                        certify: bool = False) -> MultiplicityResult:
    """Multiplicity via trajectory expansion and composition."""
    _check_poly(system, poly)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if poly.is_zero:
        return _zero_poly_result(METHOD_SERIES)
    bound = certificate if certificate is not None else certification_threshold(system, poly)
    target = _target_order(cap, bound, certify)
    xs = expand_trajectory(system, target)
    restricted = compose_with_series(poly, system.full_series(xs), target)
    mu = restricted.first_nonzero()
    if mu is not None:
        return MultiplicityResult(status=STATUS_FINITE, method=METHOD_SERIES,
                                  mu=mu, bound_used=bound, series=restricted)
    if bound is not None and target >= bound:
        return MultiplicityResult(status=STATUS_IDENTICALLY_ZERO, method=METHOD_SERIES,
                                  certified_bound=bound, bound_used=bound, series=restricted)
    return MultiplicityResult(status=STATUS_INCONCLUSIVE, method=METHOD_SERIES,
                              checked_to=target, bound_used=bound, series=restricted)


def multiplicity_lie(poly: MultiPoly, system, cap: int = DEFAULT_CAP,
                     certificate: Optional[int] = None,
                     certify: bool = False) -> MultiplicityResult:
    """Multiplicity via iterated directional derivatives at the basepoint.

    Early exit: if some chain entry is the zero polynomial while all
    earlier values at the basepoint vanished, the restriction is a
    polynomial in t that vanishes to its own degree, hence identically
    zero.  That certificate is algebraic and does not depend on a bound.
    """
    _check_poly(system, poly)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if poly.is_zero:
        return _zero_poly_result(METHOD_LIE)
    field, point = system.lie_data()
    bound = certificate if certificate is not None else certification_threshold(system, poly)
    target = _target_order(cap, bound, certify)
    chain = LieChain(field, poly)
    for k in range(target + 1):
        entry = chain[k]
        if entry.evaluate(point) != 0:
            return MultiplicityResult(status=STATUS_FINITE, method=METHOD_LIE,
                                      mu=k, bound_used=bound)
        if entry.is_zero:
            certified = bound if bound is not None else k
            return MultiplicityResult(status=STATUS_IDENTICALLY_ZERO, method=METHOD_LIE,
                                      certified_bound=certified, bound_used=bound,
                                      stabilized_at=k)
    if bound is not None and target >= bound:
        return MultiplicityResult(status=STATUS_IDENTICALLY_ZERO, method=METHOD_LIE,
                                  certified_bound=bound, bound_used=bound)
    return MultiplicityResult(status=STATUS_INCONCLUSIVE, method=METHOD_LIE,
                              checked_to=target, bound_used=bound)


# ----------------------------------------------------------------------
# dispatcher


def _merge(series_result: MultiplicityResult, lie_result: MultiplicityResult) -> MultiplicityResult:
    if series_result.key() == lie_result.key():
        return MultiplicityResult(
            status=series_result.status, method=METHOD_CROSS_CHECKED,
            mu=series_result.mu, certified_bound=series_result.certified_bound,
            checked_to=series_result.checked_to, bound_used=series_result.bound_used,
            stabilized_at=lie_result.stabilized_at, series=series_result.series)
    statuses = {series_result.status, lie_result.status}
    if statuses == {STATUS_IDENTICALLY_ZERO, STATUS_INCONCLUSIVE}:
        # One route certified, the other honestly ran out of budget; no
        # contradiction.  Keep the certificate.
        winner = series_result if series_result.status == STATUS_IDENTICALLY_ZERO else lie_result
        return MultiplicityResult(
            status=STATUS_IDENTICALLY_ZERO, method=METHOD_CROSS_CHECKED,
            certified_bound=winner.certified_bound, bound_used=winner.bound_used,
            stabilized_at=lie_result.stabilized_at, series=series_result.series)
    raise InternalInconsistencyError(
        f"methods disagree: series gave {series_result}, chain gave {lie_result}; "
        "this is an implementation bug")


def multiplicity(poly: MultiPoly, system, method: str = "both", cap: int = DEFAULT_CAP,
                 certify: bool = False, certificate: Optional[int] = None) -> MultiplicityResult:
    """Multiplicity of the zero of ``poly`` restricted to the trajectory.

    ``method`` is "series", "lie", or "both"; "both" runs the two
    independent routes and fails loudly if their answers contradict.
    ``certify`` lifts the expansion cap to the certificate threshold,
    which can be astronomically large; without it, orders beyond ``cap``
    yield an honest inconclusive result.
    """
    if method == "series":
        return multiplicity_series(poly, system, cap, certificate, certify)
    if method == "lie":
        return multiplicity_lie(poly, system, cap, certificate, certify)
    if method != "both":
        raise ValueError(f"unknown method {method!r}; use 'series', 'lie', or 'both'")
    return _merge(multiplicity_series(poly, system, cap, certificate, certify),
                  multiplicity_lie(poly, system, cap, certificate, certify))
