"""Explicit worst-case bound formulas, evaluated exactly over Python ints.

Four families:

  * bound_thm3(n, p, q): multiplicity of a zero of a degree-p polynomial
    along a trajectory of a degree-q polynomial field in n variables.
  * bound_thm5(n, q, d): degree of nonholonomy of a system of degree-q
    fields whose brackets span a d-dimensional space.
  * bound_thm6, bound_thm7: the same two bounds after lifting a chain of
    m auxiliary functions of degree alpha; they reduce to replacing
    n -> n + m and q -> q + alpha in the right places, and bound_thm6
    degenerates to bound_thm3 at m = 0, alpha = 1.

The d > 2 nonholonomy formula admits two printed parenthesizations; the
default 'consistent' variant closes the parenthesis after the sum, which
matches the structurally parallel chain-lifted formula.  The 'literal'
variant closes it right after the power of two.  Preconditions are hard
errors, never silent clamps: the formulas are invalid outside them.
"""

from __future__ import annotations

from .errors import BoundDomainError

VARIANT_CONSISTENT = "consistent"
VARIANT_LITERAL = "literal"
_VARIANTS = (VARIANT_CONSISTENT, VARIANT_LITERAL)


def _require(condition: bool, name: str, message: str) -> None:
    if not condition:
        raise BoundDomainError(f"{name} requires {message}")


def _power_sum(lo: int, hi: int, exponent: int) -> int:
    return sum(k ** exponent for k in range(lo, hi + 1))


def bound_thm3(n: int, p: int, q: int) -> int:
    """2^(2n-1) * sum_{k=1}^{n} [p + (k-1)(q-1)]^(2n)."""
    _require(n >= 1, "bound_thm3", "n >= 1")
    _require(p >= n - 1, "bound_thm3", "p >= n - 1")
    _require(q >= 1, "bound_thm3", "q >= 1")
    return 2 ** (2 * n - 1) * sum((p + (k - 1) * (q - 1)) ** (2 * n) for k in range(1, n + 1))


def bound_thm5(n: int, q: int, d: int, variant: str = VARIANT_CONSISTENT) -> int:
    """Degree-of-nonholonomy bound; formula depends on whether d = 2 or d > 2."""
    _require(n >= 1, "bound_thm5", "n >= 1")
    _require(q >= 1, "bound_thm5", "q >= 1")
    _require(d >= 2, "bound_thm5", "d >= 2")
    if variant not in _VARIANTS:
        raise ValueError(f"unknown bound variant {variant!r}; use one of {_VARIANTS}")
    if d == 2:
        return 1 + 2 ** (2 * n - 1) * q ** (2 * n) * _power_sum(2, n + 1, 2 * n)
    s = _power_sum(4, n + 3, 2 * n)
    if variant == VARIANT_CONSISTENT:
        return 2 ** (d - 2) * (1 + 2 ** (2 * n * (d - 2) - 2) * q ** (2 * n) * s)
    return 2 ** (d - 2) * (1 + 2 ** (2 * n * (d - 2) - 2)) * q ** (2 * n) * s


def bound_thm6(n: int, m: int, p: int, q: int, alpha: int) -> int:
    """Multiplicity bound after lifting an order-m, degree-alpha chain."""
    _require(n >= 1, "bound_thm6", "n >= 1")
    _require(m >= 0, "bound_thm6", "m >= 0")
    _require(q >= 1, "bound_thm6", "q >= 1")
    _require(alpha >= 1, "bound_thm6", "alpha >= 1")
    _require(p >= n + m - 1, "bound_thm6", "p >= n + m - 1")
    nm = n + m
    step = q + alpha - 1
    return 2 ** (2 * nm - 1) * sum((p + (k - 1) * step) ** (2 * nm) for k in range(1, nm + 1))


def bound_thm7(n: int, m: int, q: int, alpha: int, d: int) -> int:
    """Nonholonomy bound after lifting an order-m, degree-alpha chain."""
    _require(n >= 1, "bound_thm7", "n >= 1")
    _require(m >= 0, "bound_thm7", "m >= 0")
    _require(q >= 1, "bound_thm7", "q >= 1")
    _require(alpha >= 1, "bound_thm7", "alpha >= 1")
    _require(d >= 2, "bound_thm7", "d >= 2")
    nm = n + m
    qa = q + alpha
    if d == 2:
        return 1 + 2 ** (2 * nm - 1) * qa ** (2 * nm) * _power_sum(2, nm + 1, 2 * nm)
    s = _power_sum(4, nm + 3, 2 * nm)
    return 2 ** (d - 2) * (1 + 2 ** (2 * nm * (d - 2) - 2) * qa ** (2 * nm) * s)
