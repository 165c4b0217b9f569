"""Exact multiplicities of polynomial zeros along vector-field trajectories.

The package computes, in exact rational arithmetic:

  * the order of vanishing of a polynomial restricted to the trajectory
    of a polynomial (or denominator-cleared rational) vector field, by
    two independent methods that cross-check each other;
  * certified identically-zero verdicts via explicit worst-case bounds;
  * degrees of nonholonomy of systems of vector fields via Hall-basis
    bracket enumeration and exact rank tracking;
  * the same questions for coefficients given through a chain of
    auxiliary functions, by lifting to an augmented polynomial system.
"""

from .bounds import (VARIANT_CONSISTENT, VARIANT_LITERAL, bound_thm3, bound_thm5,
                     bound_thm6, bound_thm7)
from .errors import (BoundDomainError, DimensionMismatch, InternalInconsistencyError,
                     ParseError, PreconditionError, TrajmultError)
from .lie import (LieChain, PolyVectorField, iterated_lie_chain, lie_bracket,
                  lie_derivative)
from .noetherian import (NoetherianChain, NoetherianField, lift_field, lift_system,
                         noetherian_multiplicity, noetherian_nonholonomy)
from .nonholonomy import (NonholonomyResult, VectorFieldSystem, degree_of_nonholonomy,
                          hall_brackets)
from .poly import MultiPoly, parse_polynomial, poly_to_string
from .series import TruncSeries, compose_with_series
from .trajectory import (DEFAULT_CAP, METHOD_CROSS_CHECKED, METHOD_LIE, METHOD_SERIES,
                         STATUS_FINITE, STATUS_IDENTICALLY_ZERO, STATUS_INCONCLUSIVE,
                         AutonomousSystem, MultiplicityResult, RationalSystem,
                         certification_threshold, expand_trajectory, multiplicity,
                         multiplicity_lie, multiplicity_series, ode_residual)

__version__ = "0.1.0"

__all__ = [
    "AutonomousSystem", "BoundDomainError", "DEFAULT_CAP", "DimensionMismatch",
    "InternalInconsistencyError", "LieChain", "METHOD_CROSS_CHECKED", "METHOD_LIE",
    "METHOD_SERIES", "MultiPoly", "MultiplicityResult", "NoetherianChain",
    "NoetherianField", "NonholonomyResult", "ParseError", "PolyVectorField",
    "PreconditionError", "RationalSystem", "STATUS_FINITE", "STATUS_IDENTICALLY_ZERO",
    "STATUS_INCONCLUSIVE", "TrajmultError", "TruncSeries", "VARIANT_CONSISTENT",
    "VARIANT_LITERAL", "VectorFieldSystem", "bound_thm3", "bound_thm5", "bound_thm6",
    "bound_thm7", "certification_threshold", "compose_with_series",
    "degree_of_nonholonomy", "expand_trajectory", "hall_brackets",
    "iterated_lie_chain", "lie_bracket", "lie_derivative", "lift_field",
    "lift_system", "multiplicity", "multiplicity_lie", "multiplicity_series",
    "noetherian_multiplicity", "noetherian_nonholonomy", "ode_residual",
    "parse_polynomial", "poly_to_string",
]
