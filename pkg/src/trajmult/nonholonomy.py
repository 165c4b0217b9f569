"""Span dimension and degree of nonholonomy of a system of vector fields.

The values at a point of all iterated brackets of order <= k span the
same space as the instantiated Hall-basis elements of order <= k, so the
enumeration walks a Hall set of the free Lie algebra on the generators
and tracks exact rank growth order by order.

Hall set convention: generators come first, ordered by input position; a
bracket [u, v] is a Hall element iff u < v in creation order and v is
either a generator or a bracket [v1, v2] with v1 <= u.  The order of a
bracket is its total number of generator occurrences.

Certification: rank reaching the ambient dimension is conclusive.  A
stagnating rank is not (it can resume growing later), so short of the
explicit nonholonomy bound for a full-dimensional span the result stays
uncertified.  The threshold uses d = n rather than the observed span
dimension: the true span can exceed the observed one, and the bound is
increasing in d, so only the d = n value dominates every possibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .bounds import VARIANT_CONSISTENT, bound_thm5
from .errors import DimensionMismatch, PreconditionError
from .lie import PolyVectorField, lie_bracket
from .poly import as_fraction


class VectorFieldSystem:
    """A nonempty family of polynomial vector fields on shared variables."""

    def __init__(self, fields: Sequence[PolyVectorField]):
        fields = tuple(fields)
        if not fields:
            raise PreconditionError("a vector field system must be nonempty")
        nvars = fields[0].nvars
        for f in fields:
            if f.nvars != nvars:
                raise DimensionMismatch("all fields in a system must share the variable count")
        self.fields = fields

    @property
    def nvars(self) -> int:
        return self.fields[0].nvars

    @property
    def coeff_degree(self) -> int:
        """Max coefficient degree across the system; 0 if all constant or zero."""
        return max(f.coeff_degree for f in self.fields)


@dataclass(frozen=True)
class NonholonomyResult:
    """d: observed span dimension; N: least order whose brackets reach it.

    When ``certified`` is False, N is a lower-bound candidate: it is exact
    unless brackets beyond ``explored_to`` enlarge the span.
    """

    d: int
    N: int
    rank_trace: tuple
    certified: bool
    explored_to: int
    bound_threshold: Optional[int] = None


class _HallElement:
    __slots__ = ("index", "order", "left", "right", "generator", "field")

    def __init__(self, index, order, field, generator=None, left=None, right=None):
        self.index = index
        self.order = order
        self.field = field
        self.generator = generator
        self.left = left
        self.right = right


def _hall_elements(sys: VectorFieldSystem, max_order: int) -> Iterator[_HallElement]:
    """Instantiated Hall elements in creation order, orders 1..max_order."""
    elements = []
    for i, f in enumerate(sys.fields):
        elem = _HallElement(len(elements), 1, f, generator=i)
        elements.append(elem)
        yield elem
    for order in range(2, max_order + 1):
        snapshot = list(elements)  # weights < order only
        for u in snapshot:
            for v in snapshot:
                if u.order + v.order != order or u.index >= v.index:
                    continue
                if v.generator is None and v.left.index > u.index:
                    continue
                field = lie_bracket(u.field, v.field)
                elem = _HallElement(len(elements), order, field, left=u, right=v)
                elements.append(elem)
                yield elem


def hall_brackets(sys: VectorFieldSystem, max_order: int) -> Iterator[tuple]:
    """Stream (order, field) for each Hall-basis bracket up to max_order.

    Order 1 yields the generators themselves.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    for elem in _hall_elements(sys, max_order):
        yield elem.order, elem.field


class _RankTracker:
    """Incremental exact rank of a growing set of rational vectors."""

    def __init__(self, width: int):
        self.width = width
        self.rows = []  # echelon rows keyed by leading column

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vector) -> bool:
        v = list(vector)
        for lead, row in self.rows:
            if v[lead] != 0:
                factor = v[lead] / row[lead]
                v = [a - factor * b for a, b in zip(v, row)]
        for col, a in enumerate(v):
            if a != 0:
                self.rows.append((col, v))
                self.rows.sort(key=lambda r: r[0])
                return True
        return False


def degree_of_nonholonomy(sys: VectorFieldSystem, basepoint: Sequence = None,
                          max_order: int = 6,
                          bound_variant: str = VARIANT_CONSISTENT) -> NonholonomyResult:
    """Exact span dimension and degree of nonholonomy at a point.

    Streams Hall brackets in increasing order, evaluates each at the
    basepoint, and updates an exact rank.  Stops as soon as the rank
    reaches the ambient dimension (then certified), otherwise explores
    through ``max_order`` and certifies only if that reaches the explicit
    nonholonomy bound threshold.
    """
    n = sys.nvars
    if basepoint is None:
        basepoint = (0,) * n
    point = tuple(as_fraction(v) for v in basepoint)
    if len(point) != n:
        raise DimensionMismatch(f"basepoint has length {len(point)}, expected {n}")
    if max_order < 1:
        raise ValueError("max_order must be at least 1")

    tracker = _RankTracker(n)
    trace = []
    current_order = 0
    full = False
    for order, field in hall_brackets(sys, max_order):
        if order != current_order:
            trace.extend([tracker.rank] * (order - current_order - 1))
            current_order = order
            trace.append(tracker.rank)
        if not field.is_zero:
            tracker.add(field.evaluate(point))
            trace[-1] = tracker.rank
        if tracker.rank == n:
            full = True
            break
    # orders past the last yielded bracket saw no new vectors
    trace.extend([tracker.rank] * ((current_order if full else max_order) - len(trace)))

    d = tracker.rank
    explored = len(trace)
    if d > 0:
        N = next(k + 1 for k, r in enumerate(trace) if r == d)
    else:
        N = 1  # trivial span is generated at order 1 already
    threshold = None
    certified = full
    if not certified and n >= 2 and sys.coeff_degree >= 1:
        threshold = bound_thm5(n, sys.coeff_degree, n, bound_variant)
        certified = explored >= threshold
    return NonholonomyResult(d=d, N=N, rank_trace=tuple(trace), certified=certified,
                             explored_to=explored, bound_threshold=threshold)
