"""Hypotrochoid geometry of the maximum-modulus problem.

Dropping the middle coefficient of a trinomial leaves the closed curve

    z(x) = r1*e^(i(t1 - (l2-l1)*x)) + r3*e^(i(t3 + (l3-l2)*x)),

a hypotrochoid; the maximum modulus of the full trinomial is the largest
distance from a point of this curve to -r2*e^(i*t2).  When
r1 : r3 = |l3-l2| : |l2-l1| the tracing point sits on the rolling circle and
the curve degenerates to a hypocycloid with |l3-l1|/d cusps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .maxmod import max_points_global
from .spectrum import SpectrumError, Trinomial

__all__ = ["Curve", "hypotrochoid_sample", "curve_point", "farthest_points"]


@dataclass(frozen=True)
class Curve:
    """Parameter-ordered samples of one period of the curve (not arc length)."""

    samples: tuple[tuple[float, complex], ...]
    closed: bool
    cusp_count: int | None


def curve_point(trinomial: Trinomial, x: float) -> complex:
    """Point of the outer-coefficient curve at parameter x."""
    ts, _ = trinomial.sorted_by_frequency()
    return ts.r1 * cmath.exp(1j * (ts.t1 - (ts.lambda2 - ts.lambda1) * x)) + ts.r3 * cmath.exp(
        1j * (ts.t3 + (ts.lambda3 - ts.lambda2) * x)
    )


def _is_hypocycloid(r1: float, r3: float, k: int, l: int) -> bool:
    # exact rational test first (floats are rationals), then a 1e-9 fallback
    if Fraction(r1) * k == Fraction(r3) * l:
        return True
    return abs(k * r1 - l * r3) <= 1e-9 * max(k * r1, l * r3)


def hypotrochoid_sample(trinomial: Trinomial, n: int) -> Curve:
    """n uniform samples of the curve over the parameter period (-pi, pi].

    cusp_count is |l3-l1|/d in the hypocycloid case and None otherwise.
    """
    if n < 16:
        raise SpectrumError(f"need at least 16 samples, got {n}")
    ts, _ = trinomial.sorted_by_frequency()
    d = gcd(ts.lambda2 - ts.lambda1, ts.lambda3 - ts.lambda2)
    k = (ts.lambda2 - ts.lambda1) // d
    l = (ts.lambda3 - ts.lambda2) // d
    cusps = (ts.lambda3 - ts.lambda1) // d if _is_hypocycloid(ts.r1, ts.r3, k, l) else None
    samples = tuple(
        (x, curve_point(trinomial, x))
        for x in (-math.pi + 2.0 * math.pi * (j + 1) / n for j in range(n))
    )
    return Curve(samples=samples, closed=True, cusp_count=cusps)


def farthest_points(
    trinomial: Trinomial, center: complex | None = None
) -> list[tuple[float, float]]:
    """Curve parameters and distances of the points farthest from ``center``.

    With the default center -r2*e^(i*t2) this is exactly the maximum-modulus
    problem for the trinomial itself; an arbitrary nonzero center is allowed
    as an extension and is treated by replacing the middle coefficient with
    -center.  One or two points are returned.
    """
    ts, _ = trinomial.sorted_by_frequency()
    if center is None:
        center = -ts.r2 * cmath.exp(1j * ts.t2)
        assembled = ts
    else:
        if center == 0:
            raise SpectrumError("center must be nonzero; the problem degenerates to a binomial")
        middle = -center
        assembled = Trinomial(
            ts.lambda1, ts.lambda2, ts.lambda3,
            ts.r1, abs(middle), ts.r3,
            ts.t1, cmath.phase(middle), ts.t3,
        )
    res = max_points_global(assembled)
    return [(x, abs(curve_point(trinomial, x) - center)) for x, _ in res.points]
