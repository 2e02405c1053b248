"""Exposed and extreme points of the unit ball of a three-exponential span.

A norm-one element is exposed exactly when it is a unimodular multiple of a
single exponential or a trinomial attaining modulus 1 at two points modulo
2*pi/d; it is extreme exactly when it is such a monomial or a trinomial for
which 1 - |P|^2 has total zero multiplicity four over one period (two double
zeros, or one quadruple zero).  No binomial is extreme.

Reconstruction: a trinomial that attains its maximum modulus at two given
points is pinned down by its values there, via a 3-equation linear system in
the signed coefficients after translating the midpoint to the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .maxmod import (
    evaluate,
    max_points_global,
    modulus_squared_trinomial,
)
from .spectrum import TWO_PI, SpectrumError, Trinomial

__all__ = [
    "NoSolution",
    "SingularConfiguration",
    "UnitBallPoint",
    "ExtremalEvidence",
    "ExtremalClass",
    "unit_ball_point",
    "classify_unit_ball_point",
    "reconstruct_from_two_points",
    "parabola_invariant",
]

_ZERO_COEFF_REL = 1e-12


class NoSolution(ValueError):
    """The point data is not realised by any trinomial of the requested kind."""


class SingularConfiguration(ValueError):
    """The reconstruction system degenerates (a sine factor vanishes)."""


@dataclass(frozen=True)
class UnitBallPoint:
    """Element of the span, allowing zero coefficients, with its sup norm."""

    frequencies: tuple[int, int, int]
    moduli: tuple[float, float, float]
    phases: tuple[float, float, float]
    sup_norm: float

    @property
    def kind(self) -> str:
        threshold = _ZERO_COEFF_REL * max(self.moduli)
        n = sum(1 for r in self.moduli if r > threshold)
        return {1: "Monomial", 2: "Binomial", 3: "Trinomial"}.get(n, "Zero")


@dataclass(frozen=True)
class ExtremalEvidence:
    max_point_count: int | None
    zero_multiplicity_sum: int | None


@dataclass(frozen=True)
class ExtremalClass:
    exposed: bool
    extreme: bool
    evidence: ExtremalEvidence


def unit_ball_point(
    frequencies: tuple[int, int, int],
    moduli: tuple[float, float, float],
    phases: tuple[float, float, float],
) -> UnitBallPoint:
    """Build a point of the span and compute its sup norm."""
    if len(set(frequencies)) != 3:
        raise SpectrumError(f"frequencies must be pairwise distinct, got {frequencies}")
    if any(r < 0.0 for r in moduli) or max(moduli) <= 0.0:
        raise SpectrumError(f"moduli must be nonnegative with at least one positive, got {moduli}")
    threshold = _ZERO_COEFF_REL * max(moduli)
    live = [j for j in range(3) if moduli[j] > threshold]
    if len(live) == 3:
        sup = max_points_global(Trinomial(*frequencies, *moduli, *phases)).value
    elif len(live) == 2:
        sup = moduli[live[0]] + moduli[live[1]]
    else:
        sup = moduli[live[0]]
    return UnitBallPoint(tuple(frequencies), tuple(moduli), tuple(phases), sup)


def _zero_multiplicity_sum(trinomial: Trinomial, samples: int = 4096) -> int:
    """Total multiplicity of the zeros of sup^2 - |P|^2 over one period.

    Zeros are located from a dense sample (local minima of the gap) and
    polished by golden-section; each zero is double unless the second
    derivative vanishes at the tolerance scale, in which case the fourth
    derivative must confirm a quadruple zero.
    """
    ts, _ = trinomial.sorted_by_frequency()
    d = gcd(ts.lambda2 - ts.lambda1, ts.lambda3 - ts.lambda2)
    period = TWO_PI / d
    res = max_points_global(trinomial)
    sup_sq = res.value**2

    xs = np.linspace(0.0, period, samples, endpoint=False)
    gap = sup_sq - np.abs(evaluate(trinomial, xs)) ** 2
    f = trinomial.frequencies
    r = trinomial.moduli
    scale2 = 2.0 * sum(
        r[a] * r[b] * (f[a] - f[b]) ** 2 for a in range(3) for b in range(a + 1, 3)
    )

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0

    def polish(x0: float) -> float:
        a = x0 - period / samples
        b = x0 + period / samples
        for _ in range(80):
            h = b - a
            c = b - inv_phi * h
            e = a + inv_phi * h
            gc = sup_sq - modulus_squared_trinomial(trinomial, c)
            ge = sup_sq - modulus_squared_trinomial(trinomial, e)
            if gc < ge:
                b = e
            else:
                a = c
        return 0.5 * (a + b)

    zeros: list[float] = []
    total = 0
    zero_tol = 1e-8 * max(sup_sq, 1.0)
    for i in range(samples):
        before = gap[(i - 1) % samples]
        after = gap[(i + 1) % samples]
        if not (gap[i] <= before and gap[i] <= after):
            continue
        if gap[i] > 1e-4 * max(sup_sq, 1.0):
            continue
        x = polish(float(xs[i]))
        if sup_sq - modulus_squared_trinomial(trinomial, x) > zero_tol:
            continue
        folded = x % period
        if any(min(abs(folded - z), period - abs(folded - z)) < 1e-4 * period for z in zeros):
            continue
        zeros.append(folded)
        second = -modulus_squared_trinomial(trinomial, x, 2)
        if second > 1e-6 * scale2:
            total += 2
        else:
            fourth = -modulus_squared_trinomial(trinomial, x, 4)
            if fourth <= 0.0:
                raise SpectrumError(
                    f"zero of 1 - |P|^2 at {x} has no definite multiplicity"
                )
            total += 4
    return total


def classify_unit_ball_point(
    point: UnitBallPoint, norm_tol: float = 1e-6
) -> ExtremalClass:
    """Decide whether a norm-one element is exposed and/or extreme.

    The element must be normalised: its sup norm may differ from 1 by at
    most ``norm_tol``.  Monomials are both; binomials are neither; a
    trinomial is exposed exactly when it attains its maximum at two points
    modulo 2*pi/d and extreme exactly when the zero multiplicities of
    1 - |P|^2 sum to four.
    """
    if abs(point.sup_norm - 1.0) > norm_tol:
        raise SpectrumError(
            f"classification needs sup norm 1, got {point.sup_norm}"
        )
    kind = point.kind
    if kind == "Monomial":
        return ExtremalClass(True, True, ExtremalEvidence(None, None))
    if kind == "Binomial":
        return ExtremalClass(False, False, ExtremalEvidence(None, None))
    trinomial = Trinomial(*point.frequencies, *point.moduli, *point.phases)
    res = max_points_global(trinomial)
    count = len(res.points)
    zsum = _zero_multiplicity_sum(trinomial)
    return ExtremalClass(
        exposed=count == 2,
        extreme=zsum == 4,
        evidence=ExtremalEvidence(max_point_count=count, zero_multiplicity_sum=zsum),
    )


def reconstruct_from_two_points(
    frequencies: tuple[int, int, int],
    x: float,
    y: float,
    value_x: complex,
    value_y: complex,
) -> Trinomial:
    """The unique trinomial attaining its maximum modulus at x and y with the
    given values, when one exists.

    After translating the midpoint of {x, y} to the origin and rotating the
    value phases to opposite angles, the signed coefficients solve a linear
    system; the candidate is then verified to actually attain its maximum at
    the two points.  Raises SingularConfiguration when a sine factor of the
    system vanishes and NoSolution when the data is inconsistent.
    """
    if len(set(frequencies)) != 3:
        raise SpectrumError(f"frequencies must be pairwise distinct, got {frequencies}")
    rho_x, rho_y = abs(value_x), abs(value_y)
    if rho_x <= 0.0 or rho_y <= 0.0:
        raise NoSolution("values at the maximum points must be nonzero")
    if abs(rho_x - rho_y) > 1e-9 * max(rho_x, rho_y):
        raise NoSolution(f"values must share one modulus, got {rho_x} and {rho_y}")
    lams = sorted(frequencies)
    d = gcd(lams[1] - lams[0], lams[2] - lams[1])
    k = (lams[1] - lams[0]) // d
    l = (lams[2] - lams[1]) // d
    period = TWO_PI / d
    if abs(math.remainder(x - y, period)) < 1e-9:
        raise SpectrumError("the two points must differ modulo 2*pi/d")

    # pass to the model spectrum (-k, 0, l): modulate out the middle
    # frequency, rescale x by d
    ux = value_x * cmath.exp(-1j * lams[1] * x)
    uy = value_y * cmath.exp(-1j * lams[1] * y)
    wx, wy = d * x, d * y
    centre = 0.5 * (wx + wy)
    xhat = 0.5 * (wx - wy)
    theta = cmath.phase(ux)
    zeta = cmath.phase(uy)
    phi = 0.5 * (theta + zeta)
    that = 0.5 * (theta - zeta)
    rho = 0.5 * (rho_x + rho_y)

    s1 = math.sin(that + k * xhat)
    s3 = math.sin(that - l * xhat)
    if abs(s1) < 1e-9 or abs(s3) < 1e-9:
        raise SingularConfiguration(
            f"sin factors vanish: sin(theta+kx)={s1}, sin(theta-lx)={s3}"
        )
    st = math.sin(that)
    bracket = (
        math.cos(that)
        - l * st * math.cos(that + k * xhat) / ((k + l) * s1)
        - k * st * math.cos(that - l * xhat) / ((k + l) * s3)
    )
    if abs(bracket) < 1e-12:
        raise NoSolution("the linear system is inconsistent for this data")
    p2 = rho / bracket
    p1 = -l * p2 * st / ((k + l) * s1)
    p3 = -k * p2 * st / ((k + l) * s3)
    ps = (p1, p2, p3)
    if min(abs(p) for p in ps) < 1e-12 * max(abs(p) for p in ps):
        raise NoSolution("a coefficient vanishes; the data is not trinomial")

    model_freqs = (-k, 0, l)
    coeffs = [
        p * cmath.exp(1j * phi) * cmath.exp(-1j * mu * centre)
        for p, mu in zip(ps, model_freqs)
    ]
    candidate = Trinomial(
        *lams,
        *(abs(c) for c in coeffs),
        *(cmath.phase(c) for c in coeffs),
    )
    res = max_points_global(candidate)
    if abs(res.value - rho) > 1e-8 * rho:
        raise NoSolution(
            f"candidate maximum {res.value} does not match the prescribed modulus {rho}"
        )
    for point, want in ((x, value_x), (y, value_y)):
        got = evaluate(candidate, point)
        if abs(got - want) > 1e-8 * rho:
            raise NoSolution(f"candidate misses the value at {point}: {got} vs {want}")
        if not any(
            abs(math.remainder(point - px, period)) < 1e-6 for px, _ in res.points
        ):
            raise NoSolution(f"candidate does not attain its maximum at {point}")
    return candidate


def parabola_invariant(
    k: int, p1: float, p2: float, p3: float, rho: float
) -> bool:
    """Whether signed coefficients of a quadruple-point trinomial lie on the parabola.

    Tests (k*p1 - p3)^2 = rho*(k^2*p1 + p3) to 1e-10 relative together with
    k^2*p1*p2 + (k+1)^2*p1*p3 + p2*p3 = 0; callers guarantee the p's are
    nonzero with p1 + p2 + p3 = rho > 0.
    """
    lhs = (k * p1 - p3) ** 2
    rhs = rho * (k * k * p1 + p3)
    scale = abs(lhs) + abs(rhs)
    first = abs(lhs - rhs) <= 1e-10 * max(scale, 1e-300)
    combo = k * k * p1 * p2 + (k + 1) ** 2 * p1 * p3 + p2 * p3
    combo_scale = abs(k * k * p1 * p2) + abs((k + 1) ** 2 * p1 * p3) + abs(p2 * p3)
    second = abs(combo) <= 1e-10 * max(combo_scale, 1e-300)
    return first and second
