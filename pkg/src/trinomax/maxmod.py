"""Locating and classifying the maximum-modulus points of a trinomial.

The squared modulus of the reduced form r1*e^(-ikx) + r2*e^(it) + r3*e^(ilx)
is

    f(x) = r1^2 + r2^2 + r3^2
           + 2*(r1*r2*cos(t + kx) + r1*r3*cos((k+l)x) + r2*r3*cos(t - lx)),

and under the normalisation k*r1 <= l*r3 its derivative changes sign exactly
once on [0, t/l], from + to -.  That guaranteed bracket makes plain bisection
the right root finder; a single Newton step polishes the result.  The
absolute maximum is attained once modulo 2*pi/d unless tau = pi, in which
case the modulus has an axis of symmetry and the maximum is attained either
at a symmetric pair of points or, on a knife-edge coefficient set, at one
point with multiplicity four.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .spectrum import (
    TWO_PI,
    ReducedForm,
    SpectrumError,
    Trinomial,
    canonical_reduction,
    modular_inverse,
    phase_combination,
    wrap_angle,
)

__all__ = [
    "BracketFailure",
    "MaxClassification",
    "MaxResult",
    "evaluate",
    "modulus_at",
    "modulus_squared_reduced",
    "derivative_half",
    "half_derivative",
    "modulus_squared_trinomial",
    "locate_interval",
    "localization_interval",
    "find_max_reduced",
    "max_points_global",
    "closed_form_k1_l1",
    "closed_form_k2_l1",
    "binomial_max",
]


class BracketFailure(RuntimeError):
    """Derivative signs at the bracket endpoints contradict the guarantee."""


class MaxClassification(str, Enum):
    INTERIOR_UNIQUE = "InteriorUnique"
    AT_ZERO = "AtZero_kr1_eq_lr3"
    AT_BOUNDARY = "AtBoundary_tOverL"
    SYMMETRIC_PAIR = "SymmetricPair"
    DEGENERATE4 = "Degenerate4"


@dataclass(frozen=True)
class MaxResult:
    """Maximum-modulus points of a trinomial, modulo its natural period.

    points holds one or two (x, value) pairs; two points occur only when
    tau = pi.  multiplicity is 2 except on the degenerate coefficient set
    where the maximum is attained with multiplicity 4.  s is the symmetry
    axis parameter, present exactly when tau = pi (then x + y = s for the
    symmetric pair).
    """

    points: tuple[tuple[float, float], ...]
    multiplicity: int
    classification: MaxClassification
    s: float | None

    @property
    def value(self) -> float:
        return max(v for _, v in self.points)


def evaluate(trinomial: Trinomial, x):
    """Value of the trinomial at x (scalar complex, or an array for array x)."""
    f = trinomial.frequencies
    r = trinomial.moduli
    t = trinomial.phases
    if isinstance(x, np.ndarray):
        acc = np.zeros_like(x, dtype=complex)
        for j in range(3):
            acc += r[j] * np.exp(1j * (t[j] + f[j] * x))
        return acc
    return (
        r[0] * cmath.exp(1j * (t[0] + f[0] * x))
        + r[1] * cmath.exp(1j * (t[1] + f[1] * x))
        + r[2] * cmath.exp(1j * (t[2] + f[2] * x))
    )


def modulus_at(trinomial: Trinomial, x: float) -> float:
    return abs(evaluate(trinomial, x))


def modulus_squared_reduced(form: ReducedForm, x: float) -> float:
    """|R(x)|^2 via the real cross-term expansion."""
    k, l = form.k, form.l
    r1, r2, r3, t = form.r1, form.r2, form.r3, form.t
    return (
        r1 * r1 + r2 * r2 + r3 * r3
        + 2.0 * (
            r1 * r2 * math.cos(t + k * x)
            + r1 * r3 * math.cos((k + l) * x)
            + r2 * r3 * math.cos(t - l * x)
        )
    )


def _cos_deriv(arg: float, rate: float, order: int) -> float:
    # d^n/dx^n cos(c + rate*x) = rate^n * cos(arg + n*pi/2), kept exact by branching
    phase = order % 4
    if phase == 0:
        c = math.cos(arg)
    elif phase == 1:
        c = -math.sin(arg)
    elif phase == 2:
        c = -math.cos(arg)
    else:
        c = math.sin(arg)
    return rate**order * c


def half_derivative(form: ReducedForm, x: float, order: int = 1) -> float:
    """(1/2) * d^order/dx^order of the squared modulus of the reduced form."""
    k, l = form.k, form.l
    r1, r2, r3, t = form.r1, form.r2, form.r3, form.t
    out = (
        r1 * r2 * _cos_deriv(t + k * x, k, order)
        + r1 * r3 * _cos_deriv((k + l) * x, k + l, order)
        + r2 * r3 * _cos_deriv(t - l * x, -l, order)
    )
    if order == 0:
        out += 0.5 * (r1 * r1 + r2 * r2 + r3 * r3)
    return out


def derivative_half(form: ReducedForm, x: float) -> float:
    """Half the derivative of the squared modulus:

    -k*r1*r2*sin(t + kx) - (k+l)*r1*r3*sin((k+l)x) + l*r2*r3*sin(t - lx).
    """
    return half_derivative(form, x, 1)


def modulus_squared_trinomial(trinomial: Trinomial, x: float, order: int = 0) -> float:
    """d^order/dx^order of |T(x)|^2 for a general trinomial."""
    f = trinomial.frequencies
    r = trinomial.moduli
    t = trinomial.phases
    out = 0.0
    for a in range(3):
        for b in range(a + 1, 3):
            gap = f[a] - f[b]
            out += 2.0 * r[a] * r[b] * _cos_deriv((t[a] - t[b]) + gap * x, gap, order)
    if order == 0:
        out += r[0] ** 2 + r[1] ** 2 + r[2] ** 2
    return out


def locate_interval(form: ReducedForm) -> tuple[float, float]:
    """[-t/k, t/l]: contains an absolute maximum point for any moduli.

    Under the normalisation k*r1 <= l*r3 the maximum point lies in [0, t/l].
    """
    return (-form.t / form.k, form.t / form.l)


def _derivative_scale(form: ReducedForm) -> float:
    k, l = form.k, form.l
    return k * form.r1 * form.r2 + (k + l) * form.r1 * form.r3 + l * form.r2 * form.r3


def _bisect_plus_to_minus(fun, lo: float, hi: float, guard: float, iters: int = 60) -> float:
    flo = fun(lo)
    fhi = fun(hi)
    if flo < -guard or fhi > guard:
        raise BracketFailure(
            f"endpoint derivative signs violate the bracket: f({lo})={flo}, f({hi})={fhi}"
        )
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fun(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_polish(form: ReducedForm, x: float, lo: float, hi: float) -> float:
    d1 = derivative_half(form, x)
    d2 = half_derivative(form, x, 2)
    if d2 < 0.0:
        step = d1 / d2
        xn = x - step
        if lo <= xn <= hi and abs(step) <= (hi - lo):
            return xn
    return x


def _bisect_symmetric_edge(form: ReducedForm) -> float:
    # l = 1, t = pi/(k+1): the derivative vanishes identically at t/l, so the
    # sign is read off g'(x)/sin(x) with g(x) = f(t - x), which decreases
    # strictly and changes sign once on (0, t).
    t = form.t

    def phi(x: float) -> float:
        return -derivative_half(form, t - x) / math.sin(x)

    lo = 1e-7 * t
    hi = t * (1.0 - 1e-12)
    if phi(lo) <= 0.0:
        # maximum indistinguishable from the boundary point at this scale
        return t - lo
    guard = 1e-9 * _derivative_scale(form)
    if phi(hi) > guard:
        raise BracketFailure(f"symmetric-edge bracket failed: phi({hi}) = {phi(hi)}")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if phi(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return t - 0.5 * (lo + hi)


def find_max_reduced(
    form: ReducedForm,
    *,
    tau_pi_tol: float = 1e-9,
    degenerate_rel_tol: float = 1e-10,
) -> MaxResult:
    """Maximum-modulus points of a reduced-form trinomial, modulo 2*pi.

    Bisection runs on derivative_half over [0, t/l], where the sign change
    from + to - is guaranteed.  tau = pi (detected as |t*(k+l) - pi| <=
    tau_pi_tol) switches on the symmetric branches: a pair {x, s - x} with
    s = 2*m*pi/(k+l), or for l = 1 the boundary point t with the maximum
    value r2 + r3 - r1, with multiplicity 4 on the knife edge
    k^2*r1*r2 + (k+1)^2*r1*r3 = r2*r3 (relative tolerance
    degenerate_rel_tol).
    """
    k, l = form.k, form.l
    r1, r2, r3, t = form.r1, form.r2, form.r3, form.t
    big_d = k + l
    symmetric = abs(t * big_d - math.pi) <= tau_pi_tol
    at_zero = abs(k * r1 - l * r3) <= 1e-12 * max(k * r1, l * r3)

    if t <= 1e-15:
        value = math.sqrt(modulus_squared_reduced(form, 0.0))
        cls = MaxClassification.AT_ZERO if at_zero else MaxClassification.INTERIOR_UNIQUE
        return MaxResult(((0.0, value),), 2, cls, None)

    if at_zero:
        value = math.sqrt(modulus_squared_reduced(form, 0.0))
        if symmetric:
            axis = TWO_PI * modular_inverse(l, big_d) / big_d
            partner = axis % TWO_PI
            value2 = math.sqrt(modulus_squared_reduced(form, partner))
            points = tuple(sorted(((0.0, value), (partner, value2))))
            return MaxResult(points, 2, MaxClassification.SYMMETRIC_PAIR, axis)
        return MaxResult(((0.0, value),), 2, MaxClassification.AT_ZERO, None)

    if symmetric and l == 1:
        edge = k * k * r1 * r2 + (k + 1) ** 2 * r1 * r3 - r2 * r3
        edge_scale = k * k * r1 * r2 + (k + 1) ** 2 * r1 * r3 + r2 * r3
        if abs(edge) <= degenerate_rel_tol * edge_scale:
            return MaxResult(
                ((t % TWO_PI, r2 + r3 - r1),), 4, MaxClassification.DEGENERATE4, 2.0 * t
            )
        if edge < 0.0:
            return MaxResult(
                ((t % TWO_PI, r2 + r3 - r1),), 2, MaxClassification.AT_BOUNDARY, 2.0 * t
            )
        x_star = _bisect_symmetric_edge(form)
    else:
        guard = 1e-10 * _derivative_scale(form)
        x_star = _bisect_plus_to_minus(
            lambda x: derivative_half(form, x), 0.0, t / l, guard
        )

    x_star = _newton_polish(form, x_star, 0.0, t / l)
    value = math.sqrt(modulus_squared_reduced(form, x_star))
    if symmetric:
        axis = TWO_PI * modular_inverse(l, big_d) / big_d
        partner = (axis - x_star) % TWO_PI
        value2 = math.sqrt(modulus_squared_reduced(form, partner))
        if abs(value2 - value) > 1e-8 * value:
            raise BracketFailure(
                f"symmetric pair values diverge: {value} vs {value2} at tau within {tau_pi_tol} of pi"
            )
        points = tuple(sorted(((x_star % TWO_PI, value), (partner, value2))))
        return MaxResult(points, 2, MaxClassification.SYMMETRIC_PAIR, axis)
    return MaxResult(((x_star % TWO_PI, value),), 2, MaxClassification.INTERIOR_UNIQUE, None)


def _bezout(a: int, b: int) -> tuple[int, int]:
    # returns (u, w) with u*a + w*b = gcd(a, b)
    old_r, r = a, b
    old_u, u = 1, 0
    old_w, w = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_w, w = w, old_w - q * w
    return old_u, old_w


def _adjusted_outer_phases(trinomial: Trinomial) -> tuple[float, float, int, int, int]:
    """Phases t1, t3 shifted by full turns so the combination lands in (-pi, pi]."""
    ts, _ = trinomial.sorted_by_frequency()
    d = math.gcd(ts.lambda2 - ts.lambda1, ts.lambda3 - ts.lambda2)
    k = (ts.lambda2 - ts.lambda1) // d
    l = (ts.lambda3 - ts.lambda2) // d
    comb = phase_combination(k, l, ts.t1, ts.t2, ts.t3)
    shift = round((wrap_angle(comb) - comb) / TWO_PI)
    u, w = _bezout(l, k)
    a1, a3 = shift * u, shift * w
    return ts.t1 - TWO_PI * a1, ts.t3 - TWO_PI * a3, d, k, l


def localization_interval(trinomial: Trinomial) -> tuple[float, float]:
    """Interval containing a maximum-modulus point, independent of the moduli.

    The endpoints are the maximum points of the two binomials obtained by
    dropping an outer coefficient, computed from the phases alone.
    """
    ts, _ = trinomial.sorted_by_frequency()
    t1a, t3a, _, _, _ = _adjusted_outer_phases(trinomial)
    e1 = (t1a - ts.t2) / (ts.lambda2 - ts.lambda1)
    e2 = (ts.t2 - t3a) / (ts.lambda3 - ts.lambda2)
    return (min(e1, e2), max(e1, e2))


def _check_localization(
    trinomial: Trinomial,
    tau: float,
    points: tuple[float, ...],
    period: float,
    tol: float = 1e-7,
) -> None:
    ts, _ = trinomial.sorted_by_frequency()
    t1a, t3a, _, _, _ = _adjusted_outer_phases(trinomial)
    e1 = (t1a - ts.t2) / (ts.lambda2 - ts.lambda1)
    e2 = (ts.t2 - t3a) / (ts.lambda3 - ts.lambda2)
    e3 = (t1a - t3a) / (ts.lambda3 - ts.lambda1)
    lo, hi = min(e1, e2), max(e1, e2)
    if tau < math.pi - 1e-9:
        # refinement by the weight comparison; valid off the symmetric case
        left = ts.r1 * (ts.lambda2 - ts.lambda1)
        right = ts.r3 * (ts.lambda3 - ts.lambda2)
        if left < right:
            lo, hi = min(e3, e2), max(e3, e2)
        elif left > right:
            lo, hi = min(e3, e1), max(e3, e1)
        else:
            lo = hi = e3
    mid = 0.5 * (lo + hi)
    for x in points:
        folded = x - period * round((x - mid) / period)
        if lo - tol <= folded <= hi + tol:
            return
    raise BracketFailure(
        f"maximum points {points} escape the localization interval [{lo}, {hi}] mod {period}"
    )


def max_points_global(trinomial: Trinomial, *, tau_pi_tol: float = 1e-9) -> MaxResult:
    """Maximum-modulus points of a general trinomial, modulo 2*pi/d.

    Runs the canonical reduction, locates the maximum of the reduced form and
    maps the points back through the transcript.  When tau = pi the symmetry
    axis s (with x + y = s for the pair) is reported as well, and the result
    is checked against the phase-only localization interval.
    """
    form, stats, transcript = canonical_reduction(trinomial)
    res = find_max_reduced(form, tau_pi_tol=tau_pi_tol)
    period = TWO_PI / stats.d
    points = tuple(
        sorted((transcript.from_reduced(x) % period, v) for x, v in res.points)
    )
    axis = None
    if res.s is not None:
        axis = (
            2.0 * transcript.v + res.s / (transcript.epsilon * transcript.homothety)
        ) % period
    _check_localization(trinomial, stats.tau, tuple(x for x, _ in points), period)
    return MaxResult(points, res.multiplicity, res.classification, axis)


def closed_form_k1_l1(r1: float, r2: float, r3: float) -> tuple[float, tuple[float, ...]]:
    """Maximum of |r1*e^(-ix) + i*r2 + r3*e^(ix)| in closed form (k = l = 1, t = pi/2).

    Equals (r1+r3)*sqrt(1 + r2^2/(4*r1*r3)) attained where
    sin(x) = r2*(r3-r1)/(4*r1*r3) when |1/r1 - 1/r3| < 4/r2, and
    r2 + |r3 - r1| attained at a single point otherwise.
    """
    for r in (r1, r2, r3):
        if not (r > 0.0 and math.isfinite(r)):
            raise SpectrumError(f"moduli must be positive, got {r}")
    if abs(1.0 / r1 - 1.0 / r3) < 4.0 / r2:
        value = (r1 + r3) * math.sqrt(1.0 + r2 * r2 / (4.0 * r1 * r3))
        s = r2 * (r3 - r1) / (4.0 * r1 * r3)
        x0 = math.asin(s)
        points = tuple(sorted({x0 % TWO_PI, (math.pi - x0) % TWO_PI}))
        return value, points
    point = math.pi / 2.0 if r1 < r3 else -math.pi / 2.0
    return r2 + abs(r3 - r1), ((point % TWO_PI),)


def closed_form_k2_l1(r1: float, r2: float, r3: float) -> float:
    """Maximum of |r1*e^(-2ix) + r2*e^(i*pi/3) + r3*e^(ix)| in closed form.

    When 1/r1 - 4/r3 < 9/r2 the squared maximum is

        r1^2 + (2/3)*r2^2 + r3^2 + r1*r2
        + 2*r1*r3*[ (a^2 + b + 1)^(3/2) - a^3 ],   a = r2/(3*r3), b = r2/(3*r1);

    otherwise the maximum is -r1 + r2 + r3.
    """
    for r in (r1, r2, r3):
        if not (r > 0.0 and math.isfinite(r)):
            raise SpectrumError(f"moduli must be positive, got {r}")
    if 1.0 / r1 - 4.0 / r3 < 9.0 / r2:
        a = r2 / (3.0 * r3)
        b = r2 / (3.0 * r1)
        squared = (
            r1 * r1
            + (2.0 / 3.0) * r2 * r2
            + r3 * r3
            + r1 * r2
            + 2.0 * r1 * r3 * ((a * a + b + 1.0) ** 1.5 - a**3)
        )
        return math.sqrt(squared)
    return -r1 + r2 + r3


def binomial_max(r1: float, r2: float) -> float:
    """Maximum modulus of a trigonometric binomial: always r1 + r2.

    Degenerate entry point for spectra where one trinomial coefficient
    vanishes; the maximum does not depend on frequencies or phases.
    """
    if not (r1 > 0.0 and r2 > 0.0):
        raise SpectrumError("binomial moduli must be positive")
    return r1 + r2
