"""Dependence of the maximum modulus on the phase invariant.

For fixed moduli the maximum modulus of the reduced family
r1*e^(-ikx) + r2*e^(it) + r3*e^(ilx) is an even, 2*pi/(k+l)-periodic
function of t that strictly decreases on [0, pi/(k+l)].  This module
computes that curve, its directional derivative through the max-function
expansion (the derivative of a parametric maximum is the extreme of the
partial derivatives over the argmax set), and the two cosine bounds that
sandwich the decrease.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .maxmod import find_max_reduced
from .spectrum import TWO_PI, SpectrumError, make_reduced_form

__all__ = [
    "SweepRow",
    "fstar",
    "chebotarev_derivative",
    "ratio_gstar",
    "cos_quotient_bound",
    "moduli_sum_bound",
    "sweep_rows",
]


@dataclass(frozen=True)
class SweepRow:
    """One row of a phase sweep: invariant tau, reduced phase t = tau/(k+l),
    maximum modulus, its quotient by |r1 + r2*e^(it) + r3|, and the cosine
    reference cos(tau/(2D))."""

    tau: float
    t: float
    fstar: float
    ratio: float
    bound: float


def _fold_phase(t: float, big_d: int) -> float:
    # evenness + 2*pi/(k+l) periodicity fold t into [0, pi/(k+l)]
    period = TWO_PI / big_d
    tm = t % period
    if tm > period / 2.0:
        tm = period - tm
    return min(tm, math.pi / big_d)


def fstar(k: int, l: int, r1: float, r2: float, r3: float, t: float) -> float:
    """Maximum modulus of the reduced family at phase t.

    t is folded into [0, pi/(k+l)] by evenness and periodicity, so the
    function is defined for every real t.
    """
    form, _ = make_reduced_form(k, l, r1, r2, r3, _fold_phase(t, k + l))
    return find_max_reduced(form).value


def chebotarev_derivative(
    k: int, l: int, r1: float, r2: float, r3: float, t: float, side: str = "+"
) -> float:
    """d/dt of the squared maximum modulus via the max-function expansion.

    Evaluates -2*r2*(r1*sin(t + k*x) + r3*sin(t - l*x)) at the maximum
    points and returns the extreme over the argmax set: the max for
    side "+" (right derivative), the min for side "-" (left derivative).
    The two sides agree at interior t, where the maximum point is unique;
    at the endpoint t = pi/(k+l) the curve has a symmetric corner and only
    the one-sided values are defined.

    The value refers to the squared modulus; divide by 2*fstar for the
    slope of the modulus itself.
    """
    if side not in ("+", "-"):
        raise SpectrumError(f"side must be '+' or '-', got {side!r}")
    big_d = k + l
    if not 0.0 < t <= math.pi / big_d * (1.0 + 1e-12):
        raise SpectrumError(f"t must lie in (0, pi/(k+l)], got {t}")
    form, _ = make_reduced_form(k, l, r1, r2, r3, min(t, math.pi / big_d))
    res = find_max_reduced(form)
    slopes = [
        -2.0
        * form.r2
        * (
            form.r1 * math.sin(form.t + form.k * x)
            + form.r3 * math.sin(form.t - form.l * x)
        )
        for x, _ in res.points
    ]
    return max(slopes) if side == "+" else min(slopes)


def ratio_gstar(k: int, l: int, r1: float, r2: float, r3: float, t: float) -> float:
    """fstar divided by |r1 + r2*e^(it) + r3| (the modulus at x = 0).

    Identically 1 when k*r1 = l*r3; otherwise strictly increasing in t on
    [0, pi/(k+l)].
    """
    value = fstar(k, l, r1, r2, r3, t)
    at_zero = math.hypot(r1 + r3 + r2 * math.cos(t), r2 * math.sin(t))
    return value / at_zero


def cos_quotient_bound(tau: float, tau_prime: float, big_d: int) -> float:
    """cos(tau/(2D)) / cos(tau'/(2D)) for 0 <= tau' < tau <= pi.

    The maximum modulus at invariant tau is at least this multiple of the
    maximum at tau', with equality exactly at moduli proportional to
    (l, k+l, k).
    """
    if not (isinstance(big_d, int) and big_d >= 2):
        raise SpectrumError(f"D must be an integer >= 2, got {big_d}")
    if not (0.0 <= tau_prime < tau <= math.pi * (1.0 + 1e-12)):
        raise SpectrumError(f"need 0 <= tau' < tau <= pi, got tau'={tau_prime}, tau={tau}")
    return math.cos(tau / (2.0 * big_d)) / math.cos(tau_prime / (2.0 * big_d))


def moduli_sum_bound(
    k: int, l: int, r1: float, r2: float, r3: float, t: float
) -> tuple[float, float]:
    """(fstar/(r1+r2+r3), cos(t/2)): the left side never drops below the right.

    Equality holds exactly when t = 0 or the moduli are proportional to
    (l, k+l, k); in reduced coordinates cos(t/2) = cos(tau/(2D)).
    """
    lhs = fstar(k, l, r1, r2, r3, t) / (r1 + r2 + r3)
    return lhs, math.cos(_fold_phase(t, k + l) / 2.0)


def sweep_rows(
    k: int, l: int, r1: float, r2: float, r3: float, n: int = 64
) -> list[SweepRow]:
    """Sweep tau over n uniform values in [0, pi], deterministically ordered."""
    if n < 2:
        raise SpectrumError(f"sweep needs at least 2 rows, got {n}")
    big_d = k + l
    rows = []
    for i in range(n):
        tau = math.pi * i / (n - 1)
        t = tau / big_d
        value = fstar(k, l, r1, r2, r3, t)
        rows.append(
            SweepRow(
                tau=tau,
                t=t,
                fstar=value,
                ratio=ratio_gstar(k, l, r1, r2, r3, t),
                bound=math.cos(tau / (2.0 * big_d)),
            )
        )
    return rows
