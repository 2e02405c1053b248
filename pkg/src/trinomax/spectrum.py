"""Integer and angle arithmetic for trigonometric trinomials.

A trigonometric trinomial

    T(x) = r1*e^(i(t1 + l1*x)) + r2*e^(i(t2 + l2*x)) + r3*e^(i(t3 + l3*x))

with three pairwise distinct integer frequencies is governed by a handful of
discrete invariants: the step d of the spectrum, the coprime gaps (k, l), the
quotient D = k + l of the diameter by d, and a single phase invariant tau in
[0, pi].  This module derives those invariants, detects which phase shifts
act as isometries (rotation + translation), and reduces a general trinomial
to the canonical form

    r1*e^(-i k x) + r2*e^(i t) + r3*e^(i l x),   t in [0, pi/(k+l)],  k*r1 <= l*r3

recording every normalisation step in an invertible transcript.

Everything here is pure and reentrant; all values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

TWO_PI = 2.0 * math.pi

__all__ = [
    "SpectrumError",
    "Trinomial",
    "Multiplier",
    "SpectrumStats",
    "Transcript",
    "ReducedForm",
    "wrap_angle",
    "modular_inverse",
    "derive_spectrum_stats",
    "phase_combination",
    "is_isometry",
    "canonical_reduction",
    "make_reduced_form",
    "opposition_signs",
    "symmetry_axis",
]


class SpectrumError(ValueError):
    """Invalid trinomial data: repeated frequencies, nonpositive moduli, ..."""


def wrap_angle(x: float) -> float:
    """Representative of ``x`` modulo 2*pi in the half-open interval (-pi, pi]."""
    w = math.remainder(x, TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    return w


def modular_inverse(a: int, n: int) -> int:
    """Inverse of ``a`` modulo ``n``, returned in [1, n-1].

    Requires gcd(a, n) = 1 and n >= 2.
    """
    if n < 2:
        raise SpectrumError(f"modulus must be >= 2, got {n}")
    if gcd(a, n) != 1:
        raise SpectrumError(f"{a} is not invertible modulo {n}")
    return pow(a, -1, n)


@dataclass(frozen=True)
class Trinomial:
    """Three Fourier coefficients given as (modulus, phase) at integer frequencies."""

    lambda1: int
    lambda2: int
    lambda3: int
    r1: float
    r2: float
    r3: float
    t1: float = 0.0
    t2: float = 0.0
    t3: float = 0.0

    def __post_init__(self) -> None:
        freqs = (self.lambda1, self.lambda2, self.lambda3)
        if len(set(freqs)) != 3:
            raise SpectrumError(f"frequencies must be pairwise distinct, got {freqs}")
        for name in ("r1", "r2", "r3", "t1", "t2", "t3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for r in (self.r1, self.r2, self.r3):
            if not (r > 0.0 and math.isfinite(r)):
                raise SpectrumError(f"moduli must be positive and finite, got {r}")
        for t in (self.t1, self.t2, self.t3):
            if not math.isfinite(t):
                raise SpectrumError(f"phases must be finite, got {t}")

    @property
    def frequencies(self) -> tuple[int, int, int]:
        return (self.lambda1, self.lambda2, self.lambda3)

    @property
    def moduli(self) -> tuple[float, float, float]:
        return (self.r1, self.r2, self.r3)

    @property
    def phases(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)

    def sorted_by_frequency(self) -> tuple["Trinomial", tuple[int, int, int]]:
        """Copy with frequencies in increasing order plus the permutation used.

        The permutation maps sorted slot j to the original coefficient index
        perm[j] (0-based).
        """
        perm = tuple(sorted(range(3), key=lambda j: self.frequencies[j]))
        f = self.frequencies
        r = self.moduli
        t = self.phases
        out = Trinomial(
            f[perm[0]], f[perm[1]], f[perm[2]],
            r[perm[0]], r[perm[1]], r[perm[2]],
            t[perm[0]], t[perm[1]], t[perm[2]],
        )
        return out, perm


@dataclass(frozen=True)
class Multiplier:
    """Unimodular phase increments applied to the three Fourier coefficients."""

    u1: float
    u2: float
    u3: float

    def __post_init__(self) -> None:
        for u in (self.u1, self.u2, self.u3):
            if not math.isfinite(u):
                raise SpectrumError(f"multiplier phases must be finite, got {u}")

    @property
    def phases(self) -> tuple[float, float, float]:
        return (self.u1, self.u2, self.u3)

    def apply(self, trinomial: Trinomial) -> Trinomial:
        """The trinomial with each coefficient rotated by the matching phase."""
        return Trinomial(
            trinomial.lambda1, trinomial.lambda2, trinomial.lambda3,
            trinomial.r1, trinomial.r2, trinomial.r3,
            trinomial.t1 + self.u1, trinomial.t2 + self.u2, trinomial.t3 + self.u3,
        )


@dataclass(frozen=True)
class SpectrumStats:
    """Discrete invariants of a three-point spectrum plus the phase invariant.

    d is the gcd of the frequency gaps (the modulus profile is 2*pi/d
    periodic), k and l are the coprime gaps after sorting, D = k + l is the
    diameter divided by d, m is the inverse of l modulo D, and tau in
    [0, pi] is the distance of the integer-weighted phase combination to
    2*pi*Z.
    """

    d: int
    k: int
    l: int
    m: int
    D: int
    tau: float


@dataclass(frozen=True)
class Transcript:
    """Invertible record of the normalisations applied by canonical_reduction.

    The reduction satisfies |T(x)| = |R(epsilon * d * (x - v))| for every x,
    where R is the reduced form, so a point y of the reduced coordinate maps
    back to v + y/(epsilon*d).
    """

    sort_permutation: tuple[int, int, int]
    alpha: float
    v: float
    epsilon: int
    swapped: bool
    homothety: int

    def to_reduced(self, x: float) -> float:
        return self.epsilon * self.homothety * (x - self.v)

    def from_reduced(self, y: float) -> float:
        return self.v + y / (self.epsilon * self.homothety)


@dataclass(frozen=True)
class ReducedForm:
    """Canonical trinomial r1*e^(-ikx) + r2*e^(it) + r3*e^(ilx).

    Invariants: gcd(k, l) = 1, t in [0, pi/(k+l)], k*r1 <= l*r3, and
    t = tau/(k+l) where tau is the phase invariant of the source trinomial.
    """

    k: int
    l: int
    r1: float
    r2: float
    r3: float
    t: float

    def __post_init__(self) -> None:
        if self.k < 1 or self.l < 1 or gcd(self.k, self.l) != 1:
            raise SpectrumError(f"(k, l) must be positive coprime, got ({self.k}, {self.l})")
        for name in ("r1", "r2", "r3", "t"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for r in (self.r1, self.r2, self.r3):
            if not (r > 0.0 and math.isfinite(r)):
                raise SpectrumError(f"moduli must be positive and finite, got {r}")
        edge = math.pi / (self.k + self.l)
        if not (-1e-12 <= self.t <= edge * (1.0 + 1e-12)):
            raise SpectrumError(f"t must lie in [0, pi/(k+l)] = [0, {edge}], got {self.t}")
        slack = 1e-12 * (self.k * self.r1 + self.l * self.r3)
        if self.k * self.r1 > self.l * self.r3 + slack:
            raise SpectrumError(
                f"normalisation k*r1 <= l*r3 violated: {self.k * self.r1} > {self.l * self.r3}"
            )


def make_reduced_form(
    k: int, l: int, r1: float, r2: float, r3: float, t: float
) -> tuple[ReducedForm, bool]:
    """Build a ReducedForm, swapping the outer coefficients when k*r1 > l*r3.

    The swap replaces x by -x, which leaves the maximum modulus unchanged.
    Returns the form and whether the swap was applied.
    """
    if k * r1 > l * r3:
        return ReducedForm(l, k, r3, r2, r1, t), True
    return ReducedForm(k, l, r1, r2, r3, t), False


def phase_combination(k: int, l: int, t1: float, t2: float, t3: float) -> float:
    """The integer-weighted phase combination -l*t1 + (k+l)*t2 - k*t3.

    The weights are exact integers, so the only rounding is in the final
    sum (done with fsum); the phase invariant tau is the distance of this
    quantity to 2*pi*Z.
    """
    return math.fsum((-l * t1, (k + l) * t2, -k * t3))


def _sorted_gaps(trinomial: Trinomial) -> tuple[Trinomial, tuple[int, int, int], int, int, int]:
    ts, perm = trinomial.sorted_by_frequency()
    d = gcd(ts.lambda2 - ts.lambda1, ts.lambda3 - ts.lambda2)
    k = (ts.lambda2 - ts.lambda1) // d
    l = (ts.lambda3 - ts.lambda2) // d
    return ts, perm, d, k, l


def derive_spectrum_stats(trinomial: Trinomial) -> SpectrumStats:
    """Spectrum invariants (d, k, l, m, D) and the phase invariant tau."""
    ts, _, d, k, l = _sorted_gaps(trinomial)
    big_d = k + l
    comb = phase_combination(k, l, ts.t1, ts.t2, ts.t3)
    tau = abs(wrap_angle(comb))
    return SpectrumStats(d=d, k=k, l=l, m=modular_inverse(l, big_d), D=big_d, tau=tau)


def _solve_common_shift(
    freqs: tuple[int, int, int], phases: tuple[float, float, float], tol: float
) -> float:
    """Solve phases[j] + freqs[j]*v = const (mod 2*pi) for v.

    freqs must be strictly increasing.  A solution exists exactly when the
    weighted phase combination lies in 2*pi*Z; candidates are enumerated from
    the first congruence and checked against the second, returning the one
    with the smallest residual.
    """
    l1, l2, l3 = freqs
    t1, t2, t3 = phases
    a = l2 - l1
    best_v = None
    best_res = math.inf
    for n in range(a):
        v = (t1 - t2 + TWO_PI * n) / a
        res = abs(wrap_angle((l3 - l2) * v - (t2 - t3)))
        if res < best_res:
            best_res = res
            best_v = v
    if best_v is None or best_res > tol:
        raise SpectrumError(
            f"no common translation exists (best residual {best_res:.3e} > tol {tol:.1e})"
        )
    return wrap_angle(best_v)


def is_isometry(
    frequencies: tuple[int, int, int],
    multiplier: Multiplier,
    tol: float = 1e-9,
) -> tuple[bool, tuple[float, float] | None]:
    """Decide whether a phase multiplier acts as a rotation plus translation.

    Returns (flag, (alpha, v)) where, when the flag is true, applying the
    multiplier to any function with this spectrum equals e^(i*alpha) times
    the translate by v:  Mf(x) = e^(i*alpha) * f(x - v).
    """
    probe = Trinomial(*frequencies, 1.0, 1.0, 1.0, *multiplier.phases)
    ts, _, d, k, l = _sorted_gaps(probe)
    comb = phase_combination(k, l, ts.t1, ts.t2, ts.t3) / d
    if abs(wrap_angle(comb)) > tol:
        return False, None
    v = _solve_common_shift(ts.frequencies, ts.phases, 4.0 * tol)
    alpha = wrap_angle(ts.t2 + ts.lambda2 * v)
    return True, (alpha, v)


def canonical_reduction(
    trinomial: Trinomial,
) -> tuple[ReducedForm, SpectrumStats, Transcript]:
    """Reduce a trinomial to canonical form with an invertible transcript.

    The chain of normalisations is: sort frequencies; strip an isometric
    phase shift so the phases become (0, tau_signed/(k+l), 0); conjugate if
    the remaining phase is negative; rescale x by d; swap the outer
    coefficients if k*r1 > l*r3.  The maximum modulus is preserved at every
    step and |T(x)| = |R(epsilon*d*(x - v))| for all x.
    """
    ts, perm, d, k, l = _sorted_gaps(trinomial)
    big_d = k + l
    comb = phase_combination(k, l, ts.t1, ts.t2, ts.t3)
    tau_signed = wrap_angle(comb)
    tau = abs(tau_signed)
    stats = SpectrumStats(d=d, k=k, l=l, m=modular_inverse(l, big_d), D=big_d, tau=tau)

    t2_target = tau_signed / big_d
    v = _solve_common_shift(
        ts.frequencies, (ts.t1, ts.t2 - t2_target, ts.t3), tol=1e-7
    )
    alpha = wrap_angle(ts.t2 - t2_target + ts.lambda2 * v)

    epsilon = 1 if t2_target >= 0.0 else -1
    t_red = abs(t2_target)
    r1, r2, r3 = ts.r1, ts.r2, ts.r3
    k_red, l_red = k, l
    swapped = k * r1 > l * r3
    if swapped:
        k_red, l_red = l, k
        r1, r3 = r3, r1
        epsilon = -epsilon

    edge = math.pi / big_d
    form = ReducedForm(k_red, l_red, r1, r2, r3, min(t_red, edge))
    transcript = Transcript(
        sort_permutation=perm,
        alpha=alpha,
        v=v,
        epsilon=epsilon,
        swapped=swapped,
        homothety=d,
    )
    return form, stats, transcript


def _two_adic_valuation(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    return (n & -n).bit_length() - 1


def opposition_signs(
    lambda1: int, lambda2: int, lambda3: int
) -> tuple[int, int, int]:
    """Sign pattern (+-1, +-1, +-1) whose phase invariant is exactly pi.

    The pair of indices whose frequency difference carries the strictly
    largest power of two receives opposite signs; such a pair always exists
    because the three gaps cannot all share the same 2-adic valuation.
    """
    freqs = (lambda1, lambda2, lambda3)
    if len(set(freqs)) != 3:
        raise SpectrumError(f"frequencies must be pairwise distinct, got {freqs}")
    pairs = ((0, 1), (0, 2), (1, 2))
    vals = [_two_adic_valuation(freqs[i] - freqs[j]) for i, j in pairs]
    top = max(range(3), key=lambda idx: vals[idx])
    others = [vals[idx] for idx in range(3) if idx != top]
    assert vals[top] > max(others), "no strictly maximal 2-adic gap; impossible for distinct integers"
    signs = [1, 1, 1]
    signs[pairs[top][1]] = -1
    check = derive_spectrum_stats(
        Trinomial(*freqs, 1.0, 1.0, 1.0, *(0.0 if s > 0 else math.pi for s in signs))
    )
    assert abs(check.tau - math.pi) < 1e-9
    return tuple(signs)


def symmetry_axis(trinomial: Trinomial, tol: float = 1e-6) -> float:
    """The axis parameter s with 2*t_j + lambda_j*s all equal modulo 2*pi.

    Exists exactly when tau = pi; then |T(s - x)| = |T(x)| for all x and s is
    unique modulo 2*pi/d.  Returned in [0, 2*pi/d).
    """
    ts, _, d, k, l = _sorted_gaps(trinomial)
    tau = abs(wrap_angle(phase_combination(k, l, ts.t1, ts.t2, ts.t3)))
    if abs(tau - math.pi) > 1e-6:
        raise SpectrumError(f"symmetry axis requires tau = pi, got tau = {tau}")
    s = _solve_common_shift(
        ts.frequencies, (2.0 * ts.t1, 2.0 * ts.t2, 2.0 * ts.t3), tol
    )
    return s % (TWO_PI / d)
