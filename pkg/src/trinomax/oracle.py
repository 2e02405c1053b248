"""Brute-force verification oracle, independent of the analytic path.

Grid maximisation of |T| with golden-section refinement, phase-space
minimisation for the empirical Sidon constant, and a sup-search for
multiplier norms.  The only code shared with the analytic path is
``evaluate``; everything else (period handling aside) is plain search.

All searches are deterministic given their grids and seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .maxmod import evaluate, max_points_global, modulus_at
from .spectrum import TWO_PI, Multiplier, SpectrumError, Trinomial

__all__ = [
    "OracleReport",
    "VerificationRow",
    "brute_max",
    "brute_sidon",
    "brute_multiplier_norm",
    "random_trinomial",
    "random_symmetric_pair",
    "run_verification",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleReport:
    value: float
    argmaxes: tuple[float, ...]
    grid_size: int
    refine_tol: float
    evaluations: int


def _period_data(trinomial: Trinomial) -> tuple[int, int]:
    """(d, D): gcd of the gaps and diameter/d, from the sorted spectrum."""
    ts, _ = trinomial.sorted_by_frequency()
    d = math.gcd(ts.lambda2 - ts.lambda1, ts.lambda3 - ts.lambda2)
    return d, (ts.lambda3 - ts.lambda1) // d


def _golden_max(fun, lo: float, hi: float, iters: int = 64) -> tuple[float, float, int]:
    a, b = lo, hi
    h = b - a
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc = fun(c)
    fd = fun(d)
    count = 2
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = fun(d)
        count += 1
    if fc > fd:
        return c, fc, count
    return d, fd, count


def brute_max(
    trinomial: Trinomial,
    grid_n: int = 2048,
    tol: float = 1e-10,
) -> OracleReport:
    """Grid scan of |T| over one period 2*pi/d with golden-section refinement.

    Every sample that could hide the global maximum given the quadratic droop
    of |T|^2 between grid points (and at least every sample within a 1e-7
    relative band of the grid maximum) is refined; refined points within
    ``tol`` relative of the best refined value are reported as maximum
    points, clustered with radius 1e-4 of the period.
    """
    if grid_n < 1024:
        raise SpectrumError(f"oracle grid must have at least 1024 points, got {grid_n}")
    d, _ = _period_data(trinomial)
    period = TWO_PI / d
    h = period / grid_n
    xs = np.arange(grid_n) * h
    vals = np.abs(evaluate(trinomial, xs))
    evaluations = grid_n
    vmax = float(vals.max())

    # droop bound on |T|^2 between samples: max |(|T|^2)''| * h^2 / 8
    f = trinomial.frequencies
    r = trinomial.moduli
    curvature = 2.0 * sum(
        r[a] * r[b] * (f[a] - f[b]) ** 2 for a in range(3) for b in range(a + 1, 3)
    )
    droop_sq = curvature * h * h / 6.0
    threshold = min(vmax * (1.0 - 1e-7), math.sqrt(max(vmax * vmax - droop_sq, 0.0)))
    candidate = vals >= threshold

    # cluster contiguous candidate indices, cyclically
    idx = np.flatnonzero(candidate)
    clusters: list[tuple[int, int]] = []
    if idx.size:
        start = prev = int(idx[0])
        for i in idx[1:]:
            i = int(i)
            if i == prev + 1:
                prev = i
            else:
                clusters.append((start, prev))
                start = prev = i
        clusters.append((start, prev))
        if len(clusters) > 1 and clusters[0][0] == 0 and clusters[-1][1] == grid_n - 1:
            s, _ = clusters.pop()
            first = clusters[0]
            clusters[0] = (s - grid_n, first[1])

    refined: list[tuple[float, float]] = []
    for start, stop in clusters:
        lo = (start - 1) * h
        hi = (stop + 1) * h
        x, v, n = _golden_max(lambda x: modulus_at(trinomial, x), lo, hi)
        refined.append((x % period, v))
        evaluations += n

    best = max(v for _, v in refined)
    keep = sorted((x, v) for x, v in refined if v >= best * (1.0 - tol))
    radius = 1e-4 * period
    argmaxes: list[float] = []
    for x, _ in keep:
        if all(
            min(abs(x - y), period - abs(x - y)) > radius for y in argmaxes
        ):
            argmaxes.append(x)
    return OracleReport(
        value=best,
        argmaxes=tuple(sorted(argmaxes)),
        grid_size=grid_n,
        refine_tol=tol,
        evaluations=evaluations,
    )


def _simplex_grid(n: int) -> np.ndarray:
    """Strictly positive moduli triples summing to 1, on an n-subdivision grid."""
    pts = [
        (i / n, j / n, (n - i - j) / n)
        for i in range(1, n - 1)
        for j in range(1, n - i)
    ]
    return np.asarray(pts)


def _coarse_ratio_scan(
    freqs: tuple[int, int, int],
    phase_grid: np.ndarray,
    moduli: np.ndarray,
    grid_n: int,
    mult_phases: tuple[float, float, float] | None,
):
    """Scan (moduli simplex) x (middle-phase grid) of grid-max statistics.

    With mult_phases None, yields per (r, u2) the grid maximum of |T| (the
    moduli sum is 1, so this is the Sidon objective).  Otherwise yields the
    ratio grid-max|MT| / grid-max|T|.
    """
    lams = np.asarray(sorted(freqs))
    d = math.gcd(int(lams[1] - lams[0]), int(lams[2] - lams[1]))
    xs = np.linspace(0.0, TWO_PI / d, grid_n, endpoint=False)
    basis = np.exp(1j * np.outer(lams, xs))
    rows = []
    for u2 in phase_grid:
        coeff = moduli.astype(complex).copy()
        coeff[:, 1] *= np.exp(1j * u2)
        base = np.abs(coeff @ basis).max(axis=1)
        if mult_phases is None:
            rows.append(base)
        else:
            shifted = coeff * np.exp(1j * np.asarray(mult_phases))
            rows.append(np.abs(shifted @ basis).max(axis=1) / base)
    return np.asarray(rows)  # shape (len(phase_grid), len(moduli))


def _coordinate_descent(
    objective,
    point: list[float],
    bounds: list[tuple[float, float]],
    rounds: int,
    spans: list[float],
    maximize: bool,
) -> tuple[list[float], float]:
    sign = -1.0 if maximize else 1.0

    def scalar(v: float, axis: int) -> float:
        trial = list(point)
        trial[axis] = v
        return sign * objective(trial)

    best = sign * objective(point)
    for _ in range(rounds):
        for axis in range(len(point)):
            lo = max(bounds[axis][0], point[axis] - spans[axis])
            hi = min(bounds[axis][1], point[axis] + spans[axis])
            if hi <= lo:
                continue
            x, v, _ = _golden_max(lambda v: -scalar(v, axis), lo, hi, iters=48)
            if -v < best:
                best = -v
                point[axis] = x
        spans = [s * 0.5 for s in spans]
    return point, sign * best


def brute_sidon(
    frequencies: tuple[int, int, int],
    grid_phases: int = 256,
    simplex_n: int = 40,
    grid_n: int = 1024,
) -> float:
    """Empirical Sidon constant: 1 / min over moduli and phases of max|T|/(r1+r2+r3).

    Phases are searched on the middle coefficient only (the two outer phases
    can be rotated away by an isometry), over a full-turn grid followed by
    coordinate-descent refinement of (r1, r2, u2) on the unit simplex.
    """
    lams = tuple(sorted(frequencies))
    if len(set(lams)) != 3:
        raise SpectrumError(f"spectrum must have three distinct points, got {frequencies}")
    phase_grid = np.linspace(0.0, TWO_PI, grid_phases, endpoint=False)
    moduli = _simplex_grid(simplex_n)
    table = _coarse_ratio_scan(lams, phase_grid, moduli, min(grid_n, 512), None)
    p_idx, m_idx = np.unravel_index(np.argmin(table), table.shape)
    r1, r2, _ = moduli[m_idx]
    u2 = float(phase_grid[p_idx])

    eps = 1e-3

    def objective(params: list[float]) -> float:
        a, b, phi = params
        rest = 1.0 - a - b
        tri = Trinomial(*lams, a, b, rest, 0.0, phi, 0.0)
        return brute_max(tri, grid_n).value

    bounds = [(eps, 1.0 - 2 * eps), (eps, 1.0 - 2 * eps), (-math.inf, math.inf)]
    spans = [2.0 / simplex_n, 2.0 / simplex_n, 2.0 * TWO_PI / grid_phases]
    point = [float(r1), float(r2), u2]
    # keep r3 positive along the descent path
    def guarded(params: list[float]) -> float:
        a, b, phi = params
        if a + b >= 1.0 - eps:
            return math.inf
        return objective(params)

    _, best = _coordinate_descent(guarded, point, bounds, rounds=4, spans=spans, maximize=False)
    return 1.0 / best


def brute_multiplier_norm(
    frequencies: tuple[int, int, int],
    multiplier: Multiplier,
    grid_phases: int = 96,
    simplex_n: int = 20,
    grid_n: int = 1024,
) -> float:
    """Empirical multiplier norm: sup over the unit ball of max|MT| / max|T|."""
    probe = Trinomial(*frequencies, 1.0, 1.0, 1.0, *multiplier.phases)
    ts, _ = probe.sorted_by_frequency()
    lams = ts.frequencies
    mult_phases = ts.phases
    phase_grid = np.linspace(0.0, TWO_PI, grid_phases, endpoint=False)
    moduli = _simplex_grid(simplex_n)
    table = _coarse_ratio_scan(lams, phase_grid, moduli, min(grid_n, 384), mult_phases)
    p_idx, m_idx = np.unravel_index(np.argmax(table), table.shape)
    r1, r2, _ = moduli[m_idx]
    u2 = float(phase_grid[p_idx])

    eps = 1e-3

    def objective(params: list[float]) -> float:
        a, b, phi = params
        rest = 1.0 - a - b
        if rest <= eps / 2:
            return 0.0
        tri = Trinomial(*lams, a, b, rest, 0.0, phi, 0.0)
        shifted = Trinomial(
            *lams, a, b, rest,
            mult_phases[0], phi + mult_phases[1], mult_phases[2],
        )
        return brute_max(shifted, grid_n).value / brute_max(tri, grid_n).value

    bounds = [(eps, 1.0 - 2 * eps), (eps, 1.0 - 2 * eps), (-math.inf, math.inf)]
    spans = [2.0 / simplex_n, 2.0 / simplex_n, 2.0 * TWO_PI / grid_phases]
    point = [float(r1), float(r2), u2]
    _, best = _coordinate_descent(objective, point, bounds, rounds=4, spans=spans, maximize=True)
    return best


def random_trinomial(
    rng: np.random.Generator,
    max_freq: int = 12,
    modulus_range: tuple[float, float] = (1e-2, 1e2),
) -> Trinomial:
    """Random instance: distinct frequencies in [-max_freq, max_freq], log-uniform moduli."""
    while True:
        freqs = rng.integers(-max_freq, max_freq + 1, size=3)
        if len(set(freqs.tolist())) == 3:
            break
    lo, hi = math.log(modulus_range[0]), math.log(modulus_range[1])
    moduli = np.exp(rng.uniform(lo, hi, size=3))
    phases = rng.uniform(0.0, TWO_PI, size=3)
    return Trinomial(*(int(f) for f in freqs), *moduli, *phases)


def random_symmetric_pair(
    rng: np.random.Generator, max_center: int = 8
) -> Trinomial:
    """Random instance with tau = pi, outside the boundary and knife-edge branches."""
    coprime = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (1, 4), (3, 4), (1, 5)]
    while True:
        k, l = coprime[int(rng.integers(0, len(coprime)))]
        d = int(rng.integers(1, 4))
        center = int(rng.integers(-max_center, max_center + 1))
        freqs = (center - k * d, center, center + l * d)
        moduli = np.exp(rng.uniform(math.log(0.1), math.log(10.0), size=3))
        r1, r2, r3 = (float(m) for m in moduli)
        # normalised orientation for the branch tests
        kk, ll, s1, s3 = (k, l, r1, r3) if k * r1 <= l * r3 else (l, k, r3, r1)
        if abs(kk * s1 - ll * s3) <= 1e-6 * max(kk * s1, ll * s3):
            continue
        if ll == 1:
            edge = kk * kk * s1 * r2 + (kk + 1) ** 2 * s1 * s3 - r2 * s3
            scale = kk * kk * s1 * r2 + (kk + 1) ** 2 * s1 * s3 + r2 * s3
            if edge <= 1e-4 * scale:
                continue
        u1 = float(rng.uniform(0.0, TWO_PI))
        u3 = float(rng.uniform(0.0, TWO_PI))
        j = int(rng.integers(0, k + l))
        u2 = (math.pi + l * u1 + k * u3 + TWO_PI * j) / (k + l)
        return Trinomial(*freqs, r1, r2, r3, u1, u2, u3)


@dataclass(frozen=True)
class VerificationRow:
    name: str
    checked: int
    failures: int
    worst_error: float


def _circular_distance(a: float, b: float, period: float) -> float:
    return abs(math.remainder(a - b, period))


def run_verification(
    seed: int,
    count: int,
    grid_n: int = 1024,
    include_constants: bool = True,
) -> list[VerificationRow]:
    """Oracle-agreement suites: uniqueness, argmax/value agreement, symmetric
    pairs, closed forms, and (optionally) Sidon/multiplier spot checks.
    """
    from .maxmod import closed_form_k1_l1, closed_form_k2_l1, find_max_reduced
    from .spectrum import derive_spectrum_stats, make_reduced_form

    rng = np.random.default_rng(seed)
    rows: list[VerificationRow] = []

    value_fail = count_fail = pos_fail = 0
    worst_value = worst_pos = 0.0
    produced = 0
    while produced < count:
        tri = random_trinomial(rng)
        stats = derive_spectrum_stats(tri)
        if stats.tau >= math.pi - 1e-3:
            continue
        produced += 1
        analytic = max_points_global(tri)
        report = brute_max(tri, grid_n)
        if len(analytic.points) != 1 or len(report.argmaxes) != 1:
            count_fail += 1
            continue
        period = TWO_PI / stats.d
        verr = abs(analytic.value - report.value) / report.value
        perr = _circular_distance(analytic.points[0][0], report.argmaxes[0], period)
        worst_value = max(worst_value, verr)
        worst_pos = max(worst_pos, perr)
        if verr > 1e-9:
            value_fail += 1
        if perr > 1e-6:
            pos_fail += 1
    rows.append(VerificationRow("uniqueness (single max point)", count, count_fail, 0.0))
    rows.append(VerificationRow("value agreement (rel, tol 1e-9)", count, value_fail, worst_value))
    rows.append(VerificationRow("argmax agreement (tol 1e-6)", count, pos_fail, worst_pos))

    n_sym = max(50, count // 10)
    sym_fail = 0
    worst_axis = 0.0
    for _ in range(n_sym):
        tri = random_symmetric_pair(rng)
        stats = derive_spectrum_stats(tri)
        res = max_points_global(tri)
        period = TWO_PI / stats.d
        if len(res.points) != 2 or res.s is None:
            sym_fail += 1
            continue
        (x, _), (y, _) = res.points
        err = _circular_distance(x + y, res.s, period)
        worst_axis = max(worst_axis, err)
        if err > 1e-8:
            sym_fail += 1
    rows.append(VerificationRow("symmetric pair x + y = s (tol 1e-8)", n_sym, sym_fail, worst_axis))

    n_cf = max(100, count // 10)
    cf_fail = 0
    worst_cf = 0.0
    for _ in range(n_cf):
        r = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=3))
        v1, _ = closed_form_k1_l1(*r)
        form, _ = make_reduced_form(1, 1, *r, math.pi / 2)
        ref1 = find_max_reduced(form).value
        v2 = closed_form_k2_l1(*r)
        form2, _ = make_reduced_form(2, 1, *r, math.pi / 3)
        ref2 = find_max_reduced(form2).value
        err = max(abs(v1 - ref1) / ref1, abs(v2 - ref2) / ref2)
        worst_cf = max(worst_cf, err)
        if err > 1e-10:
            cf_fail += 1
    rows.append(VerificationRow("closed forms vs bisection (rel, tol 1e-10)", n_cf, cf_fail, worst_cf))

    if include_constants:
        from .constants import multiplier_norm, sidon_constant

        checks = [
            ((-1, 0, 1), None),
            ((-2, 0, 2), None),
            ((-1, 0, 1), Multiplier(0.0, math.pi / 2.0, 0.0)),
            ((-1, 0, 2), Multiplier(0.0, math.pi / 2.0, 0.0)),
        ]
        const_fail = 0
        worst_c = 0.0
        for freqs, mult in checks:
            if mult is None:
                expected, _ = sidon_constant(freqs)
                got = brute_sidon(freqs, grid_phases=128, simplex_n=24, grid_n=grid_n)
            else:
                expected, _ = multiplier_norm(freqs, mult)
                got = brute_multiplier_norm(freqs, mult)
            err = abs(got - expected)
            worst_c = max(worst_c, err)
            if err > 1e-3:
                const_fail += 1
        rows.append(
            VerificationRow("constants vs formulas (abs, tol 1e-3)", len(checks), const_fail, worst_c)
        )

    return rows
