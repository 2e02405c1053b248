"""Command-line surface: analyze | sidon | multiplier | sweep | hypotrochoid | verify.

Angles are radians unless --degrees is passed; output is always radians.
JSON output uses Python's shortest round-trip float formatting (17
significant digits where needed); human tables show 9 significant digits.
Exit codes: 0 ok, 2 invalid input, 3 verification failure.  No colour is
ever emitted, so NO_COLOR is honoured trivially; no network access and no
environment variables are required.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict

from . import __version__
from .constants import lift_to_measure, multiplier_norm, sidon_constant
from .geometry import farthest_points, hypotrochoid_sample
from .maxmod import MaxResult, max_points_global
from .oracle import brute_max, brute_sidon, run_verification
from .phasecurves import sweep_rows
from .spectrum import (
    TWO_PI,
    Multiplier,
    SpectrumError,
    Trinomial,
    canonical_reduction,
    derive_spectrum_stats,
)

SCHEMA_VERSION = 1
_EXIT_OK = 0
_EXIT_BAD_INPUT = 2
_EXIT_VERIFY_FAILED = 3


def _require_finite(obj, path="results"):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise SpectrumError(f"non-finite value at {path}: {obj}")
    elif isinstance(obj, dict):
        for key, value in obj.items():
            _require_finite(value, f"{path}.{key}")
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            _require_finite(value, f"{path}[{i}]")


def _envelope(command: str, inputs: dict, results: dict, seed: int | None = None) -> dict:
    _require_finite(results)
    return {
        "schemaVersion": SCHEMA_VERSION,
        "toolVersion": __version__,
        "command": command,
        "seed": seed,
        "input": inputs,
        "results": results,
    }


def _g9(value: float) -> str:
    return f"{value:.9g}"


def _print_table(rows: list[tuple[str, str]]) -> None:
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        print(f"{key.ljust(width)}  {value}")


def _phases(args) -> tuple[float, float, float]:
    p = tuple(args.phases) if args.phases is not None else (0.0, 0.0, 0.0)
    if getattr(args, "degrees", False):
        p = tuple(math.radians(v) for v in p)
    return p


def _trinomial_from_args(args) -> Trinomial:
    return Trinomial(*args.frequencies, *args.moduli, *_phases(args))


def _max_result_dict(res: MaxResult) -> dict:
    return {
        "points": [{"x": x, "value": v} for x, v in res.points],
        "multiplicity": res.multiplicity,
        "classification": res.classification.value,
        "s": res.s,
    }


def _cmd_analyze(args) -> int:
    trinomial = _trinomial_from_args(args)
    stats = derive_spectrum_stats(trinomial)
    form, _, transcript = canonical_reduction(trinomial)
    res = max_points_global(trinomial)
    results = {
        "spectrum": {
            "d": stats.d, "k": stats.k, "l": stats.l,
            "m": stats.m, "D": stats.D, "tau": stats.tau,
        },
        "reduced": {
            "k": form.k, "l": form.l,
            "r1": form.r1, "r2": form.r2, "r3": form.r3, "t": form.t,
        },
        "transcript": {
            "sortPermutation": list(transcript.sort_permutation),
            "alpha": transcript.alpha,
            "v": transcript.v,
            "epsilon": transcript.epsilon,
            "swapped": transcript.swapped,
            "homothety": transcript.homothety,
        },
        "max": _max_result_dict(res),
    }
    verified_ok = True
    if args.verify:
        report = brute_max(trinomial, args.grid)
        period = TWO_PI / stats.d
        value_err = abs(report.value - res.value) / report.value
        count_match = len(report.argmaxes) == len(res.points)
        pos_err = 0.0
        if count_match:
            pos_err = max(
                min(
                    abs(math.remainder(x - bx, period))
                    for bx in report.argmaxes
                )
                for x, _ in res.points
            )
        verified_ok = count_match and value_err <= 1e-8 and pos_err <= 1e-6
        results["oracle"] = {
            "value": report.value,
            "argmaxes": list(report.argmaxes),
            "gridSize": report.grid_size,
            "evaluations": report.evaluations,
            "valueError": value_err,
            "agreement": verified_ok,
        }
    if args.json:
        print(json.dumps(_envelope("analyze", _input_echo(args), results), indent=2))
    elif args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["x", "value", "multiplicity", "classification"])
        for x, v in res.points:
            writer.writerow([repr(x), repr(v), res.multiplicity, res.classification.value])
    else:
        rows = [
            ("tau", _g9(stats.tau)),
            ("d / k / l / D", f"{stats.d} / {stats.k} / {stats.l} / {stats.D}"),
            ("reduced t", _g9(form.t)),
            ("max modulus", _g9(res.value)),
            ("classification", res.classification.value),
            ("multiplicity", str(res.multiplicity)),
        ]
        for i, (x, v) in enumerate(res.points):
            rows.append((f"point {i + 1}", f"x = {_g9(x)}  |T| = {_g9(v)}"))
        if res.s is not None:
            rows.append(("symmetry axis s", _g9(res.s)))
        if args.verify:
            rows.append(("oracle agreement", str(verified_ok)))
        _print_table(rows)
    return _EXIT_OK if verified_ok else _EXIT_VERIFY_FAILED


def _cmd_sidon(args) -> int:
    constant, witness = sidon_constant(tuple(args.frequencies))
    results = {
        "constant": constant,
        "witness": {
            "frequencies": list(witness.frequencies),
            "moduli": list(witness.moduli),
            "phases": list(witness.phases),
            "attained": witness.attained,
        },
    }
    verified_ok = True
    if args.verify:
        empirical = brute_sidon(tuple(args.frequencies))
        verified_ok = abs(empirical - constant) <= 1e-3
        results["oracle"] = {"constant": empirical, "agreement": verified_ok}
    if args.json:
        print(json.dumps(_envelope("sidon", _input_echo(args), results), indent=2))
    else:
        rows = [("sidon constant", _g9(constant))]
        if args.verify:
            rows.append(("oracle constant", _g9(results["oracle"]["constant"])))
            rows.append(("oracle agreement", str(verified_ok)))
        _print_table(rows)
    return _EXIT_OK if verified_ok else _EXIT_VERIFY_FAILED


def _cmd_multiplier(args) -> int:
    freqs = tuple(args.frequencies)
    mult = Multiplier(*_phases(args))
    norm, witness = multiplier_norm(freqs, mult)
    stats = derive_spectrum_stats(Trinomial(*freqs, 1.0, 1.0, 1.0, *mult.phases))
    lift = lift_to_measure(stats.k, stats.l, stats.tau / stats.D)
    results = {
        "norm": norm,
        "tau": stats.tau,
        "D": stats.D,
        "witness": {
            "frequencies": list(witness.frequencies),
            "moduli": list(witness.moduli),
            "phases": list(witness.phases),
            "attained": witness.attained,
        },
        "measureLift": {
            "atom0": {"re": lift.atom0.real, "im": lift.atom0.imag, "abs": abs(lift.atom0)},
            "atom1": {"re": lift.atom1.real, "im": lift.atom1.imag, "abs": abs(lift.atom1)},
            "position0": lift.position0,
            "position1": lift.position1,
            "totalVariation": lift.total_variation,
        },
    }
    if args.json:
        print(json.dumps(_envelope("multiplier", _input_echo(args), results), indent=2))
    else:
        _print_table(
            [
                ("multiplier norm", _g9(norm)),
                ("tau", _g9(stats.tau)),
                ("measure atoms", f"|a0| = {_g9(abs(lift.atom0))}  |a1| = {_g9(abs(lift.atom1))}"),
                ("total variation", _g9(lift.total_variation)),
            ]
        )
    return _EXIT_OK


def _cmd_sweep(args) -> int:
    trinomial = Trinomial(*args.frequencies, *args.moduli)
    form, _, _ = canonical_reduction(trinomial)
    rows = sweep_rows(form.k, form.l, form.r1, form.r2, form.r3, args.n)
    if args.json:
        results = {"rows": [asdict(row) for row in rows]}
        print(json.dumps(_envelope("sweep", _input_echo(args), results), indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["tau", "t", "fstar", "ratio", "bound"])
        for row in rows:
            writer.writerow([repr(row.tau), repr(row.t), repr(row.fstar), repr(row.ratio), repr(row.bound)])
    return _EXIT_OK


def _cmd_hypotrochoid(args) -> int:
    trinomial = _trinomial_from_args(args)
    curve = hypotrochoid_sample(trinomial, args.n)
    farthest = farthest_points(trinomial)
    if args.json:
        results = {
            "cuspCount": curve.cusp_count,
            "closed": curve.closed,
            "samples": [{"x": x, "re": z.real, "im": z.imag} for x, z in curve.samples],
            "farthest": [{"x": x, "distance": dist} for x, dist in farthest],
        }
        print(json.dumps(_envelope("hypotrochoid", _input_echo(args), results), indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["x", "re", "im"])
        for x, z in curve.samples:
            writer.writerow([repr(x), repr(z.real), repr(z.imag)])
    return _EXIT_OK


def _cmd_verify(args) -> int:
    rows = run_verification(args.seed, args.count, args.grid)
    failed = sum(row.failures for row in rows)
    if args.json:
        results = {
            "rows": [asdict(row) for row in rows],
            "failures": failed,
        }
        print(json.dumps(_envelope("verify", _input_echo(args), results, seed=args.seed), indent=2))
    else:
        name_w = max(len(r.name) for r in rows)
        print(f"{'suite'.ljust(name_w)}  checked  failures  worst error")
        for row in rows:
            print(
                f"{row.name.ljust(name_w)}  {str(row.checked).rjust(7)}"
                f"  {str(row.failures).rjust(8)}  {_g9(row.worst_error)}"
            )
        print(f"total failures: {failed}")
    return _EXIT_OK if failed == 0 else _EXIT_VERIFY_FAILED


def _input_echo(args) -> dict:
    echo: dict = {}
    for key in ("frequencies", "moduli", "phases"):
        if getattr(args, key, None) is not None:
            echo[key] = list(getattr(args, key))
    if getattr(args, "degrees", False):
        echo["degrees"] = True
    for key in ("n", "grid", "seed", "count"):
        if hasattr(args, key):
            echo[key] = getattr(args, key)
    return echo


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinomax",
        description="Maximum-modulus analysis of trigonometric trinomials",
    )
    parser.add_argument("--version", action="version", version=f"trinomax {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spectrum(p, moduli=True, phases=True):
        p.add_argument("-l", "--frequencies", dest="frequencies", type=int, nargs=3,
                       required=True, metavar=("L1", "L2", "L3"))
        if moduli:
            p.add_argument("-r", "--moduli", dest="moduli", type=float, nargs=3,
                           required=True, metavar=("R1", "R2", "R3"))
        if phases:
            p.add_argument("-p", "--phases", dest="phases", type=float, nargs=3,
                           metavar=("T1", "T2", "T3"))
            p.add_argument("--degrees", action="store_true",
                           help="interpret input phases in degrees (output stays radians)")

    p = sub.add_parser("analyze", help="spectrum stats, reduction and maximum points")
    add_spectrum(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
    p.add_argument("--grid", type=int, default=2048)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sidon", help="Sidon constant of the spectrum with its witness")
    add_spectrum(p, moduli=False, phases=False)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="compare against the brute-force search")
    p.set_defaults(func=_cmd_sidon)

    p = sub.add_parser("multiplier", help="norm of a unimodular phase multiplier")
    add_spectrum(p, moduli=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_multiplier)

    p = sub.add_parser("sweep", help="maximum modulus as the phase invariant sweeps [0, pi]")
    add_spectrum(p, phases=False)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("hypotrochoid", help="sample the outer-coefficient curve")
    add_spectrum(p)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_hypotrochoid)

    p = sub.add_parser("verify", help="run the oracle-agreement suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpectrumError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": {"message": str(exc), "command": args.command}}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BAD_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
