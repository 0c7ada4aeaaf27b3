"""Command-line interface.

Subcommands map onto the library surface: ``classify`` compares two points,
``exact`` evaluates closed-form dominance probabilities, ``estimate`` runs
the Monte Carlo estimators, ``integral`` checks the solid-simplex mean,
``identities`` verifies the algebraic identities on random inputs,
``enumerate`` lists monomial families, and ``figure`` classifies a lattice
against a reference point, writing CSV and (for three-coordinate points)
a PNG rendering.

Reports are JSON with the fixed key order ``command, parameters, result,
exact?, z_score?, manifest``.  Exit codes: 0 success, 2 input error, 3 size
ceiling exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from .analytics import (
    alternating_identity_terms,
    fosd_comparability_probability,
    knuth_power_sum_terms,
    mlr_comparability_probability,
    mlr_dominance_probability,
    mlr_dominance_probability_restricted,
    mlr_integral_constant,
)
from .core import (
    DomainError,
    OrderKind,
    Scalar,
    ScalarMode,
    SimplexOrderError,
    SimplexPoint,
    SizeLimitError,
    parse_scalar,
)
from .monomials import (
    EXACT_FOSD_MAX_N,
    catalan_count,
    enumerate_H,
    fosd_dominance_probability,
)
from .montecarlo import (
    SamplerConfig,
    classify_grid,
    comparable_fraction,
    estimate_comparability,
    estimate_dominance,
    estimate_dominance_restricted,
    estimate_integral_mean,
)
from .orders import compare
from .reporting import build_report, canonical_json, format_scalar

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SIZE = 3
EXIT_VERIFY = 4

FLOAT_IDENTITY_TOL = 1e-10


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--mode",
        choices=["float", "rational"],
        default=None,
        help="arithmetic mode; default: rational when any scalar is p/q",
    )
    sub.add_argument(
        "--format",
        choices=["json", "csv", "table"],
        default=None,
        help="output format (default json; enumerate and figure default csv)",
    )
    sub.add_argument("--out", default=None, help="write primary output to this file")
    sub.add_argument(
        "--u",
        default="1",
        help="simplex size; points summing to 1 are rescaled to u",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexorder",
        description="Stochastic orders on the probability simplex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="compare two points under an order")
    p.add_argument("--order", choices=["fosd", "mlr"], required=True)
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.add_argument("--y", required=True, help="comma-separated coordinates")
    _add_common(p)

    p = sub.add_parser("exact", help="closed-form dominance probability")
    p.add_argument("--order", choices=["fosd", "mlr"], required=True)
    p.add_argument("--point", required=True, help="reference point coordinates")
    p.add_argument("--b", default=None, help="cap on the last coordinate (mlr only)")
    _add_common(p)

    p = sub.add_parser("estimate", help="Monte Carlo estimate")
    p.add_argument("--order", choices=["fosd", "mlr"], required=True)
    p.add_argument("--point", default=None, help="reference point for dominance")
    p.add_argument(
        "--n", type=int, default=None, help="dimension index for comparability"
    )
    p.add_argument("--b", default=None, help="cap on the last coordinate (mlr only)")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("integral", help="solid-simplex mean of the MLR product")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("identities", help="verify the algebraic identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=12345)
    _add_common(p)

    p = sub.add_parser("enumerate", help="list a monomial family as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("figure", help="classify a lattice against a point")
    p.add_argument("--point", required=True, help="reference point coordinates")
    p.add_argument("--order", choices=["fosd", "mlr"], required=True)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument(
        "--no-render", action="store_true", help="skip the PNG rendering"
    )
    _add_common(p)

    return parser


def _mode_for(args, *scalar_texts: str | None) -> ScalarMode:
    if args.mode == "rational":
        return ScalarMode.EXACT_RATIONAL
    if args.mode == "float":
        return ScalarMode.FLOAT64
    for text in scalar_texts:
        if text and "/" in text:
            return ScalarMode.EXACT_RATIONAL
    return ScalarMode.FLOAT64


def _parse_point(text: str, u: Scalar, mode: ScalarMode) -> SimplexPoint:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) < 2:
        raise DomainError(f"a point needs at least two coordinates, got {text!r}")
    coords = [parse_scalar(p, mode) for p in parts]
    total = sum(coords)
    if mode is ScalarMode.EXACT_RATIONAL:
        if total == u:
            return SimplexPoint(tuple(coords), u)
        if total == 1 and u != 1:
            return SimplexPoint(tuple(c * u for c in coords), u)
        raise DomainError(
            f"coordinates sum to {total}, expected {u} (or 1, to be rescaled)"
        )
    uf = float(u)
    tf = math.fsum(float(c) for c in coords)
    if abs(tf - uf) <= 1e-12 * uf:
        return SimplexPoint(tuple(coords), uf)
    if abs(tf - 1.0) <= 1e-12 and uf != 1.0:
        return SimplexPoint(tuple(float(c) * uf for c in coords), uf)
    raise DomainError(
        f"coordinates sum to {tf!r}, expected {uf!r} (or 1, to be rescaled)"
    )


def _mode_name(mode: ScalarMode) -> str:
    return "rational" if mode is ScalarMode.EXACT_RATIONAL else "float"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _render_report(args, report: dict) -> None:
    fmt = args.format or "json"
    if fmt == "json":
        _emit(args, canonical_json(report))
        return
    if fmt == "table":
        lines = []
        for key, value in report["result"].items():
            lines.append(f"{key} = {value}")
        for key in ("exact", "z_score"):
            if key in report:
                lines.append(f"{key} = {report[key]}")
        _emit(args, "\n".join(lines) + "\n")
        return
    # csv: one header row and one value row from the flattened result.
    flat = dict(report["result"])
    for key in ("exact", "z_score"):
        if key in report:
            flat[key] = report[key]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(flat.keys())
    writer.writerow(
        [";".join(str(v) for v in val) if isinstance(val, list) else val
         for val in flat.values()]
    )
    _emit(args, buf.getvalue())


def _scalar_args(**kwargs) -> dict:
    out = {}
    for key, value in kwargs.items():
        if value is None:
            continue
        if isinstance(value, (Fraction, float)):
            out[key] = format_scalar(value)
        else:
            out[key] = value
    return out


def cmd_classify(args) -> int:
    mode = _mode_for(args, args.x, args.y, args.u)
    u = parse_scalar(args.u, mode)
    x = _parse_point(args.x, u, mode)
    y = _parse_point(args.y, u, mode)
    relation = compare(x, y, OrderKind(args.order))
    params = _scalar_args(order=args.order, x=args.x, y=args.y, u=u)
    report = build_report(
        "classify", params, {"relation": relation.value}, _mode_name(mode)
    )
    _render_report(args, report)
    return EXIT_OK


def cmd_exact(args) -> int:
    mode = _mode_for(args, args.point, args.b, args.u)
    u = parse_scalar(args.u, mode)
    point = _parse_point(args.point, u, mode)
    order = OrderKind(args.order)
    if args.b is not None and order is not OrderKind.MLR:
        raise DomainError("--b only applies to the mlr order")
    if order is OrderKind.FOSD:
        value = fosd_dominance_probability(point)
    elif args.b is None:
        value = mlr_dominance_probability(point)
    else:
        b = parse_scalar(args.b, mode)
        value = mlr_dominance_probability_restricted(point, b)
    params = _scalar_args(order=args.order, point=args.point, b=args.b, u=u)
    report = build_report(
        "exact", params, {"probability": format_scalar(value)}, _mode_name(mode)
    )
    _render_report(args, report)
    return EXIT_OK


def _z_score(estimate: float, exact_value: float, se: float) -> float | None:
    if se > 0:
        return (estimate - exact_value) / se
    if estimate == exact_value:
        return 0.0
    return None


def cmd_estimate(args) -> int:
    order = OrderKind(args.order)
    mode = _mode_for(args, args.point, args.b, args.u)
    u = parse_scalar(args.u, mode)
    point = _parse_point(args.point, u, mode) if args.point else None
    if point is None and args.n is None:
        raise DomainError("estimate needs --point (dominance) or --n (comparability)")
    if point is not None and args.n is not None and args.n != point.n:
        raise DomainError(f"--n {args.n} contradicts the point (n = {point.n})")
    n = point.n if point is not None else args.n
    if args.b is not None and (order is not OrderKind.MLR or point is None):
        raise DomainError("--b only applies to mlr dominance with --point")
    config = SamplerConfig(
        n=n, samples=args.samples, seed=args.seed, u=float(u), workers=args.workers
    )
    exact_value: Scalar | None = None
    if point is None:
        result = estimate_comparability(order, config)
        exact_value = (
            fosd_comparability_probability(n)
            if order is OrderKind.FOSD
            else mlr_comparability_probability(n)
        )
    elif args.b is not None:
        b = parse_scalar(args.b, mode)
        result = estimate_dominance_restricted(point, float(b), config)
        try:
            exact_value = mlr_dominance_probability_restricted(point, b)
        except DomainError:
            exact_value = None
    else:
        result = estimate_dominance(point, order, config)
        if order is OrderKind.FOSD:
            try:
                exact_value = fosd_dominance_probability(point)
            except SizeLimitError:
                exact_value = None
        else:
            try:
                exact_value = mlr_dominance_probability(point)
            except DomainError:
                exact_value = None
    params = _scalar_args(
        order=args.order,
        point=args.point,
        n=n,
        b=args.b,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
        u=u,
    )
    exact_text = format_scalar(exact_value) if exact_value is not None else None
    z = (
        _z_score(result.estimate, float(exact_value), result.std_error)
        if exact_value is not None
        else None
    )
    report = build_report(
        "estimate", params, result.to_json_dict(), _mode_name(mode), exact_text, z
    )
    _render_report(args, report)
    return EXIT_OK


def cmd_integral(args) -> int:
    mode = _mode_for(args, args.u)
    u = parse_scalar(args.u, mode)
    config = SamplerConfig(
        n=args.n, samples=args.samples, seed=args.seed, u=float(u), workers=args.workers
    )
    result = estimate_integral_mean(config)
    exact_value = Fraction(1, math.factorial(args.n))
    z = _z_score(result.estimate, float(exact_value), result.std_error)
    params = _scalar_args(
        n=args.n, samples=args.samples, seed=args.seed, workers=args.workers, u=u
    )
    report = build_report(
        "integral",
        params,
        result.to_json_dict(),
        _mode_name(mode),
        format_scalar(exact_value),
        z,
    )
    _render_report(args, report)
    return EXIT_OK


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 999), rng.randint(1, 999))


def cmd_identities(args) -> int:
    mode = (
        ScalarMode.EXACT_RATIONAL if args.mode == "rational" else ScalarMode.FLOAT64
    )
    if args.n < 1:
        raise DomainError(f"--n must be >= 1, got {args.n}")
    rng = random.Random(args.seed)
    exact = mode is ScalarMode.EXACT_RATIONAL
    alt_abs = Fraction(0) if exact else 0.0
    alt_rel = Fraction(0) if exact else 0.0
    pow_abs = Fraction(0) if exact else 0.0
    pow_rel = Fraction(0) if exact else 0.0
    length = args.n + 1
    for _ in range(args.trials):
        if exact:
            vec = [_random_fraction(rng) for _ in range(length)]
        else:
            vec = [rng.uniform(0.05, 1.05) for _ in range(length)]
        terms = alternating_identity_terms(vec)
        residual = math.fsum(terms) if not exact else sum(terms)
        scale = max(abs(t) for t in terms)
        alt_abs = max(alt_abs, abs(residual))
        alt_rel = max(alt_rel, abs(residual) / scale)

        while True:
            if exact:
                xs = [_random_fraction(rng) for _ in range(length)]
            else:
                xs = [rng.uniform(0.05, 1.05) for _ in range(length)]
            if len(set(xs)) == length:
                break
        for r in range(0, length + 1):
            terms = knuth_power_sum_terms(xs, r)
            value = math.fsum(terms) if not exact else sum(terms)
            if r < length - 1:
                expected = Fraction(0) if exact else 0.0
            elif r == length - 1:
                expected = Fraction(1) if exact else 1.0
            else:
                expected = sum(xs) if exact else math.fsum(xs)
            err = abs(value - expected)
            scale = max(1 if exact else 1.0, max(abs(t) for t in terms))
            pow_abs = max(pow_abs, err)
            pow_rel = max(pow_rel, err / scale)
    if exact:
        ok = alt_abs == 0 and pow_abs == 0
    else:
        ok = alt_rel <= FLOAT_IDENTITY_TOL and pow_rel <= FLOAT_IDENTITY_TOL
    params = {"n": args.n, "trials": args.trials, "seed": args.seed}
    result = {
        "alternating": {
            "max_abs_residual": format_scalar(alt_abs),
            "max_rel_residual": format_scalar(alt_rel),
        },
        "power_sum": {
            "max_abs_error": format_scalar(pow_abs),
            "max_rel_error": format_scalar(pow_rel),
        },
        "tolerance": 0.0 if exact else FLOAT_IDENTITY_TOL,
        "pass": ok,
    }
    report = build_report("identities", params, result, _mode_name(mode))
    _render_report(args, report)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_enumerate(args) -> int:
    if args.n > EXACT_FOSD_MAX_N:
        raise SizeLimitError(
            f"enumeration is limited to n <= {EXACT_FOSD_MAX_N}, got {args.n}"
        )
    family = enumerate_H(args.k, args.n)
    count = len(family)
    summary = f"count={count}"
    if args.k == args.n:
        cat = catalan_count(args.n)
        status = "OK" if count == cat else "MISMATCH"
        summary = f"count={count} catalan={cat} {status}"
    fmt = args.format or "csv"
    if fmt == "json":
        rows = [
            {"degrees": list(wm.monomial.degrees), "coefficient": wm.coefficient}
            for wm in family
        ]
        params = {"k": args.k, "n": args.n}
        report = build_report(
            "enumerate",
            params,
            {"rows": rows, "count": count, "summary": summary},
            "rational",
        )
        _emit(args, canonical_json(report))
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([f"d{i}" for i in range(args.n)] + ["coefficient"])
    for wm in family:
        writer.writerow(list(wm.monomial.degrees) + [wm.coefficient])
    if args.out:
        Path(args.out).write_text(buf.getvalue())
        sys.stdout.write(summary + "\n")
    else:
        sys.stdout.write(buf.getvalue())
        sys.stdout.write(summary + "\n")
    return EXIT_OK


def cmd_figure(args) -> int:
    mode = _mode_for(args, args.point, args.u)
    u = parse_scalar(args.u, mode)
    point = _parse_point(args.point, u, mode)
    order = OrderKind(args.order)
    rows = classify_grid(point, args.resolution, order)
    fraction = comparable_fraction(rows)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([f"x{i}" for i in range(point.n + 1)] + ["relation"])
    for grid_point, relation in rows:
        writer.writerow(
            [format(float(c), ".17g") for c in grid_point.coords]
            + [relation.value]
        )
    png_path: str | None = None
    if args.out:
        Path(args.out).write_text(buf.getvalue())
        if not args.no_render and point.n == 2:
            from .plotting import render_classification_png

            png_path = str(Path(args.out).with_suffix(".png"))
            render_classification_png(rows, point, order.value, png_path)
        params = _scalar_args(
            order=args.order,
            point=args.point,
            resolution=args.resolution,
            u=u,
        )
        result = {
            "comparable_fraction": fraction,
            "points": len(rows),
            "csv": args.out,
            "png": png_path,
        }
        report = build_report("figure", params, result, _mode_name(mode))
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(f"comparable_fraction={format_scalar(fraction)}\n")
    return EXIT_OK


_COMMANDS = {
    "classify": cmd_classify,
    "exact": cmd_exact,
    "estimate": cmd_estimate,
    "integral": cmd_integral,
    "identities": cmd_identities,
    "enumerate": cmd_enumerate,
    "figure": cmd_figure,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SizeLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SIZE
    except (DomainError, SimplexOrderError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
