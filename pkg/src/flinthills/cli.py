"""Command-line surface.

Subcommands: expand, convergents, measure, audit, kernel, shift, recip-sin,
gamma-reflect, series, stats, verify.  Exit codes: 0 success, 1 domain error,
2 usage error.  All numeric output is deterministic for a given invocation.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import cache as cache_mod
from . import contfrac, diophantine, kernels, series, stats
from .errors import FlintHillsError
from .mpreal import make_context
from .output import DEFAULT_SIGNIFICANT_DIGITS, emit_rows

DEFAULT_DIGITS = 50

_FIXTURE_DEFAULTS = {
    "numerators": ("A002485.txt", 2),
    "denominators": ("A002486.txt", 2),
    "lacunary": ("A046947.txt", 1),
}


def _add_common(p: argparse.ArgumentParser, digits_default=None):
    p.add_argument("--digits", type=int, default=digits_default,
                   help="working precision in decimal digits (default: sized to the request)")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain",
                   help="output format (default plain)")
    p.add_argument("--full", action="store_true",
                   help="print all context digits instead of 6 significant digits")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="flinthills",
        description="Arbitrary-precision continued fractions of pi, empirical "
                    "irrationality measures, summation kernels, and Flint Hills sums.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="certified partial quotients of a constant")
    p.add_argument("--constant", choices=contfrac.KNOWN_CONSTANTS, default="pi")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--cache-write", action="store_true", help="store the expansion in the cache")
    _add_common(p)

    p = sub.add_parser("convergents", help="exact convergents p_n/q_n")
    p.add_argument("--constant", choices=contfrac.KNOWN_CONSTANTS, default="pi")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--cache-read", action="store_true", help="reuse a cached expansion when fresh enough")
    _add_common(p)

    p = sub.add_parser("measure", help="empirical irrationality measure table")
    p.add_argument("--constant", choices=contfrac.KNOWN_CONSTANTS, default="pi")
    p.add_argument("--terms", type=int, default=25)
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("audit", help="approximation inequality audit over convergents")
    p.add_argument("--constant", choices=contfrac.KNOWN_CONSTANTS, default="pi")
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--start", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("kernel", help="Dirichlet/Fejer kernel values, or the cf-shift audit")
    p.add_argument("--type", choices=("dirichlet", "fejer", "cf"), required=True)
    p.add_argument("--x", default=None, help="kernel order (integer enables the sum form)")
    p.add_argument("--z", default=None, help="kernel argument (decimal)")
    p.add_argument("--d", type=int, default=None, help="cf technique: parameter d > 16 pi^4")
    p.add_argument("--m-max", type=int, default=10, help="cf technique: convergents to audit")
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("shift", help="2-adic shift sequence report over p_n")
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--technique", choices=("real", "integer"), default="real")
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("recip-sin", help="reciprocal sine table over p_n")
    p.add_argument("--n-max", type=int, default=25)
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("gamma-reflect", help="gamma reflection products over p_n")
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--no-cross-check", action="store_true",
                   help="skip the independent gamma product check on the first rows")
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("series", help="partial sums of the Flint Hills family")
    p.add_argument("family", choices=("flint", "lacunary", "alpha-pi", "flat-power", "flat-scaled"))
    p.add_argument("--u", type=float, default=3.0)
    p.add_argument("--v", type=float, default=2.0)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--alpha", choices=contfrac.KNOWN_CONSTANTS, default="sqrt2",
                   help="alpha for the alpha-pi family")
    p.add_argument("--measure", type=float, default=None,
                   help="irrationality measure of alpha (for --report)")
    p.add_argument("--arg", choices=("nearest", "frac"), default="nearest",
                   help="flat families: nearest-integer distance or fractional part")
    p.add_argument("--flat-base", type=int, default=10)
    p.add_argument("--points", default=None,
                   help="comma-separated checkpoints; emits (x, partial sum) pairs")
    p.add_argument("--report", action="store_true", help="emit convergence diagnostics instead")
    _add_common(p, digits_default=DEFAULT_DIGITS)

    p = sub.add_parser("stats", help="partial-quotient statistics")
    p.add_argument("--constant", choices=contfrac.KNOWN_CONSTANTS, default="pi")
    p.add_argument("--terms", type=int, default=10000)
    p.add_argument("--histogram", action="store_true", help="emit the value histogram rows")
    _add_common(p)

    p = sub.add_parser("verify", help="compare a computed sequence against an OEIS b-file")
    p.add_argument("--sequence", choices=tuple(_FIXTURE_DEFAULTS), required=True)
    p.add_argument("--fixture", default=None, help="b-file path (default: bundled fixture)")
    p.add_argument("--terms", type=int, default=25)
    _add_common(p)
    return ap


def _sig(args, ctx) -> int:
    return ctx.decimal_digits if args.full else DEFAULT_SIGNIFICANT_DIGITS


def _auto_digits(args, terms: int) -> int:
    if args.digits is not None:
        return args.digits  # below-minimum values fail in make_context with the real message
    return max(DEFAULT_DIGITS, contfrac.digits_for_terms(terms))


def _resolve_fixture(name_or_path, default_name: str) -> Path:
    if name_or_path is not None:
        given = Path(name_or_path)
        if given.exists():
            return given
        candidate = resources.files("flinthills").joinpath(f"fixtures/{given.name}")
        if candidate.is_file():
            return Path(str(candidate))
        raise FlintHillsError(f"fixture not found: {name_or_path}")
    return Path(str(resources.files("flinthills").joinpath(f"fixtures/{default_name}")))


def _quotients_for(args, terms: int, use_cache: bool = False):
    digits = _auto_digits(args, terms)
    if use_cache:
        cached = cache_mod.load_quotients(args.constant, terms, min_precision=0)
        if cached is not None:
            return cached
    ctx = make_context(digits)
    pq = contfrac.expand(
        contfrac.constant_value(args.constant, ctx), terms, ctx, constant_id=args.constant
    )
    if len(pq.terms) < terms:
        raise FlintHillsError(
            f"certified only {len(pq.terms)} of {terms} terms; raise --digits"
        )
    return pq


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_expand(args, out):
    pq = _quotients_for(args, args.terms)
    if args.cache_write:
        cache_mod.write_entry(pq)
    rows = [{"k": i, "a": a} for i, a in enumerate(pq.terms)]
    ctx = make_context(_auto_digits(args, args.terms))
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_convergents(args, out):
    pq = _quotients_for(args, args.terms, use_cache=args.cache_read)
    convs = contfrac.convergents(pq, args.terms)
    rows = [{"n": c.index + 1, "p": c.p, "q": c.q} for c in convs]
    ctx = make_context(30)
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_measure(args, out):
    digits = _auto_digits(args, args.terms)
    ctx = make_context(max(digits, contfrac.digits_for_terms(args.terms)))
    points = diophantine.measure_table(args.constant, args.terms, ctx)
    rows = [
        {"n": m.index, "p": m.p, "q": m.q, "error": m.error, "mu_hat": m.mu_hat}
        for m in points
    ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_audit(args, out):
    report = diophantine.inequality_audit(args.constant, (args.start, args.n_max))
    rows = [
        {
            "n": r.index,
            "p": r.p,
            "q": r.q,
            "error": r.error,
            "dirichlet_lower": r.dirichlet_lower,
            "dirichlet_upper": r.dirichlet_upper,
            "dirichlet_ok": r.dirichlet_ok,
            "hurwitz_ok": r.hurwitz_ok,
            "shifted_value": r.shifted_value,
            "shifted_lower": r.shifted_lower,
            "shifted_upper": r.shifted_upper,
            "shifted_ok": r.shifted_ok,
        }
        for r in report.rows
    ]
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    print(
        f"dirichlet_ok={report.all_dirichlet_ok} shifted_ok={report.all_shifted_ok} "
        f"hurwitz_count={report.hurwitz_count}/{len(report.rows)}",
        file=sys.stderr,
    )
    return 0


def _cmd_kernel(args, out):
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    if args.type == "cf":
        if args.d is None:
            raise FlintHillsError("--d is required for --type cf")
        report = kernels.cf_technique_check(args.d, args.m_max, ctx)
        rows = [
            {
                "m": r.index,
                "u": r.u,
                "v": r.v,
                "value": r.value,
                "distance": r.distance,
                "within_bound": r.within_bound,
                "abs_sin": r.abs_sin,
            }
            for r in report.rows
        ]
        out.write(emit_rows(rows, args.format, _sig(args, ctx)))
        return 0
    if args.x is None or args.z is None:
        raise FlintHillsError("--x and --z are required for kernel evaluation")
    x = int(args.x) if args.x.lstrip("+-").isdigit() else ctx.mpf(args.x)
    z = ctx.mpf(args.z)
    if args.type == "dirichlet":
        result = kernels.dirichlet_kernel(x, z, ctx)
    else:
        if not isinstance(x, int):
            raise FlintHillsError("the Fejer kernel needs an integer --x")
        result = kernels.fejer_kernel(x, z, ctx)
    rows = [
        {
            "kernel": args.type,
            "x": result.x_param,
            "z": result.z,
            "closed_form": result.closed_form,
            "sum_form": result.sum_form,
            "abs_bound": result.abs_bound,
        }
    ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_shift(args, out):
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    if args.technique == "real":
        report = kernels.recip_sin_bound_real_technique(args.n_max, ctx)
        rows = [
            {
                "n": r.index,
                "p": r.p,
                "v2": r.v2,
                "w_odd": r.w % 2 == 1,
                "shift_residual": max(r.sin_residual, r.cos_residual),
                "recip_sin": r.recip_sin,
                "ratio": r.ratio,
            }
            for r in report.rows
        ]
    else:
        report = kernels.recip_sin_bound_integer_technique(args.n_max, ctx)
        rows = [
            {
                "n": r.index,
                "p": r.p,
                "floor_x": r.floor_x,
                "argument": r.argument,
                "abs_sin": r.abs_sin,
            }
            for r in report.rows
        ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_recip_sin(args, out):
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    rows = [
        {
            "n": r.index,
            "p": r.p,
            "recip_sin": r.recip_sin,
            "recip_inv_sin": r.recip_inv_sin,
            "ratio": r.ratio,
        }
        for r in series.recip_sin_table(args.n_max, ctx)
    ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_gamma_reflect(args, out):
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    rows = [
        {"n": r.index, "p": r.p, "reflection": r.reflection, "scaled_ratio": r.scaled_ratio}
        for r in series.gamma_reflection_table(
            args.n_max, ctx, cross_check=not args.no_cross_check
        )
    ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_series(args, out):
    ctx = make_context(args.digits or DEFAULT_DIGITS)
    family = args.family.replace("-", "_")
    if args.points is not None:
        if family != "flint":
            raise FlintHillsError("--points supports the flint family")
        checkpoints = sorted({int(t) for t in args.points.split(",") if t.strip()})
        if not checkpoints:
            raise FlintHillsError("no valid checkpoints in --points")
        pairs = series.flint_partial_sum_checkpoints(args.u, args.v, checkpoints, ctx)
        rows = [{"x": x, "partial_sum": value} for x, value in pairs]
        out.write(emit_rows(rows, args.format, _sig(args, ctx)))
        return 0
    if family == "flint":
        result = series.flint_partial_sum(args.u, args.v, args.limit, ctx)
    elif family == "lacunary":
        count = 30
        convs = contfrac.constant_convergents("pi", count)
        while convs[-1].p <= args.limit:
            count += 30
            convs = contfrac.constant_convergents("pi", count)
        numerators = [1] + [c.p for c in convs]
        result = series.lacunary_partial_sum(args.u, args.v, args.limit, numerators, ctx)
    elif family == "alpha_pi":
        alpha = contfrac.constant_value(args.alpha, ctx)
        result = series.alpha_pi_partial_sum(args.u, args.v, alpha, args.limit, ctx)
    else:
        kind = "power" if family == "flat_power" else "scaled"
        variant = f"{args.arg}_{kind}"
        result = series.flat_hills_partial_sum(
            variant, args.u, args.v, args.limit, ctx, base=args.flat_base
        )
    if args.report:
        diag = series.convergence_report(result.spec, ctx, measure=args.measure)
        rows = [
            {
                "family": diag.family,
                "u": diag.u,
                "v": diag.v,
                "measure": diag.measure,
                "exponent": diag.exponent,
                "predicted_convergent": diag.predicted_convergent,
                "lacunary_tail_bound": diag.lacunary_tail_bound,
                "partial_sum": diag.partial_sum,
                "half_sum": diag.half_sum,
                "relative_change": diag.last_decade_relative_change,
            }
        ]
    else:
        largest_idx, largest = result.largest_term if result.largest_term else (None, None)
        rows = [
            {
                "family": family,
                "u": args.u,
                "v": args.v,
                "limit": result.x,
                "value": result.value,
                "largest_term_index": largest_idx,
                "largest_term": largest,
                "compensation_residual": result.compensation_residual,
            }
        ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_stats(args, out):
    pq = _quotients_for(args, args.terms + 1)
    ctx = make_context(30)
    histogram = stats.quotient_histogram(pq, args.terms)
    if args.histogram:
        rows = [
            {
                "value": k if k != -1 else f">{stats.HISTOGRAM_OVERFLOW}",
                "count": v,
                "frequency": ctx.mpf(v) / args.terms,
                "gauss_kuzmin": histogram.gk_expected.get(k),
            }
            for k, v in sorted(histogram.histogram.items(), key=lambda kv: (kv[0] == -1, kv[0]))
        ]
        out.write(emit_rows(rows, args.format, _sig(args, ctx)))
        return 0
    gm10 = stats.running_geometric_mean(pq, min(10, args.terms))
    gm20 = stats.running_geometric_mean(pq, min(20, args.terms))
    gmn = stats.running_geometric_mean(pq, args.terms)
    rows = [
        {"statistic": "terms", "value": args.terms},
        {"statistic": "geometric_mean_10", "value": gm10},
        {"statistic": "geometric_mean_20", "value": gm20},
        {"statistic": f"geometric_mean_{args.terms}", "value": gmn},
        {"statistic": "geometric_mean_proper", "value": histogram.geometric_mean},
        {"statistic": "max_term_position", "value": histogram.max_term[0]},
        {"statistic": "max_term_value", "value": histogram.max_term[1]},
        {"statistic": "freq_1_plus_2", "value": histogram.freq_low},
        {"statistic": "gk_1_plus_2", "value": stats.gauss_kuzmin_p(1) + stats.gauss_kuzmin_p(2)},
    ]
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0


def _cmd_verify(args, out):
    default_name, offset = _FIXTURE_DEFAULTS[args.sequence]
    fixture = _resolve_fixture(args.fixture, default_name)
    convs = contfrac.constant_convergents("pi", args.terms)
    if args.sequence == "numerators":
        seq = [c.p for c in convs]
    elif args.sequence == "denominators":
        seq = [c.q for c in convs]
    else:
        seq = [1] + [c.p for c in convs]
    report = contfrac.verify_fixture(seq, fixture, index_offset=offset)
    rows = [
        {
            "fixture": report.fixture_path,
            "compared": report.compared,
            "mismatches": len(report.mismatches),
            "passed": report.passed,
        }
    ]
    rows += [
        {"fixture": f"index {idx}", "compared": expected, "mismatches": got, "passed": False}
        for idx, expected, got in report.mismatches
    ]
    ctx = make_context(30)
    out.write(emit_rows(rows, args.format, _sig(args, ctx)))
    return 0 if report.passed else 1


_COMMANDS = {
    "expand": _cmd_expand,
    "convergents": _cmd_convergents,
    "measure": _cmd_measure,
    "audit": _cmd_audit,
    "kernel": _cmd_kernel,
    "shift": _cmd_shift,
    "recip-sin": _cmd_recip_sin,
    "gamma-reflect": _cmd_gamma_reflect,
    "series": _cmd_series,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
}


def run(argv, out=None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except FlintHillsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
