"""Command-line entry point: ``realrank <subcommand> ...``.

Results are printed as JSON run reports.  Exit codes: 0 success, 1 a
checked invariant failed, 2 usage or parse error, 3 a real singular point,
4 a certification that stayed inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from . import experiments as E
from .apolarity import Decomposition, IntervalDecomposition, complex_rank
from .constructions import (
    PencilPoint,
    SpaceCurveP3,
    projected_complex_rank,
    projected_real_rank,
    real_fiber_bijectivity_check,
    sample_max_rank_evidence,
    verify_sos_discriminant,
)
from .errors import InconclusiveError, RealRankError, SingularCurveError
from .poly_core import BinaryForm
from .real_rank import (
    HyperbolicityWitness,
    RankCertificate,
    all_directional_derivatives_hyperbolic,
    interlaces,
    is_hyperbolic,
    pencil_non_hyperbolic_member,
    real_rank,
)

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_SINGULAR, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
RUN_SCHEMA = "realrank.run/1"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {text!r}") from e


def parse_coeffs(text: str, degree: Optional[int] = None) -> BinaryForm:
    """Comma-separated coefficients of x^d, x^(d-1) y, ..., y^d."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("empty coefficient list")
    f = BinaryForm(tuple(parse_rational(p) for p in parts))
    if degree is not None and f.degree != degree:
        raise UsageError(f"{len(parts)} coefficients do not describe a form of degree {degree}")
    return f


def load_form(coeffs: Optional[str], path: Optional[str], degree: Optional[int], what: str = "form") -> BinaryForm:
    if coeffs is not None and path is not None:
        raise UsageError(f"give the {what} either inline or as a JSON file, not both")
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read {path}: {e}") from e
        if isinstance(data, dict):
            degree = data.get("degree", degree)
            data = data.get("coeffs")
        if not isinstance(data, list):
            raise UsageError(f"{path}: expected a list of coefficients")
        return parse_coeffs(",".join(str(c) for c in data), degree)
    if coeffs is None:
        raise UsageError(f"missing {what}: use --coeffs or --json")
    return parse_coeffs(coeffs, degree)


def parse_resolution(text: str):
    try:
        w, h = text.lower().split("x")
        w, h = int(w), int(h)
    except ValueError as e:
        raise UsageError(f"resolution must look like 400x400, got {text!r}") from e
    if w < 1 or h < 1:
        raise UsageError("resolution must be at least 1x1")
    return w, h


def parse_box(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("box needs four numbers a0,a1,b0,b1")
    a0, a1, b0, b1 = (parse_rational(p) for p in parts)
    if not (a0 < a1 and b0 < b1):
        raise UsageError("box must satisfy a0 < a1 and b0 < b1")
    return a0, a1, b0, b1


# ---------------------------------------------------------------------------
# output


def rational_str(x) -> str:
    """Exact string, or a float approximation when the digits exceed Python's int-str limit."""
    try:
        return str(x)
    except ValueError:
        return f"~{float(x)!r}"


def form_json(f: BinaryForm) -> List[str]:
    return [rational_str(c) for c in f.coeffs]


def certificate_json(cert: RankCertificate) -> dict:
    out = {"rank": cert.rank, "kind": cert.kind}
    w = cert.witness
    if isinstance(w, Decomposition):
        out["terms"] = [{"coefficient": rational_str(c), "linear_form": [rational_str(u), rational_str(v)]}
                        for c, (u, v) in w.terms]
    elif isinstance(w, IntervalDecomposition):
        out["apolar_form"] = form_json(w.q)
        out["terms_approx"] = [{"coefficient": c, "linear_form": list(lin)} for c, lin in w.approximate_terms()]
        out["residual_width"] = rational_str(w.residual_width)
    elif isinstance(w, HyperbolicityWitness):
        iso = w.isolation
        out["roots"] = [{"interval": [rational_str(r.lo), rational_str(r.hi)], "multiplicity": r.multiplicity}
                        for r in iso.roots]
        out["root_at_infinity_multiplicity"] = iso.infinity_multiplicity
    if cert.lower_bound is not None:
        out["lower_bound"] = [{"degree": e.k, "dimension": e.dimension, "method": e.method}
                              for e in cert.lower_bound.degrees]
    if cert.apolar_element is not None:
        out["apolar_element"] = form_json(cert.apolar_element)
    return out


def _digest(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()


def run_report(command: str, config: dict, results: dict, seconds: float) -> dict:
    return {
        "schema": RUN_SCHEMA,
        "command": command,
        "config": config,
        "input_sha256": _digest(config),
        "tool_version": __version__,
        "results": results,
        "timing_seconds": round(seconds, 3),
    }


def _emit(report: dict, stream=None):
    stream = stream or sys.stdout
    json.dump(report, stream, indent=2, sort_keys=False)
    stream.write("\n")


def _require_seed(args):
    if args.seed is None:
        raise UsageError("this command is randomized; pass --seed")


# ---------------------------------------------------------------------------
# commands


def cmd_rank(args) -> int:
    f = load_form(args.coeffs, args.json, args.degree)
    if f.is_zero():
        raise UsageError("the zero form has no rank")
    config = {"coeffs": form_json(f), "field": args.field, "seed": args.seed}
    t0 = time.perf_counter()
    if args.field == "complex":
        cr = complex_rank(f)
        results = {"rank": cr.rank, "generator_degrees": list(cr.generator_degrees),
                   "apolar_witness": form_json(cr.witness) if cr.witness is not None else None}
    else:
        _require_seed(args)
        cert = real_rank(f, seed=args.seed)
        results = certificate_json(cert)
        results["hyperbolic"] = bool(is_hyperbolic(f))
    _emit(run_report("rank", config, results, time.perf_counter() - t0))
    return EXIT_OK


def cmd_hyperbolic(args) -> int:
    f = load_form(args.coeffs, args.json, args.degree)
    t0 = time.perf_counter()
    res = is_hyperbolic(f)
    results = {
        "hyperbolic": res.hyperbolic,
        "real_roots_with_multiplicity": res.isolation.real_count_with_multiplicity,
        "distinct_real_roots": res.isolation.distinct_count,
    }
    status = EXIT_OK
    if f.degree >= 3:
        dd = all_directional_derivatives_hyperbolic(f)
        results["all_directional_derivatives_hyperbolic"] = dd
        if dd != res.hyperbolic:
            status = EXIT_INVARIANT
    _emit(run_report("hyperbolic", {"coeffs": form_json(f)}, results, time.perf_counter() - t0))
    return status


def cmd_interlace(args) -> int:
    f = load_form(args.coeffs, args.json, args.degree, "first form")
    g = load_form(args.with_coeffs, args.with_json, args.degree, "second form")
    t0 = time.perf_counter()
    rep = interlaces(f, g)
    results = {
        "interlaces": rep.interlaces,
        "common_factor": form_json(rep.common_factor),
        "circular_order": list(rep.circular_order),
        "reason": rep.reason,
    }
    if not rep.interlaces:
        member = pencil_non_hyperbolic_member(f, g)
        results["non_hyperbolic_member"] = None if member is None else [str(member[0]), str(member[1])]
    _emit(run_report("interlace", {"f": form_json(f), "g": form_json(g)}, results, time.perf_counter() - t0))
    return EXIT_OK


def cmd_project(args) -> int:
    _require_seed(args)
    q = load_form(args.coeffs, args.json, args.degree, "point")
    p = load_form(args.center, args.center_json, args.degree, "projection center")
    pt = PencilPoint(p, q)
    config = {"center": form_json(p), "point": form_json(q), "field": args.field, "seed": args.seed}
    t0 = time.perf_counter()
    if args.field == "complex":
        pc = projected_complex_rank(pt, seed=args.seed)
        results = {"rank": pc.value, "exact": pc.exact, "generic_fiber_rank": pc.generic_value,
                   "drop_points": [list(x) for x in pc.drop_points]}
        status = EXIT_OK if pc.exact else EXIT_INCONCLUSIVE
    else:
        pr = projected_real_rank(pt, seed=args.seed)
        results = {"rank": pr.value, "complete": pr.complete,
                   "samples": [list(x) for x in pr.samples],
                   "candidate_boundaries": list(pr.critical_points),
                   "unresolved": list(pr.unresolved), "note": pr.note}
        status = EXIT_OK if pr.complete else EXIT_INCONCLUSIVE
    _emit(run_report("project", config, results, time.perf_counter() - t0))
    return status


def _degrees(args, default: Sequence[int]) -> List[int]:
    if args.degree is None:
        return list(default)
    return [args.degree]


def cmd_experiment(args) -> int:
    _require_seed(args)
    kind, seed = args.kind, args.seed
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be >= 1")
    n = args.samples
    if kind == "hyperbolic-equivalence":
        rep = E.hyperbolic_equivalence(_degrees(args, (3, 4, 5, 6)), n or 200, seed)
    elif kind == "reznick":
        rep = E.reznick_direction(_degrees(args, range(3, 9)), n or 200, seed)
    elif kind == "complex-generic":
        rep = E.generic_complex_rank(_degrees(args, range(3, 9)), n or 500, seed)
    elif kind == "typical-rank":
        rep = E.typical_rank(args.degree or 5, n or 50, n or 50, seed)
    elif kind == "gap":
        rep = E.gap_experiment(args.degree or 5, n or 10, seed)
    elif kind == "lemma-family":
        rep = E.lemma_family(_degrees(args, (4, 5)), n or 100, seed)
    elif kind == "p3-evidence":
        rep = E.p3_evidence(n or 1000, n or 500, seed)
    else:
        raise UsageError(f"unknown experiment kind {kind!r}; choose from {', '.join(E.KINDS)}")
    config = {"kind": kind, "degree": args.degree, "samples": n, "seed": seed}
    _emit(run_report("experiment", config, rep.to_json(), rep.seconds))
    if rep.violations:
        return EXIT_INVARIANT
    if rep.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_verify_p3(args) -> int:
    _require_seed(args)
    curve = SpaceCurveP3()
    t0 = time.perf_counter()
    sos = verify_sos_discriminant()
    bij = real_fiber_bijectivity_check(curve, args.samples, args.seed)
    ev = sample_max_rank_evidence(curve, args.trials, args.seed)
    results = {
        "sos_identity": sos.ok,
        "sign_convention": sos.matching_sign,
        "bijectivity_ok": bij.ok,
        "bijectivity_counts": {str(k): v for k, v in bij.counts},
        "max_real_intersections": ev.max_with_multiplicity,
        "max_distinct_intersections": ev.max_distinct,
        "histogram": {str(k): v for k, v in ev.histogram},
    }
    config = {"samples": args.samples, "trials": args.trials, "seed": args.seed}
    _emit(run_report("verify-p3", config, results, time.perf_counter() - t0))
    ok = sos.ok and bij.ok and ev.max_with_multiplicity <= 2
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_region(args) -> int:
    from .plane_curves import presets
    from .plane_curves.curve import PlaneCurve
    from .plane_curves.region import Chart, RegionInvariantError, region_map, render_svg

    _require_seed(args)
    if args.preset is not None:
        text, chart = presets.PRESETS[args.preset]
        if args.curve is not None:
            raise UsageError("give either --preset or --curve")
    elif args.curve is not None:
        text, chart = args.curve, None
    else:
        raise UsageError("missing curve: use --curve or --preset")
    try:
        curve = PlaneCurve.parse(text)
    except (ValueError, RealRankError) as e:
        raise UsageError(f"cannot use curve {text!r}: {e}") from e
    if args.chart is not None or args.box is not None or chart is None:
        index = 0 if args.chart is None else int(args.chart[1])
        box = parse_box(args.box) if args.box is not None else (
            chart.box if chart is not None else (-3, 3, -3, 3))
        chart = Chart.standard(index, box)
    resolution = parse_resolution(args.resolution)
    config = {
        "curve": str(curve), "chart": chart.name, "box": [str(v) for v in chart.box],
        "resolution": list(resolution), "theta_budget": args.theta_budget, "method": args.method,
        "seed": args.seed,
    }
    t0 = time.perf_counter()
    try:
        rmap = region_map(curve, chart, resolution, args.theta_budget, args.seed, method=args.method)
    except SingularCurveError as e:
        pt = None if e.point is None else [str(v) for v in e.point]
        _emit(run_report("region", config, {"error": str(e), "singular_point": pt}, time.perf_counter() - t0))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except RegionInvariantError as e:
        print(f"error: region structure check failed: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    doc = rmap.to_json()
    if args.out_json:
        Path(args.out_json).write_text(json.dumps(doc, indent=1) + "\n")
    if args.out_svg:
        Path(args.out_svg).write_text(render_svg(rmap))
    results = {"counts": rmap.counts(), "rank3_components": rmap.rank3_components,
               "odd_tangents": len(rmap.lines),
               "lines_adjacent_to_rank3": list(rmap.lines_adjacent_to_rank3)}
    _emit(run_report("region", config, results, time.perf_counter() - t0))
    return EXIT_INCONCLUSIVE if rmap.counts()["?"] else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_form(p, degree=True):
    p.add_argument("--coeffs", help="coefficients of x^d, x^(d-1)y, ..., y^d, e.g. '1,0,-3/2,0'")
    p.add_argument("--json", help="JSON file with a coefficient list or {degree, coeffs}")
    if degree:
        p.add_argument("--degree", type=int, help="expected degree (checked)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realrank", description="Real and complex Waring ranks of binary "
                                     "forms, projections of rational normal curves, and plane curve rank maps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="real or complex Waring rank of a binary form")
    _add_form(p)
    p.add_argument("--field", choices=("real", "complex"), default="real")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("hyperbolic", help="hyperbolicity test with the directional derivative check")
    _add_form(p)
    p.set_defaults(func=cmd_hyperbolic)

    p = sub.add_parser("interlace", help="do two hyperbolic forms interlace")
    _add_form(p)
    p.add_argument("--with-coeffs", help="coefficients of the second form")
    p.add_argument("--with-json", help="JSON file for the second form")
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("project", help="rank of a point after projecting from a center form")
    _add_form(p)
    p.add_argument("--center", help="coefficients of the projection center")
    p.add_argument("--center-json", help="JSON file for the projection center")
    p.add_argument("--field", choices=("real", "complex"), default="real")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("experiment", help="seeded experiment suites")
    p.add_argument("--kind", required=True, help=", ".join(E.KINDS))
    p.add_argument("--degree", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("region", help="rasterized real rank map of a plane curve")
    p.add_argument("--curve", help="ternary form in x0, x1, x2")
    p.add_argument("--preset", choices=("figure1", "figure2"))
    p.add_argument("--chart", choices=("x0", "x1", "x2"), help="affine chart x_i = 1")
    p.add_argument("--box", help="a0,a1,b0,b1")
    p.add_argument("--resolution", default="400x400")
    p.add_argument("--theta-budget", type=int, default=16)
    p.add_argument("--method", choices=("exact", "sweep"), default="exact",
                   help="exact: one count per arc between real roots of the pencil discriminant; "
                        "sweep: interval-certified direction sweep")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-svg")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify-p3", help="checks for the space curve of real rank 4")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify_p3)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SingularCurveError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except InconclusiveError as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, RealRankError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
