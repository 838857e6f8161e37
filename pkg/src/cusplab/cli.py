"""Command-line front door.

Every subcommand writes one JSON report to stdout and a short summary to
stderr.  Exit status: 0 success, 2 numerically inconclusive verdict, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import __version__, curves, expr, frontal, gallery, intrinsic, normal_form
from .errors import CusplabError
from .jets import DEFAULT_CURVE_ORDER, DEFAULT_SURFACE_ORDER

SCHEMA_VERSION = 1
ORDER_ENV = "CUSPLAB_DEFAULT_ORDER"
INCONCLUSIVE = 2


class Inconclusive(Exception):
    def __init__(self, report):
        super().__init__("inconclusive")
        self.report = report


def default_order(fallback=DEFAULT_SURFACE_ORDER):
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise CusplabError(f"{ORDER_ENV}={raw!r} is not an integer") from None
    if not 4 <= value <= 16:
        raise CusplabError(f"{ORDER_ENV} must lie in 4..16, got {value}")
    return value


def _clean(x):
    """JSON-safe copy: numpy scalars to floats, non-finite numbers to None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _params(items):
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise CusplabError(f"bad --param {item!r}; expected NAME=VALUE")
        out[key.strip()] = float(val)
    return out


def _surface(args, order):
    spec = expr.parse_germ(args.germ, _params(args.param), ("u", "v"))
    if len(spec.components) != 3:
        raise CusplabError(f"a surface germ needs 3 components, got {len(spec.components)}")
    base = (0.0, 0.0)
    f = expr.eval_jet(spec, base, order)
    nu = None
    if getattr(args, "nu", None):
        nspec = expr.parse_germ(args.nu, _params(args.param), ("u", "v"))
        nu = expr.eval_jet(nspec, base, order)
    g = frontal.build_frontal(f, nu, base, expr.pretty_germ(spec))
    return spec, g


def _table(inv, upto):
    return {k: v for k, v in inv.table(upto).items()}


def _edge_report(g, upto=3, tol=frontal.CLASS_TOL):
    cls = frontal.classify_edge(g, tol)
    report = {
        "verdict": cls.verdict,
        "inconclusive": cls.inconclusive,
        "margins": cls.margins,
        "normal": {"provenance": g.provenance, "nu0": g.nu.value()},
    }
    try:
        inv = frontal.all_invariants(g)
        report["invariants"] = _table(inv, upto)
        report["derivatives"] = "with respect to arc length of the singular image, orders 0.." + str(upto)
    except CusplabError as exc:
        report["invariants"] = None
        report["invariants_unavailable"] = f"{type(exc).__name__}: {exc}"
    return cls, report


def cmd_classify(args):
    order = args.order or default_order()
    spec, g = _surface(args, order)
    cls, body = _edge_report(g, tol=args.tol)
    report = {"input": {"germ": expr.pretty_germ(spec), "order": order, "tol": args.tol}} | body
    summary = f"{cls.verdict}"
    inv = body.get("invariants") or {}
    if inv.get("r_c"):
        summary += f"  r_c = {inv['r_c'][0]:.10g}"
    elif inv.get("kappa_c"):
        summary += f"  kappa_c = {inv['kappa_c'][0]:.10g}"
    if cls.inconclusive:
        raise Inconclusive((report, summary + "  (inconclusive)"))
    return report, summary


def cmd_invariants(args):
    order = args.order or default_order()
    spec, g = _surface(args, order)
    fr = frontal.adapted_frame(g)
    inv = frontal.all_invariants(g, fr)
    report = {
        "input": {"germ": expr.pretty_germ(spec), "order": order},
        "normal": {"provenance": g.provenance, "nu0": g.nu.value()},
        "invariants": _table(inv, args.derivatives),
        "derivatives": f"with respect to arc length of the singular image, orders 0..{args.derivatives}",
        "singular_curve": fr.sd.gamma.derivative_at_zero(1).tolist(),
        "null_direction": fr.sd.eta.value().tolist(),
    }
    try:
        nd = frontal.adapted_null_field(g, fr)
        report["adapted_null_field"] = {"k1": nd.k1, "k2": nd.k2, "l": nd.l, "front_residual": nd.residual}
    except CusplabError as exc:
        report["adapted_null_field"] = f"{type(exc).__name__}: {exc}"
    return report, "invariants of " + expr.pretty_germ(spec)


def cmd_curve(args):
    order = args.order or default_order(DEFAULT_CURVE_ORDER)
    spec = expr.parse_germ(args.germ, _params(args.param), ("t",))
    gamma = expr.eval_jet(spec, (0.0,), order)
    report = {"input": {"germ": expr.pretty_germ(spec), "order": order}}
    if gamma.dim == 3:
        fr = curves.frenet_data(gamma)
        plane = curves.project_to_normal_plane(gamma)
        report["frenet"] = {"kappa": fr.kappa.derivatives(2), "tau": fr.tau.derivatives(2)}
        report["closed_form"] = curves.projection_invariants_closed_form(fr).as_dict()
        gamma = plane
    elif gamma.dim != 2:
        raise CusplabError("a curve germ needs 2 or 3 components")
    cls = curves.classify_cusp(gamma)
    report["verdict"] = cls.verdict
    report["margins"] = cls.margins
    try:
        report["invariants"] = curves.curve_invariants(gamma).as_dict()
    except CusplabError as exc:
        report["invariants"] = None
        report["invariants_unavailable"] = f"{type(exc).__name__}: {exc}"
    report["tangent_side"] = curves.tangent_side_check(gamma)
    inv = report["invariants"] or {}
    summary = cls.verdict
    for key in ("omega", "omega_r", "bias"):
        if inv.get(key) is not None:
            summary += f"  {key} = {inv[key]:.10g}"
    return report, summary


def _delaunay_row(p, order):
    g = gallery.delaunay_conjugate(p, order)
    inv = frontal.ramphoid_invariants(g)
    rc, rb = gallery.delaunay_closed_forms(p)
    cls = frontal.classify_edge(g)
    row = {
        "family": p.family,
        "H": p.H,
        "k": p.k,
        "v0": p.v0,
        "verdict": cls.verdict,
        "r_c": inv.r_c.value,
        "r_b": inv.r_b.value,
        "closed_form": {"r_c": rc, "r_b": rb},
        "delta": {"r_c": abs(inv.r_c.value - rc), "r_b": abs(inv.r_b.value - rb)},
        "eta_lambda": frontal.singular_data(g).eta_lambda,
        "normal_provenance": g.provenance,
        "source_orientation": g.orientation,
    }
    if p.family == "T":
        row["explicit_fields"] = gallery.delaunay_t_fields_det(g, p)
    return row


def cmd_gallery(args):
    order = args.order or default_order()
    if args.which == "rotation":
        g = gallery.rotation_example(order)
        cls, body = _edge_report(g)
        return {"input": {"germ": gallery.ROTATION, "order": order}} | body, f"rotation example: {cls.verdict}"
    if args.grid:
        rows = [_delaunay_row(p, order) for p in gallery.parameter_grid()]
        worst = max(max(r["delta"]["r_c"] / abs(r["closed_form"]["r_c"]), r["delta"]["r_b"]) for r in rows)
        report = {"input": {"grid": True, "order": order}, "rows": rows, "max_relative_delta": worst}
        return report, f"{len(rows)} gallery germs, max relative delta {worst:.3g}"
    if args.family is None or args.H is None:
        raise CusplabError("gallery delaunay needs --family and --H (or --grid)")
    k = -1.0 if args.family == "L" and args.k is None else args.k
    if k is None:
        raise CusplabError("families T and S need --k")
    p = gallery.DelaunayParams(args.family, args.H, k, args.v0)
    row = _delaunay_row(p, order)
    summary = f"delaunay {p.family}: r_c = {row['r_c']:.10g} (closed form {row['closed_form']['r_c']:.10g})"
    return {"input": {"order": order}} | row, summary


def cmd_audit(args):
    order = args.order or default_order()
    spec, g = _surface(args, order)
    out = frontal.invariance_audit(g, trials=args.trials, seed=args.seed)
    out.pop("samples", None)
    report = {"input": {"germ": expr.pretty_germ(spec), "order": order, "trials": args.trials, "seed": args.seed}}
    return report | {"audit": out}, f"max relative deviation {out['max_relative_deviation']:.3g}"


def _range(text):
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise CusplabError(f"bad range {text!r}; expected a:b:n") from None
    if n < 1:
        raise CusplabError("range needs at least one sample")
    return np.linspace(a, b, n)


def cmd_sample(args):
    spec = expr.parse_germ(args.germ, _params(args.param), ("u", "v"))
    if len(spec.components) != 3:
        raise CusplabError("sampling needs a 3-component germ")
    us, vs = _range(args.urange), _range(args.vrange)
    rows = 0
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["u", "v", "x", "y", "z"])
        for u in us:
            for v in vs:
                x, y, z = expr.evaluate(spec, (u, v))
                w.writerow([f"{val:.17g}" for val in (u, v, x, y, z)])
                rows += 1
    return {"input": {"germ": expr.pretty_germ(spec)}, "out": args.out, "rows": rows}, f"wrote {rows} rows"


def cmd_kossowski(args):
    order = args.order or default_order(12)
    params = _params(args.param)
    parts = [expr.eval_scalar_jet(t, ("u", "v"), (0.0, 0.0), order, params) for t in (args.E, args.F, args.G, args.lam)]
    m = intrinsic.MetricJet(*parts)
    rep = intrinsic.kossowski_classify(m, require_normalized=args.require_normalized)
    report = {
        "input": {"E": args.E, "F": args.F, "G": args.G, "lambda": args.lam, "order": order},
        "intrinsic": rep.as_dict(),
    }
    summary = rep.verdict
    if rep.secondary_product_curvature is not None:
        summary += f"  K~_eta = {rep.secondary_product_curvature:.10g}"
    return report, summary


def cmd_normal_form(args):
    c = normal_form.NormalFormCoeffs.parse(args.coeffs)
    order = args.order or default_order()
    g = frontal.build_frontal(normal_form.build_surface(c, order))
    boxed = normal_form.boxed_invariants(c)
    inv = frontal.ramphoid_invariants(g)
    K, H, Ke, He = intrinsic.curvatures_at_origin(g)
    report = {
        "input": {"coefficients": c.as_dict(), "order": order},
        "boxed": boxed.as_dict(),
        "pipeline": _table(inv, 3),
        "curvatures": {"K": K, "H": H, "K_eta": Ke, "H_eta": He},
        "verdict": frontal.classify_edge(g).verdict,
    }
    return report, f"normal form: r_c = {inv.r_c.value:.10g} (boxed {boxed.r_c0:.10g})"


def build_parser():
    p = argparse.ArgumentParser(prog="cusplab", description="Invariants of 5/2-cusps and 5/2-cuspidal edges.")
    p.add_argument("--version", action="version", version=f"cusplab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def germ_cmd(name, fn, help_text, nu=False):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--germ", required=True, help="tuple expression, e.g. '(u, v^2, v^5)'")
        s.add_argument("--param", action="append", metavar="NAME=VALUE", help="named constant used in the germ")
        s.add_argument("--order", type=int, default=None, help=f"jet order (default ${ORDER_ENV} or built-in)")
        if nu:
            s.add_argument("--nu", default=None, help="unit normal as a tuple expression (derived if omitted)")
        s.set_defaults(func=fn)
        return s

    s = germ_cmd("classify", cmd_classify, "classify the singular point of a surface germ", nu=True)
    s.add_argument("--tol", type=float, default=frontal.CLASS_TOL)
    s = germ_cmd("invariants", cmd_invariants, "edge invariants with derivatives", nu=True)
    s.add_argument("--derivatives", type=int, default=3)
    germ_cmd("curve", cmd_curve, "classify a plane or space curve germ in t")
    s = germ_cmd("audit", cmd_audit, "random vector-field invariance audit", nu=True)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("sample", help="write a point cloud of the germ to CSV")
    s.add_argument("--germ", required=True)
    s.add_argument("--param", action="append", metavar="NAME=VALUE")
    s.add_argument("--urange", required=True, metavar="a:b:n")
    s.add_argument("--vrange", required=True, metavar="a:b:n")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("gallery", help="built-in germs with known invariants")
    s.add_argument("which", choices=("delaunay", "rotation"))
    s.add_argument("--family", choices=("T", "S", "L"))
    s.add_argument("--H", type=float)
    s.add_argument("--k", type=float)
    s.add_argument("--v0", type=float, default=0.0)
    s.add_argument("--grid", action="store_true", help="run the whole parameter grid")
    s.add_argument("--order", type=int, default=None)
    s.set_defaults(func=cmd_gallery)

    s = sub.add_parser("kossowski", help="intrinsic analysis of a metric E, F, G with area density lambda")
    for name in ("E", "F", "G"):
        s.add_argument(f"--{name}", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--param", action="append", metavar="NAME=VALUE")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--require-normalized", action="store_true")
    s.set_defaults(func=cmd_kossowski)

    s = sub.add_parser("normal-form", help="boxed invariants of the normal form against the pipeline")
    s.add_argument("--coeffs", required=True, help="flat list such as 'b20=1, b05=4'")
    s.add_argument("--order", type=int, default=None)
    s.set_defaults(func=cmd_normal_form)
    return p


def _emit(command, report, stream=None):
    body = {"schema_version": SCHEMA_VERSION, "command": command} | report
    (stream or sys.stdout).write(json.dumps(_clean(body), indent=2) + "\n")


def _glue_ranges(argv):
    """Let '--vrange -1:1:5' through; argparse would read -1:1:5 as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--urange", "--vrange"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run_command(argv=None):
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(sys.argv[1:] if argv is None else list(argv)))
    try:
        report, summary = args.func(args)
    except Inconclusive as exc:
        report, summary = exc.report
        _emit(args.command, report)
        print(summary, file=sys.stderr)
        return INCONCLUSIVE
    except (CusplabError, ValueError, OSError) as exc:
        _emit(args.command, {"error": {"type": type(exc).__name__, "message": str(exc)}})
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(args.command, report)
    print(summary, file=sys.stderr)
    return 0


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
