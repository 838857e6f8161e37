"""The fourteen acceptance criteria, one test (or more) per criterion.

Each test records a PASS/FAIL line that is printed at the end of the run.
Two sub-checks cannot hold together with the rest of their criterion and
are kept as strict expected failures (see the ledger): the family-T
determinant sign in criterion 1 and the opposite-sign torsion identity in 12.
"""

import math
import time

import numpy as np
import pytest

from conftest import random_cusp, random_space_curve, record, rel
from cusplab import curves, frontal, gallery, intrinsic, normal_form
from cusplab.errors import FrontPoint
from cusplab.jets import Jet1, JetVec


def _check(n, ok, detail):
    record(n, ok, detail)
    assert ok, detail


# 1 -----------------------------------------------------------------------
def test_criterion_01_family_T():
    p = gallery.DelaunayParams("T", 0.5, 2.0, 0.0)
    t0 = time.perf_counter()
    g = gallery.delaunay_conjugate(p)
    inv = frontal.ramphoid_invariants(g)
    sd = frontal.singular_data(g)
    elapsed = time.perf_counter() - t0
    rc, rb = inv.r_c.value, inv.r_b.value
    ok = abs(rc - 44.0908) <= 1e-4 and abs(rb) <= 1e-8 and abs(sd.eta_lambda + 1.1547005) <= 1e-6 and elapsed < 1
    _check(1, ok, f"r_c={rc:.7f} r_b={rb:.1e} eta_lambda={sd.eta_lambda:.8f} time={elapsed:.2f}s")


@pytest.mark.xfail(strict=True, reason="with l = 0 the determinant has the sign of r_c; see ledger")
def test_criterion_01_stated_determinant_sign():
    p = gallery.DelaunayParams("T", 0.5, 2.0, 0.0)
    det = gallery.delaunay_t_fields_det(gallery.delaunay_conjugate(p), p)["det"]
    ok = abs(det + 96) <= 1e-6
    record(1, ok, f"det(xi f, eta~^2 f, eta~^5 f)={det:.6f} (expected -96)")
    assert ok


def test_criterion_01_determinant_magnitude():
    p = gallery.DelaunayParams("T", 0.5, 2.0, 0.0)
    out = gallery.delaunay_t_fields_det(gallery.delaunay_conjugate(p), p)
    assert abs(abs(out["det"]) - 96) <= 1e-6
    assert abs(out["<xi f, eta~^2 f>"]) <= 1e-12 and out["|eta~^3 f|"] <= 1e-12


# 2 -----------------------------------------------------------------------
def test_criterion_02_families_S_L():
    S = frontal.ramphoid_invariants(gallery.delaunay_conjugate(gallery.DelaunayParams("S", 0.5, -2.0, 0.0)))
    L0 = frontal.ramphoid_invariants(gallery.delaunay_conjugate(gallery.DelaunayParams("L", 0.5, -1.0, 0.0)))
    L1 = frontal.ramphoid_invariants(gallery.delaunay_conjugate(gallery.DelaunayParams("L", 0.5, -1.0, 1.0)))
    ok = (
        abs(S.r_c.value - 14.6969385) <= 1e-5
        and abs(S.r_b.value) <= 1e-8
        and abs(L0.r_c.value + 50.9116882) <= 1e-5
        and abs(L1.r_b.value - 4.2426407) <= 1e-5
    )
    _check(
        2,
        ok,
        f"S r_c={S.r_c.value:.7f} r_b={S.r_b.value:.1e}; L r_c(0)={L0.r_c.value:.7f} r_b(1)={L1.r_b.value:.7f}",
    )


# 3 -----------------------------------------------------------------------
def _curve(text):
    from cusplab import expr

    return expr.eval_jet(expr.parse_germ(text), (0.0,), 9)


def test_criterion_03_curve_suite():
    a = _curve("(t^2, t^3)")
    b = _curve("(t^2, t^5)")
    c = _curve("(t^2, t^4 + t^5)")
    d = _curve("(t^2, t^4)")
    ia, ib, ic = (curves.curve_invariants(x) for x in (a, b, c))
    ok = (
        curves.classify_cusp(a).verdict == curves.CUSP32
        and abs(ia.omega - 3 / math.sqrt(2)) <= 1e-9
        and curves.classify_cusp(b).verdict == curves.CUSP52_BALANCED
        and abs(ib.omega_r - 45 * math.sqrt(2)) <= 1e-8
        and curves.classify_cusp(c).verdict == curves.CUSP52_NON_BALANCED
        and abs(ic.bias - 6) <= 1e-9
        and curves.classify_cusp(d).verdict == curves.DEGENERATE_HIGHER
    )
    _check(3, ok, f"omega={ia.omega:.10f} omega_r={ib.omega_r:.8f} b={ic.bias:.10f} (t^2,t^4) DegenerateHigher")


# 4 -----------------------------------------------------------------------
def test_criterion_04_normal_form_curve():
    rng = np.random.default_rng(4)
    t = Jet1.variable(9)
    worst = 0.0
    for _ in range(100):
        g4, g5 = rng.uniform(-5, 5, 2)
        inv = curves.curve_invariants(JetVec([t * t * 0.5, t**4 * (g4 / 24) + t**5 * (g5 / 120)]))
        worst = max(worst, rel(inv.bias, g4, 1e-300), rel(inv.omega_r, 3 * g5, 1e-300))
    _check(4, worst <= 1e-8, f"max relative error {worst:.2e} over 100 germs")


# 5 -----------------------------------------------------------------------
def test_criterion_05_curvature_extension():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        g = random_cusp(rng)
        inv = curves.curve_invariants(g)
        k0, k1 = curves.signed_curvature_extension(g)
        worst = max(worst, rel(k0, inv.bias / 3, 1e-12), rel(k1, math.sqrt(2) * inv.omega_r / 24, 1e-12))
    _check(5, worst <= 1e-6, f"max relative error {worst:.2e} over 100 random 5/2-cusps")


# 6 -----------------------------------------------------------------------
def test_criterion_06_projection():
    rng = np.random.default_rng(6)
    worst = 0.0
    compared = 0
    for i in range(100):
        G = random_space_curve(rng, flat_torsion=i % 2 == 0)
        cf = curves.projection_invariants_closed_form(curves.frenet_data(G))
        pi = curves.curve_invariants(curves.project_to_normal_plane(G))
        for a, b in ((cf.omega, pi.omega), (cf.l, pi.l), (cf.bias, pi.bias), (cf.omega_r, pi.omega_r)):
            assert (a is None) == (b is None)
            if a is not None:
                worst = max(worst, rel(a, b, 1e-12))
                compared += 1
    _check(6, worst <= 1e-8, f"max relative error {worst:.2e} over {compared} values from 100 curves")


# 7 -----------------------------------------------------------------------
def test_criterion_07_boxed_invariants(normal_form_germs):
    worst, worst3, kc = 0.0, 0.0, 0.0
    for c, g in normal_form_germs:
        box = normal_form.boxed_invariants(c)
        inv = frontal.ramphoid_invariants(g)
        pairs = [
            ("kappa_nu", box.kappa_nu),
            ("kappa_s", box.kappa_s),
            ("kappa_t", box.kappa_t),
            ("r_b", box.r_b),
            ("r_c", (box.r_c0,)),
        ]
        for name, values in pairs:
            for k, expected in enumerate(values):
                err = rel(inv.derivative(name, k), expected)
                if k == 3:
                    worst3 = max(worst3, err)
                else:
                    worst = max(worst, err)
        kc = max(kc, float(np.max(np.abs(inv.kappa_c.c))))
    ok = worst <= 1e-6 and worst3 <= 1e-4 and kc <= 1e-9
    _check(7, ok, f"200 germs: max rel {worst:.2e}, third derivatives {worst3:.2e}, |kappa_c| {kc:.1e}")


# 8 -----------------------------------------------------------------------
def test_criterion_08_curvatures_on_edge(normal_form_germs):
    worst = {"K": 0.0, "H": 0.0, "K_eta": 0.0, "H_eta": 0.0}
    for _, g in normal_form_germs:
        inv = frontal.ramphoid_invariants(g)
        kn, rb, kt, rc = inv.kappa_nu.value, inv.r_b.value, inv.kappa_t.value, inv.r_c.value
        K, H, Ke, He = intrinsic.curvatures_at_origin(g)
        for key, a, b in (
            ("K", K, kn * rb / 3 - kt**2),
            ("H", H, kn / 2 + rb / 6),
            ("K_eta", Ke, inv.r_Pi.value / 24),
            ("H_eta", He, rc / 48),
        ):
            worst[key] = max(worst[key], rel(a, b))
    ok = max(worst.values()) <= 1e-8
    _check(8, ok, "200 germs: " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


# 9 -----------------------------------------------------------------------
def test_criterion_09_intrinsity(normal_form_germs):
    worst = 0.0
    count = 0
    for c, g in normal_form_germs:
        if abs(c.b20) < 0.1:
            continue  # keep clearly non-nu-flat germs
        rep = intrinsic.kossowski_classify(intrinsic.induced_kossowski_metric(g))
        r_pi = frontal.ramphoid_invariants(g).r_Pi.value
        worst = max(worst, rel(24 * rep.secondary_product_curvature, r_pi, 1e-12))
        count += 1
        if count == 50:
            break
    n_check = 8 - 4
    kworst = 0.0
    germs = [gallery.delaunay_conjugate(p, 13) for p in gallery.parameter_grid()]
    germs += [gallery.rotation_example(13), gallery.bent_rotation_example(0.5, 13), gallery.standard_models("Ramphoid52", 13)]
    for g in germs:
        fr = frontal.adapted_frame(g)
        K, _ = intrinsic.chart_curvatures(g, fr)
        Kb = intrinsic.curvature_brioschi(intrinsic.chart_metric(g, fr))
        a, b = K.truncate(n_check).c, Kb.truncate(n_check).c
        kworst = max(kworst, float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a)))))
    ok = count == 50 and worst <= 1e-7 and kworst <= 1e-7
    _check(9, ok, f"24 K~_eta vs r_Pi max rel {worst:.2e} (50 germs); Brioschi vs extrinsic K through order 4: {kworst:.2e} ({len(germs)} gallery germs)")


# 10 ----------------------------------------------------------------------
def test_criterion_10_audit(gallery_germs):
    a = frontal.invariance_audit(gallery.standard_models("Ramphoid52"), trials=100, seed=10)
    b = frontal.invariance_audit(gallery.delaunay_conjugate(gallery.DelaunayParams("L", 0.5, -1.0, 1.0)), trials=100, seed=10)
    checks = [frontal.null_normal_check(g) for g in gallery_germs]
    checks.append(frontal.null_normal_check(gallery.standard_models("CuspidalEdge")))
    both_zero = sum(c["eta_nu_vanishes"] and c["det_vanishes"] for c in checks)
    both_nonzero = sum(not c["eta_nu_vanishes"] and not c["det_vanishes"] for c in checks)
    ok = (
        a["max_relative_deviation"] < 1e-7
        and b["max_relative_deviation"] < 1e-7
        and all(c["equivalent"] for c in checks)
        and both_zero > 0
        and both_nonzero > 0
    )
    _check(
        10,
        ok,
        f"audit deviation {a['max_relative_deviation']:.1e} / {b['max_relative_deviation']:.1e}; "
        f"eta nu = 0 iff det = 0 consistent on {len(checks)} germs ({both_zero} both zero, {both_nonzero} both nonzero)",
    )


# 11 ----------------------------------------------------------------------
def test_criterion_11_slice(normal_form_germs):
    worst = 0.0
    count = 0
    for c, g in normal_form_germs:
        if abs(c.b20) < 0.1:
            continue
        inv = frontal.ramphoid_invariants(g)
        ci = curves.curve_invariants(frontal.normal_slice_curve(g))
        worst = max(worst, rel(ci.bias, inv.r_b.value), rel(ci.omega_r, inv.r_c.value))
        count += 1
        if count == 50:
            break
    _check(11, worst <= 1e-6, f"max relative error {worst:.2e} over {count} germs")


# 12 ----------------------------------------------------------------------
def _frenet_germs(normal_form_germs):
    germs = [gallery.delaunay_conjugate(p) for p in gallery.parameter_grid()]
    germs += [gallery.rotation_example(), gallery.bent_rotation_example(0.5)]
    germs += [g for c, g in normal_form_germs[:50]]
    return germs


def test_criterion_12_frenet(normal_form_germs):
    worst_k, worst_t = 0.0, 0.0
    for g in _frenet_germs(normal_form_germs):
        fr = frontal.adapted_frame(g)
        res = intrinsic.singular_frenet_relations(frontal.edge_invariants(g, fr), intrinsic.frenet_of_singular_image(g, fr))
        worst_k, worst_t = max(worst_k, res["kappa"]), max(worst_t, res["tau"])
    rot = frontal.edge_invariants(gallery.rotation_example())
    ks, kt = float(np.max(np.abs(rot.kappa_s.c))), float(np.max(np.abs(rot.kappa_t.c)))
    ok = worst_k <= 1e-7 and worst_t <= 1e-7 and ks <= 1e-9 and kt <= 1e-9
    _check(
        12,
        ok,
        f"kappa identity {worst_k:.1e}; tau = kappa_t - (ks' kn - ks kn')/k^2 holds to {worst_t:.1e}; rotation |kappa_s| {ks:.0e} |kappa_t| {kt:.0e}",
    )


@pytest.mark.xfail(strict=True, reason="the opposite-sign torsion identity fails; see ledger")
def test_criterion_12_opposite_sign_torsion(normal_form_germs):
    worst = 0.0
    for g in _frenet_germs(normal_form_germs):
        fr = frontal.adapted_frame(g)
        res = intrinsic.singular_frenet_relations(frontal.edge_invariants(g, fr), intrinsic.frenet_of_singular_image(g, fr))
        worst = max(worst, res["tau_reversed"])
    ok = worst <= 1e-7
    record(12, ok, f"opposite-sign form tau = (ks' kn - ks kn')/k^2 - kappa_t misses by {worst:.2f} (relative)")
    assert ok


# 13 ----------------------------------------------------------------------
def test_criterion_13_intrinsic_criterion():
    rng = np.random.default_rng(13)
    agree = 0
    positives = 0
    for i in range(50):
        c = normal_form.NormalFormCoeffs.random(rng)
        if abs(c.b20) < 0.1:
            c = normal_form.NormalFormCoeffs(**(c.as_dict() | {"b20": 1.0}))
        if i % 5 == 0:
            c = normal_form.NormalFormCoeffs(**(c.as_dict() | {"b05": 0.0}))
        g = frontal.build_frontal(normal_form.build_surface(c, 10))
        ext = frontal.classify_edge(g).verdict == frontal.RAMPHOID_52_EDGE
        intr = intrinsic.kossowski_classify(intrinsic.induced_kossowski_metric(g)).verdict == intrinsic.INTRINSIC_RAMPHOID
        agree += ext == intr
        positives += ext
    _check(13, agree == 50, f"{agree}/50 verdicts agree ({positives} 5/2-cuspidal edges, {50 - positives} not)")


# 14 ----------------------------------------------------------------------
def test_criterion_14_negative_controls():
    ce = gallery.standard_models("CuspidalEdge")
    cls = frontal.classify_edge(ce)
    kc = frontal.edge_invariants(ce).kappa_c.value
    with pytest.raises(FrontPoint):
        frontal.adapted_null_field(ce)
    quartic = frontal.classify_edge(gallery.standard_models("QuarticDegenerate"))
    ok = (
        cls.verdict == frontal.FRONT_CUSPIDAL_EDGE
        and abs(kc - 3 / math.sqrt(2)) <= 1e-9
        and quartic.verdict == frontal.FRONTAL_OTHER
        and abs(quartic.margins["r_c0"]) <= 1e-12
    )
    _check(14, ok, f"(u,v^2,v^3) {cls.verdict} kappa_c={kc:.10f}, FrontPoint raised; (u,v^2,v^4) {quartic.verdict} r_c=0")


if __name__ == "__main__":
    import sys

    import pytest as _pytest

    sys.exit(_pytest.main([__file__, "-q"]))
