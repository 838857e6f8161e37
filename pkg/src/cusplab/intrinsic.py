"""Fundamental forms, bounded curvatures along singular curves, and the
Kossowski-metric layer.

Curvatures are computed in the adapted chart of :mod:`cusplab.frontal`,
where the singular set is ``{s = 0}`` and the squared area density factors
as ``s^2 mu^2``; the bounded quotients then come from exact jet division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import curves, frontal, jets
from .errors import FlatPoint, NotAdjusted, NotExtendable, NotFirstKind, NotKossowski, NotNormalized
from .jets import Jet1, Jet2, JetVec

CLASS_TOL = frontal.CLASS_TOL
METRIC_TOL = 1e-8
DIVIDE_TOL = 1e-7

NOT_KOSSOWSKI = "NotKossowski"
NOT_TYPE_I = "NotTypeI"
TYPE_I_OTHER = "TypeIOther"
INTRINSIC_RAMPHOID = "IntrinsicRamphoid"


@dataclass(frozen=True)
class MetricJet:
    E: Jet2
    F: Jet2
    G: Jet2
    lam: Optional[Jet2] = None

    @property
    def order(self):
        return min(self.E.order, self.F.order, self.G.order)

    def discriminant(self):
        n = self.order
        E, F, G = (x.truncate(n) for x in (self.E, self.F, self.G))
        return E * G - F * F

    def compose(self, x, y):
        lam = None if self.lam is None else self.lam.compose(x, y)
        return MetricJet(self.E.compose(x, y), self.F.compose(x, y), self.G.compose(x, y), lam)


@dataclass(frozen=True)
class SecondForm:
    L: Jet2
    M: Jet2
    N: Jet2


@dataclass(frozen=True)
class AdjustedCoordinates:
    """Linear change (u, v) = A (U, V) and the germ in the new coordinates."""

    A: np.ndarray
    germ: frontal.FrontalGerm
    conditions: dict


@dataclass(frozen=True)
class IntrinsicReport:
    verdict: str
    admissible: Optional[bool] = None
    type_I: Optional[bool] = None
    normalized: Optional[bool] = None
    product_curvature: Optional[Jet1] = None
    secondary_product_curvature: Optional[float] = None
    vanishing_through: int = -1
    checks: dict = field(default_factory=dict)

    def as_dict(self):
        pc = self.product_curvature
        return {
            "verdict": self.verdict,
            "admissible": self.admissible,
            "type_I": self.type_I,
            "normalized": self.normalized,
            "product_curvature": None if pc is None else [float(x) for x in pc.derivatives()],
            "product_curvature_zero_through_order": self.vanishing_through,
            "secondary_product_curvature": self.secondary_product_curvature,
            "checks": self.checks,
        }


def first_form(f: JetVec) -> MetricJet:
    fu, fv = f.partial("u"), f.partial("v")
    return MetricJet(jets.dot(fu, fu), jets.dot(fu, fv), jets.dot(fv, fv))


def fundamental_forms(g: frontal.FrontalGerm):
    f, nu = g.f, g.nu
    m = first_form(f)
    fuu, fuv, fvv = f.partial("u", 2), f.partial("u").partial("v"), f.partial("v", 2)
    n = min(fuu.order, nu.order)
    nu = nu.truncate(n)
    second = SecondForm(*(jets.dot(x.truncate(n), nu) for x in (fuu, fuv, fvv)))
    lam = jets.det3(f.partial("u").truncate(n), f.partial("v").truncate(n), nu)
    return MetricJet(m.E, m.F, m.G, lam), second


def _divide(a: Jet2, power: int, what: str, exc=NotExtendable):
    try:
        return a.divide_by_coordinate("v", power, tol=DIVIDE_TOL)
    except jets.NotDivisible as err:
        raise exc(f"{what} is not divisible by s^{power}: {err}") from None


def _bounded_curvatures(f: JetVec, nu: JetVec):
    """(K, H) in a chart whose singular set is {v = 0}."""
    fu, fv = f.partial("u"), f.partial("v")
    n = min(f.order - 2, nu.order)
    fu, fv, nu = fu.truncate(n), fv.truncate(n), nu.truncate(n)
    E, F, G = jets.dot(fu, fu), jets.dot(fu, fv), jets.dot(fv, fv)
    L = jets.dot(f.partial("u", 2).truncate(n), nu)
    M = jets.dot(f.partial("u").partial("v").truncate(n), nu)
    N = jets.dot(f.partial("v", 2).truncate(n), nu)
    mu2 = _divide(E * G - F * F, 2, "EG - F^2")
    K = _divide(L * N - M * M, 2, "LN - M^2") / mu2.truncate(n - 2)
    H = _divide(E * N - F * M * 2.0 + G * L, 2, "EN - 2FM + GL") / (mu2.truncate(n - 2) * 2.0)
    return K, H


def chart_curvatures(g: frontal.FrontalGerm, fr: Optional[frontal.AdaptedFrame] = None):
    """K and H (extended across the singular set) as jets in the adapted chart."""
    fr = fr or frontal.adapted_frame(g)
    return _bounded_curvatures(fr.f, fr.nu)


def curvature_extrinsic(g: frontal.FrontalGerm):
    """K and H on the source of ``g`` (jets of the bounded extensions).

    Regular germs use the direct quotient; singular germs are moved to the
    adapted chart, divided there, and pulled back.
    """
    lam = frontal.signed_area_density(g)
    if abs(lam.value) > frontal.SINGULAR_TOL * frontal._fscale(g.f) ** 2:
        m, II = fundamental_forms(g)
        n = II.L.order
        E, F, G = (x.truncate(n) for x in (m.E, m.F, m.G))
        disc = E * G - F * F
        return (II.L * II.N - II.M * II.M) / disc, (E * II.N - F * II.M * 2.0 + G * II.L) / (disc * 2.0)
    fr = frontal.adapted_frame(g)
    K, H = chart_curvatures(g, fr)
    psi = frontal.invert_map(fr.phi)
    return K.compose(*psi), H.compose(*psi)


def curvature_brioschi(m: MetricJet, singular_axis: Optional[str] = "v") -> Jet2:
    """Gaussian curvature from E, F, G alone.

    With ``singular_axis = 'v'`` the discriminant EG - F^2 must vanish to
    second order on {v = 0}; the numerator is then divided by v^4 and the
    discriminant by v^2.  Pass ``None`` for a regular metric.
    """
    E, F, G = m.E, m.F, m.G
    n = m.order
    Eu, Ev, Fu, Fv, Gu, Gv = E.du, E.dv, F.du, F.dv, G.du, G.dv
    n2 = n - 2
    Evv, Fuv, Guu = E.partial("v", 2), F.du.dv, G.partial("u", 2)
    t = lambda x: x.truncate(n2)  # noqa: E731
    a11 = t(Evv) * -0.5 + t(Fuv) - t(Guu) * 0.5
    row1 = [a11, t(Eu) * 0.5, t(Fu) - t(Ev) * 0.5]
    row2 = [t(Fv) - t(Gu) * 0.5, t(E), t(F)]
    row3 = [t(Gv) * 0.5, t(F), t(G)]
    det1 = _det3_scalar(row1, row2, row3)
    zero = t(E) * 0.0
    det2 = _det3_scalar(
        [zero, t(Ev) * 0.5, t(Gu) * 0.5], [t(Ev) * 0.5, t(E), t(F)], [t(Gu) * 0.5, t(F), t(G)]
    )
    num = det1 - det2
    disc = m.discriminant()
    if singular_axis is None:
        return num / (disc * disc).truncate(num.order)
    mu2 = _divide(disc, 2, "EG - F^2", jets.NotDivisible)
    q = _divide(num, 4, "Brioschi numerator", jets.NotDivisible)
    return q / (mu2 * mu2).truncate(q.order)


def _det3_scalar(r1, r2, r3):
    return (
        r1[0] * (r2[1] * r3[2] - r2[2] * r3[1])
        - r1[1] * (r2[0] * r3[2] - r2[2] * r3[0])
        + r1[2] * (r2[0] * r3[1] - r2[1] * r3[0])
    )


def chart_metric(g: frontal.FrontalGerm, fr: Optional[frontal.AdaptedFrame] = None) -> MetricJet:
    fr = fr or frontal.adapted_frame(g)
    m = first_form(fr.f)
    return MetricJet(m.E, m.F, m.G, fr.lam)


# ---------------------------------------------------------------------------
# normally-adjusted coordinates
def _adjust_scales(g, sd, w):
    df = np.array([[c.coeff(1, 0), c.coeff(0, 1)] for c in g.f])
    eta0 = sd.eta.value()
    w = np.asarray(w, dtype=float)
    a = 1.0 / float(np.linalg.norm(df @ w))
    dlam = float(np.dot(sd.dlambda, eta0))
    prod = a * float(np.linalg.det(np.column_stack([w, eta0]))) * dlam
    if prod <= 0:
        raise NotFirstKind("the chosen u-direction does not give an orientation-compatible frame")
    c = 1.0 / math.sqrt(prod)
    return a, c, w, eta0


def normally_adjust(g: frontal.FrontalGerm, w=None, sd=None) -> AdjustedCoordinates:
    """Linear source change to coordinates normally-adjusted at 0.

    The new v-axis is the null direction and the u-axis follows ``w``
    (default: the singular curve).  The u-scale makes E(0) = 1 and the
    v-scale makes lambda_v(0) = 1 for the orientation of the source.
    """
    sd = sd or frontal.singular_data(g)
    if not sd.first_kind:
        raise NotFirstKind("the null direction is tangent to the singular curve")
    if w is None:
        w = sd.gamma.d().value()
    a, c, w, eta0 = _adjust_scales(g, sd, w)
    A = np.column_stack([a * w, c * eta0])
    U, V = Jet2.variables(g.order)
    x = U * float(A[0, 0]) + V * float(A[0, 1])
    y = U * float(A[1, 0]) + V * float(A[1, 1])
    h = frontal.reparameterize(g, x, y)
    h = frontal.FrontalGerm(h.f, h.nu, h.provenance, h.base, h.label, 1)
    fv = h.f.partial("v").value()
    fu = h.f.partial("u").value()
    lam = frontal.signed_area_density(h)
    conditions = {
        "|f_v(0,0)|": float(np.linalg.norm(fv)),
        "E(0,0)": float(fu @ fu),
        "lambda_v(0,0)": lam.coeff(0, 1),
        "det A": float(np.linalg.det(A)),
    }
    return AdjustedCoordinates(A, h, conditions)


def null_derivative_curvatures(g: frontal.FrontalGerm, w=None):
    """(K_eta, H_eta): v-derivatives at 0 of K and H in normally-adjusted coordinates."""
    fr = frontal.adapted_frame(g)
    K, H = chart_curvatures(g, fr)
    _, c, _, _ = _adjust_scales(g, fr.sd, fr.sd.gamma.d().value() if w is None else w)
    # the adjusted v-axis is c*eta(0), which is c times the chart's s-axis
    return c * K.coeff(0, 1), c * H.coeff(0, 1)


def curvatures_at_origin(g: frontal.FrontalGerm):
    """(K, H, K_eta, H_eta) at the base point."""
    fr = frontal.adapted_frame(g)
    K, H = chart_curvatures(g, fr)
    _, c, _, _ = _adjust_scales(g, fr.sd, fr.sd.gamma.d().value())
    return K.value, H.value, c * K.coeff(0, 1), c * H.coeff(0, 1)


# ---------------------------------------------------------------------------
# Kossowski metrics
def _rel(a: Jet2, scale):
    return float(np.max(np.abs(a.c))) / max(scale, 1.0)


def _axis_max(j: Jet2):
    return float(np.max(np.abs(j.restrict("u").c)))


def kossowski_classify(m: MetricJet, class_tol=CLASS_TOL, require_normalized=False) -> IntrinsicReport:
    """Type I analysis of a metric given with its signed area density.

    The coordinates must have the singular set on the u-axis and d/dv null
    along it.  Full normalization (E = 1, G_vv = 2, lambda_v = 1 on the
    axis, F = 0) is verified and reported; the product curvatures are
    rescaled from the given coordinates to normalized ones.
    """
    if m.lam is None:
        raise NotKossowski("a Kossowski metric needs its area density lambda")
    E, F, G, lam = m.E, m.F, m.G, m.lam
    scale = max(1.0, *(float(np.max(np.abs(x.c))) for x in (E, F, G)))
    n = min(m.order, lam.order)
    gap = _rel(m.discriminant().truncate(n) - (lam * lam).truncate(n), scale**2)
    checks = {"|EG - F^2 - lambda^2|": gap, "lambda(0)": lam.value}
    if abs(lam.value) > METRIC_TOL * scale:
        return IntrinsicReport(NOT_KOSSOWSKI, checks=checks | {"reason": "lambda(0) != 0: no singular point"})
    dl = (lam.coeff(1, 0), lam.coeff(0, 1))
    checks["d lambda(0)"] = list(dl)
    if math.hypot(*dl) <= METRIC_TOL * scale:
        return IntrinsicReport(NOT_KOSSOWSKI, checks=checks | {"reason": "d lambda(0) = 0"})
    if gap > METRIC_TOL:
        return IntrinsicReport(NOT_KOSSOWSKI, checks=checks | {"reason": "EG - F^2 != lambda^2"})
    if abs(F.value) > METRIC_TOL * scale or abs(G.value) > METRIC_TOL * scale:
        raise NotAdjusted(f"d/dv is not null at 0 (F = {F.value:.3g}, G = {G.value:.3g})")
    admissible = {
        "E_v - 2F_u": E.coeff(0, 1) - 2 * F.coeff(1, 0),
        "G_u": G.coeff(1, 0),
        "G_v": G.coeff(0, 1),
    }
    is_admissible = all(abs(x) <= METRIC_TOL * scale for x in admissible.values())
    checks["admissibility"] = admissible
    type_I = abs(dl[1]) > METRIC_TOL * scale
    if not type_I:
        return IntrinsicReport(NOT_TYPE_I, is_admissible, False, checks=checks)

    strong = {
        "lambda(u,0)": _axis_max(lam),
        "F(u,0)": _axis_max(F),
        "G(u,0)": _axis_max(G),
    }
    checks["strongly_adapted"] = strong
    if max(strong.values()) > METRIC_TOL * scale:
        raise NotNormalized(
            "the singular set must be the u-axis with d/dv null along it: "
            + ", ".join(f"{k} = {v:.3g}" for k, v in strong.items())
        )
    Ea = E.restrict("u")
    lam_s = lam.dv.restrict("u")
    full = {
        "|F|": float(np.max(np.abs(F.c))),
        "E(u,0) - 1": float(np.max(np.abs((Ea - 1.0).c))),
        "E_v(u,0)": _axis_max(E.dv),
        "G_v(u,0)": _axis_max(G.dv),
        "G_vv(u,0) - 2": float(np.max(np.abs((G.partial("v", 2).restrict("u") - 2.0).c))),
        "lambda_v(u,0) - 1": float(np.max(np.abs((lam_s - 1.0).c))),
    }
    checks["normalized"] = full
    normalized = max(full.values()) <= METRIC_TOL * scale
    if require_normalized and not normalized:
        raise NotNormalized("metric is not in normalized strongly adapted form: " + repr(full))

    # v_normalized = phi(u) v + O(v^2) with phi^2 = |lambda_v| / sqrt(E) on the axis
    sign = 1.0 if lam_s.value > 0 else -1.0
    ratio = lam_s * sign / jets.sqrt(Ea).truncate(lam_s.order)
    q = _brioschi_parts(m)
    vK = q["vK"]
    phi = jets.sqrt(ratio)
    kpi = vK.restrict("u") * phi.truncate(vK.order)
    through = frontal.kappa_c_vanishing_order(kpi, kpi.order, class_tol)
    flat = through >= kpi.order
    K_eta = None
    if flat:
        K = q["K"]
        K_eta = sign * K.coeff(0, 1) / phi.value
    verdict = INTRINSIC_RAMPHOID if flat and K_eta is not None and abs(K_eta) > class_tol else TYPE_I_OTHER
    checks["phi(0)"] = phi.value
    return IntrinsicReport(verdict, is_admissible, True, normalized, kpi, K_eta, through, checks)


def _brioschi_parts(m: MetricJet):
    """v*K always; K itself when the numerator also divides by v^4."""
    E, F, G = m.E, m.F, m.G
    n2 = m.order - 2
    t = lambda x: x.truncate(n2)  # noqa: E731
    a11 = t(E.partial("v", 2)) * -0.5 + t(F.du.dv) - t(G.partial("u", 2)) * 0.5
    det1 = _det3_scalar(
        [a11, t(E.du) * 0.5, t(F.du) - t(E.dv) * 0.5],
        [t(F.dv) - t(G.du) * 0.5, t(E), t(F)],
        [t(G.dv) * 0.5, t(F), t(G)],
    )
    det2 = _det3_scalar(
        [t(E) * 0.0, t(E.dv) * 0.5, t(G.du) * 0.5], [t(E.dv) * 0.5, t(E), t(F)], [t(G.du) * 0.5, t(F), t(G)]
    )
    num = det1 - det2
    mu2 = _divide(m.discriminant(), 2, "EG - F^2", NotKossowski)
    q3 = _divide(num, 3, "v^3 part of the Brioschi numerator", NotKossowski)
    out = {"vK": q3 / (mu2 * mu2).truncate(q3.order)}
    try:
        q4 = num.divide_by_coordinate("v", 4, tol=DIVIDE_TOL)
        out["K"] = q4 / (mu2 * mu2).truncate(q4.order)
    except jets.NotDivisible:
        pass
    return out


def induced_kossowski_metric(g: frontal.FrontalGerm) -> MetricJet:
    """E, F, G and lambda of a frontal whose singular set is the u-axis."""
    m, _ = fundamental_forms(g)
    return m


# ---------------------------------------------------------------------------
# Frenet frame of the singular image
def singular_image(g: frontal.FrontalGerm, fr=None) -> JetVec:
    fr = fr or frontal.adapted_frame(g)
    return fr.f.restrict("u")


def singular_frenet_relations(inv: frontal.EdgeInvariants, frenet: curves.FrenetData, tol=1e-12):
    """Residuals of kappa^2 = kappa_s^2 + kappa_nu^2 and of the torsion identity.

    Substituting the frame equations into kappa^2 tau = det of the first
    three derivatives gives tau = kappa_t - (kappa_s' kappa_nu -
    kappa_s kappa_nu')/kappa^2.  The residual of the form with both signs
    reversed is reported as ``tau_reversed``.  Both sets of jets must be in
    the same arc-length parameter.
    """
    ks, kn, kt = inv.kappa_s, inv.kappa_nu, inv.kappa_t
    kappa, tau = frenet.kappa, frenet.tau
    if abs(kappa.value) <= tol:
        raise FlatPoint("curvature of the singular image vanishes")
    n = min(ks.order, kn.order, kt.order, kappa.order, tau.order) - 1
    ks, kn, kt, kappa, tau = (x.truncate(n) for x in (ks, kn, kt, kappa, tau))
    k2 = ks * ks + kn * kn
    rel = lambda a, b: float(np.max(np.abs((a - b).c))) / max(1.0, float(np.max(np.abs(b.c))))  # noqa: E731
    ks1, kn1 = inv.kappa_s.d().truncate(n), inv.kappa_nu.d().truncate(n)
    geodesic = (ks1 * kn - ks * kn1) / k2
    tau_pred = kt - geodesic
    return {
        "kappa": rel(kappa, jets.sqrt(k2)),
        "tau": rel(tau, tau_pred),
        "tau_reversed": rel(tau, geodesic - kt),
        "order": n,
        "kappa0": kappa.value,
        "tau0": tau.value,
        "tau_predicted0": tau_pred.value,
    }


def frenet_of_singular_image(g: frontal.FrontalGerm, fr=None) -> curves.FrenetData:
    return curves.frenet_data(singular_image(g, fr))
