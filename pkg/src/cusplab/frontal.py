"""Frontal surface germs: singular curve, null fields and edge invariants.

Every germ is moved to an adapted chart (t, s) -> gamma(t) + s eta(t) in
which the singular set is {s = 0} and d/ds is a null vector field along it.
All edge invariants are computed there as two-variable jets and restricted
to the axis, so their derivatives along the singular curve are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import curves, jets
from .errors import (
    DegenerateSingularity,
    FrontPoint,
    NormalInvalid,
    NotDivisible,
    NotFirstKind,
    NotFrontal,
    NotSingular,
)
from .jets import Jet1, Jet2, JetVec

CLASS_TOL = curves.CLASS_TOL
NORMAL_TOL = 1e-9
SINGULAR_TOL = 1e-9
FRONT_TOL = 1e-7

USER_SUPPLIED = "UserSupplied"
DERIVED = "DerivedByDivision"

NON_SINGULAR = "NonSingular"
DEGENERATE = "Degenerate"
SECOND_KIND = "SecondKind"
FRONT_CUSPIDAL_EDGE = "FirstKindFrontCuspidalEdge"
FRONT_OTHER = "FirstKindFrontOther"
RAMPHOID_52_EDGE = "Ramphoid52Edge"
FRONTAL_OTHER = "FirstKindFrontalOther"


@dataclass(frozen=True)
class FrontalGerm:
    f: JetVec
    nu: JetVec
    provenance: str
    base: tuple = (0.0, 0.0)
    label: str = ""
    # +1 when (d/du, d/dv) is positively oriented, -1 for the reversed source
    orientation: int = 1

    @property
    def order(self):
        return self.f.order


@dataclass(frozen=True)
class SingularData:
    lam: Jet2
    gamma: JetVec
    eta: JetVec
    xi: JetVec
    orientation_sign: int
    eta_lambda: float
    dlambda: tuple
    first_kind: bool
    transversality: float


@dataclass(frozen=True)
class AdaptedFrame:
    """A germ pulled back to the adapted chart."""

    sd: SingularData
    phi: tuple
    f: JetVec
    nu: JetVec
    lam: Jet2


@dataclass(frozen=True)
class AdaptedNullData:
    k1: float
    k2: float
    l: float
    residual: float
    k1_jet: Jet1
    k2_jet: Jet1
    l_jet: Jet1
    conditions: tuple

    @property
    def eta_tilde(self):
        return "eta~ = d/ds + (k1(t) s + k2(t) s^2/2) d/dt in the adapted chart"


@dataclass(frozen=True)
class EdgeInvariants:
    kappa_s: Jet1
    kappa_nu: Jet1
    kappa_t: Jet1
    kappa_c: Jet1
    r_b: Optional[Jet1] = None
    r_c: Optional[Jet1] = None
    r_Pi: Optional[Jet1] = None

    NAMES = ("kappa_s", "kappa_nu", "kappa_t", "kappa_c", "r_b", "r_c", "r_Pi")

    def derivative(self, name, k=0):
        jet = getattr(self, name)
        if jet is None or k > jet.order:
            return None
        return jet.derivative_at_zero(k)

    def table(self, upto=3):
        out = {}
        for name in self.NAMES:
            jet = getattr(self, name)
            out[name] = None if jet is None else jet.derivatives(upto)
        return out


@dataclass(frozen=True)
class EdgeClass:
    verdict: str
    margins: dict = field(default_factory=dict)
    inconclusive: bool = False


# ---------------------------------------------------------------------------
# small helpers
def _fscale(f):
    """Size of the non-constant part of a vector jet."""
    return max(1.0, max(float(np.max(np.abs(c.with_constant(0.0).c))) for c in f))


def apply_field(a, b, F):
    """(a d/du + b d/dv) F for jets ``F`` (scalar or vector); a, b jets or numbers."""
    if isinstance(F, JetVec):
        return F.map(lambda c: apply_field(a, b, c))
    out = None
    for coef, axis in ((a, "u"), (b, "v")):
        if isinstance(coef, (int, float)) and coef == 0:
            continue
        term = F.partial(axis) * coef
        out = term if out is None else out + term
    return out


def _pad(jet: Jet1, order: int) -> Jet1:
    """Extend a jet with zero coefficients (used for fields we are free to choose)."""
    c = np.zeros(order + 1)
    m = min(order, jet.order) + 1
    c[:m] = jet.c[:m]
    return Jet1(c, order)


def _reverse(vec):
    return vec.map(lambda c: c.reflect())


def solve_zero_curve(g: Jet2, along=None):
    """Jet of the curve {g = 0} through the origin by the implicit function theorem.

    Returns ((x(t), y(t)), axis) where the curve is parameterized by u
    (axis 'u') or by v.  A chord Newton iteration gains one order per pass.
    """
    n = g.order
    g0 = g.with_constant(0.0)
    gu, gv = g.coeff(1, 0), g.coeff(0, 1)
    if along is None:
        along = "u" if abs(gv) >= abs(gu) else "v"
    t = Jet1.variable(n)
    y = Jet1.constant(0.0, n)
    for _ in range(n + 1):
        if along == "u":
            y = (y - g0.compose(t, y) / gv).with_constant(0.0)
        else:
            y = (y - g0.compose(y, t) / gu).with_constant(0.0)
    return (JetVec([t, y]) if along == "u" else JetVec([y, t])), along


def _null_direction(fu, fv):
    """Kernel of [fu | fv] along the singular curve, normalized to one unit component."""
    if float(np.linalg.norm(fu.value())) >= float(np.linalg.norm(fv.value())):
        c = jets.dot(fu, fv) / jets.dot(fu, fu)
        return JetVec([-c, c * 0.0 + 1.0])
    c = jets.dot(fu, fv) / jets.dot(fv, fv)
    return JetVec([c * 0.0 + 1.0, -c])


def chart_map(gamma: JetVec, eta: JetVec):
    """Two-variable jets of (t, s) -> gamma(t) + s eta(t)."""
    n = min(gamma.order, eta.order)
    s = Jet2.variable("v", n)
    return tuple(
        gamma[i].truncate(n).lift("u") + s * eta[i].truncate(n).lift("u") for i in range(2)
    )


def invert_map(phi):
    """Jet of the inverse of a local diffeomorphism (phi1, phi2) fixing the origin."""
    n = min(p.order for p in phi)
    A = np.array([[phi[0].coeff(1, 0), phi[0].coeff(0, 1)], [phi[1].coeff(1, 0), phi[1].coeff(0, 1)]])
    Ainv = np.linalg.inv(A)
    u, v = Jet2.variables(n)
    rest = (phi[0] - (u * A[0, 0] + v * A[0, 1]), phi[1] - (u * A[1, 0] + v * A[1, 1]))
    rest = tuple(r.with_constant(0.0) for r in rest)
    psi = (u * Ainv[0, 0] + v * Ainv[0, 1], u * Ainv[1, 0] + v * Ainv[1, 1])
    for _ in range(n + 1):
        r = (rest[0].compose(*psi), rest[1].compose(*psi))
        d0, d1 = u - r[0], v - r[1]
        psi = (d0 * Ainv[0, 0] + d1 * Ainv[0, 1], d0 * Ainv[1, 0] + d1 * Ainv[1, 1])
    return psi


def _pull(F, phi):
    return F.compose(*phi)


# ---------------------------------------------------------------------------
# construction
def check_normal(f: JetVec, nu: JetVec, tol=NORMAL_TOL):
    """Largest violation of |nu| = 1, <f_u, nu> = 0 and <f_v, nu> = 0 (scaled)."""
    n = min(f.order - 1, nu.order)
    nu = nu.truncate(n)
    scale = _fscale(f)
    unit = (jets.dot(nu, nu) - 1.0).max_abs()
    ortho = max(
        jets.dot(f.partial("u").truncate(n), nu).max_abs(),
        jets.dot(f.partial("v").truncate(n), nu).max_abs(),
    )
    return max(unit, ortho / scale)


def build_frontal(
    f: JetVec, nu: Optional[JetVec] = None, base=(0.0, 0.0), label="", tol=NORMAL_TOL, orientation=1
):
    if f.dim != 3:
        raise ValueError("a surface germ needs three components")
    if nu is not None:
        worst = check_normal(f, nu)
        if worst > tol:
            raise NormalInvalid(f"supplied normal violates |nu| = 1 or <df, nu> = 0 by {worst:.3g}")
        return FrontalGerm(f, nu, USER_SUPPLIED, tuple(base), label, orientation)
    return FrontalGerm(f, derive_normal(f, tol), DERIVED, tuple(base), label, orientation)


def derive_normal(f: JetVec, tol=NORMAL_TOL) -> JetVec:
    """Unit normal jet of a frontal germ from f_u x f_v.

    Regular germs normalize the cross product.  At a singular point the
    cross product is divided by the vanishing coordinate in an adapted chart
    and pulled back; the sign is that of the side s > 0 of the chart.
    """
    fu, fv = f.partial("u"), f.partial("v")
    n = jets.cross(fu, fv)
    scale = _fscale(f)
    if float(np.linalg.norm(n.value())) > SINGULAR_TOL * scale**2:
        return jets.normalize(n)
    grads = [math.hypot(c.coeff(1, 0), c.coeff(0, 1)) for c in n]
    k = int(np.argmax(grads))
    if grads[k] <= SINGULAR_TOL * scale**2:
        raise NotFrontal("f_u x f_v has a degenerate zero; supply the unit normal explicitly")
    gamma, _ = solve_zero_curve(n[k])
    fu_g = fu.compose(gamma[0], gamma[1])
    fv_g = fv.compose(gamma[0], gamma[1])
    eta = _null_direction(fu_g, fv_g)
    if np.linalg.det(np.array([gamma.d().value(), eta.value()])) < 0:
        eta = -eta
    phi = chart_map(gamma, eta)
    ft = _pull(f, phi)
    nt = jets.cross(ft.partial("u"), ft.partial("v"))
    try:
        p = nt.map(lambda c: c.divide_by_coordinate("v", 1, tol=max(tol, jets.TOL_DIVISIBILITY)))
    except NotDivisible as exc:
        raise NotFrontal(f"f_u x f_v is not divisible along the singular curve: {exc}") from None
    if float(np.linalg.norm(p.value())) <= SINGULAR_TOL * scale**2:
        raise NotFrontal("the divided cross product vanishes; no unit normal at this jet order")
    nu_t = jets.normalize(p)
    psi = invert_map(phi)
    return nu_t.map(lambda c: c.compose(*psi))


# ---------------------------------------------------------------------------
# singular set
def signed_area_density(g: FrontalGerm) -> Jet2:
    return jets.det3(g.f.partial("u"), g.f.partial("v"), g.nu)


def singular_data(g: FrontalGerm, tol=SINGULAR_TOL) -> SingularData:
    lam = signed_area_density(g)
    fu, fv = g.f.partial("u"), g.f.partial("v")
    scale = _fscale(g.f) ** 2
    if abs(lam.value) > tol * scale:
        raise NotSingular(f"lambda(0) = {lam.value:.6g} is not zero")
    grad = (lam.coeff(1, 0), lam.coeff(0, 1))
    if math.hypot(*grad) <= tol * scale:
        raise DegenerateSingularity("d lambda(0) = 0")
    # the singular set is also the zero set of the component of f_u x f_v
    # with the steepest gradient, which keeps one more order than lambda
    cross = jets.cross(fu, fv)
    grads = [math.hypot(c.coeff(1, 0), c.coeff(0, 1)) for c in cross]
    proxy = cross[int(np.argmax(grads))]
    curve_fn = proxy if proxy.order > lam.order and max(grads) > tol * scale else lam
    gamma, _ = solve_zero_curve(curve_fn)
    fu_g = fu.compose(gamma[0], gamma[1])
    fv_g = fv.compose(gamma[0], gamma[1])
    eta_raw = _null_direction(fu_g, fv_g)
    eta_lambda = float(np.dot(grad, eta_raw.value()))
    # lambda changes sign with the source orientation; eta_lambda stays raw
    sign = 1 if g.orientation * eta_lambda > 0 else -1
    eta = eta_raw * float(sign)
    g1 = gamma.d().value()
    e0 = eta.value()
    det = float(np.linalg.det(np.array([g1, e0])))
    transversality = det / (np.linalg.norm(g1) * np.linalg.norm(e0))
    first_kind = abs(transversality) > tol
    if g.orientation * det < 0:
        gamma, eta = _reverse(gamma), _reverse(eta)
    return SingularData(
        lam, gamma, eta, gamma.d(), sign, eta_lambda, grad, first_kind, float(abs(transversality))
    )


def adapted_frame(g: FrontalGerm, sd: Optional[SingularData] = None) -> AdaptedFrame:
    sd = sd or singular_data(g)
    if not sd.first_kind:
        raise NotFirstKind("the null direction is tangent to the singular curve")
    phi = chart_map(sd.gamma, sd.eta)
    ft = _pull(g.f, phi)
    nt = _pull(g.nu, phi)
    lam = jets.det3(ft.partial("u"), ft.partial("v"), nt)
    return AdaptedFrame(sd, phi, ft, nt, lam)


def _arclength_inverse(fr: AdaptedFrame):
    speed = jets.norm(fr.f.partial("u").restrict("u"))
    return speed.antiderivative().revert()


def _in_arclength(q: Jet1, t_of_sigma: Jet1) -> Jet1:
    return q.compose(t_of_sigma.truncate(min(q.order, t_of_sigma.order)))


def _frame(g, fr):
    if fr is None:
        fr = adapted_frame(g)
    return fr


# ---------------------------------------------------------------------------
# edge invariants
def edge_invariants(g: FrontalGerm, fr: Optional[AdaptedFrame] = None, arclength=True) -> EdgeInvariants:
    """kappa_s, kappa_nu, kappa_t, kappa_c along the singular curve."""
    fr = _frame(g, fr)
    ft, nt = fr.f, fr.nu
    gh = ft.restrict("u")
    g1, g2 = gh.d(), gh.d(2)
    nu_axis = nt.restrict("u")
    speed = jets.norm(g1)
    kappa_s = jets.det3(g1, g2, nu_axis) / speed**3
    kappa_nu = jets.dot(g2, nu_axis) / speed**2

    X = ft.partial("u").restrict("u")
    fvv = ft.partial("v", 2)
    Y2 = fvv.restrict("u")
    Y3 = ft.partial("v", 3).restrict("u")
    XY2 = fvv.partial("u").restrict("u")
    XX = ft.partial("u", 2).restrict("u")
    cr2 = jets.dot(jets.cross(X, Y2), jets.cross(X, Y2))
    X2 = jets.dot(X, X)
    kappa_c = jets.power(X2, 0.75) * jets.det3(X, Y2, Y3) / jets.power(cr2, 1.25)
    kappa_t = jets.det3(X, Y2, XY2) / cr2 - jets.det3(X, Y2, XX) * jets.dot(X, Y2) / (X2 * cr2)
    out = [kappa_s, kappa_nu, kappa_t, kappa_c]
    if arclength:
        tinv = _arclength_inverse(fr)
        out = [_in_arclength(q, tinv) for q in out]
    return EdgeInvariants(*out)


def _adapted_operator(ft):
    """Build the adapted null field and the iterated derivatives eta~^k f on the axis."""
    X = ft.partial("u").restrict("u")
    X2 = jets.dot(X, X)
    v = Jet2.variable("v", ft.order)
    k1 = -jets.dot(X, ft.partial("v", 2).restrict("u")) / X2
    a1 = _pad(k1, ft.order).lift("u") * v

    def powers(a, upto):
        out = [ft]
        for _ in range(upto):
            out.append(apply_field(a, 1.0, out[-1]))
        return out

    w = powers(a1, 3)[3].restrict("u")
    k2 = -jets.dot(X, w) / X2
    a = a1 + (_pad(k2, ft.order).lift("u") * v * v) * 0.5
    D = [d.restrict("u") for d in powers(a, 5)]
    return X, k1, k2, D


def adapted_null_field(g: FrontalGerm, fr: Optional[AdaptedFrame] = None, front_tol=FRONT_TOL) -> AdaptedNullData:
    fr = _frame(g, fr)
    X, k1, k2, D = _adapted_operator(fr.f)
    D2, D3 = D[2], D[3]
    l = jets.dot(D3, D2) / jets.dot(D2, D2)
    res = D3 - D2.truncate(min(D2.order, l.order)) * l
    d2n = float(np.linalg.norm(D2.value()))
    residual = float(np.linalg.norm(res.value())) / max(d2n, 1e-300)
    xn = float(np.linalg.norm(X.value()))
    conditions = (
        float(np.dot(X.value(), D2.value())) / (xn * d2n),
        float(np.dot(X.value(), D3.value())) / (xn * max(d2n, float(np.linalg.norm(D3.value())))),
    )
    data = AdaptedNullData(k1.value, k2.value, l.value, residual, k1, k2, l, conditions)
    if residual > front_tol:
        raise FrontPoint(
            f"eta~^3 f(0) is not parallel to eta~^2 f(0) (relative residual {residual:.3g}): "
            "the germ is a front here, so l, r_b and r_c are undefined"
        )
    return data


def ramphoid_invariants(
    g: FrontalGerm, fr: Optional[AdaptedFrame] = None, arclength=True, front_tol=FRONT_TOL
) -> EdgeInvariants:
    """Edge invariants including r_b, r_c and r_Pi = kappa_nu r_c."""
    fr = _frame(g, fr)
    adapted_null_field(g, fr, front_tol)
    X, _, _, D = _adapted_operator(fr.f)
    D2, D3, D4, D5 = D[2], D[3], D[4], D[5]
    l = jets.dot(D3, D2) / jets.dot(D2, D2)
    X2 = jets.dot(X, X)
    cr = jets.cross(X, D2)
    cr2 = jets.dot(cr, cr)
    r_b = X2 * jets.det3(X, D2, D4) / jets.power(cr2, 1.5)
    w = D5 * 3.0 - D4.truncate(D5.order) * (l.truncate(D5.order) * 10.0)
    r_c = jets.power(X2, 1.25) * jets.det3(X, D2, w) / jets.power(cr2, 1.75)
    base = edge_invariants(g, fr, arclength=False)
    r_pi = base.kappa_nu * r_c
    out = [base.kappa_s, base.kappa_nu, base.kappa_t, base.kappa_c, r_b, r_c, r_pi]
    if arclength:
        tinv = _arclength_inverse(fr)
        out = [_in_arclength(q, tinv) for q in out]
    return EdgeInvariants(*out)


def all_invariants(g: FrontalGerm, fr: Optional[AdaptedFrame] = None, arclength=True):
    """Every edge invariant that is defined at the germ (ramphoid part only off fronts)."""
    fr = _frame(g, fr)
    try:
        return ramphoid_invariants(g, fr, arclength)
    except FrontPoint:
        return edge_invariants(g, fr, arclength)


# ---------------------------------------------------------------------------
# classification
def _near(x, tol, factor=100.0):
    return tol < abs(x) <= factor * tol or tol / factor < abs(x) <= tol


def kappa_c_vanishing_order(kappa_c: Jet1, upto: int, tol=CLASS_TOL):
    """Largest k <= upto such that coefficients 0..k of kappa_c vanish (-1 if none)."""
    reached = -1
    for k in range(min(upto, kappa_c.order) + 1):
        if abs(kappa_c.c[k]) > tol:
            break
        reached = k
    return reached


def classify_edge(g: FrontalGerm, class_tol=CLASS_TOL) -> EdgeClass:
    margins = {}
    try:
        sd = singular_data(g)
    except NotSingular:
        return EdgeClass(NON_SINGULAR, {"lambda0": float(signed_area_density(g).value)})
    except DegenerateSingularity:
        return EdgeClass(DEGENERATE, {"|dlambda0|": 0.0})
    margins.update(
        lambda0=float(sd.lam.value),
        dlambda0=[float(x) for x in sd.dlambda],
        eta_lambda=sd.eta_lambda,
        transversality=sd.transversality,
    )
    if not sd.first_kind:
        return EdgeClass(SECOND_KIND, margins, _near(sd.transversality, SINGULAR_TOL))
    fr = adapted_frame(g, sd)
    inv = edge_invariants(g, fr)
    kc0 = inv.kappa_c.value
    margins["kappa_c0"] = kc0
    if abs(kc0) > class_tol:
        return EdgeClass(FRONT_CUSPIDAL_EDGE, margins, _near(kc0, class_tol))
    upto = g.order - 5
    reached = kappa_c_vanishing_order(inv.kappa_c, upto, class_tol)
    margins["kappa_c_max_coeff"] = float(np.max(np.abs(inv.kappa_c.c[: upto + 1])))
    margins["kappa_c_zero_through_order"] = reached
    if reached < upto:
        return EdgeClass(FRONTAL_OTHER, margins)
    try:
        ram = ramphoid_invariants(g, fr)
    except FrontPoint as exc:
        margins["front_residual"] = str(exc)
        return EdgeClass(FRONTAL_OTHER, margins, True)
    rc0 = ram.r_c.value
    margins["r_c0"] = rc0
    margins["r_b0"] = ram.r_b.value
    if abs(rc0) > class_tol:
        return EdgeClass(RAMPHOID_52_EDGE, margins, _near(rc0, class_tol))
    return EdgeClass(FRONTAL_OTHER, margins, _near(rc0, class_tol))


# ---------------------------------------------------------------------------
# slice curve and invariance audits
def normal_slice_curve(g: FrontalGerm, fr: Optional[AdaptedFrame] = None) -> JetVec:
    """Slice of the germ by the normal plane of the singular image at 0.

    Expressed in the basis (b, nu) with b = -e x nu, parameterized by the
    null direction so the slice inherits the orientation of eta.
    """
    fr = _frame(g, fr)
    ft = fr.f
    e = ft.partial("u").value()
    e = e / np.linalg.norm(e)
    nu0 = fr.nu.value()
    b = -np.cross(e, nu0)
    centred = ft - JetVec([Jet2.constant(x, ft.order) for x in ft.value()])
    h = jets.dot(centred, e)
    c, _ = solve_zero_curve(h, along="v")
    chat = centred.compose(c[0], c[1])
    return JetVec([jets.dot(chat, b), jets.dot(chat, nu0)])


def null_normal_check(g: FrontalGerm, fr: Optional[AdaptedFrame] = None, tol=1e-8):
    """Compare eta nu = 0 on S(f) with det(xi f, eta^2 f, eta^3 f) = 0 on S(f)."""
    fr = _frame(g, fr)
    ft = fr.f
    eta_nu = fr.nu.partial("v").restrict("u")
    det = jets.det3(
        ft.partial("u").restrict("u"), ft.partial("v", 2).restrict("u"), ft.partial("v", 3).restrict("u")
    )
    n = min(eta_nu.order, det.order)
    nu_size = max(float(np.max(np.abs(c.c[: n + 1]))) for c in eta_nu)
    scale = _fscale(ft) ** 3
    det_size = float(np.max(np.abs(det.c[: n + 1]))) / scale
    nu_zero = nu_size <= tol
    det_zero = det_size <= tol
    return {
        "eta_nu_max": nu_size,
        "det_max": det_size,
        "eta_nu_vanishes": nu_zero,
        "det_vanishes": det_zero,
        "orders_checked": n,
        "equivalent": nu_zero == det_zero,
    }


def _rb_rc_with_fields(ft, xi, eta_bar):
    """r_b(0), r_c(0) from explicit fields xi = (a, b), eta_bar = (c, d) (jets)."""
    Xf = apply_field(xi[0], xi[1], ft)
    E = [ft]
    for _ in range(5):
        E.append(apply_field(eta_bar[0], eta_bar[1], E[-1]))
    X = Xf.value()
    D2, D3, D4, D5 = (E[k].value() for k in (2, 3, 4, 5))
    l = float(D3 @ D2) / float(D2 @ D2)
    cr = np.cross(X, D2)
    crn = float(np.linalg.norm(cr))
    xn = float(np.linalg.norm(X))
    rb = xn**2 * float(np.linalg.det(np.array([X, D2, D4]))) / crn**3
    rc = xn**2.5 * float(np.linalg.det(np.array([X, D2, 3 * D5 - 10 * l * D4]))) / crn**3.5
    return rb, rc


def _random_poly(rng, order, c0, spread, axis_vanish=0):
    """Random Jet2 polynomial of low degree with constant term c0."""
    u, v = Jet2.variables(order)
    out = Jet2.constant(c0, order)
    for i in range(3):
        for j in range(3 - i):
            if i + j == 0:
                continue
            out = out + (u**i) * (v**j) * float(rng.uniform(-spread, spread))
    if axis_vanish:
        out = out * v**axis_vanish
    return out


def invariance_audit(g: FrontalGerm, trials=50, seed=0, class_tol=CLASS_TOL):
    """Recompute r_b(0), r_c(0) with random admissible fields xi, eta~.

    xi = alpha1 d/du + v q d/dv and eta = alpha4 eta~ + v^3 p d/du with
    alpha1, alpha4 > 0, in the adapted chart.
    """
    verdict = classify_edge(g, class_tol)
    if verdict.verdict != RAMPHOID_52_EDGE:
        raise NotFirstKind(f"audit needs a 5/2-cuspidal edge, got {verdict.verdict}")
    fr = adapted_frame(g)
    ft = fr.f
    n = ft.order
    ref = ramphoid_invariants(g, fr)
    rb0, rc0 = ref.r_b.value, ref.r_c.value
    _, k1, k2, _ = _adapted_operator(ft)
    v = Jet2.variable("v", n)
    a = _pad(k1, n).lift("u") * v + _pad(k2, n).lift("u") * v * v * 0.5
    base_rb, base_rc = _rb_rc_with_fields(ft, (1.0, 0.0), (a, 1.0))
    rng = np.random.default_rng(seed)
    worst = 0.0
    rows = []
    for _ in range(trials):
        alpha1 = _random_poly(rng, n, float(rng.uniform(0.5, 2.0)), 0.3)
        q = _random_poly(rng, n, float(rng.uniform(-1, 1)), 0.3, axis_vanish=1)
        alpha4 = _random_poly(rng, n, float(rng.uniform(0.5, 2.0)), 0.3)
        p = _random_poly(rng, n, float(rng.uniform(-1, 1)), 0.3, axis_vanish=3)
        xi = (alpha1, q)
        eta_bar = (alpha4 * a + p, alpha4)
        rb, rc = _rb_rc_with_fields(ft, xi, eta_bar)
        dev = max(abs(rb - base_rb) / max(1.0, abs(base_rb)), abs(rc - base_rc) / max(1.0, abs(base_rc)))
        worst = max(worst, dev)
        rows.append((rb, rc))
    scaled = _rb_rc_with_fields(ft, (1.0, 0.0), (a * 2.0, 2.0))
    return {
        "r_b": rb0,
        "r_c": rc0,
        "trials": trials,
        "seed": seed,
        "max_relative_deviation": worst,
        "scaled_eta": {"r_b": scaled[0], "r_c": scaled[1]},
        "null_normal": null_normal_check(g, fr),
        "samples": rows,
    }


# ---------------------------------------------------------------------------
# coordinate changes used by invariance checks
def reparameterize(g: FrontalGerm, x: Jet2, y: Jet2, label=None) -> FrontalGerm:
    """Germ of f(x(u,v), y(u,v)) with the transported normal."""
    f = g.f.map(lambda c: c.compose(x, y))
    nu = g.nu.map(lambda c: c.compose(x, y))
    return FrontalGerm(f, nu, g.provenance, g.base, label or g.label, g.orientation)


def rigid_motion(g: FrontalGerm, R: np.ndarray, shift=(0.0, 0.0, 0.0)) -> FrontalGerm:
    f = JetVec([sum((g.f[j] * float(R[i, j]) for j in range(3)), start=Jet2.constant(shift[i], g.f.order)) for i in range(3)])
    nu = JetVec([sum((g.nu[j] * float(R[i, j]) for j in range(1, 3)), start=g.nu[0] * float(R[i, 0])) for i in range(3)])
    return FrontalGerm(f, nu, g.provenance, g.base, g.label, g.orientation)


def flip_normal(g: FrontalGerm) -> FrontalGerm:
    return FrontalGerm(g.f, -g.nu, g.provenance, g.base, g.label, g.orientation)
