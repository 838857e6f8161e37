"""Built-in germs with known invariant values.

The helicoidal conjugates of Delaunay surfaces are written in the
expression language, so their integrals are expanded by the same jet
machinery a user germ would go through.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expr, frontal
from .errors import BadParams
from .jets import DEFAULT_SURFACE_ORDER

DELTA = "((tau^2 + k + 1)^2 - 4*k)"
DELTA_CAP = f"({DELTA} - tau^4)"
DELTA_U = DELTA.replace("tau", "u")
DELTA_CAP_U = DELTA_CAP.replace("tau", "u")

_T_PSI = f"int(sqrt(2*(1 + k))*tau^4/(H*sqrt{DELTA}*{DELTA_CAP}), tau, 0, u)"
_T_PHI = f"(int(sqrt(2*(1 + k))*(1 - k)*tau^2/(sqrt{DELTA}*{DELTA_CAP}), tau, 0, u) - sqrt((1 + k)/2)*v)"
_T_RHO = f"(sqrt{DELTA_CAP_U}/(2*H*(k + 1)))"
F_T = f"({_T_PSI} + (1 - k)/(2*H*(1 + k))*{_T_PHI}, {_T_RHO}*cos({_T_PHI}), {_T_RHO}*sin({_T_PHI}))"
NU_T = (
    f"(sqrt({DELTA_U}*{DELTA_CAP_U}), "
    f"-sqrt(2*(k + 1))*u^3*cos({_T_PHI}) - sqrt{DELTA_U}*(k - 1)*sin({_T_PHI}), "
    f"-sqrt(2*(k + 1))*u^3*sin({_T_PHI}) + sqrt{DELTA_U}*(k - 1)*cos({_T_PHI}))"
)
NU_T_SCALE = f"1/(sqrt(2*{DELTA_CAP_U})*sqrt({DELTA_U} - (k + 1)*u^2))"

_S_PSI = f"int(sqrt(2*(-k - 1))*tau^4/(H*sqrt{DELTA}*{DELTA_CAP}), tau, 0, u)"
_S_PHI = f"(-int(sqrt(2*(-k - 1))*(1 - k)*tau^2/(sqrt{DELTA}*{DELTA_CAP}), tau, 0, u) - sqrt((-k - 1)/2)*v)"
_S_RHO = f"(-sqrt{DELTA_CAP_U}/(2*H*(1 + k)))"
F_S = f"({_S_RHO}*sinh({_S_PHI}), {_S_RHO}*cosh({_S_PHI}), {_S_PSI} + (k - 1)/(2*H*(1 + k))*{_S_PHI})"

_L_ROOT = "sqrt(tau^4 + 4)"
_L_PSI = f"int(tau^2*({_L_ROOT} + tau^2)/(4*H^2*{_L_ROOT}), tau, 0, u)"
_L_PHI = f"(int(({_L_ROOT} + tau^2)/(2*H*{_L_ROOT}), tau, 0, u) + v)"
_L_RHO = "(u/2)"
F_L = (
    f"({_L_PSI} - {_L_RHO} - {_L_RHO}*{_L_PHI}^2 + H*({_L_PHI}^3/3 + {_L_PHI}), "
    f"-2*{_L_RHO}*{_L_PHI} + H*{_L_PHI}^2, "
    f"{_L_PSI} + {_L_RHO} - {_L_RHO}*{_L_PHI}^2 + H*({_L_PHI}^3/3 - {_L_PHI}))"
)

STANDARD_MODELS = {
    "CuspidalEdge": "(u, v^2, v^3)",
    "Ramphoid52": "(u, v^2, v^5)",
    "QuarticDegenerate": "(u, v^2, v^4)",
}
ROTATION = "((1 + t^5)*cos(theta), (1 + t^5)*sin(theta), t^2)"
ROTATION_EXPR = "((1 + u^5)*cos(v), (1 + u^5)*sin(v), u^2)"
# radius scaled by c, angle by 1/c, height re-integrated so E, F, G are kept
BENT_ROTATION_EXPR = (
    "(c*(1 + u^5)*cos(v/c), c*(1 + u^5)*sin(v/c), int(2*tau*sqrt(1 + (1 - c^2)*25*tau^6/4), tau, 0, u))"
)


@dataclass(frozen=True)
class DelaunayParams:
    family: str
    H: float
    k: float = -1.0
    v0: float = 0.0

    def validate(self):
        if self.family not in ("T", "S", "L"):
            raise BadParams(f"unknown family {self.family!r}; expected T, S or L")
        if not math.isfinite(self.H) or self.H <= 0:
            raise BadParams("H must be a positive real (the formulas assume H > 0)")
        if self.family == "T" and not (self.k > -1 and self.k != 1):
            raise BadParams("family T needs k > -1 and k != 1")
        if self.family == "S" and not self.k < -1:
            raise BadParams("family S needs k < -1")
        if self.family == "L" and self.k != -1:
            raise BadParams("family L has k = -1")
        return self

    @classmethod
    def for_k(cls, H, k, v0=0.0):
        family = "L" if k == -1 else ("S" if k < -1 else "T")
        return cls(family, H, k, v0).validate()


def delaunay_source(p: DelaunayParams):
    """Germ text (and normal text for family T) in the expression language."""
    p.validate()
    return {"T": F_T, "S": F_S, "L": F_L}[p.family]


# The gallery fields xi = d/dv, eta = d/du are positively oriented, so the
# source carries the orientation of (v, u).  r_c changes sign with it.
GALLERY_ORIENTATION = -1


def delaunay_conjugate(p: DelaunayParams, order=DEFAULT_SURFACE_ORDER, orientation=GALLERY_ORIENTATION):
    p.validate()
    if order > 14:
        raise BadParams("order above 14 is not supported for gallery germs")
    params = {"H": p.H, "k": p.k}
    base = (0.0, p.v0)
    f = expr.eval_jet(expr.parse_germ(delaunay_source(p), params, ("u", "v")), base, order)
    label = f"delaunay-{p.family}(H={p.H:g}, k={p.k:g}, v0={p.v0:g})"
    if p.family == "T":
        nu = expr.eval_jet(expr.parse_germ(NU_T, params, ("u", "v")), base, order)
        scale = expr.eval_jet(expr.parse_germ(NU_T_SCALE, params, ("u", "v")), base, order)
        return frontal.build_frontal(f, nu * scale, base, label, orientation=orientation)
    return frontal.build_frontal(f, None, base, label, orientation=orientation)


def delaunay_closed_forms(p: DelaunayParams):
    """(r_c, r_b) at (0, v0) from the closed-form expressions."""
    p.validate()
    H, k, v = p.H, p.k, p.v0
    if p.family == "T":
        return 72 * H**1.5 * math.sqrt(k + 1) / math.sqrt(abs(k - 1)), 0.0
    if p.family == "S":
        x = math.sqrt(-k - 1) * v / math.sqrt(2)
        rc = 72 * H**1.5 * math.sqrt(-k - 1) / (math.sqrt(1 - k) * math.cosh(x))
        rb = 6 * math.sqrt(2) * H * (1 + k) * math.sinh(x) / ((1 - k) * math.cosh(x) ** 2)
        return rc, rb
    return -72 * math.sqrt(H) / (1 + v * v), 6 * math.sqrt(2) * v / (H * (1 + v * v) ** 2)


def delaunay_eta_lambda(p: DelaunayParams):
    """Closed form of d lambda(d/du) on the singular set of family T."""
    if p.family != "T":
        raise BadParams("the closed form is only available for family T")
    return -1.0 / (2 * p.H**2 * math.sqrt(p.k + 1))


def delaunay_t_fields_det(g: frontal.FrontalGerm, p: DelaunayParams):
    """det(xi f, eta~^2 f, eta~^5 f) at (0, v0) with xi = d/dv and
    eta~ = d/du - 2 sign(k-1)/(k-1)^2 u^2 d/dv (the fields for family T)."""
    from .jets import Jet2

    if p.family != "T":
        raise BadParams("the explicit adapted field is only given for family T")
    u = Jet2.variable("u", g.order)
    c = -2 * math.copysign(1.0, p.k - 1) / (p.k - 1) ** 2
    b = u * u * c
    X = frontal.apply_field(0, 1.0, g.f).value()
    D = g.f
    powers = [D]
    for _ in range(5):
        powers.append(frontal.apply_field(1.0, b, powers[-1]))
    D2, D3, D5 = powers[2].value(), powers[3].value(), powers[5].value()
    return {
        "det": float(np.linalg.det(np.array([X, D2, D5]))),
        "closed_form": -24.0 / (p.H**2 * abs(p.k - 1) ** 3),
        "<xi f, eta~^2 f>": float(X @ D2),
        "|eta~^3 f|": float(np.linalg.norm(D3)),
    }


def rotation_example(order=DEFAULT_SURFACE_ORDER) -> frontal.FrontalGerm:
    """Rotation of the plane curve (x, z) = (1 + t^5, t^2) about the z-axis.

    The variables are u = t and v = theta.
    """
    f = expr.eval_jet(expr.parse_germ(ROTATION_EXPR), (0.0, 0.0), order)
    return frontal.build_frontal(f, None, (0.0, 0.0), "rotation")


def bent_rotation_example(c=0.5, order=DEFAULT_SURFACE_ORDER) -> frontal.FrontalGerm:
    """Isometric bending of the rotation example (0 < c <= 1).

    The first fundamental form is that of :func:`rotation_example`, while
    the singular image becomes a circle of radius c, so kappa_nu changes.
    """
    if not 0 < c <= 1:
        raise BadParams("the bending parameter c must lie in (0, 1]")
    spec = expr.parse_germ(BENT_ROTATION_EXPR, {"c": c}, ("u", "v"))
    f = expr.eval_jet(spec, (0.0, 0.0), order)
    return frontal.build_frontal(f, None, (0.0, 0.0), f"rotation-bent(c={c:g})")


def standard_models(which: str, order=DEFAULT_SURFACE_ORDER) -> frontal.FrontalGerm:
    if which not in STANDARD_MODELS:
        raise BadParams(f"unknown model {which!r}; expected one of {', '.join(STANDARD_MODELS)}")
    f = expr.eval_jet(expr.parse_germ(STANDARD_MODELS[which]), (0.0, 0.0), order)
    return frontal.build_frontal(f, None, (0.0, 0.0), which)


def parameter_grid():
    """The (H, k, v0) grid used for gallery checks."""
    for H in (0.3, 0.5, 1.0):
        for k in (-3.0, -2.0, -1.0, -0.5, 0.5, 2.0, 3.0):
            for v0 in (0.0, 0.5, 1.0):
                yield DelaunayParams.for_k(H, k, v0)
