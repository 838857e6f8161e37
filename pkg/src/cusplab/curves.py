"""Plane-curve cusps and normal-plane projections of space curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import jets
from .errors import FlatPoint, NotAType, NotRamphoid, NotRegular, NotSingular
from .jets import Jet1, JetVec

CLASS_TOL = 1e-9
SIDE_TOL = 1e-14

REGULAR = "Regular"
A_TYPE_NON_CUSP = "ATypeNonCusp"
CUSP32 = "Cusp32"
CUSP52_BALANCED = "Cusp52Balanced"
CUSP52_NON_BALANCED = "Cusp52NonBalanced"
DEGENERATE_HIGHER = "DegenerateHigher"


@dataclass(frozen=True)
class CurveInvariants:
    omega: Optional[float]
    l: Optional[float]
    bias: Optional[float]
    omega_r: Optional[float]
    a_type: bool
    residual: float = 0.0

    def as_dict(self):
        return {
            "omega": self.omega,
            "l": self.l,
            "bias": self.bias,
            "omega_r": self.omega_r,
            "a_type": self.a_type,
            "parallel_residual": self.residual,
        }


@dataclass(frozen=True)
class CuspClass:
    verdict: str
    margins: dict = field(default_factory=dict)

    @property
    def is_52(self):
        return self.verdict in (CUSP52_BALANCED, CUSP52_NON_BALANCED)


@dataclass(frozen=True)
class FrenetData:
    """Curvature and torsion as jets in arc length, plus the frame at 0."""

    kappa: Jet1
    tau: Jet1
    e: np.ndarray
    n: np.ndarray
    b: np.ndarray

    def derivative(self, which, k):
        jet = self.kappa if which == "kappa" else self.tau
        return jet.derivative_at_zero(k) if k <= jet.order else 0.0


def _derivs(gamma, upto):
    """Derivative vectors gamma^(k)(0) for k = 0..upto (zeros past the order)."""
    out = []
    for k in range(upto + 1):
        if k <= gamma.order:
            out.append(np.array([c.derivative_at_zero(k) for c in gamma]))
        else:
            out.append(np.zeros(gamma.dim))
    return out


def _scale(d):
    return max(1.0, max(float(np.max(np.abs(x))) for x in d[1:]))


def curve_invariants(gamma: JetVec, class_tol=CLASS_TOL) -> CurveInvariants:
    if gamma.dim != 2:
        raise ValueError("curve_invariants needs a plane curve")
    d = _derivs(gamma, 5)
    scale = _scale(d)
    if np.linalg.norm(d[1]) > class_tol * scale:
        raise NotSingular(f"gamma'(0) = {d[1].tolist()} is not zero")
    n2 = float(np.linalg.norm(d[2]))
    if n2 <= class_tol * scale:
        raise NotAType("gamma''(0) = 0: the germ is not of A-type")
    det23 = float(np.linalg.det(np.array([d[2], d[3]])))
    omega = det23 / n2**2.5
    residual = det23 / (n2 * max(float(np.linalg.norm(d[3])), 1e-300))
    if abs(omega) > class_tol or gamma.order < 4:
        return CurveInvariants(omega, None, None, None, True, residual)
    l = float(d[3] @ d[2]) / n2**2
    bias = float(np.linalg.det(np.array([d[2], d[4]]))) / n2**3
    omega_r = None
    if gamma.order >= 5:
        w = 3 * d[5] - 10 * l * d[4]
        omega_r = float(np.linalg.det(np.array([d[2], w]))) / n2**3.5
    return CurveInvariants(omega, l, bias, omega_r, True, residual)


def classify_cusp(gamma: JetVec, class_tol=CLASS_TOL) -> CuspClass:
    d = _derivs(gamma, 2)
    margins = {"|gamma'(0)|": float(np.linalg.norm(d[1])), "|gamma''(0)|": float(np.linalg.norm(d[2]))}
    try:
        inv = curve_invariants(gamma, class_tol)
    except NotSingular:
        return CuspClass(REGULAR, margins)
    except NotAType:
        return CuspClass(DEGENERATE_HIGHER, margins)
    margins.update(omega=inv.omega, omega_r=inv.omega_r, bias=inv.bias, parallel_residual=inv.residual)
    if abs(inv.omega) > class_tol:
        return CuspClass(CUSP32, margins)
    if inv.omega_r is None:
        # jet too short to see the fifth-order term
        return CuspClass(A_TYPE_NON_CUSP, margins)
    if abs(inv.omega_r) > class_tol:
        verdict = CUSP52_BALANCED if abs(inv.bias) <= class_tol else CUSP52_NON_BALANCED
        return CuspClass(verdict, margins)
    return CuspClass(DEGENERATE_HIGHER, margins)


def signed_curvature_extension(gamma: JetVec, class_tol=CLASS_TOL):
    """kappa~(0) and d kappa~/ds (0) for a 5/2-cusp, s the half-arclength.

    With gamma' = t g(t), the signed curvature sgn(t) kappa equals
    det(g, g')/(t |g|^3) and the half-arclength is s = t sqrt(m(t)) where
    t^2 m(t) = int_0^t tau |g(tau)| dtau.
    """
    cls = classify_cusp(gamma, class_tol)
    if not cls.is_52:
        raise NotRamphoid(f"germ is {cls.verdict}, not a 5/2-cusp")
    g = gamma.d().map(lambda c: c.divide_by_t(1, tol=1e-7))
    gp = g.d()
    num = jets.det2(g.truncate(gp.order), gp).divide_by_t(1, tol=1e-7)
    gn = jets.norm(g)
    ktilde = num / (gn**3).truncate(num.order)
    t = Jet1.variable(gn.order)
    m = (t * gn).antiderivative().divide_by_t(2)
    s_prime0 = math.sqrt(m.value)
    return ktilde.value, ktilde.derivative_at_zero(1) / s_prime0


def tangent_side_check(gamma: JetVec, epsilon=0.05, samples=16, side_tol=SIDE_TOL):
    d = _derivs(gamma, 2)
    n2 = np.linalg.norm(d[2])
    if n2 == 0:
        return "Inconclusive"
    normal = np.array([-d[2][1], d[2][0]]) / n2
    origin = np.array([c.value for c in gamma])
    ts = epsilon * np.arange(1, samples + 1) / samples

    def side(sign):
        vals = np.array([(np.array([c(sign * t) for c in gamma]) - origin) @ normal for t in ts])
        if np.all(vals > side_tol):
            return 1
        if np.all(vals < -side_tol):
            return -1
        return 0

    plus, minus = side(1.0), side(-1.0)
    if plus == 0 or minus == 0:
        return "Inconclusive"
    return "SameSide" if plus == minus else "BothSides"


# ---------------------------------------------------------------------------
# space curves
def arclength_reparameterize(Gamma: JetVec) -> JetVec:
    speed = jets.norm(Gamma.d())
    if speed.value <= jets.TOL_ZERO:
        raise NotRegular("Gamma'(0) = 0")
    sigma = speed.antiderivative()
    t_of_s = sigma.revert()
    n = Gamma.order
    inner = t_of_s.truncate(n)
    return JetVec([c.compose(inner) for c in Gamma])


def _complete_basis(e):
    trial = np.eye(3)[int(np.argmin(np.abs(e)))]
    n = trial - (trial @ e) * e
    n /= np.linalg.norm(n)
    return n, np.cross(e, n)


def frenet_data(Gamma: JetVec, tol=1e-12) -> FrenetData:
    G = arclength_reparameterize(Gamma)
    d1, d2, d3 = G.d(), G.d(2), G.d(3)
    kappa = jets.norm(d2)
    if kappa.value <= tol:
        raise FlatPoint("curvature vanishes at 0")
    tau = jets.det3(d1.truncate(d3.order), d2.truncate(d3.order), d3) / (kappa * kappa).truncate(d3.order)
    e = d1.value()
    n = d2.value() / kappa.value
    return FrenetData(kappa, tau, e, n, np.cross(e, n))


def project_to_normal_plane(Gamma: JetVec, tol=1e-12) -> JetVec:
    """Projection of Gamma onto the normal plane at 0, in the basis (n(0), b(0))."""
    if Gamma.dim != 3:
        raise ValueError("project_to_normal_plane needs a space curve")
    if np.linalg.norm(Gamma.d().value()) <= tol:
        raise NotRegular("Gamma'(0) = 0")
    G = arclength_reparameterize(Gamma)
    e = G.d().value()
    acc = G.d(2).value()
    if np.linalg.norm(acc) > tol:
        n = acc / np.linalg.norm(acc)
        b = np.cross(e, n)
    else:
        n, b = _complete_basis(e)
    centred = G - JetVec([Jet1.constant(x, G.order) for x in G.value()])
    return JetVec([jets.dot(centred, n), jets.dot(centred, b)])


def projection_invariants_closed_form(fr: FrenetData, class_tol=CLASS_TOL, tol=1e-12) -> CurveInvariants:
    k0, k1 = fr.derivative("kappa", 0), fr.derivative("kappa", 1)
    t0, t1, t2 = (fr.derivative("tau", i) for i in range(3))
    if k0 <= tol:
        raise FlatPoint("curvature vanishes at 0")
    omega = t0 / math.sqrt(k0)
    if abs(omega) > class_tol:
        return CurveInvariants(omega, None, None, None, True)
    return CurveInvariants(omega, k1 / k0, t1 / k0, (-k1 * t1 + 3 * k0 * t2) / k0**2.5, True)


def space_curve_from_frenet(kappa: Jet1, tau: Jet1, order=None) -> JetVec:
    """Arc-length space curve with prescribed curvature and torsion jets.

    Starts at the origin with the standard frame; solved by Picard iteration
    of the Frenet equations, which gains one order per pass.
    """
    n = order if order is not None else kappa.order + 2
    k = kappa.truncate(min(kappa.order, n)) if kappa.order > n else kappa
    t = tau.truncate(min(tau.order, n)) if tau.order > n else tau
    zero = Jet1.constant(0.0, n)
    k = zero + Jet1(np.pad(k.c, (0, max(0, n + 1 - len(k.c))))[: n + 1])
    t = zero + Jet1(np.pad(t.c, (0, max(0, n + 1 - len(t.c))))[: n + 1])
    frame = [JetVec([zero + x for x in row]) for row in np.eye(3)]
    for _ in range(n + 1):
        T, N, B = frame
        dT = N * k
        dN = T * (-k) + B * t
        dB = N * (-t)
        frame = [
            JetVec([(c.antiderivative() + e0).truncate(n) for c, e0 in zip(dX, row)])
            for dX, row in zip((dT, dN, dB), np.eye(3))
        ]
    T = frame[0]
    return JetVec([c.antiderivative() for c in T])
