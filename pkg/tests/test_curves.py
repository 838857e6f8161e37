import math

import numpy as np
import pytest

from conftest import random_cusp
from cusplab import curves
from cusplab.jets import Jet1, JetVec


def _plane(x, y, order=9):
    t = Jet1.variable(order)
    return JetVec([x(t), y(t)])


def test_regular_curve():
    assert curves.classify_cusp(_plane(lambda t: t, lambda t: t**2)).verdict == curves.REGULAR


def test_cusp_invariants_scale():
    # b has the units of a curvature
    g = _plane(lambda t: t**2 / 2, lambda t: t**4 / 4 + t**5 / 20)
    a = curves.curve_invariants(g)
    b = curves.curve_invariants(g * 2.0)
    assert b.bias == pytest.approx(a.bias / 2)
    assert a.omega is None or a.omega == 0.0


def test_invariants_survive_rotation_and_reparameterization():
    rng = np.random.default_rng(1)
    g = random_cusp(rng)
    t = Jet1.variable(g.order)
    h = JetVec([c.compose(t * 0.7 - t**2 * 0.3) for c in g])
    a, b = curves.curve_invariants(g), curves.curve_invariants(h)
    assert b.bias == pytest.approx(a.bias, rel=1e-10)
    assert b.omega_r == pytest.approx(a.omega_r, rel=1e-10)


def test_tangent_side_check_for_52_cusp():
    out = curves.tangent_side_check(_plane(lambda t: t**2 / 2, lambda t: t**4 + t**5))
    assert out


def test_frenet_round_trip():
    k = Jet1([1.0, 0.2, -0.1, 0.0, 0.0, 0.0, 0.0], 6)
    tau = Jet1([0.5, 0.1, 0.0, 0.0, 0.0, 0.0], 5)
    G = curves.space_curve_from_frenet(k, tau, 8)
    fr = curves.frenet_data(G)
    assert fr.derivative("kappa", 0) == pytest.approx(1.0)
    assert fr.derivative("kappa", 1) == pytest.approx(0.2)
    assert fr.derivative("tau", 0) == pytest.approx(0.5)
    assert np.allclose(np.cross(fr.e, fr.n), fr.b)


def test_projection_of_helix_like_curve_is_cusp():
    k = Jet1([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 6)
    tau = Jet1([0.5, 0.0, 0.0, 0.0, 0.0, 0.0], 5)
    G = curves.space_curve_from_frenet(k, tau, 8)
    P = curves.project_to_normal_plane(G)
    assert curves.classify_cusp(P).verdict == curves.CUSP32
    cf = curves.projection_invariants_closed_form(curves.frenet_data(G))
    assert cf.omega == pytest.approx(curves.curve_invariants(P).omega, rel=1e-10)


def test_degenerate_needs_higher_order():
    assert curves.classify_cusp(_plane(lambda t: t**2, lambda t: t**4)).verdict == curves.DEGENERATE_HIGHER
