import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cusplab import jets
from cusplab.errors import NotDivisible
from cusplab.jets import Jet1, Jet2, JetVec

coeffs = st.lists(st.floats(-3, 3), min_size=6, max_size=6)


def test_taylor_normalized_storage():
    t = Jet1.variable(6)
    e = jets.exp(t)
    assert np.allclose(e.c, [1 / math.factorial(k) for k in range(7)])
    assert e.derivative_at_zero(3) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_product_commutes_and_truncates(a, b):
    x, y = Jet1(a, 5), Jet1(b, 5)
    assert (x * y).allclose(y * x)
    assert (x * y).order == 5


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_compose_with_inverse_is_identity(a):
    t = Jet1.variable(5)
    phi = t * 1.5 + Jet1(np.r_[0, 0, a[2:]], 5)
    assert phi.compose(phi.revert()).allclose(t, atol=1e-9)


def test_elementary_identities():
    t = Jet1.variable(8)
    x = t * 0.3 + t**2
    assert (jets.sin(x) ** 2 + jets.cos(x) ** 2).allclose(Jet1.constant(1.0, 8), atol=1e-14)
    assert jets.log(jets.exp(x)).allclose(x, atol=1e-14)
    assert (jets.sqrt(x + 1) ** 2).allclose(x + 1, atol=1e-14)
    assert (jets.cosh(x) ** 2 - jets.sinh(x) ** 2).allclose(Jet1.constant(1.0, 8), atol=1e-13)


def test_reciprocal_needs_nonzero_constant():
    t = Jet1.variable(4)
    assert ((t + 2) * (t + 2).reciprocal()).allclose(Jet1.constant(1.0, 4), atol=1e-15)
    with pytest.raises(Exception):
        t.reciprocal()


def test_divide_by_coordinate():
    u, v = Jet2.variables(6)
    f = v**2 * (u + 3)
    q = f.divide_by_coordinate("v", 2)
    assert q.order == 4
    assert q.coeff(0, 0) == pytest.approx(3) and q.coeff(1, 0) == pytest.approx(1)
    with pytest.raises(NotDivisible):
        (v + u).divide_by_coordinate("v", 1)


def test_partials_and_restrict():
    u, v = Jet2.variables(5)
    f = u**2 * v + v**3
    assert f.partial("u").restrict("u").allclose(Jet1.constant(0.0, 4))
    assert f.partial_at_zero(2, 1) == pytest.approx(2.0)
    assert f.partial("v", 3).value == pytest.approx(6.0)


def test_jet2_compose_matches_substitution():
    u, v = Jet2.variables(6)
    f = jets.sin(u) * v + u * v**2
    x, y = u + v**2, v - u**2 * 0.5
    direct = jets.sin(x) * y + x * y**2
    assert f.compose(x, y).allclose(direct, atol=1e-13)


def test_vector_helpers():
    u, v = Jet2.variables(4)
    a = JetVec([u, v, u * v])
    b = JetVec([v, u, Jet2.constant(1.0, 4)])
    c = jets.cross(a, b)
    assert jets.dot(c, a).max_abs() < 1e-14
    assert jets.det3(a, b, c).allclose(jets.dot(c, c), atol=1e-14)
