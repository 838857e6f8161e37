import math

import numpy as np
import pytest

from cusplab import expr
from cusplab.errors import ParseError


def test_round_trip_pretty():
    s = expr.parse_germ("(u, v^2, sin(v)*exp(u) - u^(3/2))")
    again = expr.parse_germ(expr.pretty_germ(s))
    assert expr.pretty_germ(again) == expr.pretty_germ(s)


def test_point_evaluation():
    s = expr.parse_germ("(u, v^2, sin(v)*exp(u))")
    assert np.allclose(expr.evaluate(s, (0.1, 0.2)), [0.1, 0.04, math.sin(0.2) * math.exp(0.1)])


def test_jet_matches_point_values():
    s = expr.parse_germ("(cos(u) + v, u*v, sqrt(1 + u + v^2))")
    f = expr.eval_jet(s, (0.0, 0.0), 8)
    h = 1e-2
    assert np.allclose([c(h, -h) for c in f], expr.evaluate(s, (h, -h)), atol=1e-12)


def test_parameters_and_integrals():
    s = expr.parse_germ("(u, v, int(a*tau^2, tau, 0, u))", {"a": 3.0}, ("u", "v"))
    f = expr.eval_jet(s, (0.0, 0.0), 6)
    assert f[2].coeff(3, 0) == pytest.approx(1.0)


@pytest.mark.parametrize("text", ["(u,,v)", "(u, v^2, w)", "(u, v", "(u, v, foo(u))"])
def test_parse_errors_are_located(text):
    with pytest.raises(ParseError) as info:
        expr.parse_germ(text)
    assert "column" in str(info.value)


def test_scalar_jet():
    j = expr.eval_scalar_jet("sqrt(1+u)", order=4)
    assert j.coeff(2, 0) == pytest.approx(-0.125)
