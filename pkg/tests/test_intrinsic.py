import numpy as np
import pytest

from cusplab import frontal, gallery, intrinsic, normal_form
from cusplab.errors import NotAdjusted, NotNormalized
from cusplab.intrinsic import MetricJet
from cusplab.jets import Jet2
from cusplab.normal_form import NormalFormCoeffs


def _nf(**kw):
    return frontal.build_frontal(normal_form.build_surface(NormalFormCoeffs(**kw), 12))


def test_regular_sphere_cap_curvature():
    u, v = Jet2.variables(8)
    from cusplab import jets

    f = jets.JetVec([u, v, jets.sqrt(1 - u * u - v * v) - 1])
    g = frontal.build_frontal(f)
    K, H = intrinsic.curvature_extrinsic(g)
    Kb = intrinsic.curvature_brioschi(intrinsic.first_form(f), singular_axis=None)
    assert K.value == pytest.approx(1.0)
    assert abs(H.value) == pytest.approx(1.0)
    assert Kb.truncate(4).allclose(K.truncate(4), atol=1e-10)


def test_metric_discriminant_is_lambda_squared():
    g = _nf(b20=1.0, b05=4.0, b12=0.5)
    m = intrinsic.induced_kossowski_metric(g)
    assert (m.discriminant() - m.lam * m.lam).max_abs() < 1e-10


def test_normally_adjusted_conditions_exact():
    adj = intrinsic.normally_adjust(_nf(b20=1.0, b05=4.0))
    for key, val in adj.conditions.items():
        assert np.all(np.abs(np.asarray(val) - np.round(np.asarray(val))) < 1e-12), key


def test_non_kossowski_metric_is_a_verdict():
    u, v = Jet2.variables(6)
    one, zero = Jet2.constant(1.0, 6), Jet2.constant(0.0, 6)
    rep = intrinsic.kossowski_classify(MetricJet(one, zero, one, one))
    assert rep.verdict == intrinsic.NOT_KOSSOWSKI


def test_not_type_one():
    u, v = Jet2.variables(6)
    zero = Jet2.constant(0.0, 6)
    rep = intrinsic.kossowski_classify(MetricJet(Jet2.constant(1.0, 6), zero, u * u, u))
    assert rep.verdict == intrinsic.NOT_TYPE_I


def test_unadjusted_metric_rejected():
    u, v = Jet2.variables(6)
    one = Jet2.constant(1.0, 6)
    with pytest.raises(NotAdjusted):
        intrinsic.kossowski_classify(MetricJet(one, one * 0.5, v * v + 0.25, v))


def test_require_normalized():
    m = intrinsic.induced_kossowski_metric(gallery.standard_models("Ramphoid52"))
    with pytest.raises(NotNormalized):
        intrinsic.kossowski_classify(m, require_normalized=True)


def test_intrinsic_verdict_tracks_extrinsic():
    yes = intrinsic.kossowski_classify(intrinsic.induced_kossowski_metric(_nf(b20=1.0, b05=4.0)))
    no = intrinsic.kossowski_classify(intrinsic.induced_kossowski_metric(_nf(b20=1.0, b05=0.0, b04=1.0)))
    assert yes.verdict == intrinsic.INTRINSIC_RAMPHOID
    assert no.verdict != intrinsic.INTRINSIC_RAMPHOID


def test_bending_keeps_metric_changes_kappa_nu():
    a, b = gallery.rotation_example(10), gallery.bent_rotation_example(0.5, 10)
    ma, mb = intrinsic.first_form(a.f), intrinsic.first_form(b.f)
    for x, y in ((ma.E, mb.E), (ma.F, mb.F), (ma.G, mb.G)):
        assert x.truncate(6).allclose(y.truncate(6), atol=1e-12)
    ia, ib = frontal.ramphoid_invariants(a), frontal.ramphoid_invariants(b)
    assert ia.kappa_nu.value != pytest.approx(ib.kappa_nu.value)
    assert ia.r_Pi.value == pytest.approx(ib.r_Pi.value, rel=1e-8)


def test_frenet_of_rotation_is_a_circle():
    g = gallery.rotation_example()
    fr = frontal.adapted_frame(g)
    res = intrinsic.singular_frenet_relations(frontal.edge_invariants(g, fr), intrinsic.frenet_of_singular_image(g, fr))
    assert res["kappa0"] == pytest.approx(1.0)
    assert res["tau0"] == pytest.approx(0.0, abs=1e-12)
