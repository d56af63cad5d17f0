import numpy as np
import pytest

from twistedtori import circle, eval_jet
from twistedtori.battery import (check_christoffel_fd, check_div_fd,
                                 check_frame_consistency, check_gradient_identity,
                                 check_lagrangian, check_rho_h_shift_invariance,
                                 check_umbilical, random_curve)
from twistedtori.curves import periodic_grid
from twistedtori.geometry import (christoffel, div_JH, frame, immersion, j_mult,
                                  mean_curvature, mean_curvature_factor, metric,
                                  second_form)

TWO_PI = 2.0 * np.pi


def test_immersion_circle_point_and_e1():
    jet = eval_jet(circle(np.sqrt(2.0)), 0.0)
    point, e1, e2 = immersion(jet, 0.0)
    np.testing.assert_allclose(point, [1.0, 0.0, 1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(e1, [0.0, 1.0, 0.0, -1.0], atol=1e-15)
    assert float(np.dot(e1, e2)) == pytest.approx(0.0, abs=1e-15)


def test_immersion_orthogonality_and_norm(rng):
    spec = random_curve(rng)
    beta = rng.uniform(0.0, TWO_PI, 128)
    alpha = rng.uniform(0.0, TWO_PI, 128)
    jet = eval_jet(spec, beta)
    _, e1, e2 = immersion(jet, alpha)
    assert np.max(np.abs(np.sum(e1 * e2, axis=-1))) < 1e-12
    assert np.max(np.abs(np.sum(e1 * e1, axis=-1) - jet.rho**2)) < 1e-12


def test_metric_values(chekanov):
    met = metric(eval_jet(circle(1.3), 0.4))
    assert float(met.g_aa) == pytest.approx(1.69, abs=1e-12)
    assert float(met.g_bb) == pytest.approx(1.69, abs=1e-12)
    met0 = metric(eval_jet(chekanov, 0.0))
    assert float(met0.g_aa) == pytest.approx(9.0, abs=1e-12)
    assert float(met0.g_bb) == pytest.approx(1.0, abs=1e-12)


def test_sqrt_det_definition(rng):
    met = metric(eval_jet(random_curve(rng), periodic_grid(64)))
    np.testing.assert_allclose(met.sqrt_det, np.sqrt(met.g_aa * met.g_bb), rtol=1e-14)


def test_christoffel_circle_all_zero():
    sym = christoffel(eval_jet(circle(2.0), 0.9))
    for name in ("aaa", "aab", "abb", "baa", "bab", "bbb"):
        assert float(getattr(sym, name)) == 0.0


def test_christoffel_offset_circle(chekanov):
    sym = christoffel(eval_jet(chekanov, np.pi / 2.0))
    assert float(sym.baa) == pytest.approx(2.0, abs=1e-12)


def test_christoffel_fd_reconstruction(rng):
    assert check_christoffel_fd(rng).passed


def test_second_form_structure(rng, chekanov):
    jet = eval_jet(circle(1.0), 0.3)
    b_aa, b_ab, b_bb = second_form(jet, 0.7)
    _, e1, e2 = immersion(jet, 0.7)
    np.testing.assert_allclose(b_aa, j_mult(e2), atol=1e-14)
    np.testing.assert_allclose(b_bb, j_mult(e2), atol=1e-14)
    # B_ab = w * J e1 on any curve
    beta = rng.uniform(0.0, TWO_PI, 64)
    jet = eval_jet(chekanov, beta)
    _, e1, _ = immersion(jet, 0.0)
    _, b_ab, _ = second_form(jet, 0.0)
    np.testing.assert_allclose(b_ab, jet.w[..., None] * j_mult(e1), atol=1e-13)


def test_second_form_normal_to_tangent_plane(rng):
    spec = random_curve(rng)
    jet = eval_jet(spec, periodic_grid(128))
    _, e1, e2 = immersion(jet, 1.2)
    for comp in second_form(jet, 1.2):
        for tangent in (e1, e2):
            assert np.max(np.abs(np.sum(comp * tangent, axis=-1))) < 1e-10


def test_mean_curvature_circle():
    for r in (0.5, 1.0, 2.0):
        jet = eval_jet(circle(r), 0.2)
        mc = mean_curvature(jet, 0.0)
        assert float(mc.C) == pytest.approx(2.0 / r**2, abs=1e-13)
        assert float(mc.rho_norm_H) == pytest.approx(2.0, abs=1e-13)


def test_mean_curvature_offset_circle(chekanov):
    mc = mean_curvature(eval_jet(chekanov, 0.0), 0.0)
    assert float(mc.C) == pytest.approx(4.0 / 3.0, abs=1e-12)
    assert float(mc.rho_norm_H) == pytest.approx(4.0, abs=1e-12)


def test_trace_identity_and_umbilical(rng):
    assert check_frame_consistency(rng).passed
    assert check_umbilical(rng).passed


def test_div_circle_is_zero():
    assert float(div_JH(eval_jet(circle(1.0), 0.5))) == pytest.approx(0.0, abs=1e-15)


def test_div_matches_finite_differences(rng):
    assert check_div_fd(rng).passed


def test_gradient_identity(rng):
    assert check_gradient_identity(rng, n_curves=5, n_beta=128).passed


def test_lagrangian_property(rng):
    assert check_lagrangian(rng).passed


def test_rho_norm_h_shift_invariance(rng):
    assert check_rho_h_shift_invariance(rng).passed


def test_frame_bundle_matches_parts(rng):
    spec = random_curve(rng)
    beta = periodic_grid(32)
    jet = eval_jet(spec, beta)
    fr = frame(jet, 0.4)
    met = metric(jet)
    np.testing.assert_allclose(fr.g_aa, met.g_aa, rtol=0)
    np.testing.assert_allclose(fr.C, mean_curvature_factor(jet), rtol=0)
    np.testing.assert_allclose(np.sum(fr.eps1 * fr.eps1, axis=-1), 1.0, atol=1e-13)
    np.testing.assert_allclose(np.sum(fr.eps2 * fr.eps2, axis=-1), 1.0, atol=1e-13)
    np.testing.assert_allclose(np.sum(fr.eps1 * fr.eps2, axis=-1), 0.0, atol=1e-13)
