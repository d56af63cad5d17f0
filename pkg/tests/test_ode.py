import numpy as np
import pytest

from twistedtori import DomainError, bounds, closed_form_u, integrate_profile, period_analysis
from twistedtori.battery import (check_branch_symmetry, check_k1_angle_increasing,
                                 check_ode_constraint, quadrature_u_oracle)

TWO_PI = 2.0 * np.pi


def test_bounds_values():
    assert bounds(3.0) == pytest.approx((1.0 / 3.0, 5.0 / 3.0), abs=1e-15)
    assert bounds(10.0) == pytest.approx((0.8, 1.2), abs=1e-15)


def test_bounds_domain():
    with pytest.raises(DomainError):
        bounds(2.0)
    with pytest.raises(DomainError):
        bounds(1.5)


def test_closed_form_endpoints():
    for c in (2.1, 2.5, 3.0, 5.0, 20.0):
        r_min, r_max = bounds(c)
        assert float(closed_form_u(r_max, c)) == pytest.approx(0.0, abs=1e-14)
        assert float(closed_form_u(r_min, c)) == pytest.approx(np.pi / np.sqrt(c * c - 4.0),
                                                               abs=1e-12)


def test_closed_form_frozen_value():
    # c = 2.5, R = 1: u = (pi/2 - arctan(4/3)) / 1.5
    expected = (np.pi / 2.0 - np.arctan(4.0 / 3.0)) / 1.5
    assert float(closed_form_u(1.0, 2.5)) == pytest.approx(expected, abs=1e-14)
    assert expected == pytest.approx(0.42900, abs=5e-6)
    assert quadrature_u_oracle(1.0, 2.5) == pytest.approx(expected, abs=1e-10)


def test_closed_form_outside_domain():
    with pytest.raises(DomainError):
        closed_form_u(0.05, 2.5)


def test_closed_form_matches_quadrature_oracle():
    for c in (2.1, 2.5, 3.0, 5.0, 20.0):
        r_min, r_max = bounds(c)
        for R in np.linspace(r_min, r_max, 22)[1:-1]:
            assert float(closed_form_u(R, c)) == pytest.approx(
                quadrature_u_oracle(float(R), c), abs=1e-8)


def test_closed_form_monotone_decreasing_in_R():
    r_min, r_max = bounds(3.0)
    R = np.linspace(r_min, r_max, 200)
    u = closed_form_u(R, 3.0)
    assert np.all(np.diff(u) < 0)


def test_period_analysis_frozen_values():
    pa = period_analysis(2.5, 0)
    assert pa.u_star == pytest.approx(TWO_PI / 1.5, abs=1e-14)
    assert pa.required_u_star == pytest.approx(TWO_PI / 2.5, abs=1e-14)
    assert pa.closure_gap == pytest.approx(TWO_PI / 1.5 - TWO_PI / 2.5, abs=1e-14)
    assert pa.u_star == pytest.approx(4.18879, abs=5e-6)
    assert pa.required_u_star == pytest.approx(2.51327, abs=5e-6)
    assert pa.closure_gap == pytest.approx(1.67552, abs=5e-6)


def test_period_analysis_special_c():
    pa = period_analysis(2.0 * np.sqrt(2.0), 0)
    assert pa.u1 == pytest.approx(np.pi / 2.0, abs=1e-14)


def test_period_analysis_rejects_bad_k():
    with pytest.raises(DomainError):
        period_analysis(3.0, 2)


def test_closure_gap_positive_and_decreasing():
    gaps = [period_analysis(c, 0).closure_gap for c in (2.5, 3.0, 5.0, 10.0, 100.0)]
    assert all(g > 0 for g in gaps)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_integrate_profile_period_matches_closed_form():
    for c in (2.5, 3.0, 5.0):
        prof = integrate_profile(c, n_steps=256)
        assert abs(prof.numeric_period - prof.u_star) < 1e-6 * prof.u_star
        assert prof.numeric_u1 == pytest.approx(prof.u1, rel=1e-6)


def test_profile_samples_within_bounds():
    prof = integrate_profile(3.0, n_steps=512)
    assert np.all(prof.R >= prof.R_min - 1e-12)
    assert np.all(prof.R <= prof.R_max + 1e-12)
    assert prof.R[0] == pytest.approx(prof.R_max, abs=1e-12)
    np.testing.assert_allclose(prof.rho_candidate, 1.0 / np.sqrt(prof.R), rtol=1e-14)


def test_angular_closure_defect():
    # the angle advances by (c/2) * closure_gap per oscillation; 2*pi/3 at c = 2.5
    prof = integrate_profile(2.5, n_steps=256)
    assert prof.angular_closure_defect > 0.1
    assert prof.angular_closure_defect == pytest.approx(2.0 * np.pi / 3.0, abs=1e-8)
    assert prof.angular_closure_defect == pytest.approx(
        0.5 * 2.5 * prof.closure_gap, abs=1e-8)


def test_profile_scale_and_constants():
    prof = integrate_profile(2.5, n_steps=256)
    # running integral of rho^{-2} over the period is 2*pi/c at unit scale
    assert prof.I_star == pytest.approx(TWO_PI / 2.5, rel=1e-9)
    assert prof.K == pytest.approx(-2.5 / 2.0, rel=1e-9)
    assert prof.r_underline == pytest.approx(np.sqrt(2.5**2 - 4.0) / 2.5, rel=1e-9)


def test_k1_reconstruction_angle_increasing():
    prof = integrate_profile(2.5, n_steps=256, k=1)
    assert prof.K == pytest.approx(0.0, abs=1e-12)
    assert np.all(np.diff(prof.f) > 0)
    assert check_k1_angle_increasing().passed


def test_constraint_residual_reported():
    prof = integrate_profile(3.0, n_steps=512)
    assert 0.0 <= prof.constraint_residual < 1e-2


def test_sampled_profile_satisfies_oscillation_equation():
    assert check_ode_constraint(cs=(2.5, 5.0)).passed


def test_branch_symmetry():
    assert check_branch_symmetry(cs=(2.5,)).passed
