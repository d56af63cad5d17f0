import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twistedtori import (CurveSpec, RegularityViolation, TrigPoly, circle,
                         eval_jet, offset_circle, orientation_check,
                         signed_curvature, total_curvature, u_parameter,
                         u_star, winding_number)
from twistedtori.battery import cartesian_curvature_oracle, random_curve
from twistedtori.curves import ORIENT_CCW, ORIENT_CW, periodic_grid

TWO_PI = 2.0 * np.pi

small = st.floats(-0.25, 0.25, allow_nan=False)
angles = st.floats(0.0, TWO_PI, allow_nan=False)


def fd_oracle(func, x, h=1e-5):
    """Independent central-difference derivative used throughout these tests."""
    return (func(x + h) - func(x - h)) / (2.0 * h)


# -- trig polynomials --------------------------------------------------------


@given(small, small, small, angles, st.floats(-3.0, 3.0, allow_nan=False))
def test_trig_shift_identity(a0, c1, s2, beta, delta):
    poly = TrigPoly(a0, (c1,), (0.0, s2))
    assert poly.shifted(delta).eval(beta) == pytest.approx(poly.eval(beta + delta), abs=1e-12)


@given(small, small, angles)
def test_trig_derivative_matches_eval_order(c1, s1, beta):
    poly = TrigPoly(0.3, (c1,), (s1,))
    assert poly.derivative().eval(beta) == pytest.approx(poly.eval(beta, order=1), abs=1e-14)


# -- jets ---------------------------------------------------------------------


def test_jet_circle_trivial():
    jet = eval_jet(circle(2.0), 1.234)
    assert jet.v == 0.0
    assert jet.w == 1.0
    assert jet.tau == 1j
    assert jet.rho == pytest.approx(2.0)


def test_jet_offset_circle_hand_values(chekanov):
    # gamma = 2 + e^{i beta}: rho^2 = 5 + 4 cos(beta), f = atan2(sin b, 2 + cos b)
    jet = eval_jet(chekanov, 0.0)
    assert jet.rho == pytest.approx(3.0, abs=1e-14)
    assert jet.v == pytest.approx(0.0, abs=1e-14)
    assert jet.w == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert jet.v_d1 == pytest.approx(-2.0 / 9.0, abs=1e-14)
    assert jet.w_d1 == pytest.approx(0.0, abs=1e-14)
    # and the same values straight from |2 + e^{i b}| by finite differences
    rho_direct = lambda b: np.abs(2.0 + np.exp(1j * b))
    assert jet.v == pytest.approx(fd_oracle(lambda b: np.log(rho_direct(b)), 0.0), abs=1e-9)
    f_direct = lambda b: np.angle(2.0 + np.exp(1j * b))
    assert jet.w == pytest.approx(fd_oracle(f_direct, 0.0), abs=1e-9)


def test_degenerate_constant_map_raises():
    degenerate = CurveSpec(TrigPoly(), TrigPoly(), 0)  # tau identically zero
    with pytest.raises(RegularityViolation):
        eval_jet(degenerate, 0.3)


def test_jet_derivatives_match_finite_differences(rng):
    beta = rng.uniform(0.0, TWO_PI, 32)
    for i in range(100):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        jet = eval_jet(spec, beta)
        checks = [
            (jet.rho_d1, lambda b, s=spec: eval_jet(s, b).rho),
            (jet.rho_d2, lambda b, s=spec: eval_jet(s, b).rho_d1),
            (jet.rho_d3, lambda b, s=spec: eval_jet(s, b).rho_d2),
            (jet.f_d2, lambda b, s=spec: eval_jet(s, b).f_d1),
            (jet.f_d3, lambda b, s=spec: eval_jet(s, b).f_d2),
            (jet.v_d1, lambda b, s=spec: eval_jet(s, b).v),
            (jet.w_d1, lambda b, s=spec: eval_jet(s, b).w),
        ]
        for analytic, lower in checks:
            assert np.max(np.abs(analytic - fd_oracle(lower, beta))) < 1e-6


# -- winding and orientation --------------------------------------------------


@pytest.mark.parametrize("spec_factory,expected", [
    (lambda: circle(1.0), 1),
    (lambda: offset_circle(2.0, 1.0), 0),
    (lambda: CurveSpec(TrigPoly(), TrigPoly(0.0, (), (0.1,)), 2), 2),
])
def test_winding_number(spec_factory, expected):
    assert winding_number(spec_factory()) == expected


def test_orientation(chekanov):
    assert orientation_check(circle(1.0)) == ORIENT_CCW
    reversed_circle = CurveSpec(TrigPoly(), TrigPoly(), -1)
    assert orientation_check(reversed_circle) == ORIENT_CW
    assert orientation_check(chekanov) == ORIENT_CCW


# -- u parameter ---------------------------------------------------------------


def test_u_parameter_unit_circle():
    spec = circle(1.0)
    assert float(u_parameter(spec, np.pi)) == pytest.approx(np.pi, abs=1e-10)
    assert u_star(spec) == pytest.approx(TWO_PI, abs=1e-10)


def test_u_star_offset_circle_two_quadratures(chekanov):
    # trapezoidal value against adaptive quadrature of |gamma'/gamma|
    from scipy.integrate import quad
    speed = lambda b: 1.0 / np.abs(2.0 + np.exp(1j * b))  # |gamma'| = 1 here
    adaptive, _ = quad(speed, 0.0, TWO_PI, epsabs=1e-13, limit=200)
    assert u_star(chekanov) == pytest.approx(adaptive, abs=1e-8)


def test_u_parameter_monotone(rng):
    spec = random_curve(rng)
    beta = np.linspace(0.0, TWO_PI, 65)
    u = u_parameter(spec, beta)
    assert np.all(np.diff(u) > 0)
    assert u[0] == 0.0


# -- curvature -----------------------------------------------------------------


def test_curvature_circle():
    for r in (0.5, 1.0, 3.0):
        assert float(signed_curvature(circle(r), 1.1)) == pytest.approx(1.0 / r, abs=1e-12)


def test_curvature_offset_circle_is_one(chekanov):
    kappa = signed_curvature(chekanov, periodic_grid(512))
    assert np.max(np.abs(kappa - 1.0)) < 1e-10


def test_curvature_against_cartesian_oracle(rng):
    beta = rng.uniform(0.0, TWO_PI, 64)
    for i in range(20):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        jet = eval_jet(spec, beta)
        kappa = signed_curvature(spec, beta)
        oracle = cartesian_curvature_oracle(jet)
        assert np.max(np.abs(kappa - oracle) / np.abs(oracle)) < 1e-8


def test_total_curvature_is_two_pi(rng, chekanov, half_offset, star):
    for spec in (circle(0.7), chekanov, half_offset, star, random_curve(rng)):
        assert total_curvature(spec) == pytest.approx(TWO_PI, abs=1e-8)


# -- conserved-ratio bound (phi) ------------------------------------------------


@given(small, small, angles)
@settings(max_examples=50)
def test_phi_bounded_by_one(c1, s1, beta):
    spec = CurveSpec(TrigPoly(0.0, (c1,), (s1,)), TrigPoly(), 1)
    jet = eval_jet(spec, beta)
    assert abs(jet.w) / np.sqrt(jet.q) <= 1.0 + 1e-12


# -- serialization ---------------------------------------------------------------


def test_json_round_trip(chekanov, rng):
    for spec in (circle(1.7), chekanov, random_curve(rng)):
        assert CurveSpec.from_json(spec.to_json()) == spec


def test_from_dict_accepts_schema_without_phase():
    data = {"log_rho": {"a0": 0.1, "cos": [0.05], "sin": []},
            "f": {"k": 1, "cos": [], "sin": [0.02]}}
    spec = CurveSpec.from_dict(data)
    assert spec.k == 1
    assert spec.f_periodic.a0 == 0.0


def test_from_dict_rejects_bad_spec():
    from twistedtori import ParseError
    with pytest.raises(ParseError):
        CurveSpec.from_dict({"log_rho": {}, "f": {"k": 1.5}})
    with pytest.raises(ParseError):
        CurveSpec.from_json("not json")
