"""Acceptance suite: one test per criterion, each printed as a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from twistedtori import (circle, classify, defect, eval_jet, find_double_points,
                         integrate_profile, level_set_check, offset_circle,
                         period_analysis, radial_cosine, scan_family,
                         signed_curvature, total_curvature, verify_pullbacks)
from twistedtori.battery import (cartesian_curvature_oracle, check_christoffel_fd,
                                 check_closed_form_vs_quadrature,
                                 check_gradient_identity, random_curve,
                                 random_noncircular)
from twistedtori.corpus import NAMED_CURVES
from twistedtori.curves import periodic_grid, rho_variance
from twistedtori.reduction import KIND_CROSS, cover_identity_residual
from twistedtori.stationarity import (CurveFamily, VERDICT_STATIONARY,
                                      stationarity_trace)

TWO_PI = 2.0 * np.pi
RADII = (0.5, 1.0, np.sqrt(2.0), 3.0)


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {num}: {description}")
        raise
    print(f"PASS criterion {num}: {description}")


def test_criterion_1_product_torus_identity():
    with criterion(1, "rho*|H| = 2 within 1e-10 for origin circles, under 1 s"):
        start = time.perf_counter()
        for r in RADII:
            _, _, rho_h = stationarity_trace(circle(r), 2048)
            assert np.max(np.abs(rho_h - 2.0)) < 1e-10
        assert time.perf_counter() - start < 1.0


def test_criterion_2_stationary_classification():
    with criterion(2, "circles stationary; 50 non-circular curves defect > 1e-4; "
                      "cosine family minimized at zero"):
        for r in RADII:
            _, d = defect(circle(r), 2048)
            assert d < 1e-10
            assert classify(circle(r)) == VERDICT_STATIONARY
        rng = np.random.default_rng(2024)
        for i in range(50):
            spec = random_noncircular(rng, min_variance=1e-3, k=1 if i % 2 else 0)
            assert rho_variance(spec) >= 1e-3
            _, d = defect(spec, 1024)
            assert d > 1e-4
        family = CurveFamily(make=lambda p: radial_cosine(float(p[0])),
                             lo=(0.0,), hi=(0.5,), grid_shape=(26,))
        scan = scan_family(family, budget=400)
        assert scan.argmin_parameters[0] == 0.0
        assert scan.polished_defect < 1e-10


def test_criterion_3_divergence_identity():
    with criterion(3, "gradient identity for rho^2 |JH|^2 to 1e-8 on 20 curves x 256 points"):
        rng = np.random.default_rng(3)
        result = check_gradient_identity(rng, n_curves=20, n_beta=256)
        assert result.passed, result.detail


def test_criterion_4_curvature_oracle():
    with criterion(4, "curvature matches Cartesian oracle to 1e-8; total curvature 2*pi; "
                      "offset unit circle has kappa = 1 to 1e-10"):
        rng = np.random.default_rng(4)
        beta = rng.uniform(0.0, TWO_PI, 128)
        for i in range(20):
            spec = random_curve(rng, k=1 if i % 2 else 0)
            kappa = signed_curvature(spec, beta)
            oracle = cartesian_curvature_oracle(eval_jet(spec, beta))
            assert np.max(np.abs(kappa - oracle) / np.abs(oracle)) < 1e-8
        for spec in (circle(0.8), offset_circle(2.0, 1.0), offset_circle(0.5, 1.0),
                     radial_cosine(0.2)):
            assert abs(total_curvature(spec) - TWO_PI) < 1e-8
        kappa = signed_curvature(offset_circle(2.0, 1.0), periodic_grid(1024))
        assert np.max(np.abs(kappa - 1.0)) < 1e-10


def test_criterion_5_christoffel_consistency():
    with criterion(5, "Christoffel symbols match metric differences to 1e-6 on 20 curves"):
        result = check_christoffel_fd(np.random.default_rng(5), n_curves=20)
        assert result.passed, result.detail


def test_criterion_6_ode_closed_forms():
    with criterion(6, "closed-form u to 1e-8, period to 1e-6, closure gaps positive, "
                      "under 5 s"):
        start = time.perf_counter()
        result = check_closed_form_vs_quadrature()
        assert result.passed, result.detail
        for c in (2.5, 3.0, 5.0):
            profile = integrate_profile(c, n_steps=256)
            assert abs(profile.numeric_period - profile.u_star) < 1e-6 * profile.u_star
        for c in (2.1, 2.5, 3.0, 5.0, 20.0, 100.0):
            assert period_analysis(c, 0).closure_gap > 0.0
        assert time.perf_counter() - start < 5.0


def test_criterion_7_reduction_pullbacks():
    with criterion(7, "pullback identities to 1e-10 over 100 trials; h(F) < 1e-12 "
                      "on the corpus"):
        rep = verify_pullbacks(100, seed=7)
        assert rep.l_pullback_max < 1e-10
        assert rep.psi_pullback_max < 1e-10
        assert rep.phi_pullback_max < 1e-10
        for factory in NAMED_CURVES.values():
            assert level_set_check(factory(), 512) < 1e-12


def test_criterion_8_embeddedness():
    with criterion(8, "double point counts and locations for the three reference curves"):
        assert find_double_points(offset_circle(2.0, 1.0)).points == ()
        scan = find_double_points(offset_circle(0.5, 1.0))
        assert len(scan.points) == 2
        assert all(p.kind == KIND_CROSS for p in scan.points)
        planar = sorted(p.planar_point.imag for p in scan.points)
        assert planar == pytest.approx([-np.sqrt(3) / 2, np.sqrt(3) / 2], abs=1e-6)
        assert all(abs(p.planar_point.real) < 1e-6 for p in scan.points)
        circle_scan = find_double_points(circle(1.0))
        assert circle_scan.centrally_symmetric
        assert cover_identity_residual(circle(1.0)) < 1e-12


def test_criterion_9_full_battery(tmp_path):
    with criterion(9, "the verify command passes the full battery in under 60 s"):
        from twistedtori.cli import main
        start = time.perf_counter()
        exit_code = main(["verify", "--out", str(tmp_path), "--no-figures"])
        elapsed = time.perf_counter() - start
        assert exit_code == 0
        assert elapsed < 60.0
