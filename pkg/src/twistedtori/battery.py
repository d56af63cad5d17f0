"""Whole-package invariant battery backing the `verify` command.

Every check re-derives a quantity through an independent route (finite
differences, adaptive quadrature, polyline geometry, brute-force grids) and
compares it with the analytic implementation at a fixed tolerance.  Checks
return CheckResult records so the CLI can print one line per invariant and
tests can assert on individual items.
"""

import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from . import ode as ode_mod
from . import reduction as red
from . import stationarity as st
from .curves import (CurveSpec, circle, eval_jet, offset_circle, periodic_grid,
                     radial_cosine, rho_variance, signed_curvature,
                     total_curvature, u_parameter, winding_number)
from .geometry import (christoffel, div_JH, frame, immersion, j_mult,
                       mean_curvature, mean_curvature_factor, metric,
                       pair_to_r4)
from .output import write_csv
from .trig import TrigPoly

TWO_PI = 2.0 * np.pi
FD_STEP = 1e-5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, residual, tol) -> CheckResult:
    return CheckResult(name, bool(residual < tol), f"max residual {residual:.3e} (tol {tol:g})")


# -- random curve generation ----------------------------------------------


def random_curve(rng, k: int = 1, n_modes: int = 3, amplitude: float = 0.12) -> CurveSpec:
    """Random regular curve; k=0 curves are perturbed half-plane circles."""
    def small_poly(amp):
        return TrigPoly(0.0,
                        tuple(rng.uniform(-amp, amp, n_modes)),
                        tuple(rng.uniform(-amp, amp, n_modes)))

    if k == 1:
        log_rho = TrigPoly(rng.uniform(-0.3, 0.5),
                           tuple(rng.uniform(-amplitude, amplitude, n_modes)),
                           tuple(rng.uniform(-amplitude, amplitude, n_modes)))
        return CurveSpec(log_rho, small_poly(0.4 * amplitude), 1)
    base = offset_circle(2.0, 1.0)
    bump = small_poly(0.3 * amplitude)
    log_rho = base.log_rho + small_poly(0.3 * amplitude)
    return CurveSpec(log_rho, base.f_periodic + bump, 0)


def random_noncircular(rng, min_variance: float = 1e-3, k: int = 1) -> CurveSpec:
    for _ in range(100):
        spec = random_curve(rng, k=k)
        if rho_variance(spec) >= min_variance:
            try:
                eval_jet(spec, periodic_grid(512))
            except Exception:
                continue
            return spec
    raise RuntimeError("could not sample a non-circular regular curve")


def reparametrized_circle(rng) -> CurveSpec:
    """Constant rho, wiggly angle: still a product torus, still stationary."""
    amp = rng.uniform(0.0, 0.05)
    f_per = TrigPoly(0.0, tuple(rng.uniform(-amp, amp, 3)), tuple(rng.uniform(-amp, amp, 3)))
    return CurveSpec(TrigPoly(rng.uniform(-0.3, 0.5)), f_per, 1)


def touch_curve() -> CurveSpec:
    """Asymmetric curve whose negation touches it tangentially at +-i*rho.

    log rho = t cos(2b) + s (cos b + cos(3b)/3) has critical points with
    equal radii at b = pi/2 and 3*pi/2 while the cos b term breaks central
    symmetry, so the pair (pi/2, 3*pi/2) is an isolated tangential double
    point.
    """
    return CurveSpec(TrigPoly(0.0, (0.08, 0.12, 0.08 / 3.0), ()), TrigPoly(), 1)


def _fd(func, x, h=FD_STEP):
    return (func(x + h) - func(x - h)) / (2.0 * h)


def _fd4(func, x, h=1e-4):
    """Fourth-order central difference; for oracles hitting 1e-8 tolerances."""
    return (-func(x + 2 * h) + 8.0 * func(x + h)
            - 8.0 * func(x - h) + func(x - 2 * h)) / (12.0 * h)


# -- curve-model checks ----------------------------------------------------


def check_jet_derivatives(rng, n_curves: int = 100) -> CheckResult:
    worst = 0.0
    beta = rng.uniform(0.0, TWO_PI, 64)
    for i in range(n_curves):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        jet = eval_jet(spec, beta)
        pairs = [
            (jet.rho_d1, lambda b: eval_jet(spec, b).rho),
            (jet.rho_d2, lambda b: eval_jet(spec, b).rho_d1),
            (jet.rho_d3, lambda b: eval_jet(spec, b).rho_d2),
            (jet.f_d1, lambda b: eval_jet(spec, b).f_val),
            (jet.f_d2, lambda b: eval_jet(spec, b).f_d1),
            (jet.f_d3, lambda b: eval_jet(spec, b).f_d2),
            (jet.v_d1, lambda b: eval_jet(spec, b).v),
            (jet.w_d1, lambda b: eval_jet(spec, b).w),
        ]
        for analytic, lower in pairs:
            worst = max(worst, float(np.max(np.abs(analytic - _fd(lower, beta)))))
    return _check("curve: jet derivatives vs central differences", worst, 1e-6)


def check_winding(rng) -> CheckResult:
    specs = [circle(1.0), offset_circle(2.0, 1.0), offset_circle(0.5, 1.0),
             CurveSpec(TrigPoly(), TrigPoly(0.0, (), (0.1,)), 2)]
    specs += [random_curve(rng, k=k) for k in (0, 1)]
    ok = all(winding_number(s) == s.k for s in specs)
    return CheckResult("curve: winding number quadrature cross-check",
                       ok, "structural k equals contour integral" if ok else "mismatch")


def check_u_monotone(rng) -> CheckResult:
    spec = random_curve(rng)
    beta = np.linspace(0.0, TWO_PI, 129)
    u = u_parameter(spec, beta)
    ok = bool(np.all(np.diff(u) > 0) and abs(u[0]) < 1e-15)
    return CheckResult("curve: u parameter strictly increasing", ok,
                       f"min step {np.min(np.diff(u)):.3e}")


def cartesian_curvature_oracle(jet) -> np.ndarray:
    """kappa from Cartesian derivatives of (x, y) = (rho cos f, rho sin f)."""
    cf, sf = np.cos(jet.f_val), np.sin(jet.f_val)
    xd = jet.rho_d1 * cf - jet.rho * jet.w * sf
    yd = jet.rho_d1 * sf + jet.rho * jet.w * cf
    xdd = jet.rho_d2 * cf - 2.0 * jet.rho_d1 * jet.w * sf \
        - jet.rho * jet.w_d1 * sf - jet.rho * jet.w**2 * cf
    ydd = jet.rho_d2 * sf + 2.0 * jet.rho_d1 * jet.w * cf \
        + jet.rho * jet.w_d1 * cf - jet.rho * jet.w**2 * sf
    return (xd * ydd - yd * xdd) / (xd**2 + yd**2) ** 1.5


def check_curvature_oracle(rng, n_curves: int = 20) -> CheckResult:
    worst = 0.0
    beta = rng.uniform(0.0, TWO_PI, 128)
    for i in range(n_curves):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        jet = eval_jet(spec, beta)
        kappa = signed_curvature(spec, beta)
        oracle = cartesian_curvature_oracle(jet)
        worst = max(worst, float(np.max(np.abs(kappa - oracle) / np.abs(oracle))))
    return _check("curve: signed curvature vs Cartesian oracle", worst, 1e-8)


def check_total_curvature(rng) -> CheckResult:
    specs = [circle(0.7), offset_circle(2.0, 1.0), offset_circle(0.5, 1.0),
             radial_cosine(0.2), random_curve(rng), touch_curve()]
    worst = max(abs(total_curvature(s) - TWO_PI) for s in specs)
    return _check("curve: total curvature equals 2*pi for simple curves", worst, 1e-8)


# -- geometry checks -------------------------------------------------------


def _omega_c2_r4(x, y):
    return (x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0]
            + x[..., 2] * y[..., 3] - x[..., 3] * y[..., 2])


def check_lagrangian(rng) -> CheckResult:
    worst = 0.0
    for k in (0, 1):
        spec = random_curve(rng, k=k)
        beta = rng.uniform(0.0, TWO_PI, 500)
        alpha = rng.uniform(0.0, TWO_PI, 500)
        _, e1, e2 = immersion(eval_jet(spec, beta), alpha)
        worst = max(worst, float(np.max(np.abs(_omega_c2_r4(e1, e2)))))
    return _check("geometry: tangent planes are Lagrangian", worst, 1e-12)


def check_metric_positivity(rng) -> CheckResult:
    spec = random_curve(rng)
    met = metric(eval_jet(spec, periodic_grid(2048)))
    ok = bool(np.all(met.g_aa > 0) and np.all(met.g_bb > 0))
    return CheckResult("geometry: metric positivity", ok,
                       f"min g_aa {np.min(met.g_aa):.3e}, min g_bb {np.min(met.g_bb):.3e}")


def check_frame_consistency(rng) -> CheckResult:
    """Trace identity, H = C*Je2, B normality, and orthogonality of e1, e2."""
    worst = 0.0
    for k in (0, 1):
        spec = random_curve(rng, k=k)
        beta = periodic_grid(256)
        jet = eval_jet(spec, beta)
        alpha = rng.uniform(0.0, TWO_PI)
        fr = frame(jet, alpha)
        met = metric(jet)
        trace = fr.B_aa * met.inv_aa[..., None] + fr.B_bb * met.inv_bb[..., None]
        worst = max(worst, float(np.max(np.abs(trace - fr.H))))
        je2 = j_mult(fr.e2)
        worst = max(worst, float(np.max(np.abs(fr.H - fr.C[..., None] * je2))))
        for b_comp in (fr.B_aa, fr.B_ab, fr.B_bb):
            for tangent in (fr.e1, fr.e2):
                inner = np.sum(b_comp * tangent, axis=-1)
                worst = max(worst, float(np.max(np.abs(inner))))
        worst = max(worst, float(np.max(np.abs(np.sum(fr.e1 * fr.e2, axis=-1)))))
    return _check("geometry: trace/normality/orthogonality identities", worst, 1e-10)


def check_umbilical(rng) -> CheckResult:
    worst = 0.0
    for k in (0, 1):
        spec = random_curve(rng, k=k)
        jet = eval_jet(spec, periodic_grid(256))
        alpha = rng.uniform(0.0, TWO_PI)
        fr = frame(jet, alpha)
        mc = mean_curvature(jet, alpha)
        q = jet.q
        b11 = fr.B_bb / (jet.rho**2 * q)[..., None]
        b22 = fr.B_aa / (jet.rho**2)[..., None]
        b12 = fr.B_ab / (jet.rho**2 * np.sqrt(q))[..., None]
        je1 = j_mult(fr.eps1)
        je2 = j_mult(fr.eps2)
        worst = max(worst, float(np.max(np.abs(b11 - mc.lam[..., None] * je1))))
        worst = max(worst, float(np.max(np.abs(b22 - mc.mu[..., None] * je1))))
        worst = max(worst, float(np.max(np.abs(b12 - mc.mu[..., None] * je2))))
    return _check("geometry: H-umbilical frame structure", worst, 1e-10)


def check_rho_h_shift_invariance(rng) -> CheckResult:
    spec = random_curve(rng)
    delta = rng.uniform(0.0, TWO_PI)
    beta = periodic_grid(128)
    jet = eval_jet(spec, beta)
    shifted = eval_jet(spec.parameter_shifted(delta), beta - delta)
    a = mean_curvature(jet, 0.0).rho_norm_H
    b = mean_curvature(shifted, 0.0).rho_norm_H
    worst = float(np.max(np.abs(a - b)))
    return _check("geometry: rho*|H| invariant under parameter shift", worst, 1e-9)


def check_christoffel_fd(rng, n_curves: int = 20) -> CheckResult:
    worst = 0.0
    beta = rng.uniform(0.0, TWO_PI, 64)
    for i in range(n_curves):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        jet = eval_jet(spec, beta)
        sym = christoffel(jet)
        met = metric(jet)
        g_aa = lambda b: metric(eval_jet(spec, b)).g_aa
        g_bb = lambda b: metric(eval_jet(spec, b)).g_bb
        d_aa, d_bb = _fd(g_aa, beta), _fd(g_bb, beta)
        worst = max(worst, float(np.max(np.abs(sym.aab - 0.5 * met.inv_aa * d_aa))))
        worst = max(worst, float(np.max(np.abs(sym.bbb - 0.5 * met.inv_bb * d_bb))))
        worst = max(worst, float(np.max(np.abs(sym.baa + 0.5 * met.inv_bb * d_aa))))
        worst = max(worst, float(np.max(np.abs(sym.aaa))), float(np.max(np.abs(sym.abb))),
                    float(np.max(np.abs(sym.bab))))
    return _check("geometry: Christoffel symbols vs metric differences", worst, 1e-6)


def _s_of(spec):
    def s(beta):
        jet = eval_jet(spec, beta)
        return jet.rho**2 * np.sqrt(jet.q) * mean_curvature_factor(jet)
    return s


def check_div_fd(rng) -> CheckResult:
    """Analytic div_g(JH) vs -d/dbeta(sqrt(det g) C) / sqrt(det g) by differences."""
    worst = 0.0
    for spec in (offset_circle(2.0, 1.0), random_curve(rng), random_curve(rng, k=0)):
        beta = rng.uniform(0.0, TWO_PI, 64)
        jet = eval_jet(spec, beta)
        fd = -_fd(_s_of(spec), beta) / metric(jet).sqrt_det
        worst = max(worst, float(np.max(np.abs(div_JH(jet) - fd))))
    return _check("geometry: divergence vs finite differences", worst, 1e-6)


def check_gradient_identity(rng, n_curves: int = 20, n_beta: int = 256) -> CheckResult:
    """grad(rho^2 |JH|^2) = 2 rho^2 div_g(JH) JH, left side by differences."""
    worst = 0.0
    for i in range(n_curves):
        spec = random_curve(rng, k=1 if i % 2 else 0)
        beta = periodic_grid(n_beta)
        jet = eval_jet(spec, beta)
        alpha = rng.uniform(0.0, TWO_PI)
        _, _, e2 = immersion(jet, alpha)
        s = _s_of(spec)
        lhs = (_fd4(lambda b: s(b)**2, beta) / metric(jet).g_bb)[..., None] * e2
        c = mean_curvature_factor(jet)
        rhs = (-2.0 * jet.rho**2 * div_JH(jet) * c)[..., None] * e2
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _check("geometry: gradient identity for rho^2 |JH|^2", worst, 1e-8)


# -- stationarity checks ---------------------------------------------------


def _battery_curves(rng, n_stationary: int = 25, n_other: int = 25):
    stationary = [reparametrized_circle(rng) for _ in range(n_stationary)]
    other = [random_noncircular(rng, k=1 if i % 2 else 0) for i in range(n_other)]
    return stationary, other


def check_divergence_equivalence(rng) -> CheckResult:
    stationary, other = _battery_curves(rng)
    ok = True
    for spec in stationary + other:
        c_est, d = st.defect(spec, 1024)
        max_div = float(np.max(np.abs(div_JH(eval_jet(spec, periodic_grid(1024))))))
        ok &= (d < 1e-8 * abs(c_est)) == (max_div < 1e-6)
    return CheckResult("stationarity: zero defect iff zero divergence (50 curves)",
                       ok, "criteria co-occur" if ok else "criteria disagree")


def check_rho_h_equivalence(rng) -> CheckResult:
    stationary, other = _battery_curves(rng)
    ok = True
    for spec in stationary + other:
        c_est, d = st.defect(spec, 1024)
        _, _, rho_h = st.stationarity_trace(spec, 1024)
        spread = float(np.max(rho_h) - np.min(rho_h))
        ok &= (d < 1e-8 * abs(c_est)) == (spread < 1e-8 * abs(c_est))
    return CheckResult("stationarity: constant rho*|H| iff zero defect (50 curves)",
                       ok, "criteria co-occur" if ok else "criteria disagree")


def check_scale_covariance(rng) -> CheckResult:
    ok = True
    for spec in (circle(1.3), random_noncircular(rng)):
        base = st.classify(spec)
        ok &= all(st.classify(spec.scaled(lam)) == base for lam in (0.5, 2.0, 10.0))
    return CheckResult("stationarity: classification is scale covariant", ok,
                       "verdicts stable under homothety" if ok else "verdict changed")


def check_rotation_invariance(rng) -> CheckResult:
    worst = 0.0
    for spec in (random_noncircular(rng), random_noncircular(rng, k=0)):
        c0, d0 = st.defect(spec, 1024)
        c1, d1 = st.defect(spec.rotated(rng.uniform(0.0, TWO_PI)), 1024)
        worst = max(worst, abs(c0 - c1), abs(d0 - d1))
    return _check("stationarity: rotation invariance of defect", worst, 1e-12)


def check_conserved_quantity(rng) -> CheckResult:
    worst = 0.0
    for spec in (circle(1.7), reparametrized_circle(rng)):
        rep = st.report(spec, 1024)
        worst = max(worst, abs(rep.b_estimate), rep.b_spread)
    return _check("stationarity: conserved quantity vanishes when stationary", worst, 1e-10)


# -- ode checks -------------------------------------------------------------


def quadrature_u_oracle(R: float, c: float) -> float:
    """Adaptive quadrature of the separated oscillation equation.

    u(R) = integral of dR' / (c R' sqrt((R_max - R')(R' - R_min))) from R to
    R_max, regularized with R' = R_max - t^2 (the closed form never enters).
    """
    r_min, r_max = ode_mod.bounds(c)

    def integrand(t):
        rp = r_max - t * t
        return 2.0 / (c * rp * np.sqrt(rp - r_min))

    val, _ = quad(integrand, 0.0, np.sqrt(r_max - R), epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def check_closed_form_vs_quadrature() -> CheckResult:
    worst = 0.0
    for c in (2.1, 2.5, 3.0, 5.0, 20.0):
        r_min, r_max = ode_mod.bounds(c)
        inner = np.linspace(r_min, r_max, 22)[1:-1]
        for R in inner:
            worst = max(worst, abs(float(ode_mod.closed_form_u(R, c))
                                   - quadrature_u_oracle(float(R), c)))
    return _check("ode: closed-form u vs adaptive quadrature", worst, 1e-8)


def check_ode_constraint(cs=(2.5, 3.0, 5.0)) -> CheckResult:
    worst = 0.0
    for c in cs:
        prof = ode_mod.integrate_profile(c, n_steps=8192, rtol=1e-12, atol=1e-14)
        h = prof.u[1] - prof.u[0]
        R = prof.R
        rp = (-R[4:] + 8.0 * R[3:-1] - 8.0 * R[1:-3] + R[:-4]) / (12.0 * h)
        mid = R[2:-2]
        poly = c * c * mid**2 * (prof.R_min - mid) * (mid - prof.R_max)
        worst = max(worst, float(np.max(np.abs(rp**2 - poly))))
    return _check("ode: sampled profile satisfies the oscillation equation", worst, 1e-8)


def check_branch_symmetry(cs=(2.5, 5.0)) -> CheckResult:
    worst = 0.0
    for c in cs:
        analysis = ode_mod.period_analysis(c, 0)

        def rhs(u, y):
            return [-(c + 2.0 * np.sin(y[0]))]

        sol = solve_ivp(rhs, (0.0, 1.2 * analysis.u_star), [0.5 * np.pi],
                        method="RK45", rtol=1e-11, atol=1e-13, dense_output=True)
        theta_of = lambda u: float(sol.sol(u)[0])
        r_min, r_max = analysis.R_min, analysis.R_max
        for R in np.linspace(r_min, r_max, 12)[1:-1]:
            u_desc = float(ode_mod.closed_form_u(R, c))
            target = -np.pi - np.arcsin(0.5 * c * (R - 1.0))  # ascending branch angle
            u_asc = brentq(lambda u: theta_of(u) - target,
                           analysis.u1, analysis.u_star, xtol=1e-13)
            worst = max(worst, abs(u_asc - (2.0 * analysis.u1 - u_desc)))
    return _check("ode: ascending branch mirrors descending branch", worst, 1e-8)


def check_k1_angle_increasing() -> CheckResult:
    worst_min = np.inf
    for c in (2.5, 3.0, 10.0):
        prof = ode_mod.integrate_profile(c, n_steps=1024, k=1)
        df = np.diff(prof.f) / np.diff(prof.u)
        worst_min = min(worst_min, float(np.min(df)))
    ok = worst_min > 0
    return CheckResult("ode: winding-one angle reconstruction is increasing",
                       ok, f"min df/du {worst_min:.3e}")


def check_periods_and_gaps() -> CheckResult:
    worst = 0.0
    ok = True
    gaps = []
    for c in (2.5, 3.0, 5.0, 10.0, 100.0):
        analysis = ode_mod.period_analysis(c, 0)
        gaps.append(analysis.closure_gap)
        ok &= analysis.closure_gap > 0
        if c <= 5.0:
            prof = ode_mod.integrate_profile(c, n_steps=256)
            worst = max(worst, abs(prof.numeric_period - analysis.u_star) / analysis.u_star)
    ok &= all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))
    ok &= worst < 1e-6
    return CheckResult("ode: periods match closed form, closure gaps positive and decreasing",
                       ok, f"max relative period error {worst:.3e}")


# -- reduction checks --------------------------------------------------------


def check_pullbacks() -> CheckResult:
    rep = red.verify_pullbacks(100, seed=7)
    worst = max(rep.l_pullback_max, rep.psi_pullback_max, rep.phi_pullback_max,
                rep.orbit_kernel_max)
    round_worst = max(rep.psi_roundtrip_max, rep.phi_roundtrip_max)
    passed = worst < 1e-10 and round_worst < 1e-12
    return CheckResult("reduction: pullback identities and round trips",
                       passed, f"pullbacks {worst:.3e}, round trips {round_worst:.3e}")


def check_level_sets(corpus_curves) -> CheckResult:
    worst = max(red.level_set_check(spec, 512) for spec in corpus_curves)
    return _check("reduction: torus lies in the zero level of h", worst, 1e-12)


def check_reduced_winding(rng) -> CheckResult:
    ok = True
    for spec in (circle(1.5), offset_circle(2.0, 1.0), random_noncircular(rng)):
        ok &= winding_number(red.reduced_curve(spec)) == 2 * spec.k
    return CheckResult("reduction: reduced curve doubles the winding", ok,
                       "winding doubled" if ok else "mismatch")


def check_double_point_invariants() -> CheckResult:
    worst = 0.0
    rank_ok = True
    for spec in (offset_circle(0.5, 1.0), touch_curve()):
        scan = red.find_double_points(spec)
        if not scan.points:
            return CheckResult("reduction: double point invariants", False,
                               "expected double points, found none")
        for p in scan.points:
            worst = max(worst, abs(complex(spec.gamma(p.beta1)) + complex(spec.gamma(p.beta2))))
            jet1 = eval_jet(spec, p.beta1)
            jet2 = eval_jet(spec, p.beta2)
            for alpha in (0.0, 1.1, np.pi):
                f1, e1a, e1b = immersion(jet1, alpha)
                f2, e2a, e2b = immersion(jet2, alpha + np.pi)
                worst = max(worst, float(np.max(np.abs(f1 - f2))))
                worst = max(worst, float(np.max(np.abs(e1a - e2a))))
                gd2 = jet2.tau * jet2.gamma
                expected = pair_to_r4(-gd2 * np.exp(1j * alpha) / np.sqrt(2.0),
                                      -gd2 * np.exp(-1j * alpha) / np.sqrt(2.0))
                worst = max(worst, float(np.max(np.abs(e2b - expected))))
                sheets = np.stack([e1a, e1b, e2a, e2b])
                sv = np.linalg.svd(sheets, compute_uv=False)
                rank_ok &= sv[-1] < 1e-9 * sv[0]
    passed = worst < 1e-9 and rank_ok
    return CheckResult("reduction: double point sheet identities and rank",
                       passed, f"max residual {worst:.3e}, rank deficient: {rank_ok}")


def check_corpus_double_points() -> CheckResult:
    chekanov = red.find_double_points(offset_circle(2.0, 1.0))
    half = red.find_double_points(offset_circle(0.5, 1.0))
    circ = red.find_double_points(circle(1.0))
    expected = np.sqrt(3.0) / 2.0
    ok = (not chekanov.centrally_symmetric and len(chekanov.points) == 0
          and not half.centrally_symmetric and len(half.points) == 2
          and all(p.kind == red.KIND_CROSS for p in half.points)
          and sorted(round(p.planar_point.imag, 6) for p in half.points)
          == [-round(expected, 6), round(expected, 6)]
          and circ.centrally_symmetric
          and red.cover_identity_residual(circle(1.0)) < 1e-12)
    touch_scan = red.find_double_points(touch_curve())
    ok &= any(p.kind == red.KIND_TOUCH for p in touch_scan.points)
    return CheckResult("reduction: corpus double point scenarios", bool(ok),
                       "all scenarios as expected" if ok else "unexpected scan output")


# -- io checks ---------------------------------------------------------------


def check_io_determinism(rng) -> CheckResult:
    spec = random_noncircular(rng)
    beta, s, rho_h = st.stationarity_trace(spec, 256)
    with tempfile.TemporaryDirectory() as tmp:
        a = Path(write_csv(Path(tmp) / "a.csv", {"beta": beta, "s": s, "rho_norm_H": rho_h}))
        b = Path(write_csv(Path(tmp) / "b.csv", {"beta": beta, "s": s, "rho_norm_H": rho_h}))
        same = a.read_bytes() == b.read_bytes()
    round_trip = CurveSpec.from_json(spec.to_json()) == spec
    ok = same and round_trip
    return CheckResult("io: deterministic traces and curve spec round trip", ok,
                       "byte-identical and round-tripped" if ok else "mismatch")


# -- driver ------------------------------------------------------------------


def run_battery(seed: int = 0):
    """Run the full invariant battery; returns a list of CheckResult."""
    from .corpus import NAMED_CURVES

    corpus_curves = [factory() for factory in NAMED_CURVES.values()]
    rng = np.random.default_rng(seed)
    checks = [
        lambda: check_jet_derivatives(rng),
        lambda: check_winding(rng),
        lambda: check_u_monotone(rng),
        lambda: check_curvature_oracle(rng),
        lambda: check_total_curvature(rng),
        lambda: check_lagrangian(rng),
        lambda: check_metric_positivity(rng),
        lambda: check_frame_consistency(rng),
        lambda: check_umbilical(rng),
        lambda: check_rho_h_shift_invariance(rng),
        lambda: check_christoffel_fd(rng),
        lambda: check_div_fd(rng),
        lambda: check_gradient_identity(rng),
        lambda: check_divergence_equivalence(rng),
        lambda: check_rho_h_equivalence(rng),
        lambda: check_scale_covariance(rng),
        lambda: check_rotation_invariance(rng),
        lambda: check_conserved_quantity(rng),
        check_closed_form_vs_quadrature,
        check_ode_constraint,
        check_branch_symmetry,
        check_k1_angle_increasing,
        check_periods_and_gaps,
        check_pullbacks,
        lambda: check_level_sets(corpus_curves),
        lambda: check_reduced_winding(rng),
        check_double_point_invariants,
        check_corpus_double_points,
        lambda: check_io_determinism(rng),
    ]
    results = []
    for run in checks:
        start = time.perf_counter()
        try:
            result = run()
        except Exception as exc:  # a crashed check is a failed check
            result = CheckResult(f"{getattr(run, '__name__', 'check')}", False,
                                 f"raised {type(exc).__name__}: {exc}")
        elapsed = time.perf_counter() - start
        results.append(CheckResult(result.name, result.passed,
                                   f"{result.detail} [{elapsed:.2f}s]"))
    return results
