"""Radial oscillation of would-be stationary curves with winding zero.

In the arc-type parameter u the normalized inverse square radius R obeys

    (R')^2 = c^2 R^2 (R_min - R)(R - R_max),
    R_min = (c-2)/c,  R_max = (c+2)/c,  c > 2,

whose solutions oscillate between the two bounds with period
2*pi/sqrt(c^2-4).  Closing a curve of winding k would instead require a
u-period of 2*(k+1)*pi/c; for k = 0 the two never match, which is the
closure gap this module quantifies.  The angular closure defect of the
reconstructed (rho, f) profile is the same obstruction seen in the angle:
f advances by (c/2) * closure_gap per oscillation instead of returning.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationFailure

TWO_PI = 2.0 * np.pi


def bounds(c: float):
    """Oscillation bounds (R_min, R_max) = ((c-2)/c, (c+2)/c); needs c > 2."""
    if c <= 2.0:
        raise DomainError(f"oscillation bounds need c > 2, got c = {c}")
    return (c - 2.0) / c, (c + 2.0) / c


def closed_form_u(R, c: float):
    """u on the descending branch from R(0) = R_max, in closed form.

    With delta = (c/2)(R - 1) in [-1, 1]:
        u = (pi/2 - atan2(c*delta + 2, sqrt(c^2-4) * sqrt(1 - delta^2))) / sqrt(c^2-4)
    so u(R_max) = 0 and u(R_min) = pi / sqrt(c^2 - 4).
    """
    r_min, r_max = bounds(c)
    R = np.asarray(R, dtype=float)
    if np.any(R < r_min - 1e-12) or np.any(R > r_max + 1e-12):
        raise DomainError(f"R must lie in [{r_min}, {r_max}] for c = {c}")
    root = np.sqrt(c * c - 4.0)
    delta = np.clip(0.5 * c * (R - 1.0), -1.0, 1.0)
    # R at the exact bounds leaves delta a few ulps shy of +-1, which the
    # square root would amplify to ~1e-8 in u; snap to the exact limits.
    delta = np.where(np.abs(delta) > 1.0 - 1e-12, np.sign(delta), delta)
    return (0.5 * np.pi - np.arctan2(c * delta + 2.0, root * np.sqrt(1.0 - delta**2))) / root


@dataclass(frozen=True)
class PeriodAnalysis:
    c: float
    k: int
    R_min: float
    R_max: float
    u1: float
    u_star: float
    required_u_star: float
    closure_gap: float

    def to_dict(self) -> dict:
        return {"c": self.c, "k": self.k, "u1": self.u1, "u_star": self.u_star,
                "required_u_star": self.required_u_star,
                "closure_gap": self.closure_gap}


def period_analysis(c: float, k: int) -> PeriodAnalysis:
    """Closed-form period data and the closure gap for winding k in {0, 1}."""
    r_min, r_max = bounds(c)
    if k not in (0, 1):
        raise DomainError(f"winding k must be 0 or 1, got {k}")
    u1 = np.pi / np.sqrt(c * c - 4.0)
    u_star = 2.0 * u1
    required = 2.0 * (k + 1) * np.pi / c
    return PeriodAnalysis(c=float(c), k=int(k), R_min=r_min, R_max=r_max,
                          u1=float(u1), u_star=float(u_star),
                          required_u_star=float(required),
                          closure_gap=float(u_star - required))


@dataclass(frozen=True)
class OdeProfile:
    c: float
    k: int
    R_min: float
    R_max: float
    u1: float
    u_star: float
    required_u_star: float
    closure_gap: float
    K: float
    I_star: float
    r_underline: float
    numeric_period: float
    numeric_u1: float
    angular_closure_defect: float
    constraint_residual: float
    u: np.ndarray
    R: np.ndarray
    rho_candidate: np.ndarray
    f: np.ndarray

    def header_dict(self) -> dict:
        return {
            "c": self.c, "k": self.k, "u1": self.u1, "u_star": self.u_star,
            "required_u_star": self.required_u_star, "closure_gap": self.closure_gap,
            "K": self.K, "I_star": self.I_star, "r_underline": self.r_underline,
            "numeric_period": self.numeric_period, "numeric_u1": self.numeric_u1,
            "angular_closure_defect": self.angular_closure_defect,
            "constraint_residual": self.constraint_residual,
        }


def integrate_profile(c: float, n_steps: int = 2048, k: int = 0,
                      rtol: float = 1e-11, atol: float = 1e-12) -> OdeProfile:
    """Integrate one full oscillation of R(u) and reconstruct (rho, f).

    The square-root field for R' degenerates at the turning points, so the
    oscillation is integrated in the phase angle theta with
    R = 1 + (2/c) sin(theta) and theta' = -(c + 2 sin(theta)), which is an
    exact, globally smooth reformulation (theta' < 0 since c > 2); the
    branch sign of R' is carried by theta continuously.  Adaptive embedded
    Runge-Kutta (DOP853, whose dense output is smooth enough for
    finite-difference residual checks on the samples) with event detection
    at the extrema records the half and full periods.

    The scale of rho is fixed to r_underline = 1, i.e. rho = R^{-1/2}; the
    angle is f(u) = (c/2) u + K I(u) with I(u) the running integral of
    rho^{-2} and K chosen so a closed curve of winding k would satisfy
    f(required_u_star) - f(0) = 2*k*pi.  Its failure to do so over the
    actual period is the reported angular closure defect.
    """
    analysis = period_analysis(c, k)

    def rhs(u, y):
        theta = y[0]
        return (-(c + 2.0 * np.sin(theta)), 1.0 + (2.0 / c) * np.sin(theta))

    def at_minimum(u, y):
        return y[0] + 0.5 * np.pi
    at_minimum.direction = -1.0

    def full_turn(u, y):
        return y[0] + 1.5 * np.pi
    full_turn.direction = -1.0
    full_turn.terminal = True

    sol = solve_ivp(rhs, (0.0, 3.0 * analysis.u_star), [0.5 * np.pi, 0.0],
                    method="DOP853", rtol=rtol, atol=atol, dense_output=True,
                    events=(at_minimum, full_turn))
    if not sol.success or len(sol.t_events[1]) == 0:
        raise IntegrationFailure(f"oscillation integration failed for c = {c}: {sol.message}")
    numeric_u1 = float(sol.t_events[0][0])
    numeric_period = float(sol.t_events[1][0])
    i_star = float(sol.y_events[1][0][1])
    if abs(numeric_period - analysis.u_star) > 1e-6 * analysis.u_star:
        raise IntegrationFailure(
            f"numeric period {numeric_period} deviates from closed form "
            f"{analysis.u_star} by more than 1e-6 relative")

    u = np.linspace(0.0, numeric_period, n_steps + 1)
    theta, integral = sol.sol(u)
    R = 1.0 + (2.0 / c) * np.sin(theta)
    if np.max(R) > analysis.R_max + 1e-9 or np.min(R) < analysis.R_min - 1e-9:
        raise IntegrationFailure(f"R left [{analysis.R_min}, {analysis.R_max}] for c = {c}")
    R = np.clip(R, analysis.R_min, analysis.R_max)
    rho = 1.0 / np.sqrt(R)

    big_k = (2.0 * k * np.pi - 0.5 * c * analysis.required_u_star) / i_star
    f = 0.5 * c * u + big_k * integral

    d = abs(f[-1] - f[0]) % TWO_PI
    dlog_rho = np.gradient(np.log(rho), u)
    df = np.gradient(f, u)
    residual = float(np.max(np.abs(dlog_rho[1:-1] ** 2 + df[1:-1] ** 2 - 1.0)))

    return OdeProfile(
        **analysis.__dict__,
        K=float(big_k),
        I_star=i_star,
        r_underline=i_star / analysis.u_star,
        numeric_period=numeric_period,
        numeric_u1=numeric_u1,
        angular_closure_defect=float(d),
        constraint_residual=residual,
        u=u,
        R=R,
        rho_candidate=rho,
        f=f,
    )
