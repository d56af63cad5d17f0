"""Hamiltonian stationarity tests for twisted tori.

A twisted torus is stationary exactly when s(beta) = sqrt(det g) * C is
constant in beta, where C is the mean curvature factor.  The defect is the
maximal deviation of s from its mean; the conserved quantity
rho^2 * (phi - c/2) with phi = w / sqrt(v^2 + w^2) must be constant along
stationary curves.  Only circles centred at the origin (any regular
reparametrization, i.e. constant rho) achieve zero defect.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize

from .curves import (CurveSpec, ORIENT_CCW, eval_jet, periodic_grid, rho_variance)
from .errors import BudgetExhausted, OrientationError, CrossCheckMismatch
from . import curves as _curves
from .geometry import mean_curvature_factor

VERDICT_STATIONARY = "StationaryProduct"
VERDICT_NONSTATIONARY = "NonStationary"
VERDICT_DEGENERATE = "DegenerateAllCritical"

DEFAULT_TOLERANCES = {
    "stationarity": 1e-8,     # relative spread of s(beta) around its mean
    "rho_norm_h": 1e-8,       # |rho*|H| - 2| bound asserted for stationary verdicts
    "rho_variance": 1e-10,    # relative variance of rho asserted for stationary verdicts
    "critical_cluster": 1e-9, # absolute clustering width for critical values of rho
}


def stationarity_trace(curve: CurveSpec, n_samples: int = 2048):
    """Return (beta, s, rho_norm_H) on a uniform grid.

    s = sqrt(det g) * C simplifies to (w'v - wv' + 2w(v^2+w^2)) / (v^2+w^2)^{3/2},
    which is also rho*|H| up to sign.
    """
    beta = periodic_grid(n_samples)
    jet = eval_jet(curve, beta)
    s = jet.rho**2 * np.sqrt(jet.q) * mean_curvature_factor(jet)
    return beta, s, np.abs(s)


def defect(curve: CurveSpec, n_samples: int = 2048):
    """Mean of s(beta) and the maximal deviation from it."""
    _, s, _ = stationarity_trace(curve, n_samples)
    c_estimate = float(np.mean(s))
    return c_estimate, float(np.max(np.abs(s - c_estimate)))


def defect_phi(jet) -> np.ndarray:
    """phi = w / sqrt(v^2 + w^2), the sine of the radial steering angle."""
    return jet.w / np.sqrt(jet.q)


def conserved_quantity(curve: CurveSpec, c: float, beta) -> np.ndarray:
    """rho^2 * (phi - c/2); beta-independent exactly for stationary curves."""
    jet = eval_jet(curve, beta)
    return jet.rho**2 * (defect_phi(jet) - 0.5 * c)


@dataclass(frozen=True)
class CriticalPoints:
    n_points: int
    n_values: int
    locations: tuple
    values: tuple
    degenerate: bool = False


def count_critical_points(curve: CurveSpec, n_grid: int = 4096,
                          cluster_tol: float = None) -> CriticalPoints:
    """Roots of rho' in [0, 2*pi) by sign-change scan plus bisection refinement.

    Constant rho makes every point critical; that case is reported through
    the `degenerate` flag instead of a count.
    """
    if cluster_tol is None:
        cluster_tol = DEFAULT_TOLERANCES["critical_cluster"]
    if curve.log_rho.is_constant():
        return CriticalPoints(0, 0, (), (), degenerate=True)
    beta = periodic_grid(n_grid)
    v = eval_jet(curve, beta).v
    if np.max(np.abs(v)) < 1e-12:
        return CriticalPoints(0, 0, (), (), degenerate=True)

    vfun = lambda b: float(eval_jet(curve, b).v)
    roots = []
    for i in range(n_grid):
        a, b = beta[i], beta[i] + beta[1]
        va, vb = v[i], v[(i + 1) % n_grid]
        if va == 0.0:
            roots.append(float(a))
        elif va * vb < 0.0:
            roots.append(float(brentq(vfun, a, b, xtol=1e-14)))
    # merge near-duplicates mod 2*pi
    merged = []
    for r in sorted(roots):
        if merged and min(abs(r - merged[-1]), 2 * np.pi - abs(r - merged[-1])) < 1e-10:
            continue
        if merged and min(abs(r - merged[0]), 2 * np.pi - abs(r - merged[0])) < 1e-10:
            continue
        merged.append(r)
    values = [float(curve.rho(r)) for r in merged]
    distinct = []
    for val in sorted(values):
        if not distinct or abs(val - distinct[-1]) > cluster_tol:
            distinct.append(val)
    return CriticalPoints(len(merged), len(distinct), tuple(merged), tuple(values))


def classify(curve: CurveSpec, n_samples: int = 2048,
             tolerances: Optional[dict] = None) -> str:
    """StationaryProduct iff the relative defect is below tolerance.

    A stationary verdict is double-checked against the two consequences it
    implies: rho essentially constant and rho*|H| = 2 everywhere.
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    orientation = _curves.orientation_check(curve, n_samples)
    if orientation != ORIENT_CCW:
        raise OrientationError(f"classification requires a counterclockwise curve, got {orientation}")
    c_estimate, d = defect(curve, n_samples)
    if d >= tol["stationarity"] * abs(c_estimate):
        return VERDICT_NONSTATIONARY
    jet = eval_jet(curve, periodic_grid(n_samples))
    rho_mean = float(np.mean(jet.rho))
    if np.var(jet.rho) >= tol["rho_variance"] * rho_mean**2:
        raise CrossCheckMismatch(
            "defect below tolerance but rho is not constant; stationary twisted tori "
            "must be products of circles")
    _, _, rho_h = stationarity_trace(curve, n_samples)
    if np.max(np.abs(rho_h - 2.0)) >= tol["rho_norm_h"]:
        raise CrossCheckMismatch(
            "defect below tolerance but rho*|H| differs from 2; stationary twisted "
            "tori must satisfy the product-torus identity")
    return VERDICT_STATIONARY


@dataclass(frozen=True)
class StationarityReport:
    c_estimate: float
    defect: float
    b_estimate: float
    b_spread: float
    rho_norm_H_min: float
    rho_norm_H_max: float
    n_critical_points: int
    n_critical_values: int
    critical_degenerate: bool
    verdict: str
    n_samples: int

    def to_dict(self) -> dict:
        return {
            "c_estimate": self.c_estimate,
            "defect": self.defect,
            "b_estimate": self.b_estimate,
            "b_spread": self.b_spread,
            "rho_norm_H_min": self.rho_norm_H_min,
            "rho_norm_H_max": self.rho_norm_H_max,
            "n_critical_points": self.n_critical_points,
            "n_critical_values": self.n_critical_values,
            "critical_degenerate": self.critical_degenerate,
            "verdict": self.verdict,
            "n_samples": self.n_samples,
        }


def report(curve: CurveSpec, n_samples: int = 2048,
           tolerances: Optional[dict] = None) -> StationarityReport:
    verdict = classify(curve, n_samples, tolerances)
    beta, s, rho_h = stationarity_trace(curve, n_samples)
    c_estimate = float(np.mean(s))
    d = float(np.max(np.abs(s - c_estimate)))
    b = conserved_quantity(curve, c_estimate, beta)
    crit = count_critical_points(curve)
    return StationarityReport(
        c_estimate=c_estimate,
        defect=d,
        b_estimate=float(np.mean(b)),
        b_spread=float(np.max(np.abs(b - np.mean(b)))),
        rho_norm_H_min=float(np.min(rho_h)),
        rho_norm_H_max=float(np.max(rho_h)),
        n_critical_points=crit.n_points,
        n_critical_values=crit.n_values,
        critical_degenerate=crit.degenerate,
        verdict=verdict,
        n_samples=n_samples,
    )


@dataclass(frozen=True)
class CurveFamily:
    """Finitely parameterized family of curve specs for defect scans."""

    make: Callable[[np.ndarray], CurveSpec]
    lo: tuple
    hi: tuple
    grid_shape: tuple
    parameter_names: tuple = ()
    min_rho_variance: Optional[float] = None

    def __post_init__(self):
        if not self.parameter_names:
            object.__setattr__(self, "parameter_names",
                               tuple(f"t{i}" for i in range(len(self.lo))))

    def grid(self) -> np.ndarray:
        axes = [np.linspace(lo, hi, n) for lo, hi, n in
                zip(self.lo, self.hi, self.grid_shape)]
        if not axes:
            return np.zeros((0, 0))
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


@dataclass(frozen=True)
class FamilyScan:
    parameters: np.ndarray
    defects: np.ndarray
    c_estimates: np.ndarray
    feasible: np.ndarray
    argmin_parameters: np.ndarray
    argmin_defect: float
    polished_parameters: np.ndarray
    polished_defect: float
    n_evaluations: int
    parameter_names: tuple = field(default=())


def scan_family(family: CurveFamily, budget: int = 400, seed: int = 0,
                n_samples: int = 1024) -> FamilyScan:
    """Grid scan of the stationarity defect followed by Nelder-Mead polish.

    The scan is deterministic for a given family and seed; grid ties go to
    the lowest flat index.  Members whose rho-variance falls below the
    family's floor are marked infeasible and excluded from the minimum.
    Raises BudgetExhausted for an empty family or when the polish does not
    converge within `budget` objective evaluations.
    """
    del seed  # reserved; grid + Nelder-Mead are already deterministic
    params = family.grid()
    if params.size == 0:
        raise BudgetExhausted("empty family: nothing to scan")

    def objective(p):
        spec = family.make(np.asarray(p, dtype=float))
        if family.min_rho_variance is not None:
            if rho_variance(spec, n_samples) < family.min_rho_variance:
                return np.inf
        _, d = defect(spec, n_samples)
        return d

    defects = np.empty(len(params))
    c_estimates = np.empty(len(params))
    feasible = np.ones(len(params), dtype=bool)
    for i, p in enumerate(params):
        spec = family.make(p)
        c_estimates[i], defects[i] = defect(spec, n_samples)
        if family.min_rho_variance is not None and \
                rho_variance(spec, n_samples) < family.min_rho_variance:
            feasible[i] = False
    masked = np.where(feasible, defects, np.inf)
    if not np.any(np.isfinite(masked)):
        raise BudgetExhausted("no feasible member in the scanned family")
    best = int(np.argmin(masked))

    box = np.array(family.hi) - np.array(family.lo)
    result = minimize(objective, params[best], method="Nelder-Mead",
                      options={"maxfev": budget, "xatol": 1e-10, "fatol": 1e-12,
                               "initial_simplex": _initial_simplex(params[best], box)})
    if not result.success:
        raise BudgetExhausted(
            f"Nelder-Mead polish did not converge within {budget} evaluations: "
            f"{result.message}")
    polished_p = np.clip(result.x, family.lo, family.hi)
    polished_d = objective(polished_p)
    if not np.isfinite(polished_d) or polished_d > masked[best]:
        polished_p, polished_d = params[best], float(masked[best])
    return FamilyScan(
        parameters=params,
        defects=defects,
        c_estimates=c_estimates,
        feasible=feasible,
        argmin_parameters=params[best],
        argmin_defect=float(masked[best]),
        polished_parameters=np.asarray(polished_p, dtype=float),
        polished_defect=float(polished_d),
        n_evaluations=int(result.nfev),
        parameter_names=family.parameter_names,
    )


def _initial_simplex(x0: np.ndarray, box: np.ndarray) -> np.ndarray:
    n = len(x0)
    step = np.where(box > 0, 0.02 * box, 0.02)
    simplex = np.tile(x0, (n + 1, 1)).astype(float)
    for i in range(n):
        simplex[i + 1, i] += step[i]
    return simplex
