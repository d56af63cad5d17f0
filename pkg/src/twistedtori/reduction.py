"""Symplectic reduction maps and self-intersection analysis.

The torus lives inside the level set Z0 = { |z1| = |z2| } of
h(z1, z2) = (|z1|^2 - |z2|^2) / 2.  The product map l(z1, z2) = z1*z2
identifies the reduced space with the punctured plane carrying the
weighted area form omega = omega_C / (2|w|); the radial stretch
psi(w) = |w| w and, over the upper half-plane, the squaring map
phi_half(w) = w^2 / 2 pull that form back to the standard omega_C.

Self-intersections of the torus project to pairs gamma(beta1) = -gamma(beta2)
in the plane; each such pair is either a transversal "cross" or a tangential
"touch" depending on whether the two curve tangents are parallel.  A curve
whose image is centrally symmetric produces a continuum instead and is
flagged rather than enumerated (the torus is then a 2:1 cover).
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .curves import CurveSpec, eval_jet, periodic_grid
from .errors import CrossCheckMismatch, DomainError
from .geometry import immersion
from .trig import TrigPoly

TWO_PI = 2.0 * np.pi
SQRT2 = np.sqrt(2.0)


# -- reduction maps ------------------------------------------------------


def level_h(z1, z2):
    """Moment map h = (|z1|^2 - |z2|^2) / 2 of the twisting circle action."""
    return 0.5 * (np.abs(z1) ** 2 - np.abs(z2) ** 2)


def reduction_l(z1, z2):
    return z1 * z2


def psi(w):
    """Radial stretch |w| * w, i.e. (rho, phi) -> (rho^2, phi)."""
    return np.abs(w) * w


def psi_inv(zeta):
    return zeta / np.sqrt(np.abs(zeta))


def phi_half(w):
    """Squaring map w -> w^2 / 2 from the upper half-plane to the slit plane."""
    w = np.asarray(w, dtype=complex)
    if np.any(w.imag <= 0):
        raise DomainError("phi_half is defined on the open upper half-plane")
    return 0.5 * w * w


def phi_half_inv(zeta):
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(zeta == 0):
        raise DomainError("phi_half_inv needs a nonzero argument")
    ang = np.angle(zeta)
    ang = np.where(ang <= 0, ang + TWO_PI, ang)
    if np.any(np.isclose(ang, TWO_PI)):
        raise DomainError("phi_half_inv is not defined on the positive real axis")
    return np.sqrt(2.0 * np.abs(zeta)) * np.exp(0.5j * ang)


def omega_c(x, y):
    """Standard area form on the plane applied to complex tangents."""
    return (np.conj(x) * y).imag


def omega_weighted(point, x, y):
    """The reduced form omega = omega_C / (2|w|) at the given point."""
    return omega_c(x, y) / (2.0 * np.abs(point))


def omega_c2(x_pair, y_pair):
    """Standard symplectic form on C^2 applied to complex tangent pairs."""
    return omega_c(x_pair[0], y_pair[0]) + omega_c(x_pair[1], y_pair[1])


def dl(point, x_pair):
    """Differential of l at point = (z1, z2): dl(X) = z1 X2 + z2 X1."""
    return point[0] * x_pair[1] + point[1] * x_pair[0]


def dpsi(w, x):
    return np.abs(w) * x + w * (np.conj(w) * x).real / np.abs(w)


def dphi_half(w, x):
    return w * x


@dataclass(frozen=True)
class ReductionMaps:
    h: Callable = level_h
    l: Callable = reduction_l
    psi: Callable = psi
    psi_inv: Callable = psi_inv
    phi_half: Callable = phi_half
    phi_half_inv: Callable = phi_half_inv
    omega_weighted: Callable = omega_weighted


# -- pullback verification ------------------------------------------------


@dataclass(frozen=True)
class PullbackReport:
    n_trials: int
    seed: int
    l_pullback_max: float
    psi_pullback_max: float
    phi_pullback_max: float
    psi_roundtrip_max: float
    phi_roundtrip_max: float
    orbit_kernel_max: float

    def to_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "seed": self.seed,
            "l_pullback_max": self.l_pullback_max,
            "psi_pullback_max": self.psi_pullback_max,
            "phi_pullback_max": self.phi_pullback_max,
            "psi_roundtrip_max": self.psi_roundtrip_max,
            "phi_roundtrip_max": self.phi_roundtrip_max,
            "orbit_kernel_max": self.orbit_kernel_max,
        }


def level_set_tangent_basis(r, theta, eta):
    """Tangent basis of Z0 at r*(e^{i theta}, e^{i eta}): d/dr, d/dtheta, d/deta."""
    z1, z2 = np.exp(1j * theta), np.exp(1j * eta)
    return ((z1, z2), (1j * r * z1, 0.0), (0.0, 1j * r * z2))


def verify_pullbacks(n_trials: int = 100, seed: int = 0) -> PullbackReport:
    """Check the three pullback identities at random points and tangents.

    At p in Z0 with tangents X, Y:  omega_C2(X, Y) = omega_{l(p)}(dl X, dl Y);
    psi and phi_half both pull the weighted form back to omega_C.  Random
    data come from the given seed, so reports are reproducible.
    """
    rng = np.random.default_rng(seed)
    l_max = psi_max = phi_max = psi_rt = phi_rt = orbit_max = 0.0
    for _ in range(n_trials):
        r = rng.uniform(0.3, 2.0)
        theta, eta = rng.uniform(0.0, TWO_PI, size=2)
        point = (r * np.exp(1j * theta), r * np.exp(1j * eta))
        basis = level_set_tangent_basis(r, theta, eta)
        coeff = rng.uniform(-1.0, 1.0, size=(2, 3))
        x_pair = tuple(sum(c * np.asarray(b)[i] for c, b in zip(coeff[0], basis))
                       for i in range(2))
        y_pair = tuple(sum(c * np.asarray(b)[i] for c, b in zip(coeff[1], basis))
                       for i in range(2))
        lhs = omega_c2(x_pair, y_pair)
        rhs = omega_weighted(reduction_l(*point), dl(point, x_pair), dl(point, y_pair))
        l_max = max(l_max, abs(float(lhs - rhs)))

        orbit = (1j * point[0], -1j * point[1])
        orbit_max = max(orbit_max, abs(dl(point, orbit)),
                        abs(float(omega_c2(orbit, y_pair))))

        w = rng.uniform(0.3, 2.0) * np.exp(1j * rng.uniform(0.0, TWO_PI))
        x, y = rng.uniform(-1.0, 1.0, size=2) + 1j * rng.uniform(-1.0, 1.0, size=2)
        lhs = omega_c(x, y)
        rhs = omega_weighted(psi(w), dpsi(w, x), dpsi(w, y))
        psi_max = max(psi_max, abs(float(lhs - rhs)))
        psi_rt = max(psi_rt, abs(psi_inv(psi(w)) - w))

        w = rng.uniform(0.3, 2.0) * np.exp(1j * rng.uniform(0.05, np.pi - 0.05))
        rhs = omega_weighted(phi_half(w), dphi_half(w, x), dphi_half(w, y))
        phi_max = max(phi_max, abs(float(lhs - rhs)))
        phi_rt = max(phi_rt, abs(phi_half_inv(phi_half(w)) - w))

    return PullbackReport(n_trials, seed, l_max, psi_max, phi_max,
                          psi_rt, phi_rt, orbit_max)


# -- reduced curve and level set ------------------------------------------


def reduced_curve(curve: CurveSpec, n_check: int = 64) -> CurveSpec:
    """Curve in the reduced plane that lifts back to the same torus.

    Polar data: radius rho / sqrt(2), angle doubled (winding 2k).  The result
    is cross-checked against psi^{-1}(gamma^2 / 2) and against the projection
    of the torus through l before being returned.
    """
    lr = curve.log_rho
    fp = curve.f_periodic
    reduced = CurveSpec(
        TrigPoly(lr.a0 - 0.5 * float(np.log(2.0)), lr.cos, lr.sin),
        TrigPoly(2.0 * fp.a0, tuple(2.0 * c for c in fp.cos), tuple(2.0 * s for s in fp.sin)),
        2 * curve.k,
    )
    beta = periodic_grid(n_check)
    gamma = curve.gamma(beta)
    target = psi_inv(gamma**2 / 2.0)
    scale = float(np.max(np.abs(gamma))) ** 2
    if np.max(np.abs(reduced.gamma(beta) - target)) > 1e-9 * max(scale, 1.0):
        raise CrossCheckMismatch("reduced curve disagrees with psi^{-1}(gamma^2/2)")
    jet = eval_jet(curve, beta)
    for alpha in (0.0, 1.0):
        point, _, _ = immersion(jet, alpha)
        z1 = point[..., 0] + 1j * point[..., 1]
        z2 = point[..., 2] + 1j * point[..., 3]
        if np.max(np.abs(reduction_l(z1, z2) - gamma**2 / 2.0)) > 1e-12 * max(scale, 1.0):
            raise CrossCheckMismatch("l(F) disagrees with gamma^2 / 2 on samples")
    return reduced


def level_set_check(curve: CurveSpec, n_samples: int = 2048, n_alpha: int = 16) -> float:
    """max |h(F)| over an (alpha, beta) grid; the torus sits in Z0 structurally."""
    jet = eval_jet(curve, periodic_grid(n_samples))
    worst = 0.0
    for alpha in periodic_grid(n_alpha):
        point, _, _ = immersion(jet, alpha)
        z1 = point[..., 0] + 1j * point[..., 1]
        z2 = point[..., 2] + 1j * point[..., 3]
        worst = max(worst, float(np.max(np.abs(level_h(z1, z2)))))
    return worst


# -- double points ---------------------------------------------------------

KIND_CROSS = "Cross"
KIND_TOUCH = "Touch"


@dataclass(frozen=True)
class DoublePoint:
    beta1: float
    beta2: float
    planar_point: complex
    ambient_point: np.ndarray  # F(0, beta1) = F(pi, beta2)
    kind: str

    def to_dict(self) -> dict:
        return {
            "beta1": self.beta1,
            "beta2": self.beta2,
            "planar_point": [self.planar_point.real, self.planar_point.imag],
            "ambient_point": [float(x) for x in self.ambient_point],
            "kind": self.kind,
        }


@dataclass(frozen=True)
class DoublePointScan:
    centrally_symmetric: bool
    points: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "centrally_symmetric": self.centrally_symmetric,
            "points": [p.to_dict() for p in self.points],
        }


def centrally_symmetric(curve: CurveSpec, tol: float = 1e-9,
                        n_image: int = 4096, n_probe: int = 512) -> bool:
    """True when the image of gamma equals the image of -gamma.

    Measures max over probes beta of dist(-gamma(beta), image), each distance
    refined by bounded scalar minimization around the closest grid point.
    """
    beta_img = periodic_grid(n_image)
    image = curve.gamma(beta_img)
    spacing = TWO_PI / n_image
    for b in periodic_grid(n_probe):
        target = -complex(curve.gamma(b))
        j = int(np.argmin(np.abs(image - target)))
        center = beta_img[j]
        res = minimize_scalar(
            lambda x: abs(complex(curve.gamma(x)) - target),
            bounds=(center - 2 * spacing, center + 2 * spacing),
            method="bounded", options={"xatol": 1e-13})
        if res.fun > tol:
            return False
    return True


def _refine_pair(curve: CurveSpec, b1: float, b2: float, tol: float,
                 max_iter: int = 60):
    """Damped least-squares Newton on gamma(b1) + gamma(b2) = 0.

    lstsq keeps the iteration meaningful at tangential (touch) pairs where
    the 2x2 Jacobian [gamma'(b1) gamma'(b2)] is singular.
    """
    x = np.array([b1, b2], dtype=float)
    for _ in range(max_iter):
        g1, g2 = complex(curve.gamma(x[0])), complex(curve.gamma(x[1]))
        residual = np.array([(g1 + g2).real, (g1 + g2).imag])
        if np.hypot(*residual) < tol:
            return x
        d1 = complex(curve.gamma_dot(x[0]))
        d2 = complex(curve.gamma_dot(x[1]))
        jac = np.array([[d1.real, d2.real], [d1.imag, d2.imag]])
        step = np.linalg.lstsq(jac, -residual, rcond=None)[0]
        norm = np.hypot(*step)
        if norm > 0.1:
            step *= 0.1 / norm
        x = x + step
    g1, g2 = complex(curve.gamma(x[0])), complex(curve.gamma(x[1]))
    if abs(g1 + g2) < tol:
        return x
    return None


def _candidate_cells(curve: CurveSpec, n_grid: int):
    """Cells of the (beta1, beta2) torus that may contain a root.

    Candidates are segment pairs of the polylines for gamma and -gamma that
    either pass the sign-based intersection test or come within 1.5 segment
    lengths of each other (the latter catches tangential touches that the
    sign test cannot see).
    """
    beta = np.linspace(0.0, TWO_PI, n_grid + 1)
    pts = curve.gamma(beta)
    a, b = pts[:-1], pts[1:]
    c, d = -a, -b

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    ba = (b - a)[:, None]
    dc = (d - c)[None, :]
    d1 = cross(ba, c[None, :] - a[:, None])
    d2 = cross(ba, d[None, :] - a[:, None])
    d3 = cross(dc, a[:, None] - c[None, :])
    d4 = cross(dc, b[:, None] - c[None, :])
    scale = float(np.max(np.abs(pts))) ** 2
    eps = 1e-14 * scale
    hits = (d1 * d2 <= eps) & (d3 * d4 <= eps)

    mid = 0.5 * (a + b)
    seg_len = float(np.max(np.abs(b - a)))
    near = np.abs(mid[:, None] + mid[None, :]) < 1.5 * seg_len  # mid of -gamma is -mid
    idx = np.argwhere(hits | near)
    centers = 0.5 * (beta[:-1] + beta[1:])
    return [(centers[i], centers[j]) for i, j in idx]


def find_double_points(curve: CurveSpec, n_grid: int = 720,
                       newton_tol: float = 1e-12, merge_tol: float = 1e-7,
                       touch_tol: float = 1e-9,
                       symmetry_tol: float = 1e-9) -> DoublePointScan:
    """Locate all pairs gamma(beta1) = -gamma(beta2) on the parameter torus.

    One record is emitted per intersection point of gamma with -gamma, so a
    transversal pair {b1, b2} appears twice, once through each planar point
    (gamma(b1) and gamma(b2) = -gamma(b1)).  Centrally symmetric curves are
    flagged instead of enumerated, since there the solutions form a
    continuum and the torus is a 2:1 cover.
    """
    if centrally_symmetric(curve, symmetry_tol):
        return DoublePointScan(True, ())
    scale = float(np.max(np.abs(curve.gamma(periodic_grid(512))))) or 1.0
    roots = []
    for b1, b2 in _candidate_cells(curve, n_grid):
        refined = _refine_pair(curve, b1, b2, newton_tol * scale)
        if refined is None:
            continue
        pair = np.mod(refined, TWO_PI)
        if not any(_torus_dist(pair, other) < merge_tol for other in roots):
            roots.append(pair)

    points = []
    for b1, b2 in sorted(roots, key=lambda p: (p[0], p[1])):
        jet1 = eval_jet(curve, b1)
        t1 = complex(jet1.tau * jet1.gamma)
        jet2 = eval_jet(curve, b2)
        t2 = complex(jet2.tau * jet2.gamma)
        parallel = abs((np.conj(t1) * t2).imag) / (abs(t1) * abs(t2))
        kind = KIND_TOUCH if parallel < touch_tol else KIND_CROSS
        point, _, _ = immersion(jet1, 0.0)
        points.append(DoublePoint(
            beta1=float(b1), beta2=float(b2),
            planar_point=complex(jet1.gamma),
            ambient_point=np.asarray(point, dtype=float),
            kind=kind,
        ))
    return DoublePointScan(False, tuple(points))


def _torus_dist(p, q):
    d = np.abs(np.asarray(p) - np.asarray(q))
    d = np.minimum(d, TWO_PI - d)
    return float(np.max(d))


def cover_identity_residual(curve: CurveSpec, n: int = 64) -> float:
    """max |F(alpha + pi, beta + pi) - F(alpha, beta)| over a grid.

    Vanishes for circles centred at the origin, where the torus is a 2:1
    cover of its image.
    """
    beta = periodic_grid(n)
    jet = eval_jet(curve, beta)
    jet_shift = eval_jet(curve, beta + np.pi)
    worst = 0.0
    for alpha in periodic_grid(8):
        f0, _, _ = immersion(jet, alpha)
        f1, _, _ = immersion(jet_shift, alpha + np.pi)
        worst = max(worst, float(np.max(np.abs(f1 - f0))))
    return worst
