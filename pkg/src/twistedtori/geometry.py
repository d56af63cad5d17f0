"""Induced geometry of the twisted torus built from a plane curve.

The torus is the image of F(alpha, beta) = rho/sqrt(2) * (e^{i(f+alpha)},
e^{i(f-alpha)}) in C^2 = R^4.  All scalar quantities (metric, Christoffel
symbols, mean curvature factor, divergence) depend on beta alone; the
alpha argument only rotates the vector-valued outputs.

Complex structure convention: J multiplies each complex coordinate by i,
i.e. J(x1, y1, x2, y2) = (-y1, x1, -y2, x2) in real coordinates.
"""

from dataclasses import dataclass

import numpy as np

from .curves import CurveJet

SQRT2 = np.sqrt(2.0)


def pair_to_r4(z1, z2) -> np.ndarray:
    """Stack a pair of complex arrays into real 4-vectors (x1, y1, x2, y2)."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    return np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)


def r4_to_pair(vec: np.ndarray):
    vec = np.asarray(vec, dtype=float)
    return vec[..., 0] + 1j * vec[..., 1], vec[..., 2] + 1j * vec[..., 3]


def j_mult(vec: np.ndarray) -> np.ndarray:
    """Apply the standard complex structure to a real 4-vector."""
    out = np.empty_like(vec)
    out[..., 0] = -vec[..., 1]
    out[..., 1] = vec[..., 0]
    out[..., 2] = -vec[..., 3]
    out[..., 3] = vec[..., 2]
    return out


def _phases(jet: CurveJet, alpha):
    alpha = np.asarray(alpha, dtype=float)
    z1 = np.exp(1j * (jet.f_val + alpha))
    z2 = np.exp(1j * (jet.f_val - alpha))
    return z1, z2


def immersion(jet: CurveJet, alpha):
    """Return (point, e1, e2) as real 4-vectors.

    e1 = dF/dalpha, e2 = dF/dbeta = tau * F.
    """
    z1, z2 = _phases(jet, alpha)
    r = jet.rho / SQRT2
    point = pair_to_r4(r * z1, r * z2)
    e1 = pair_to_r4(1j * r * z1, -1j * r * z2)
    e2 = pair_to_r4(jet.tau * r * z1, jet.tau * r * z2)
    return point, e1, e2


@dataclass(frozen=True)
class Metric:
    g_aa: np.ndarray
    g_bb: np.ndarray
    inv_aa: np.ndarray
    inv_bb: np.ndarray
    sqrt_det: np.ndarray


def metric(jet: CurveJet) -> Metric:
    """Diagonal induced metric: g_aa = rho^2, g_bb = rho^2 (v^2 + w^2)."""
    g_aa = jet.rho**2
    g_bb = g_aa * jet.q
    return Metric(g_aa, g_bb, 1.0 / g_aa, 1.0 / g_bb, g_aa * np.sqrt(jet.q))


@dataclass(frozen=True)
class Christoffel:
    """Symbols ordered upper index first: aab means Gamma^alpha_{alpha beta}."""

    aaa: np.ndarray
    aab: np.ndarray
    abb: np.ndarray
    baa: np.ndarray
    bab: np.ndarray
    bbb: np.ndarray


def christoffel(jet: CurveJet) -> Christoffel:
    q = jet.q
    zero = np.zeros_like(jet.v)
    return Christoffel(
        aaa=zero,
        aab=jet.v,
        abb=zero,
        baa=-jet.v / q,
        bab=zero,
        bbb=jet.v + (jet.v * jet.v_d1 + jet.w * jet.w_d1) / q,
    )


def second_form(jet: CurveJet, alpha):
    """Second fundamental form components (B_aa, B_ab, B_bb) as 4-vectors."""
    _, e1, e2 = immersion(jet, alpha)
    q = jet.q
    je1, je2 = j_mult(e1), j_mult(e2)
    b_aa = (jet.w / q)[..., None] * je2
    b_ab = jet.w[..., None] * je1
    b_bb = (jet.w + (jet.w_d1 * jet.v - jet.w * jet.v_d1) / q)[..., None] * je2
    return b_aa, b_ab, b_bb


def mean_curvature_factor(jet: CurveJet) -> np.ndarray:
    """The scalar C with H = C * J e2."""
    q = jet.q
    return (jet.w_d1 * jet.v - jet.w * jet.v_d1 + 2.0 * jet.w * q) / (jet.rho**2 * q**2)


def mean_curvature_factor_d1(jet: CurveJet) -> np.ndarray:
    """Exact d/dbeta of the mean curvature factor (uses third derivatives)."""
    q = jet.q
    qd = 2.0 * (jet.v * jet.v_d1 + jet.w * jet.w_d1)
    num = jet.w_d1 * jet.v - jet.w * jet.v_d1 + 2.0 * jet.w * q
    num_d = (jet.w_d2 * jet.v - jet.w * jet.v_d2
             + 2.0 * jet.w_d1 * q + 2.0 * jet.w * qd)
    den = jet.rho**2 * q**2
    den_d = den * (2.0 * jet.v + 2.0 * qd / q)
    return (num_d - (num / den) * den_d) / den


def log_sqrt_det_d1(jet: CurveJet) -> np.ndarray:
    """d/dbeta of log sqrt(det g); equals the trace of the Christoffels."""
    return 2.0 * jet.v + (jet.v * jet.v_d1 + jet.w * jet.w_d1) / jet.q


@dataclass(frozen=True)
class MeanCurvature:
    C: np.ndarray
    H: np.ndarray
    norm_H: np.ndarray
    rho_norm_H: np.ndarray
    #: B(eps1, eps1) = lam * J eps1 in the orthonormal frame
    lam: np.ndarray
    #: B(eps2, eps2) = mu * J eps1 and B(eps1, eps2) = mu * J eps2
    mu: np.ndarray


def mean_curvature(jet: CurveJet, alpha) -> MeanCurvature:
    _, _, e2 = immersion(jet, alpha)
    q = jet.q
    c = mean_curvature_factor(jet)
    norm_h = np.abs(c) * jet.rho * np.sqrt(q)
    mu = jet.w / (jet.rho * np.sqrt(q))
    lam = mu + (jet.w_d1 * jet.v - jet.w * jet.v_d1) / (jet.rho * q**1.5)
    return MeanCurvature(
        C=c,
        H=c[..., None] * j_mult(e2),
        norm_H=norm_h,
        rho_norm_H=jet.rho * norm_h,
        lam=lam,
        mu=mu,
    )


def div_JH(jet: CurveJet) -> np.ndarray:
    """div_g(JH) = -[dC/dbeta + (d/dbeta log sqrt(det g)) * C]."""
    c = mean_curvature_factor(jet)
    return -(mean_curvature_factor_d1(jet) + log_sqrt_det_d1(jet) * c)


@dataclass(frozen=True)
class GeometryFrame:
    """Full pointwise geometry of the torus at (alpha, beta)."""

    point: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    g_aa: np.ndarray
    g_bb: np.ndarray
    gamma_sym: Christoffel
    B_aa: np.ndarray
    B_ab: np.ndarray
    B_bb: np.ndarray
    C: np.ndarray
    H: np.ndarray
    norm_H: np.ndarray
    rho_norm_H: np.ndarray
    div_JH: np.ndarray
    eps1: np.ndarray
    eps2: np.ndarray


def frame(jet: CurveJet, alpha) -> GeometryFrame:
    point, e1, e2 = immersion(jet, alpha)
    met = metric(jet)
    b_aa, b_ab, b_bb = second_form(jet, alpha)
    mc = mean_curvature(jet, alpha)
    eps1 = e2 / (jet.rho * np.sqrt(jet.q))[..., None]
    eps2 = e1 / jet.rho[..., None]
    return GeometryFrame(
        point=point,
        e1=e1,
        e2=e2,
        g_aa=met.g_aa,
        g_bb=met.g_bb,
        gamma_sym=christoffel(jet),
        B_aa=b_aa,
        B_ab=b_ab,
        B_bb=b_bb,
        C=mc.C,
        H=mc.H,
        norm_H=mc.norm_H,
        rho_norm_H=mc.rho_norm_H,
        div_JH=div_JH(jet),
        eps1=eps1,
        eps2=eps2,
    )
