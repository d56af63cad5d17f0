"""Canonical demo curves shipped with the package."""

from .curves import CurveSpec, circle, offset_circle, radial_cosine


def origin_circle(radius: float = 1.0) -> CurveSpec:
    """Circle centred at the origin; the stationary (product torus) case."""
    return circle(radius)


def chekanov_circle(center_distance: float = 2.0, radius: float = 1.0) -> CurveSpec:
    """Unit circle at distance 2, contained in an open half-plane (winding 0)."""
    return offset_circle(center_distance, radius)


def star_shaped(amplitude: float = 0.2) -> CurveSpec:
    """Star-shaped perturbed circle rho = exp(amplitude * cos(beta))."""
    return radial_cosine(amplitude)


def half_offset_circle() -> CurveSpec:
    """Unit circle centred at 0.5: encloses the origin and meets its own negation."""
    return offset_circle(0.5, 1.0)


NAMED_CURVES = {
    "origin_circle": origin_circle,
    "chekanov_circle": chekanov_circle,
    "star_shaped": star_shaped,
    "half_offset_circle": half_offset_circle,
}
