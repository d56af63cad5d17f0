"""Matplotlib figure rendering for the CLI report paths.

Imported lazily by the CLI so the numerical core carries no plotting
dependency.  Figures land next to the delimited output as PNG files.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .curves import CurveSpec

DPI = 150
_META = {"Software": "twistedtori"}


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=DPI, metadata=_META)
    plt.close(fig)
    return path


def plot_curve(curve: CurveSpec, path, show_negation: bool = False,
               double_points=None) -> Path:
    beta = np.linspace(0.0, 2.0 * np.pi, 1024)
    g = curve.gamma(beta)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(g.real, g.imag, lw=1.2, label="curve")
    if show_negation:
        ax.plot(-g.real, -g.imag, lw=1.0, ls="--", label="negated curve")
    if double_points:
        pts = np.array([[p.planar_point.real, p.planar_point.imag] for p in double_points])
        ax.plot(pts[:, 0], pts[:, 1], "o", ms=6, color="crimson", label="double points")
    ax.plot([0.0], [0.0], "k+", ms=8)
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    return _save(fig, path)


def plot_defect_trace(beta, s, rho_norm_h, path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(beta, s, lw=1.2, label="s(beta)")
    ax.plot(beta, rho_norm_h, lw=1.0, ls="--", label="rho*|H|")
    ax.axhline(2.0, color="gray", lw=0.8, ls=":")
    ax.set_xlabel("beta")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def plot_profile(profile, path) -> Path:
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.6))
    axes[0].plot(profile.u, profile.R, lw=1.2)
    axes[0].axhline(profile.R_min, color="gray", lw=0.8, ls=":")
    axes[0].axhline(profile.R_max, color="gray", lw=0.8, ls=":")
    axes[0].set_xlabel("u")
    axes[0].set_ylabel("R")
    axes[1].plot(profile.u, profile.f, lw=1.2)
    axes[1].set_xlabel("u")
    axes[1].set_ylabel("f")
    g = profile.rho_candidate * np.exp(1j * profile.f)
    axes[2].plot(g.real, g.imag, lw=1.2)
    axes[2].plot(g.real[:1], g.imag[:1], "o", ms=5, color="forestgreen")
    axes[2].plot(g.real[-1:], g.imag[-1:], "s", ms=5, color="crimson")
    axes[2].set_aspect("equal")
    axes[2].set_title("reconstructed arc (open)", fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def plot_landscape(scan, path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    params = scan.parameters
    if params.shape[1] == 1:
        ax.plot(params[:, 0], scan.defects, lw=1.2)
        ax.plot(scan.argmin_parameters[0], scan.argmin_defect, "o", color="crimson")
        ax.set_xlabel(scan.parameter_names[0])
        ax.set_ylabel("defect")
    else:
        sc = ax.scatter(params[:, 0], params[:, 1], c=scan.defects, s=14)
        fig.colorbar(sc, ax=ax, label="defect")
        ax.set_xlabel(scan.parameter_names[0])
        ax.set_ylabel(scan.parameter_names[1])
    fig.tight_layout()
    return _save(fig, path)
