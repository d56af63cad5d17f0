"""Real trigonometric polynomials with exact derivatives.

A polynomial is a0 + sum_n (cos_n * cos(n*beta) + sin_n * sin(n*beta)),
n = 1..N.  All derivatives are analytic: the m-th derivative of the
mode-n term is n^m times the same pair of harmonics phase-shifted by
m*pi/2, so no finite differencing ever enters the evaluation path.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TrigPoly:
    a0: float = 0.0
    cos: tuple = ()
    sin: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cos", tuple(float(c) for c in self.cos))
        object.__setattr__(self, "sin", tuple(float(s) for s in self.sin))
        object.__setattr__(self, "a0", float(self.a0))

    @property
    def n_modes(self) -> int:
        return max(len(self.cos), len(self.sin))

    def is_constant(self) -> bool:
        return all(c == 0.0 for c in self.cos) and all(s == 0.0 for s in self.sin)

    def _padded(self):
        n = self.n_modes
        c = np.zeros(n)
        s = np.zeros(n)
        c[: len(self.cos)] = self.cos
        s[: len(self.sin)] = self.sin
        return c, s

    def eval(self, beta, order: int = 0):
        """Evaluate the order-th derivative at beta (scalar or array)."""
        beta = np.asarray(beta, dtype=float)
        if self.n_modes == 0:
            base = np.zeros(beta.shape)
            return base + self.a0 if order == 0 else base
        c, s = self._padded()
        n = np.arange(1, self.n_modes + 1, dtype=float)
        ang = np.multiply.outer(beta, n) + order * (np.pi / 2.0)
        scale = n**order
        out = np.cos(ang) @ (c * scale) + np.sin(ang) @ (s * scale)
        if order == 0:
            out = out + self.a0
        return out

    def derivative(self) -> "TrigPoly":
        c, s = self._padded()
        n = np.arange(1, self.n_modes + 1, dtype=float)
        return TrigPoly(0.0, tuple(n * s), tuple(-n * c))

    def shifted(self, delta: float) -> "TrigPoly":
        """Coefficients of beta -> value at beta + delta (reparametrization)."""
        if self.n_modes == 0:
            return self
        c, s = self._padded()
        n = np.arange(1, self.n_modes + 1, dtype=float)
        cn, sn = np.cos(n * delta), np.sin(n * delta)
        return TrigPoly(self.a0, tuple(c * cn + s * sn), tuple(-c * sn + s * cn))

    def scaled(self, factor: float) -> "TrigPoly":
        return TrigPoly(self.a0 * factor,
                        tuple(c * factor for c in self.cos),
                        tuple(s * factor for s in self.sin))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.n_modes, other.n_modes)
        c1, s1 = _pad_to(self, n)
        c2, s2 = _pad_to(other, n)
        return TrigPoly(self.a0 + other.a0, tuple(c1 + c2), tuple(s1 + s2))


def _pad_to(p: TrigPoly, n: int):
    c = np.zeros(n)
    s = np.zeros(n)
    c[: len(p.cos)] = p.cos
    s[: len(p.sin)] = p.sin
    return c, s
