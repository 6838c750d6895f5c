"""Upper half-plane, the sliced plane H_q, log-model planes H(p) and Aff(H_q)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"point must lie in the upper half-plane, got y={self.y}")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.x, self.y)


def dist_h(a: HPoint, b: HPoint) -> float:
    """Hyperbolic distance, arccosh(1 + |a − b|² / (2 y_a y_b)) evaluated via log1p."""
    u = ((a.x - b.x) ** 2 + (a.y - b.y) ** 2) / (2.0 * a.y * b.y)
    return math.log1p(u + math.sqrt(u * (u + 2.0)))


def dist_h_log(a: HPoint, b: HPoint) -> float:
    """The quotient form log((|a − b̄| + |a − b|) / (|a − b̄| − |a − b|)).

    The denominator is evaluated as 4 y_a y_b / (|a − b̄| + |a − b|), which is
    the same quantity without the cancellation.
    """
    far = math.hypot(a.x - b.x, a.y + b.y)
    near = math.hypot(a.x - b.x, a.y - b.y)
    s = far + near
    return math.log(s * s / (4.0 * a.y * b.y))


def busemann_q(z: HPoint, q: float) -> float:
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    return math.log(z.y) / math.log(q)


# -------------------------------------------------------------- Aff(H_q)

@dataclass(frozen=True)
class AffHEl:
    """z ↦ qⁿ z + b."""

    n: int
    b: float = 0.0


def affh_apply(g: AffHEl, z: HPoint, q: float) -> HPoint:
    s = q ** g.n
    return HPoint(s * z.x + g.b, s * z.y)


def affh_compose(g: AffHEl, h: AffHEl, q: float) -> AffHEl:
    return AffHEl(g.n + h.n, q ** g.n * h.b + g.b)


def affh_inverse(g: AffHEl, q: float) -> AffHEl:
    return AffHEl(-g.n, -g.b * q ** (-g.n))


def affh_modular(g: AffHEl, q: float) -> float:
    return q ** (-g.n)


# ------------------------------------------------------------- log model

@dataclass(frozen=True)
class LogPoint:
    """Point (x, z) of H(p), metric e^{−2pz} dx² + dz²."""

    x: float
    z: float


def log_to_half_plane(pt: LogPoint, p: float) -> HPoint:
    return HPoint(p * pt.x, math.exp(p * pt.z))


def dist_hp(a: LogPoint, b: LogPoint, p: float) -> float:
    if not p > 0:
        raise ValueError(f"curvature parameter must be positive, got {p}")
    return dist_h(log_to_half_plane(a, p), log_to_half_plane(b, p)) / p


def hp_path_length(xs: np.ndarray, zs: np.ndarray, p: float) -> float:
    """Length of the polyline through (xs, zs) in H(p), 4-point Gauss per segment."""
    t, w = np.polynomial.legendre.leggauss(4)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    dx = np.diff(xs)[:, None]
    dz = np.diff(zs)[:, None]
    z = zs[:-1, None] + t[None, :] * dz
    f = np.sqrt(np.exp(-2.0 * p * z) * dx * dx + dz * dz)
    return float((f * w[None, :]).sum())


# ------------------------------------------------------ geodesic segments

@dataclass(frozen=True)
class Geodesic:
    """Geodesic segment between two upper-half-plane points.

    ``radius`` is ``inf`` for vertical segments; otherwise the segment lies on
    the semicircle centred at ``center`` on the real axis.
    """

    a: HPoint
    b: HPoint
    center: float
    radius: float

    @classmethod
    def between(cls, a: HPoint, b: HPoint) -> "Geodesic":
        dx = b.x - a.x
        if abs(dx) <= 1e-14 * max(1.0, abs(a.x), abs(b.x)):
            return cls(a, b, a.x, math.inf)
        c = (b.x ** 2 + b.y ** 2 - a.x ** 2 - a.y ** 2) / (2.0 * dx)
        return cls(a, b, c, math.hypot(a.x - c, a.y))

    @property
    def vertical(self) -> bool:
        return math.isinf(self.radius)

    @property
    def length(self) -> float:
        return dist_h(self.a, self.b)

    def apex_height(self) -> float:
        """Largest imaginary part reached on the segment."""
        if self.vertical:
            return max(self.a.y, self.b.y)
        if (self.a.x - self.center) * (self.b.x - self.center) < 0:
            return self.radius
        return max(self.a.y, self.b.y)

    def _angle(self, pt: HPoint) -> float:
        return math.atan2(pt.y, pt.x - self.center)

    def point_at(self, s: float) -> HPoint:
        """Point at hyperbolic arc length ``s`` from ``a`` towards ``b``."""
        if self.vertical:
            sign = 1.0 if self.b.y >= self.a.y else -1.0
            return HPoint(self.a.x, self.a.y * math.exp(sign * s))
        fa = self._angle(self.a)
        fb = self._angle(self.b)
        # arc length along a semicircle: log tan(φ/2)
        ua = math.log(math.tan(fa / 2.0))
        sign = 1.0 if fb > fa else -1.0
        phi = 2.0 * math.atan(math.exp(ua + sign * s))
        return HPoint(self.center + self.radius * math.cos(phi), self.radius * math.sin(phi))

    def sample(self, n: int) -> list[HPoint]:
        """``n + 1`` points equally spaced in arc length, endpoints exact."""
        L = self.length
        pts = [self.point_at(L * i / n) for i in range(n + 1)]
        pts[0], pts[-1] = self.a, self.b
        return pts

    def x_at_height(self, y: float, toward: HPoint) -> float:
        """Real part of the point at height ``y`` on the branch containing ``toward``."""
        if self.vertical:
            return self.a.x
        r2 = self.radius * self.radius - y * y
        side = math.copysign(1.0, toward.x - self.center)
        return self.center + side * math.sqrt(max(r2, 0.0))
