"""Sol(p, q) as a Lie group and as a Riemannian manifold."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import kernels
from .hyperbolic import Geodesic, HPoint, LogPoint, dist_hp

N_DEFAULT = 64
MAX_ITER = 500
STEP_TOL = 1e-8


@dataclass(frozen=True)
class SolParams:
    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise ValueError(f"Sol({self.p},{self.q}) needs p, q > 0")


@dataclass(frozen=True)
class SolEl:
    """Group element (a, b, c); also the point (x, y, z) of Sol(p, q)."""

    a: float
    b: float
    c: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=float)


SolPoint = SolEl
IDENTITY = SolEl(0.0, 0.0, 0.0)


def sol_mul(g: SolEl, h: SolEl, pr: SolParams) -> SolEl:
    """(a,b,c)·(x,y,z) = (e^{pc} x + a, e^{−qc} y + b, c + z)."""
    return SolEl(math.exp(pr.p * g.c) * h.a + g.a,
                 math.exp(-pr.q * g.c) * h.b + g.b,
                 g.c + h.c)


def sol_inverse(g: SolEl, pr: SolParams) -> SolEl:
    return SolEl(-math.exp(-pr.p * g.c) * g.a, -math.exp(pr.q * g.c) * g.b, -g.c)


def sol_matrix(g: SolEl, pr: SolParams) -> np.ndarray:
    return np.array([
        [math.exp(pr.p * g.c), g.a, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, g.b, math.exp(-pr.q * g.c)],
    ])


def sol_from_matrix(m: np.ndarray, pr: SolParams) -> SolEl:
    return SolEl(float(m[0, 1]), float(m[2, 1]), math.log(m[0, 0]) / pr.p)


def sol_modular(g: SolEl, pr: SolParams) -> float:
    return math.exp((pr.q - pr.p) * g.c)


def translate(g: SolEl, pts: np.ndarray, pr: SolParams) -> np.ndarray:
    """Left translation applied to every row of an (M, 3) array of points."""
    out = np.empty_like(pts)
    out[:, 0] = math.exp(pr.p * g.c) * pts[:, 0] + g.a
    out[:, 1] = math.exp(-pr.q * g.c) * pts[:, 1] + g.b
    out[:, 2] = pts[:, 2] + g.c
    return out


def projections(pt: SolPoint) -> tuple[LogPoint, LogPoint]:
    """(x, y, z) ↦ (x, z) ∈ H(p) and (y, −z) ∈ H(q)."""
    return LogPoint(pt.a, pt.c), LogPoint(pt.b, -pt.c)


# ------------------------------------------------------------ path length

@dataclass
class SolPath:
    points: np.ndarray  # (N + 1, 3)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != 3 or len(self.points) < 2:
            raise ValueError("a path needs at least two 3-d samples")

    @property
    def n(self) -> int:
        return len(self.points) - 1

    @classmethod
    def straight(cls, a: SolPoint, b: SolPoint, n: int = N_DEFAULT) -> "SolPath":
        t = np.linspace(0.0, 1.0, n + 1)[:, None]
        return cls((1 - t) * a.as_array() + t * b.as_array())


def path_length(path: SolPath, pr: SolParams) -> float:
    return kernels.sol_length_grad(path.points, pr.p, pr.q)[0]


def sandwich(a: SolPoint, b: SolPoint, pr: SolParams) -> tuple[float, float]:
    """(max of projected distances, d_H(p) + d_H(q) − |z1 − z2|)."""
    pa1, pa2 = projections(a)
    pb1, pb2 = projections(b)
    d1 = dist_hp(pa1, pb1, pr.p)
    d2 = dist_hp(pa2, pb2, pr.q)
    return max(d1, d2), d1 + d2 - abs(a.c - b.c)


# ------------------------------------------------------- two-phase curve

def _geod_p(a: SolPoint, b: SolPoint, p: float) -> Geodesic:
    return Geodesic.between(HPoint(p * a.a, math.exp(p * a.c)), HPoint(p * b.a, math.exp(p * b.c)))


def _geod_q(a: SolPoint, b: SolPoint, q: float) -> Geodesic:
    return Geodesic.between(HPoint(q * a.b, math.exp(-q * a.c)), HPoint(q * b.b, math.exp(-q * b.c)))


def _speed(radius: float, y: float) -> float:
    """ds/dz along a geodesic whose half-plane height is y (rate per unit z of log y)."""
    if math.isinf(radius):
        return 1.0
    r = y / radius
    return 1.0 / math.sqrt(max(1.0 - r * r, 1e-300))


def _two_phase_ordered(a: SolPoint, b: SolPoint, p: float, q: float):
    """Two-phase pieces for z1 <= z2: (gp, gq, lengths, shared z-range)."""
    gp = _geod_p(a, b, p)
    gq = _geod_q(a, b, q)
    z1, z2 = a.c, b.c
    Lp = gp.length / p
    Lq = gq.length / q
    if z2 - z1 <= 0.0:
        return gp, gq, (Lq, 0.0, Lp), 0.0, 0.0

    def sp(z):
        return _speed(gp.radius, math.exp(p * z))

    def sq(z):
        return _speed(gq.radius, math.exp(-q * z))

    def both(z):
        u, v = sp(z), sq(z)
        return math.sqrt(max(u * u + v * v - 1.0, 0.0))

    opts = dict(limit=200, epsabs=1e-13, epsrel=1e-12)
    lp_shared = integrate.quad(sp, z1, z2, **opts)[0]
    lq_shared = integrate.quad(sq, z1, z2, **opts)[0]
    shared = integrate.quad(both, z1, z2, **opts)[0]
    first = max(Lq - lq_shared, 0.0)
    last = max(Lp - lp_shared, 0.0)
    return gp, gq, (first, shared, last), lp_shared, lq_shared


def _swap(pt: SolPoint) -> SolPoint:
    # isometry Sol(p, q) -> Sol(q, p)
    return SolEl(pt.b, pt.a, -pt.c)


def two_phase_length(a: SolPoint, b: SolPoint, pr: SolParams) -> float:
    """Length of the two-phase curve, integrated along the curve."""
    if a.c <= b.c:
        return sum(_two_phase_ordered(a, b, pr.p, pr.q)[2])
    return sum(_two_phase_ordered(_swap(a), _swap(b), pr.q, pr.p)[2])


def _two_phase_samples(a: SolPoint, b: SolPoint, p: float, q: float, n: int) -> np.ndarray:
    gp, gq, (l0, l1, l2), lp_sh, lq_sh = _two_phase_ordered(a, b, p, q)
    total = l0 + l1 + l2
    if total <= 0.0:
        return np.repeat(a.as_array()[None, :], n + 1, axis=0)
    counts = [int(round(n * l / total)) for l in (l0, l1, l2)]
    counts[1] += n - sum(counts)
    pts = [a.as_array()]
    # phase 1: y-motion only along the H(q) geodesic
    for i in range(1, counts[0] + 1):
        s = (l0 * q) * i / counts[0]
        h = gq.point_at(s)
        pts.append(np.array([a.a, h.x / q, -math.log(h.y) / q]))
    z1, z2 = a.c, b.c
    # phase 2: shared climb, parametrised by z
    end_q = gq.b
    start_p = gp.a
    for i in range(1, counts[1] + 1):
        z = z1 + (z2 - z1) * i / counts[1]
        x = gp.x_at_height(math.exp(p * z), start_p) / p
        y = gq.x_at_height(math.exp(-q * z), end_q) / q
        pts.append(np.array([x, y, z]))
    # phase 3: rest of the H(p) geodesic
    s0 = lp_sh * p
    for i in range(1, counts[2] + 1):
        s = s0 + (gp.length - s0) * i / counts[2]
        h = gp.point_at(min(s, gp.length))
        pts.append(np.array([h.x / p, b.b, math.log(h.y) / p]))
    out = np.array(pts)
    out[-1] = b.as_array()
    return out


def two_phase_path(a: SolPoint, b: SolPoint, pr: SolParams, n: int = N_DEFAULT) -> SolPath:
    if a.c <= b.c:
        return SolPath(_two_phase_samples(a, b, pr.p, pr.q, n))
    pts = _two_phase_samples(_swap(a), _swap(b), pr.q, pr.p, n)
    return SolPath(np.column_stack([pts[:, 1], pts[:, 0], -pts[:, 2]]))


# ------------------------------------------------------------- optimiser

@dataclass
class DescentResult:
    length: float
    path: SolPath
    iterations: int
    converged: bool


def _metric_scale(pts: np.ndarray, pr: SolParams, length: float) -> np.ndarray:
    # inverse metric diag(e^{2pz}, e^{-2qz}, 1) times the mean segment length
    z = pts[1:-1, 2]
    h = length / (len(pts) - 1)
    return h * np.column_stack([np.exp(2 * pr.p * z), np.exp(-2 * pr.q * z), np.ones_like(z)])


def descend(path: SolPath, pr: SolParams, max_iter: int = MAX_ITER,
            step_tol: float = STEP_TOL) -> DescentResult:
    """Preconditioned gradient descent with backtracking on the interior samples.

    ``converged`` is True only when the accepted step falls below ``step_tol``
    before ``max_iter`` iterations.
    """
    pts = path.points.copy()
    length, grad = kernels.sol_length_grad(pts, pr.p, pr.q)
    step = 1.0
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        g = grad[1:-1]
        d = _metric_scale(pts, pr, length) * g
        gd = float((g * d).sum())
        dn = float(np.abs(d).max()) if d.size else 0.0
        if gd <= 0.0:
            converged = True
            break
        step = min(step * 2.0, 1.0)
        while True:
            trial = pts.copy()
            trial[1:-1] -= step * d
            new_len, new_grad = kernels.sol_length_grad(trial, pr.p, pr.q)
            if new_len <= length - 1e-4 * step * gd:
                break
            step *= 0.5
            if step * dn < step_tol:
                break
        if step * dn < step_tol:
            converged = True
            break
        pts, length, grad = trial, new_len, new_grad
    return DescentResult(length, SolPath(pts), it, converged)


@dataclass
class SolDistance:
    """Upper estimate for the Sol distance and how it was found."""

    value: float
    converged: bool
    straight: float
    two_phase: float
    two_phase_curve: float
    lower: float
    upper: float


def dist_upper(a: SolPoint, b: SolPoint, pr: SolParams, n: int = N_DEFAULT,
               max_iter: int = MAX_ITER) -> SolDistance:
    """Shortest of the optimised straight and two-phase paths.

    The two-phase curve itself (integrated exactly along the curve rather
    than through its N-sample polyline) is also a candidate.
    """
    lower, upper = sandwich(a, b, pr)
    if a == b:
        return SolDistance(0.0, True, 0.0, 0.0, 0.0, lower, upper)
    r1 = descend(SolPath.straight(a, b, n), pr, max_iter)
    r2 = descend(two_phase_path(a, b, pr, n), pr, max_iter)
    curve = two_phase_length(a, b, pr)
    value = min(r1.length, r2.length, curve)
    return SolDistance(value, r1.converged and r2.converged, r1.length, r2.length,
                       curve, lower, upper)
