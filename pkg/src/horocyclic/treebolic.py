"""Treebolic space HT(p, q): metric tree T_p glued with the sliced plane H_q."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tree as T
from .hyperbolic import AffHEl, HPoint, affh_apply, affh_compose, dist_h
from .tree import TreePoint
from .wreath import LampEl, act_on_tree, compose as lamp_compose

DELTA = math.log(1.0 + math.sqrt(2.0))
GRID = 64
GOLDEN_TOL = 1e-9
INCIDENCE_TOL = 1e-9


class IncidenceViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class HtParams:
    p: int
    q: float

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if not self.q > 1.0 + 1e-9:
            raise ValueError(f"q must exceed 1 + 1e-9, got {self.q}")


@dataclass(frozen=True)
class HtPoint:
    """(w, z) with the tree height of w equal to log_q Im z."""

    w: TreePoint
    z: HPoint

    @classmethod
    def at(cls, w: TreePoint, x: float, pr: HtParams) -> "HtPoint":
        return cls(w, HPoint(x, pr.q ** w.height))

    def check(self, pr: HtParams, tol: float = INCIDENCE_TOL) -> None:
        h = math.log(self.z.y) / math.log(pr.q)
        if abs(h - self.w.height) > tol * max(1.0, abs(h)):
            raise IncidenceViolation(f"tree height {self.w.height} vs log_q Im z = {h}")


def same_sheet(w1: TreePoint, w2: TreePoint) -> bool:
    """Both points lie on one line from the reference end to a lower end."""
    return T.comparable(w1, w2)


def crossing_cost(z1: HPoint, z2: HPoint, y: float):
    """Vectorised x ↦ d(z1, x + iy) + d(x + iy, z2)."""
    def f(x):
        x = np.asarray(x, dtype=float)
        u1 = ((x - z1.x) ** 2 + (y - z1.y) ** 2) / (2.0 * y * z1.y)
        u2 = ((x - z2.x) ** 2 + (y - z2.y) ** 2) / (2.0 * y * z2.y)
        return (np.log1p(u1 + np.sqrt(u1 * (u1 + 2.0)))
                + np.log1p(u2 + np.sqrt(u2 * (u2 + 2.0))))
    return f


def golden_section(f, a: float, b: float, tol: float = GOLDEN_TOL) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def crossing_minimum(z1: HPoint, z2: HPoint, y: float) -> tuple[float, float]:
    """Minimise the two-leg cost over the horizontal line Im z = y.

    Returns ``(x, value)``; ties go to the smaller x.
    """
    D = dist_h(z1, z2) * y + 1.0
    lo = min(z1.x, z2.x) - D
    hi = max(z1.x, z2.x) + D
    f = crossing_cost(z1, z2, y)
    grid = np.linspace(lo, hi, GRID)
    vals = f(grid)
    best_x, best_v = None, math.inf
    # refine every local minimum of the coarse grid
    for i in range(GRID):
        left = vals[i - 1] if i > 0 else math.inf
        right = vals[i + 1] if i < GRID - 1 else math.inf
        if vals[i] <= left and vals[i] <= right:
            a = grid[max(i - 1, 0)]
            b = grid[min(i + 1, GRID - 1)]
            x = golden_section(lambda t: float(f(t)), a, b)
            v = float(f(x))
            if v < best_v - 1e-15:
                best_x, best_v = x, v
    return best_x, best_v


def ht_dist(a: HtPoint, b: HtPoint, pr: HtParams) -> float:
    if same_sheet(a.w, b.w):
        return dist_h(a.z, b.z)
    v = T.confluent_ancestor(a.w.vertex, b.w.vertex)
    _, val = crossing_minimum(a.z, b.z, pr.q ** v.level)
    return val


# ----------------------------------------------------------- comparison

@dataclass(frozen=True)
class BoundReport:
    distance: float
    middle_literal: float
    middle_log: float
    literal_lower: bool
    literal_upper: bool
    log_lower: bool
    log_upper: bool

    @property
    def literal_ok(self) -> bool:
        return self.literal_lower and self.literal_upper

    @property
    def log_ok(self) -> bool:
        return self.log_lower and self.log_upper


def bound_check(a: HtPoint, b: HtPoint, pr: HtParams, tol: float = 0.0) -> BoundReport:
    """Test d ≤ middle ≤ d + 2δ for the two readings of the correction term."""
    d = ht_dist(a, b, pr)
    base = dist_h(a.z, b.z) + math.log(pr.q) * T.point_distance(a.w, b.w)
    lit = base - abs(a.z.y - b.z.y)
    lg = base - abs(math.log(a.z.y) - math.log(b.z.y))
    return BoundReport(
        d, lit, lg,
        d <= lit + tol, lit <= d + 2 * DELTA + tol,
        d <= lg + tol, lg <= d + 2 * DELTA + tol,
    )


# ------------------------------------------------------------- isometries

@dataclass(frozen=True)
class BEl:
    g1: LampEl
    g2: AffHEl

    def __post_init__(self):
        if self.g1.pos != self.g2.n:
            raise ValueError("tree shift and plane scaling exponent must agree")


def b_compose(g: BEl, h: BEl, pr: HtParams) -> BEl:
    return BEl(lamp_compose(g.g1, h.g1), affh_compose(g.g2, h.g2, pr.q))


def b_act(g: BEl, pt: HtPoint, pr: HtParams) -> HtPoint:
    w = TreePoint(act_on_tree(g.g1, pt.w.vertex), pt.w.up)
    out = HtPoint(w, affh_apply(g.g2, pt.z, pr.q))
    out.check(pr)
    return out


def b_modular(g: BEl, pr: HtParams) -> float:
    return (pr.p / pr.q) ** g.g1.pos
