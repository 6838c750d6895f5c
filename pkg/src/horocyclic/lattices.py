"""Lattices: Z² ⋊_A Z inside Sol(p, p) and Baumslag–Solitar arithmetic."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .sol import SolEl, SolParams


class TraceTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class IntMat2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    @property
    def trace(self) -> int:
        return self.a + self.d

    def inv(self) -> "IntMat2":
        return IntMat2(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, o: "IntMat2") -> "IntMat2":
        return IntMat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def power(self, m: int) -> "IntMat2":
        base = self if m >= 0 else self.inv()
        out = IntMat2(1, 0, 0, 1)
        for _ in range(abs(m)):
            out = out @ base
        return out

    def apply(self, k: int, l: int) -> tuple[int, int]:
        return self.a * k + self.b * l, self.c * k + self.d * l

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)


@dataclass(frozen=True)
class SdEl:
    k: int
    l: int
    m: int


def sd_mul(g: SdEl, h: SdEl, A: IntMat2) -> SdEl:
    k, l = A.power(g.m).apply(h.k, h.l)
    return SdEl(g.k + k, g.l + l, g.m + h.m)


def sd_inverse(g: SdEl, A: IntMat2) -> SdEl:
    k, l = A.power(-g.m).apply(g.k, g.l)
    return SdEl(-k, -l, -g.m)


def sd_matrix(g: SdEl, A: IntMat2) -> np.ndarray:
    Am = A.power(g.m)
    return np.array([[Am.a, Am.b, g.k], [Am.c, Am.d, g.l], [0, 0, 1]], dtype=float)


@dataclass(frozen=True)
class EigenData:
    lam: float
    p: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    @property
    def basis(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    @property
    def B(self) -> np.ndarray:
        return np.array([[self.alpha, 0.0, self.beta],
                         [self.gamma, 0.0, self.delta],
                         [0.0, 1.0, 0.0]])

    @property
    def params(self) -> SolParams:
        return SolParams(self.p, self.p)


def eigen_data(A: IntMat2) -> EigenData:
    """Eigenbasis of A in SL₂(R): first entry 1 before rescaling to determinant 1."""
    t = A.trace
    if t <= 2:
        raise TraceTooSmall(f"trace {t} <= 2")
    lam = (t + math.sqrt(t * t - 4)) / 2.0
    # b != 0 whenever trace > 2 and det = 1
    v1 = (1.0, (lam - A.a) / A.b)
    v2 = (1.0, (1.0 / lam - A.a) / A.b)
    det = v1[0] * v2[1] - v2[0] * v1[1]
    if det < 0:
        v2 = (-v2[0], -v2[1])
        det = -det
    s = 1.0 / math.sqrt(det)
    return EigenData(lam, math.log(lam), v1[0] * s, v2[0] * s, v1[1] * s, v2[1] * s)


def embed(g: SdEl, E: EigenData) -> SolEl:
    """Image in Sol(log λ, log λ): (δk − βl, −γk + αl, m)."""
    return SolEl(E.delta * g.k - E.beta * g.l, -E.gamma * g.k + E.alpha * g.l, float(g.m))


def conjugate(g: SdEl, A: IntMat2, E: EigenData) -> np.ndarray:
    """B⁻¹ · (matrix of g) · B, computed numerically."""
    B = E.B
    return np.linalg.solve(B, sd_matrix(g, A) @ B)


# ------------------------------------------------------ Baumslag–Solitar

@dataclass(frozen=True)
class BsEl:
    """(p^m, k/p^l; 0, 1) with k/p^l in lowest p-adic terms."""

    p: int
    m: int
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("denominator exponent must be >= 0")
        k, l = self.k, self.l
        while l > 0 and k % self.p == 0:
            k //= self.p
            l -= 1
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @property
    def entry(self) -> Fraction:
        return Fraction(self.k, self.p ** self.l)

    @property
    def scale(self) -> Fraction:
        return Fraction(self.p) ** self.m

    @classmethod
    def from_entry(cls, p: int, m: int, r: Fraction) -> "BsEl":
        l = 0
        while (r * p ** l).denominator != 1:
            l += 1
            if l > 10_000:
                raise ValueError(f"{r} is not in Z[1/{p}]")
        return cls(p, m, int(r * p ** l), l)


def bs_mul(g: BsEl, h: BsEl) -> BsEl:
    if g.p != h.p:
        raise ValueError(f"BS({g.p}) vs BS({h.p})")
    return BsEl.from_entry(g.p, g.m + h.m, g.scale * h.entry + g.entry)


def bs_power(g: BsEl, n: int) -> BsEl:
    out = BsEl(g.p, 0)
    for _ in range(n):
        out = bs_mul(out, g)
    return out


def bs_generators(p: int) -> tuple[BsEl, BsEl]:
    return BsEl(p, 1), BsEl(p, 0, 1, 0)


def bs_relation_check(p: int) -> bool:
    """a·b == b^p·a, exactly."""
    a, b = bs_generators(p)
    return bs_mul(a, b) == bs_mul(bs_power(b, p), a)
