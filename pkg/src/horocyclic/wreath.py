"""The lamplighter group Z_p ≀ Z and its affine action on T_p."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .tree import TreeVertex


class ModulusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    """Finitely supported lamp configuration Z -> Z_p, zeros omitted."""

    p: int
    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus must be >= 2, got {self.p}")
        clean = tuple(sorted((int(k), v % self.p) for k, v in self.items if v % self.p))
        object.__setattr__(self, "items", clean)

    @classmethod
    def from_map(cls, p: int, values: Mapping[int, int]) -> "Config":
        return cls(p, tuple(values.items()))

    @classmethod
    def delta(cls, p: int, at: int, value: int) -> "Config":
        return cls(p, ((at, value),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def __getitem__(self, k: int) -> int:
        for pos, v in self.items:
            if pos == k:
                return v
        return 0

    def __bool__(self):
        return bool(self.items)

    def support(self) -> list[int]:
        return [k for k, _ in self.items]

    def shift(self, k: int) -> "Config":
        """L_k: (L_k η)(x) = η(x − k)."""
        return Config(self.p, tuple((pos + k, v) for pos, v in self.items))

    def __add__(self, other: "Config") -> "Config":
        _same(self.p, other.p)
        out = dict(self.items)
        for pos, v in other.items:
            out[pos] = (out.get(pos, 0) + v) % self.p
        return Config(self.p, tuple(out.items()))

    def __neg__(self) -> "Config":
        return Config(self.p, tuple((pos, -v) for pos, v in self.items))


def _same(p: int, q: int) -> None:
    if p != q:
        raise ModulusMismatch(f"Z_{p} vs Z_{q}")


@dataclass(frozen=True)
class LampEl:
    eta: Config
    pos: int = 0

    @classmethod
    def identity(cls, p: int) -> "LampEl":
        return cls(Config(p), 0)

    @property
    def p(self) -> int:
        return self.eta.p

    def __mul__(self, other: "LampEl") -> "LampEl":
        return compose(self, other)

    def __str__(self):
        lamps = ",".join(f"{k}:{v}" for k, v in self.eta.items)
        return f"({{{lamps}}}, {self.pos})"


def compose(g: LampEl, h: LampEl) -> LampEl:
    """(η, k)(η′, k′) = (η + L_k η′, k + k′)."""
    _same(g.p, h.p)
    return LampEl(g.eta + h.eta.shift(g.pos), g.pos + h.pos)


def inverse(g: LampEl) -> LampEl:
    return LampEl(-g.eta.shift(-g.pos), -g.pos)


def phi(g: LampEl) -> int:
    """Vertical displacement of ``g`` acting on the tree."""
    return g.pos


def generators(p: int) -> list[LampEl]:
    """(δ₁^ℓ, 1) and (δ₀^ℓ, −1) for every ℓ in Z_p (ℓ = 0 included)."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    right = [LampEl(Config.delta(p, 1, l), 1) for l in range(p)]
    left = [LampEl(Config.delta(p, 0, l), -1) for l in range(p)]
    return right + left


def vertex_config(v: TreeVertex, p: int) -> Config:
    """The digits of ``v`` as a configuration on (−∞, v.level]."""
    n = len(v.digits)
    return Config(p, tuple((v.level - n + 1 + i, d) for i, d in enumerate(v.digits)))


def config_vertex(eta: Config, level: int) -> TreeVertex:
    """Vertex on ``level`` whose digits are η restricted to (−∞, level]."""
    below = [(k, v) for k, v in eta.items if k <= level]
    if not below:
        return TreeVertex(level)
    lo = below[0][0]
    digits = [0] * (level - lo + 1)
    for k, v in below:
        digits[k - lo] = v
    return TreeVertex(level, tuple(digits))


def act_on_tree(g: LampEl, v: TreeVertex) -> TreeVertex:
    """Affine action: the vertex viewed as a configuration is multiplied by g."""
    if any(d >= g.p for d in v.digits):
        raise ModulusMismatch(f"{v} is not a vertex of T_{g.p}")
    zeta = vertex_config(v, g.p)
    return config_vertex(g.eta + zeta.shift(g.pos), v.level + g.pos)


def transporter(u: TreeVertex, v: TreeVertex, p: int) -> LampEl:
    """An element g with g·u = v."""
    m = v.level - u.level
    eta = vertex_config(v, p) + -vertex_config(u, p).shift(m)
    return LampEl(eta, m)


def word_product(letters: Iterable[LampEl], p: int) -> LampEl:
    out = LampEl.identity(p)
    for g in letters:
        out = compose(out, g)
    return out
