"""Homogeneous tree T_p hanging from a reference end.

A vertex is stored as ``(digits, level)``: ``digits`` are the edge labels on
the way down from the reference end, most recent label last, with the
implicit infinite prefix of zeros stripped. The level is the Busemann
function and grows towards the successors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterator, Sequence, Union


class IdenticalEnds(ValueError):
    """Confluent of an end with itself is undefined."""


def _strip(digits: Sequence[int]) -> tuple[int, ...]:
    i = 0
    while i < len(digits) and digits[i] == 0:
        i += 1
    return tuple(digits[i:])


@dataclass(frozen=True, order=True)
class TreeVertex:
    level: int
    digits: tuple[int, ...] = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.digits)
        if any(x < 0 for x in d):
            raise ValueError(f"negative digit in {d}")
        object.__setattr__(self, "digits", _strip(d))

    @classmethod
    def parse(cls, text: str) -> "TreeVertex":
        """Parse ``level:digits`` (``0:11``); use dots when a digit exceeds 9 (``0:1.12``)."""
        level, sep, digits = text.partition(":")
        if not sep:
            raise ValueError(f"expected level:digits, got {text!r}")
        if "." in digits:
            ds = [int(x) for x in digits.split(".") if x]
        else:
            ds = [int(c) for c in digits]
        return cls(int(level), tuple(ds))

    def __str__(self):
        if any(x > 9 for x in self.digits):
            return f"{self.level}:" + ".".join(map(str, self.digits))
        return f"{self.level}:" + "".join(map(str, self.digits))

    def digit_at(self, level: int) -> int:
        """Label of the edge entering the ancestor at ``level`` (0 in the zero prefix)."""
        back = self.level - level
        if back < 0:
            raise ValueError("level below the vertex")
        if back >= len(self.digits):
            return 0
        return self.digits[len(self.digits) - 1 - back]


ORIGIN = TreeVertex(0)


def check_digits(v: TreeVertex, p: int) -> None:
    if p < 2:
        raise ValueError(f"branching number must be >= 2, got {p}")
    if any(d >= p for d in v.digits):
        raise ValueError(f"{v} has a digit >= {p}")


def predecessor(v: TreeVertex) -> TreeVertex:
    return TreeVertex(v.level - 1, v.digits[:-1])


def successor(v: TreeVertex, label: int) -> TreeVertex:
    return TreeVertex(v.level + 1, v.digits + (label,))


def successors(v: TreeVertex, p: int) -> list[TreeVertex]:
    return [TreeVertex(v.level + 1, v.digits + (j,)) for j in range(p)]


def ancestor(v: TreeVertex, level: int) -> TreeVertex:
    """Iterated predecessor of ``v`` sitting on ``level`` (must be <= v.level)."""
    back = v.level - level
    if back < 0:
        raise ValueError(f"no ancestor of {v} on level {level}")
    if back == 0:
        return v
    return TreeVertex(level, v.digits[:-back] if back < len(v.digits) else ())


def is_ancestor(a: TreeVertex, b: TreeVertex) -> bool:
    """True if ``a`` lies on the geodesic from ``b`` to the reference end (a == b allowed)."""
    return a.level <= b.level and ancestor(b, a.level) == a


def confluent_ancestor(x: TreeVertex, y: TreeVertex) -> TreeVertex:
    """Maximal common ancestor x ⋏ y."""
    level = min(x.level, y.level)
    a = ancestor(x, level).digits
    b = ancestor(y, level).digits
    if a == b:
        return TreeVertex(level, a)
    n = max(len(a), len(b))
    pa = (0,) * (n - len(a)) + a
    pb = (0,) * (n - len(b)) + b
    i = next(i for i, (s, t) in enumerate(zip(pa, pb)) if s != t)
    cut = n - i
    return TreeVertex(level - cut, pa[:i])


def tree_distance(x: TreeVertex, y: TreeVertex) -> int:
    c = confluent_ancestor(x, y)
    return (x.level - c.level) + (y.level - c.level)


def busemann_limit_check(x: TreeVertex, o: TreeVertex) -> int:
    """d(x, x⋏o) − d(o, x⋏o); equals ``x.level - o.level``."""
    c = confluent_ancestor(x, o)
    return tree_distance(x, c) - tree_distance(o, c)


def tree_neighbors(v: TreeVertex, p: int) -> list[TreeVertex]:
    return [predecessor(v)] + successors(v, p)


def grandmother_neighbors(v: TreeVertex, p: int) -> list[TreeVertex]:
    """Tree neighbours plus the second predecessor and the p² grandchildren."""
    up = predecessor(v)
    kids = successors(v, p)
    grandkids = [g for k in kids for g in successors(k, p)]
    return [up, predecessor(up)] + kids + grandkids


# --------------------------------------------------------------------- ends

@dataclass(frozen=True)
class TreeEnd:
    """Either the reference end (``anchor is None``) or the eventually-zero
    lower end through ``anchor``.

    Lower anchors are normalised to the highest vertex from which the ray
    continues with zero labels only; the all-zero line is anchored at level 0.
    """

    anchor: TreeVertex | None = None

    def __post_init__(self):
        a = self.anchor
        if a is None:
            return
        digits, level = list(a.digits), a.level
        while digits and digits[-1] == 0:
            digits.pop()
            level -= 1
        if not digits:
            level = 0
        object.__setattr__(self, "anchor", TreeVertex(level, tuple(digits)))

    @property
    def is_top(self) -> bool:
        return self.anchor is None

    def ray_vertex(self, level: int) -> TreeVertex:
        """Vertex of the line from the reference end to this lower end on ``level``."""
        if self.anchor is None:
            raise ValueError("the reference end has no ray vertices")
        a = self.anchor
        if level >= a.level:
            return TreeVertex(level, a.digits + (0,) * (level - a.level))
        return ancestor(a, level)

    def __str__(self):
        return "top" if self.anchor is None else f"end({self.anchor})"


TOP = TreeEnd()
ZERO_END = TreeEnd(ORIGIN)

TreeOrEnd = Union[TreeVertex, TreeEnd]


def _geodesic_from(o: TreeVertex, target: TreeOrEnd) -> Iterator[TreeVertex]:
    """Vertices of the geodesic from ``o`` towards ``target`` (possibly infinite)."""
    if isinstance(target, TreeEnd) and target.is_top:
        v = o
        while True:
            yield v
            v = predecessor(v)
    if isinstance(target, TreeVertex):
        c = confluent_ancestor(o, target)
        for lev in range(o.level, c.level - 1, -1):
            yield ancestor(o, lev)
        for lev in range(c.level + 1, target.level + 1):
            yield ancestor(target, lev)
        return
    probe = target.ray_vertex(max(o.level, target.anchor.level))
    c = confluent_ancestor(o, probe)
    for lev in range(o.level, c.level - 1, -1):
        yield ancestor(o, lev)
    lev = c.level + 1
    while True:
        yield target.ray_vertex(lev)
        lev += 1


def confluent_from_root(w: TreeOrEnd, z: TreeOrEnd, o: TreeVertex) -> TreeVertex:
    """Last common vertex w ∧ z of the geodesics from ``o`` to ``w`` and to ``z``."""
    if isinstance(w, TreeEnd) and isinstance(z, TreeEnd) and w == z:
        raise IdenticalEnds(f"{w} ∧ {w} is not a vertex")
    last = None
    for a, b in zip_longest(_geodesic_from(o, w), _geodesic_from(o, z)):
        if a is None or b is None or a != b:
            break
        last = a
    return last


def ultrametric(w: TreeOrEnd, z: TreeOrEnd, o: TreeVertex) -> float:
    """θ(w, z) = exp(−|w ∧ z|) for w ≠ z, 0 otherwise."""
    if w == z:
        return 0.0
    return math.exp(-tree_distance(o, confluent_from_root(w, z, o)))


# ------------------------------------------------------------ subtree swap

@dataclass(frozen=True)
class SubtreeSwap:
    """Exchange the subtrees below two successors of ``apex``.

    A non-trivial automorphism of both the tree and the grandmother graph
    that fixes ``apex`` and every vertex outside the two swapped branches.
    """

    apex: TreeVertex
    branch_a: int
    branch_b: int

    def __post_init__(self):
        if self.branch_a == self.branch_b:
            raise ValueError("branches must differ")


def apply_swap(s: SubtreeSwap, v: TreeVertex) -> TreeVertex:
    top = s.apex.level + 1
    if v.level < top or ancestor(v, s.apex.level) != s.apex:
        return v
    label = v.digit_at(top)
    if label == s.branch_a:
        new = s.branch_b
    elif label == s.branch_b:
        new = s.branch_a
    else:
        return v
    back = v.level - top
    n = max(len(v.digits), back + 1)
    padded = list((0,) * (n - len(v.digits)) + v.digits)
    padded[n - 1 - back] = new
    return TreeVertex(v.level, tuple(padded))


# -------------------------------------------------------------- metric tree

@dataclass(frozen=True)
class TreePoint:
    """Point of the metric tree: ``up`` units above ``vertex`` on the edge to its predecessor.

    ``up == 0`` is the vertex itself. In edge terms the point sits on
    ``[predecessor(vertex), vertex]`` at offset ``1 - up`` from the parent.
    """

    vertex: TreeVertex
    up: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.up < 1.0:
            raise ValueError(f"edge offset out of [0, 1): {self.up}")

    @classmethod
    def on_edge(cls, parent: TreeVertex, child: TreeVertex, kappa: float) -> "TreePoint":
        if predecessor(child) != parent:
            raise ValueError(f"{child} is not a successor of {parent}")
        if not 0.0 <= kappa < 1.0:
            raise ValueError(f"edge offset out of [0, 1): {kappa}")
        if kappa == 0.0:
            return cls(parent)
        return cls(child, 1.0 - kappa)

    @property
    def is_vertex(self) -> bool:
        return self.up == 0.0

    @property
    def height(self) -> float:
        return self.vertex.level - self.up

    @property
    def parent(self) -> TreeVertex:
        return predecessor(self.vertex)

    @property
    def kappa(self) -> float:
        return 0.0 if self.up == 0.0 else 1.0 - self.up


def comparable(a: TreePoint, b: TreePoint) -> bool:
    """True if one point lies on the geodesic from the other to the reference end."""
    if a.vertex == b.vertex:
        return True
    c = confluent_ancestor(a.vertex, b.vertex)
    return c == a.vertex or c == b.vertex


def point_confluent_height(a: TreePoint, b: TreePoint) -> float:
    if a.vertex == b.vertex:
        return min(a.height, b.height)
    c = confluent_ancestor(a.vertex, b.vertex)
    if c == a.vertex:
        return a.height
    if c == b.vertex:
        return b.height
    return float(c.level)


def point_distance(a: TreePoint, b: TreePoint) -> float:
    """Length of the geodesic between two points of the metric tree."""
    m = point_confluent_height(a, b)
    return (a.height - m) + (b.height - m)
