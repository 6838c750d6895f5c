"""Diestel–Leader graphs DL(p, q)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

from . import tree as T
from .tree import TreeEnd, TreeVertex
from .wreath import LampEl, act_on_tree, compose as lamp_compose, transporter

DEFAULT_CAP = 8


class RadiusTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class DlParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError(f"DL({self.p},{self.q}) needs p, q >= 2")


@dataclass(frozen=True, order=True)
class DlVertex:
    x1: TreeVertex
    x2: TreeVertex

    def __post_init__(self):
        if self.x1.level + self.x2.level != 0:
            raise ValueError(f"levels {self.x1.level} and {self.x2.level} do not sum to 0")

    @property
    def level(self) -> int:
        return self.x1.level

    @classmethod
    def parse(cls, text: str) -> "DlVertex":
        a, sep, b = text.partition(",")
        if not sep:
            raise ValueError(f"expected x1,x2 got {text!r}")
        return cls(TreeVertex.parse(a), TreeVertex.parse(b))

    def __str__(self):
        return f"{self.x1},{self.x2}"


DL_ORIGIN = DlVertex(T.ORIGIN, T.ORIGIN)


def sort_key(v: DlVertex):
    """Canonical order: level, then digits of each coordinate."""
    return (v.x1.level, v.x1.digits, v.x2.digits)


def check_vertex(v: DlVertex, pr: DlParams) -> None:
    T.check_digits(v.x1, pr.p)
    T.check_digits(v.x2, pr.q)


def neighbors(v: DlVertex, pr: DlParams) -> list[DlVertex]:
    """p upward moves (x1 to a successor) then q downward moves (x2 to a successor)."""
    up2 = T.predecessor(v.x2)
    up1 = T.predecessor(v.x1)
    out = [DlVertex(s, up2) for s in T.successors(v.x1, pr.p)]
    out += [DlVertex(up1, s) for s in T.successors(v.x2, pr.q)]
    return out


# ------------------------------------------------------------------- BFS

N = TypeVar("N", bound=Hashable)


@dataclass
class Ball:
    vertices: list
    edges: list[tuple[int, int]]
    dist: dict

    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}


def bfs_generic(origin: N, r: int, nbrs: Callable[[N], Iterable[N]],
                key: Callable[[N], object] | None = None) -> Ball:
    """Ball of radius ``r`` with exact distances, vertices in ``key`` order."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    dist = {origin: 0}
    frontier = deque([origin])
    while frontier:
        v = frontier.popleft()
        d = dist[v]
        if d == r:
            continue
        for u in nbrs(v):
            if u not in dist:
                dist[u] = d + 1
                frontier.append(u)
    verts = sorted(dist, key=key) if key else sorted(dist)
    idx = {v: i for i, v in enumerate(verts)}
    edges = set()
    for v in verts:
        i = idx[v]
        for u in nbrs(v):
            j = idx.get(u)
            if j is not None and i != j:
                edges.add((min(i, j), max(i, j)))
    return Ball(verts, sorted(edges), dist)


def bfs_ball(origin: DlVertex, r: int, pr: DlParams, cap: int = DEFAULT_CAP) -> Ball:
    if r > cap:
        raise RadiusTooLarge(f"radius {r} exceeds cap {cap}")
    return bfs_generic(origin, r, lambda v: neighbors(v, pr), sort_key)


def bfs_distance(u: N, v: N, nbrs: Callable[[N], Iterable[N]], limit: int = 32) -> int:
    """Exact graph distance by bidirectional BFS (graph assumed undirected)."""
    if u == v:
        return 0
    seen = [{u: 0}, {v: 0}]
    layer = [[u], [v]]
    depth = [0, 0]
    while depth[0] + depth[1] < limit:
        side = 0 if len(layer[0]) <= len(layer[1]) else 1
        mine, other = seen[side], seen[1 - side]
        nxt = []
        best = None
        for a in layer[side]:
            for b in nbrs(a):
                if b in mine:
                    continue
                mine[b] = depth[side] + 1
                nxt.append(b)
                if b in other:
                    cand = mine[b] + other[b]
                    best = cand if best is None else min(best, cand)
        if best is not None:
            return best
        layer[side] = nxt
        depth[side] += 1
    raise RuntimeError(f"distance exceeds {limit}")


# --------------------------------------------------------------- metric

def formula_dist(u: DlVertex, v: DlVertex) -> int:
    """d(x1,y1) + d(x2,y2) − |h(x1) − h(y1)|."""
    return (T.tree_distance(u.x1, v.x1) + T.tree_distance(u.x2, v.x2)
            - abs(u.x1.level - v.x1.level))


def printed_dist(u: DlVertex, v: DlVertex) -> int:
    """The variant with last term |h(x1) − h(x2)| (kept for comparison only)."""
    return (T.tree_distance(u.x1, v.x1) + T.tree_distance(u.x2, v.x2)
            - abs(u.x1.level - u.x2.level))


# ---------------------------------------------------------- K_{p,q} proof

@dataclass(frozen=True)
class KpqWitness:
    A: tuple[DlVertex, ...]
    B: tuple[DlVertex, ...]
    complete: bool
    b_is_neighbourhood: bool
    edge_count: int

    @property
    def ok(self) -> bool:
        return self.complete and self.b_is_neighbourhood


def kpq_witness(o: DlVertex, pr: DlParams) -> KpqWitness:
    """Sets A ⊂ H_{k,−k} and B ⊂ H_{k+1,−k−1} spanning a complete bipartite subgraph."""
    up2 = T.predecessor(o.x2)
    A = tuple(DlVertex(o.x1, s) for s in T.successors(up2, pr.q))
    B = tuple(DlVertex(s, up2) for s in T.successors(o.x1, pr.p))
    edges = 0
    complete = True
    upper = set()
    for a in A:
        nb = set(neighbors(a, pr))
        upper |= {u for u in nb if u.level == o.level + 1}
        for b in B:
            if b in nb:
                edges += 1
            else:
                complete = False
    return KpqWitness(A, B, complete, upper == set(B), edges)


# --------------------------------------------------------- group action

@dataclass(frozen=True)
class AEl:
    """Pair of lamplighter elements acting on the two trees with opposite shifts."""

    g1: LampEl
    g2: LampEl

    def __post_init__(self):
        if self.g1.pos + self.g2.pos != 0:
            raise ValueError("Φ(g1) + Φ(g2) must vanish")


def a_identity(pr: DlParams) -> AEl:
    return AEl(LampEl.identity(pr.p), LampEl.identity(pr.q))


def a_compose(g: AEl, h: AEl) -> AEl:
    return AEl(lamp_compose(g.g1, h.g1), lamp_compose(g.g2, h.g2))


def a_act(g: AEl, v: DlVertex) -> DlVertex:
    return DlVertex(act_on_tree(g.g1, v.x1), act_on_tree(g.g2, v.x2))


def a_transporter(u: DlVertex, v: DlVertex, pr: DlParams) -> AEl:
    return AEl(transporter(u.x1, v.x1, pr.p), transporter(u.x2, v.x2, pr.q))


def modular_candidate(g: AEl, pr: DlParams) -> float:
    """(p/q)^{Φ(g1)}."""
    return (pr.p / pr.q) ** g.g1.pos


# ----------------------------------------------------- boundary limits

@dataclass(frozen=True)
class DlBoundaryPoint:
    first: TreeVertex | TreeEnd
    second: TreeVertex | TreeEnd

    def __str__(self):
        return f"({self.first}, {self.second})"


UNDECIDED = None


def _escapes_up(xs: Sequence[TreeVertex], ref: TreeVertex) -> bool:
    cl = [T.confluent_ancestor(x, ref).level for x in xs]
    return all(b <= a for a, b in zip(cl, cl[1:])) and cl[-1] < cl[0]


def _zero_descent(xs: Sequence[TreeVertex]) -> bool:
    for a, b in zip(xs, xs[1:]):
        if b.level != a.level + 1 or T.predecessor(b) != a or b.digit_at(b.level) != 0:
            return False
    return True


def _tree_side(xs: Sequence[TreeVertex], ref: TreeVertex):
    if all(x == xs[0] for x in xs):
        return xs[0]
    if _zero_descent(xs):
        return TreeEnd(xs[0])
    if _escapes_up(xs, ref):
        return T.TOP
    return None


def classify_limit(ray: Sequence[DlVertex], horizon: int | None = None):
    """Guess the boundary limit of a sequence from its last half.

    Returns a :class:`DlBoundaryPoint` or ``None`` when the finite prefix
    fits none of the monotone patterns (constant, descending along an
    eventually-zero ray, confluent escaping to the reference end).
    """
    n = len(ray) if horizon is None else min(horizon, len(ray))
    if n < 2:
        raise ValueError("need at least two terms")
    tail = list(ray[n - max(2, n // 2):n])
    ref = ray[0]
    s1 = _tree_side([v.x1 for v in tail], ref.x1)
    s2 = _tree_side([v.x2 for v in tail], ref.x2)
    top1 = isinstance(s1, TreeEnd) and s1.is_top
    top2 = isinstance(s2, TreeEnd) and s2.is_top
    if top1 and top2:
        return DlBoundaryPoint(T.TOP, T.TOP)
    if top2 and s1 is not None:
        return DlBoundaryPoint(s1, T.TOP)
    if top1 and s2 is not None:
        return DlBoundaryPoint(T.TOP, s2)
    return UNDECIDED


# ------------------------------------------------ lamplighter correspondence

def encode_lamplighter(g: LampEl) -> DlVertex:
    """Split η at k: x1 = (η(k+n))_{n≤0} on level k, x2 = (η(k+1−n))_{n≤0} on level −k."""
    k = g.pos
    below = [(i, v) for i, v in g.eta.items if i <= k]
    above = [(i, v) for i, v in g.eta.items if i > k]
    if below:
        lo = below[0][0]
        d1 = [0] * (k - lo + 1)
        for i, v in below:
            d1[i - lo] = v
    else:
        d1 = []
    if above:
        hi = above[-1][0]
        # last digit is η(k+1), first is η(hi)
        d2 = [0] * (hi - k)
        for i, v in above:
            d2[hi - i] = v
    else:
        d2 = []
    return DlVertex(TreeVertex(k, tuple(d1)), TreeVertex(-k, tuple(d2)))


def decode_lamplighter(v: DlVertex, p: int) -> LampEl:
    """Inverse of :func:`encode_lamplighter` on DL(p, p)."""
    from .wreath import Config

    k = v.x1.level
    vals = {}
    n1 = len(v.x1.digits)
    for j, d in enumerate(v.x1.digits):
        vals[k - n1 + 1 + j] = d
    n2 = len(v.x2.digits)
    for j, d in enumerate(v.x2.digits):
        vals[k + n2 - j] = d
    return LampEl(Config.from_map(p, vals), k)
