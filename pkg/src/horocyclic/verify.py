"""Verification suites: each formula checked against an independent oracle.

Every suite returns a list of :class:`Check` records. The command-line
``verify`` command and the acceptance tests both run these functions.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import dl as D
from . import hyperbolic as H
from . import lattices as Lt
from . import sol as S
from . import tree as T
from . import treebolic as HT
from . import walks as W
from . import wreath as Wr

DEFAULT_SEED = 20240601


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# ------------------------------------------------------------- bertacchi

def suite_bertacchi(radius: int = 5, pairs: int = 500, seed: int = DEFAULT_SEED,
                    params=((2, 2), (2, 3)), budget: float = 60.0) -> list[Check]:
    out = []
    rng = random.Random(seed)
    t0 = time.perf_counter()
    for p, q in params:
        pr = D.DlParams(p, q)
        with _Timer() as tm:
            ball = D.bfs_ball(D.DL_ORIGIN, radius, pr)
            bad_origin = [str(v) for v in ball.vertices
                          if D.formula_dist(D.DL_ORIGIN, v) != ball.dist[v]]
            printed_bad = sum(D.printed_dist(D.DL_ORIGIN, v) != ball.dist[v] for v in ball.vertices)
            nbrs = lambda v, pr=pr: D.neighbors(v, pr)
            bad_pairs = []
            for _ in range(pairs):
                u, v = rng.choice(ball.vertices), rng.choice(ball.vertices)
                f = D.formula_dist(u, v)
                b = D.bfs_distance(u, v, nbrs, limit=2 * radius + 2)
                if f != b:
                    bad_pairs.append((str(u), str(v), f, b))
        out.append(Check(
            f"bertacchi DL({p},{q}) r={radius}",
            not bad_origin and not bad_pairs,
            {"ball_size": len(ball.vertices), "origin_mismatches": bad_origin[:5],
             "pair_mismatches": bad_pairs[:5], "pairs": pairs,
             "printed_variant_mismatches": int(printed_bad)},
            tm.seconds,
        ))
    total = time.perf_counter() - t0
    out.append(Check("bertacchi runtime", total < budget, {"seconds": total, "budget": budget}))
    return out


# -------------------------------------------------------- lamplighter iso

def _cayley_ball(p: int, radius: int) -> dict:
    gens = Wr.generators(p)
    e = Wr.LampEl.identity(p)
    dist = {e: 0}
    frontier = [e]
    for d in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
        frontier = nxt
    return dist


def _random_lamp(p: int, rng: random.Random, span: int = 3) -> Wr.LampEl:
    vals = {i: rng.randrange(p) for i in range(-span, span + 1) if rng.random() < 0.5}
    return Wr.LampEl(Wr.Config.from_map(p, vals), rng.randint(-span, span))


def suite_lamplighter_iso(p: int = 2, radius: int = 6, samples: int = 200,
                          seed: int = DEFAULT_SEED) -> list[Check]:
    rng = random.Random(seed)
    pr = D.DlParams(p, p)
    gens = Wr.generators(p)
    with _Timer() as tm:
        cay = _cayley_ball(p, radius)
        ball = D.bfs_ball(D.DL_ORIGIN, radius, pr)
        image = {g: D.encode_lamplighter(g) for g in cay}
        injective = len(set(image.values())) == len(image)
        onto = set(image.values()) == set(ball.vertices)
        decoded = all(D.decode_lamplighter(v, p) == g for g, v in image.items())
        adj_bad = 0
        for g, v in image.items():
            want = set(D.neighbors(v, pr))
            got = {D.encode_lamplighter(g * s) for s in gens}
            adj_bad += want != got
    iso = Check(f"lamplighter bijection Z_{p} wr Z r={radius}",
                injective and onto and decoded and adj_bad == 0,
                {"elements": len(cay), "ball_size": len(ball.vertices), "injective": injective,
                 "onto": onto, "inverse": decoded, "adjacency_mismatches": adj_bad},
                tm.seconds)

    def nbrs(g):
        return [g * s for s in gens]

    with _Timer() as tm:
        bad = []
        for _ in range(samples):
            g = _random_lamp(p, rng)
            wl = D.bfs_distance(Wr.LampEl.identity(p), g, nbrs, limit=40)
            f = D.formula_dist(D.DL_ORIGIN, D.encode_lamplighter(g))
            if wl != f:
                bad.append((str(g), wl, f))
    wl_check = Check("lamplighter word length = DL distance", not bad,
                     {"samples": samples, "mismatches": bad[:5]}, tm.seconds)
    return [iso, wl_check]


# ------------------------------------------------------------- tree core

def _adjacency(ball: D.Ball) -> csr_matrix:
    rows, cols = [], []
    for i, j in ball.edges:
        rows += [i, j]
        cols += [j, i]
    n = len(ball.vertices)
    return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))


def suite_tree(p: int = 3, radius: int = 6, ultra_radius: int = 5) -> list[Check]:
    nbrs = lambda v: T.tree_neighbors(v, p)
    out = []
    with _Timer() as tm:
        ball = D.bfs_generic(T.ORIGIN, radius, nbrs)
        # balls in a tree are convex, so graph distance inside the ball is exact
        oracle = shortest_path(_adjacency(ball), unweighted=True, directed=False)
        verts = ball.vertices
        formula = np.array([[T.tree_distance(a, b) for b in verts] for a in verts])
        mism = int((formula != oracle).sum())
    out.append(Check(f"tree distance T_{p} r={radius}", mism == 0,
                     {"ball_size": len(verts), "mismatches": mism}, tm.seconds))

    with _Timer() as tm:
        bad = [str(x) for x in verts for o in (T.ORIGIN, verts[-1])
               if T.busemann_limit_check(x, o) != x.level - o.level]
    out.append(Check("busemann limit", not bad, {"mismatches": bad[:5]}, tm.seconds))

    with _Timer() as tm:
        small = [v for v in verts if ball.dist[v] <= ultra_radius]
        n = len(small)
        rho = np.array([[T.ultrametric(a, b, T.ORIGIN) for b in small] for a in small])
        viol = 0
        for j in range(n):
            # rho[i,k] <= max(rho[i,j], rho[j,k]) for every i, k
            bound = np.maximum(rho[:, j][:, None], rho[j, :][None, :])
            viol += int((rho > bound + 1e-15).sum())
    out.append(Check(f"ultrametric triples r={ultra_radius}", viol == 0,
                     {"points": n, "triples": n ** 3, "violations": viol}, tm.seconds))
    return out


# ------------------------------------------------------------------ K_pq

def suite_kpq(params=((2, 2), (2, 3), (3, 2), (3, 4))) -> list[Check]:
    out = []
    for p, q in params:
        w = D.kpq_witness(D.DL_ORIGIN, D.DlParams(p, q))
        ok = (len(w.A) == q and len(w.B) == p and w.complete and w.b_is_neighbourhood
              and w.edge_count == p * q)
        out.append(Check(f"K_{{{p},{q}}} witness DL({p},{q})", ok,
                         {"A": [str(v) for v in w.A], "B": [str(v) for v in w.B],
                          "complete": w.complete, "b_is_neighbourhood": w.b_is_neighbourhood}))
    return out


# ----------------------------------------------------------- grandmother

def suite_grandmother(p: int = 2, radius: int = 4) -> list[Check]:
    gm = lambda v: T.grandmother_neighbors(v, p)
    tr = lambda v: T.tree_neighbors(v, p)
    swap = T.SubtreeSwap(T.ORIGIN, 0, 1)
    with _Timer() as tm:
        ball = D.bfs_generic(T.ORIGIN, radius, gm)
        verts = ball.vertices
        img = {v: T.apply_swap(swap, v) for v in verts}
        onto = set(img.values()) == set(verts)
        tree_bad = sum({T.apply_swap(swap, u) for u in tr(v)} != set(tr(img[v])) for v in verts)
        gm_bad = sum({T.apply_swap(swap, u) for u in gm(v)} != set(gm(img[v])) for v in verts)
        moved = sum(img[v] != v for v in verts)
        fixes = img[T.ORIGIN] == T.ORIGIN
        kids = T.successors(T.ORIGIN, p)
        swaps = img[kids[0]] == kids[1] and img[kids[1]] == kids[0]
    ok = onto and tree_bad == 0 and gm_bad == 0 and fixes and swaps and moved > 0
    return [Check(f"grandmother swap p={p} r={radius}", ok,
                  {"ball_size": len(verts), "bijective": onto, "tree_edge_mismatches": tree_bad,
                   "grandmother_edge_mismatches": gm_bad, "fixes_apex": fixes,
                   "swaps_successors": swaps, "moved": moved}, tm.seconds)]


# ------------------------------------------------------------ hyperbolic

def _random_h(rng: np.random.Generator) -> H.HPoint:
    return H.HPoint(float(rng.uniform(-5, 5)), float(math.exp(rng.uniform(-3, 3))))


def suite_hyperbolic(samples: int = 10_000, seed: int = DEFAULT_SEED) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    d = H.dist_h(H.HPoint(0.0, 1.0), H.HPoint(0.0, math.e))
    out.append(Check("d(i, e i) = 1", abs(d - 1.0) <= 1e-12, {"value": d}))
    worst = 0.0
    for _ in range(samples):
        a, b = _random_h(rng), _random_h(rng)
        worst = max(worst, abs(H.dist_h(a, b) - H.dist_h_log(a, b)))
    out.append(Check("log form = arccosh form", worst <= 1e-12, {"max_gap": worst, "pairs": samples}))
    worst = 0.0
    for q in (2.0, 3.0):
        for _ in range(samples // 10):
            g = H.AffHEl(int(rng.integers(-3, 4)), float(rng.uniform(-5, 5)))
            a, b = _random_h(rng), _random_h(rng)
            gap = abs(H.dist_h(H.affh_apply(g, a, q), H.affh_apply(g, b, q)) - H.dist_h(a, b))
            worst = max(worst, gap)
    out.append(Check("Aff(H_q) isometry", worst <= 1e-10, {"max_gap": worst}))
    return out


# ------------------------------------------------------------- treebolic

def random_tree_point(rng: random.Random, p: int, levels: int = 2, depth: int = 3) -> T.TreePoint:
    level = rng.randint(-levels, levels)
    digits = tuple(rng.randrange(p) for _ in range(rng.randint(0, depth)))
    up = rng.choice([0.0, rng.random()])
    return T.TreePoint(T.TreeVertex(level, digits), up)


def random_ht_point(rng: random.Random, pr: HT.HtParams, span: float = 2.0) -> HT.HtPoint:
    return HT.HtPoint.at(random_tree_point(rng, pr.p), rng.uniform(-span, span), pr)


def grid_minimum(z1: H.HPoint, z2: H.HPoint, y: float, n: int = 10_000) -> float:
    xs = np.linspace(min(z1.x, z2.x), max(z1.x, z2.x), n)
    return float(HT.crossing_cost(z1, z2, y)(xs).min())


def suite_treebolic(instances: int = 100, triples: int = 1000, samples: int = 1000,
                    seed: int = DEFAULT_SEED, pr: HT.HtParams | None = None) -> list[Check]:
    pr = pr or HT.HtParams(2, 2.0)
    rng = random.Random(seed)
    out = []
    with _Timer() as tm:
        # x-span 1 keeps the 10^4 grid's own resolution error below 1e-6
        worst = above = fine_worst = 0.0
        found = 0
        while found < instances:
            a, b = random_ht_point(rng, pr, 1.0), random_ht_point(rng, pr, 1.0)
            if HT.same_sheet(a.w, b.w):
                continue
            found += 1
            y = pr.q ** T.confluent_ancestor(a.w.vertex, b.w.vertex).level
            d = HT.ht_dist(a, b, pr)
            g = grid_minimum(a.z, b.z, y)
            worst = max(worst, abs(d - g))
            above = max(above, d - g)
            fine_worst = max(fine_worst, abs(d - grid_minimum(a.z, b.z, y, 1_000_000)))
    out.append(Check("case-2 minimiser vs 10^4 grid", worst <= 1e-6 and above <= 1e-12,
                     {"instances": instances, "max_gap": worst, "max_above_grid": above,
                      "max_gap_10^6_grid": fine_worst}, tm.seconds))

    with _Timer() as tm:
        worst = -math.inf
        for _ in range(triples):
            a, b, c = (random_ht_point(rng, pr) for _ in range(3))
            slack = HT.ht_dist(a, c, pr) - HT.ht_dist(a, b, pr) - HT.ht_dist(b, c, pr)
            worst = max(worst, slack)
    out.append(Check("treebolic triangle inequality", worst <= 1e-8,
                     {"triples": triples, "max_excess": worst}, tm.seconds))

    with _Timer() as tm:
        log_fail = lit_fail = 0
        for _ in range(samples):
            a, b = random_ht_point(rng, pr), random_ht_point(rng, pr)
            r = HT.bound_check(a, b, pr, tol=1e-9)
            log_fail += not r.log_ok
            lit_fail += not r.literal_ok
    out.append(Check("two-sided bound, log reading", log_fail == 0,
                     {"samples": samples, "failures": log_fail, "delta": HT.DELTA}, tm.seconds))
    # informational: the literal reading is expected to fail on some samples
    out.append(Check("two-sided bound, literal reading (report only)", True,
                     {"samples": samples, "failures": lit_fail, "literal_holds": lit_fail == 0}))
    return out


# ------------------------------------------------------------------- Sol

def _close(u: S.SolEl, v: S.SolEl, tol: float) -> bool:
    return all(abs(s - t) <= tol * max(1.0, abs(s), abs(t))
               for s, t in ((u.a, v.a), (u.b, v.b), (u.c, v.c)))


def suite_sol(pairs: int = 100, seed: int = DEFAULT_SEED, budget: float = 120.0,
              params=((1.0, 1.0), (1.0, 2.0))) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    t0 = time.perf_counter()
    for p, q in params:
        pr = S.SolParams(p, q)
        rand = lambda: S.SolEl(*map(float, rng.uniform(-2, 2, 3)))
        ax_bad = 0
        hom_worst = 0.0
        for _ in range(1000):
            g, h, k = rand(), rand(), rand()
            ax_bad += not _close(S.sol_mul(S.sol_mul(g, h, pr), k, pr),
                                 S.sol_mul(g, S.sol_mul(h, k, pr), pr), 1e-14)
            ax_bad += not _close(S.sol_mul(g, S.sol_inverse(g, pr), pr), S.IDENTITY, 1e-14)
            ax_bad += not _close(S.sol_mul(S.IDENTITY, g, pr), g, 0.0)
            m = S.sol_matrix(S.sol_mul(g, h, pr), pr)
            prod = S.sol_matrix(g, pr) @ S.sol_matrix(h, pr)
            gap = float(np.max(np.abs(m - prod) / np.maximum(1.0, np.abs(m))))
            hom_worst = max(hom_worst, gap)
        out.append(Check(f"Sol({p:g},{q:g}) group axioms", ax_bad == 0, {"failures": ax_bad}))
        out.append(Check(f"Sol({p:g},{q:g}) matrix homomorphism", hom_worst <= 1e-12,
                         {"max_gap": hom_worst}))
        with _Timer() as tm:
            bad, conv, worst_gap = [], 0, 0.0
            for _ in range(pairs):
                a, b = rand(), rand()
                r = S.dist_upper(a, b, pr)
                conv += r.converged
                if not (r.lower - 1e-6 <= r.value <= r.upper + 1e-6):
                    bad.append((a.a, a.b, a.c, b.a, b.b, b.c, r.lower, r.value, r.upper))
                worst_gap = max(worst_gap, r.value - r.lower)
        out.append(Check(f"Sol({p:g},{q:g}) sandwich", not bad,
                         {"pairs": pairs, "violations": bad[:5], "optimiser_converged": conv,
                          "max_value_minus_lower": worst_gap}, tm.seconds))
    total = time.perf_counter() - t0
    out.append(Check("Sol runtime", total < budget, {"seconds": total, "budget": budget}))
    return out


# --------------------------------------------------------------- lattice

def suite_lattice(A: Lt.IntMat2 | None = None, triples: int = 100,
                  seed: int = DEFAULT_SEED) -> list[Check]:
    A = A or Lt.IntMat2(2, 1, 1, 1)
    rng = random.Random(seed)
    E = Lt.eigen_data(A)
    out = []
    lam_gap = abs(E.lam - (3 + math.sqrt(5)) / 2) if (A.a, A.b, A.c, A.d) == (2, 1, 1, 1) else 0.0
    out.append(Check("eigenvalue", lam_gap <= 1e-12, {"lambda": E.lam, "gap": lam_gap}))
    P = E.basis
    resid = float(np.max(np.abs(np.linalg.solve(P, A.as_array() @ P) - np.diag([E.lam, 1 / E.lam]))))
    out.append(Check("diagonalisation residual", resid < 1e-10,
                     {"residual": resid, "det": float(np.linalg.det(P))}))
    rand = lambda: Lt.SdEl(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-3, 3))
    conj_worst = hom_worst = 0.0
    for _ in range(triples):
        g, h, k = rand(), rand(), rand()
        c = Lt.conjugate(g, A, E)
        m = S.sol_matrix(Lt.embed(g, E), E.params)
        conj_worst = max(conj_worst, float(np.max(np.abs(c - m))))
        lhs = Lt.embed(Lt.sd_mul(Lt.sd_mul(g, h, A), k, A), E)
        rhs = S.sol_mul(S.sol_mul(Lt.embed(g, E), Lt.embed(h, E), E.params), Lt.embed(k, E), E.params)
        hom_worst = max(hom_worst, abs(lhs.a - rhs.a), abs(lhs.b - rhs.b), abs(lhs.c - rhs.c))
    out.append(Check("conjugation identity", conj_worst < 1e-9, {"max_gap": conj_worst}))
    out.append(Check("embedding homomorphism", hom_worst < 1e-9,
                     {"max_gap": hom_worst, "triples": triples}))
    return out


def suite_bs(ps=(2, 3, 5)) -> list[Check]:
    return [Check(f"BS({p}) relation a b = b^{p} a", Lt.bs_relation_check(p)) for p in ps]


# ----------------------------------------------------------------- walks

def suite_walks(steps: int = 10_000, trials: int = 200, budget: float = 90.0) -> list[Check]:
    out = []
    with _Timer() as tm:
        s22 = W.srw_run(W.WalkConfig(2, 2, steps, trials, W.SEED_DL22))
        s23 = W.srw_run(W.WalkConfig(2, 3, steps, trials, W.SEED_DL23))
        lamp = W.lamplighter_walk(W.WalkConfig(2, 2, steps, trials, W.SEED_LAMPLIGHTER, True))
        agree = W.agreement(lamp, s22)
    out.append(Check("DL(2,2) speed < 0.05", s22.speed < 0.05, {"speed": s22.speed}))
    out.append(Check("DL(2,3) speed > 0.05", s23.speed > 0.05, {"speed": s23.speed}))
    out.append(Check("lamplighter vs DL(2,2) agreement", all(agree),
                     {"checkpoints": s22.checkpoints, "lamplighter": lamp.mean_distance,
                      "dl": s22.mean_distance, "agree": agree}))
    out.append(Check("walk runtime", tm.seconds < budget, {"seconds": tm.seconds, "budget": budget},
                     tm.seconds))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "bertacchi": suite_bertacchi,
    "lamplighter-iso": suite_lamplighter_iso,
    "tree": suite_tree,
    "kpq": suite_kpq,
    "grandmother": suite_grandmother,
    "hyperbolic": suite_hyperbolic,
    "treebolic-bounds": suite_treebolic,
    "sol-sandwich": suite_sol,
    "lattice": lambda: suite_lattice() + suite_bs(),
    "walks": suite_walks,
}


class UnknownSuite(KeyError):
    pass


def run(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return fn()
