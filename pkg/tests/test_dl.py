import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from horocyclic import dl as D
from horocyclic import tree as T
from horocyclic import wreath as Wr
from horocyclic.dl import DlParams, DlVertex
from horocyclic.tree import TreeVertex as V

from strategies import lamp_elements

P22, P23 = DlParams(2, 2), DlParams(2, 3)


def test_vertex_validation():
    with pytest.raises(ValueError):
        DlVertex(V(1), V(0))
    assert DlVertex.parse("1:1,-1:") == DlVertex(V(1, (1,)), V(-1))
    with pytest.raises(ValueError):
        DlParams(1, 3)


def test_neighbour_counts_and_shape():
    ball = D.bfs_ball(D.DL_ORIGIN, 3, P23)
    for v in ball.vertices:
        assert len(set(D.neighbors(v, P23))) == 5
    down = D.neighbors(D.DL_ORIGIN, P23)[2:]
    assert all(u.x1 == T.predecessor(D.DL_ORIGIN.x1) for u in down)
    up = D.neighbors(D.DL_ORIGIN, P23)[:2]
    assert all(u.x2 == T.predecessor(D.DL_ORIGIN.x2) for u in up)


@pytest.mark.parametrize("pr", [P22, P23, DlParams(3, 2)])
def test_neighbour_symmetry_radius4(pr):
    ball = D.bfs_ball(D.DL_ORIGIN, 4, pr)
    for v in ball.vertices:
        for u in D.neighbors(v, pr):
            assert v in D.neighbors(u, pr)


def test_ball_sizes():
    assert len(D.bfs_ball(D.DL_ORIGIN, 0, P22).vertices) == 1
    b1 = D.bfs_ball(D.DL_ORIGIN, 1, P22)
    assert len(b1.vertices) == 5 and len(b1.edges) == 4
    sizes = [len(D.bfs_ball(D.DL_ORIGIN, r, P23).vertices) for r in range(6)]
    assert sizes == sorted(sizes)
    # frozen from enumeration
    assert len(D.bfs_ball(D.DL_ORIGIN, 5, P22).vertices) == 208
    assert len(D.bfs_ball(D.DL_ORIGIN, 5, P23).vertices) == 648
    with pytest.raises(D.RadiusTooLarge):
        D.bfs_ball(D.DL_ORIGIN, 9, P22)


def test_ball_is_deterministic():
    a = D.bfs_ball(D.DL_ORIGIN, 3, P23)
    b = D.bfs_ball(D.DL_ORIGIN, 3, P23)
    assert a.vertices == b.vertices and a.edges == b.edges


def test_formula_examples():
    o = D.DL_ORIGIN
    assert D.formula_dist(o, o) == 0
    for u in D.neighbors(o, P23):
        assert D.formula_dist(o, u) == 1
    sib = DlVertex(V(0), V(0, (1,)))
    assert D.formula_dist(o, sib) == 2
    assert D.bfs_distance(o, sib, lambda v: D.neighbors(v, P22)) == 2


def test_formula_vs_bfs_random_pairs():
    rng = random.Random(5)
    for pr in (P22, P23, DlParams(3, 2)):
        ball = D.bfs_ball(D.DL_ORIGIN, 4, pr)
        for _ in range(100):
            u, v = rng.choice(ball.vertices), rng.choice(ball.vertices)
            assert D.formula_dist(u, v) == D.bfs_distance(u, v, lambda w: D.neighbors(w, pr))


def test_printed_variant_differs():
    ball = D.bfs_ball(D.DL_ORIGIN, 3, P22)
    bad = [v for v in ball.vertices if D.printed_dist(D.DL_ORIGIN, v) != ball.dist[v]]
    assert bad


@pytest.mark.parametrize("p,q", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_kpq_witness(p, q):
    w = D.kpq_witness(D.DL_ORIGIN, DlParams(p, q))
    assert len(w.A) == q and len(w.B) == p
    assert w.ok and w.edge_count == p * q
    assert D.DL_ORIGIN in w.A


def test_kpq_witness_elsewhere():
    o = DlVertex(V(2, (1, 0)), V(-2, (1,)))
    w = D.kpq_witness(o, P23)
    assert w.ok and o in w.A


def _a_elements(pr: DlParams):
    return st.tuples(lamp_elements(pr.p, 3), lamp_elements(pr.q, 3)).map(
        lambda t: D.AEl(t[0], Wr.LampEl(t[1].eta, -t[0].pos)))


@given(_a_elements(P23), st.integers(0, 10**6))
def test_action_preserves_adjacency(g, seed):
    rng = random.Random(seed)
    v = D.DL_ORIGIN
    for _ in range(rng.randint(0, 6)):
        v = rng.choice(D.neighbors(v, P23))
    u = rng.choice(D.neighbors(v, P23))
    gv, gu = D.a_act(g, v), D.a_act(g, u)
    assert gu in D.neighbors(gv, P23)
    assert gv.level - v.level == g.g1.pos


def test_identity_and_transporters():
    e = D.a_identity(P23)
    ball = D.bfs_ball(D.DL_ORIGIN, 4, P23)
    for v in ball.vertices:
        assert D.a_act(e, v) == v
        t = D.a_transporter(D.DL_ORIGIN, v, P23)
        assert D.a_act(t, D.DL_ORIGIN) == v
    u, v, w = ball.vertices[3], ball.vertices[40], ball.vertices[-1]
    chain = D.a_compose(D.a_transporter(v, w, P23), D.a_transporter(u, v, P23))
    assert D.a_act(chain, u) == w
    assert D.a_act(D.a_transporter(u, u, P23), u) == u


def test_phi_mismatch_rejected():
    with pytest.raises(ValueError):
        D.AEl(Wr.LampEl.identity(2), Wr.LampEl(Wr.Config(3), 1))


@given(_a_elements(P23), _a_elements(P23))
def test_modular_candidate(g, h):
    assert D.modular_candidate(D.a_identity(P23), P23) == 1.0
    gh = D.a_compose(g, h)
    assert D.modular_candidate(gh, P23) == pytest.approx(
        D.modular_candidate(g, P23) * D.modular_candidate(h, P23))


@given(_a_elements(P22))
def test_modular_trivial_when_p_equals_q(g):
    assert D.modular_candidate(g, P22) == 1.0


def test_classify_limit():
    down = [DlVertex(V(n), V(-n)) for n in range(20)]
    assert D.classify_limit(down) == D.DlBoundaryPoint(T.ZERO_END, T.TOP)
    up = [DlVertex(V(-n), V(n)) for n in range(20)]
    assert D.classify_limit(up) == D.DlBoundaryPoint(T.TOP, T.ZERO_END)
    # bouncing between two levels stays undecided
    bounce = [D.DL_ORIGIN, DlVertex(V(1), V(-1))] * 10
    assert D.classify_limit(bounce) is None
    const = [DlVertex(V(1, (1,)), V(-1))] * 6
    assert D.classify_limit(const) is None
    with pytest.raises(ValueError):
        D.classify_limit(down[:1])


def test_classify_limit_horizon():
    seq = [DlVertex(V(n), V(-n)) for n in range(10)] + [D.DL_ORIGIN] * 10
    assert D.classify_limit(seq, horizon=10) == D.DlBoundaryPoint(T.ZERO_END, T.TOP)


@given(lamp_elements(2, 6))
def test_lamplighter_encoding_round_trip(g):
    v = D.encode_lamplighter(g)
    assert v.level == g.pos
    assert D.decode_lamplighter(v, 2) == g


@given(lamp_elements(3, 4))
def test_lamplighter_encoding_adjacency(g):
    pr = DlParams(3, 3)
    v = D.encode_lamplighter(g)
    assert {D.encode_lamplighter(g * s) for s in Wr.generators(3)} == set(D.neighbors(v, pr))


def test_generic_bfs_and_bidirectional_limit():
    ball = D.bfs_generic(0, 3, lambda n: [n - 1, n + 1])
    assert ball.vertices == [-3, -2, -1, 0, 1, 2, 3] and len(ball.edges) == 6
    with pytest.raises(RuntimeError):
        D.bfs_distance(0, 100, lambda n: [n - 1, n + 1], limit=10)
    with pytest.raises(ValueError):
        D.bfs_generic(0, -1, lambda n: [])
