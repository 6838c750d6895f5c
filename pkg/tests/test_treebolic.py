import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from horocyclic import hyperbolic as H
from horocyclic import tree as T
from horocyclic import treebolic as HT
from horocyclic import verify as Vf
from horocyclic import wreath as Wr
from horocyclic.tree import TreeVertex as V

PR = HT.HtParams(2, 2.0)


def pt(v, x, up=0.0, pr=PR):
    return HT.HtPoint.at(T.TreePoint(v, up), x, pr)


def test_params_and_incidence():
    with pytest.raises(ValueError):
        HT.HtParams(2, 1.0)
    with pytest.raises(ValueError):
        HT.HtParams(1, 2.0)
    a = pt(V(1, (1,)), 0.3, 0.5)
    assert a.z.y == pytest.approx(2.0 ** 0.5)
    a.check(PR)
    with pytest.raises(HT.IncidenceViolation):
        HT.HtPoint(T.TreePoint(V(1)), H.HPoint(0.0, 1.0)).check(PR)


def test_same_sheet_examples():
    v = V(0, (1,))
    assert HT.same_sheet(T.TreePoint(v), T.TreePoint(v))
    assert HT.same_sheet(T.TreePoint(v), T.TreePoint(T.predecessor(v)))
    a, b = T.successors(v, 2)
    assert not HT.same_sheet(T.TreePoint(a), T.TreePoint(b))
    assert not HT.same_sheet(T.TreePoint(a, 0.5), T.TreePoint(b, 0.5))


def test_same_sheet_distance_is_hyperbolic():
    a, b = pt(V(0), -1.0), pt(V(2), 3.0)
    assert HT.ht_dist(a, b, PR) == H.dist_h(a.z, b.z)


def test_symmetric_crossing_example():
    a = pt(V(1), -1.0)
    b = pt(V(1, (1,)), 1.0)
    assert a.z == H.HPoint(-1.0, 2.0)
    x, val = HT.crossing_minimum(a.z, b.z, 1.0)
    assert abs(x) < 1e-8
    expected = 2 * H.dist_h(H.HPoint(-1.0, 2.0), H.HPoint(0.0, 1.0))
    assert val == pytest.approx(expected, abs=1e-12)
    assert HT.ht_dist(a, b, PR) == pytest.approx(expected, abs=1e-12)
    # dense grid confirms the symmetric minimiser
    xs = np.linspace(-1, 1, 200001)
    assert abs(xs[np.argmin(HT.crossing_cost(a.z, b.z, 1.0)(xs))]) < 1e-4
    # frozen value
    assert expected == pytest.approx(1.9248473002384139, abs=1e-12)


def test_crossing_below_a_single_point():
    # both legs start at the same point, so the best crossing is straight below
    z = H.HPoint(0.0, 4.0)
    x, _ = HT.crossing_minimum(z, z, 1.0)
    assert abs(x) < 1e-7


def test_golden_section():
    assert HT.golden_section(lambda t: (t - 0.3) ** 2, -1, 1) == pytest.approx(0.3, abs=1e-8)


def _rand_pair(seed):
    rng = random.Random(seed)
    return Vf.random_ht_point(rng, PR), Vf.random_ht_point(rng, PR)


@given(st.integers(0, 10**9))
def test_symmetry(seed):
    a, b = _rand_pair(seed)
    assert HT.ht_dist(a, b, PR) == pytest.approx(HT.ht_dist(b, a, PR), abs=1e-9)


@given(st.integers(0, 10**9))
def test_dominates_hyperbolic_distance(seed):
    # the HT distance is at least the distance of the plane projection
    a, b = _rand_pair(seed)
    assert HT.ht_dist(a, b, PR) >= H.dist_h(a.z, b.z) - 1e-9


@given(st.integers(0, 10**9))
def test_triangle(seed):
    rng = random.Random(seed)
    a, b, c = (Vf.random_ht_point(rng, PR) for _ in range(3))
    assert HT.ht_dist(a, c, PR) <= HT.ht_dist(a, b, PR) + HT.ht_dist(b, c, PR) + 1e-8


def test_bound_check_examples():
    a = pt(V(0, (1,)), 0.5, 0.3)
    r = HT.bound_check(a, a, PR)
    assert r.distance == 0 and r.middle_log == 0 and r.log_ok and r.literal_ok
    assert HT.DELTA == pytest.approx(0.8814, abs=1e-4)


def test_log_reading_holds_literal_does_not():
    rng = random.Random(11)
    log_ok = lit_ok = 0
    for _ in range(300):
        a, b = Vf.random_ht_point(rng, PR), Vf.random_ht_point(rng, PR)
        r = HT.bound_check(a, b, PR, tol=1e-8)
        log_ok += r.log_ok
        lit_ok += r.literal_ok
    assert log_ok == 300
    assert lit_ok < 300


def _random_b(rng, pr):
    k = rng.randint(-2, 2)
    eta = Wr.Config.from_map(pr.p, {i: rng.randrange(pr.p) for i in range(-3, 4)})
    return HT.BEl(Wr.LampEl(eta, k), H.AffHEl(k, rng.uniform(-3, 3)))


def test_isometry_group():
    rng = random.Random(2)
    ident = HT.BEl(Wr.LampEl.identity(2), H.AffHEl(0, 0.0))
    for _ in range(200):
        g = _random_b(rng, PR)
        a, b = Vf.random_ht_point(rng, PR), Vf.random_ht_point(rng, PR)
        ga, gb = HT.b_act(g, a, PR), HT.b_act(g, b, PR)
        assert ga.w.height - a.w.height == pytest.approx(g.g1.pos)
        assert math.log(ga.z.y / a.z.y, 2.0) == pytest.approx(g.g1.pos)
        assert HT.ht_dist(ga, gb, PR) == pytest.approx(HT.ht_dist(a, b, PR), abs=1e-8)
        assert HT.b_act(ident, a, PR) == a
        h = _random_b(rng, PR)
        gh = HT.b_compose(g, h, PR)
        lhs, rhs = HT.b_act(gh, a, PR), HT.b_act(g, HT.b_act(h, a, PR), PR)
        assert lhs.w == rhs.w
        assert lhs.z.x == pytest.approx(rhs.z.x, abs=1e-9)
        assert HT.b_modular(gh, PR) == pytest.approx(HT.b_modular(g, PR) * HT.b_modular(h, PR))


def test_modular():
    assert HT.b_modular(HT.BEl(Wr.LampEl.identity(2), H.AffHEl(0)), PR) == 1.0
    g = HT.BEl(Wr.LampEl(Wr.Config(2), 3), H.AffHEl(3))
    assert HT.b_modular(g, PR) == 1.0
    pr3 = HT.HtParams(2, 3.0)
    assert HT.b_modular(g, pr3) == pytest.approx((2 / 3) ** 3)
    with pytest.raises(ValueError):
        HT.BEl(Wr.LampEl(Wr.Config(2), 1), H.AffHEl(2))


def test_case_two_matches_fine_grid():
    rng = random.Random(4)
    for _ in range(30):
        a, b = Vf.random_ht_point(rng, PR), Vf.random_ht_point(rng, PR)
        if HT.same_sheet(a.w, b.w):
            continue
        y = PR.q ** T.confluent_ancestor(a.w.vertex, b.w.vertex).level
        assert HT.ht_dist(a, b, PR) == pytest.approx(Vf.grid_minimum(a.z, b.z, y, 400_001), abs=1e-8)
