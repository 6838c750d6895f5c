import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from horocyclic import lattices as L
from horocyclic import sol as S

A = L.IntMat2(2, 1, 1, 1)
E = L.eigen_data(A)
sd = st.builds(L.SdEl, st.integers(-5, 5), st.integers(-5, 5), st.integers(-3, 3))


def test_intmat():
    with pytest.raises(ValueError):
        L.IntMat2(2, 1, 1, 2)
    assert A.power(3) == A @ A @ A
    assert A.power(-2) @ A.power(2) == L.IntMat2(1, 0, 0, 1)
    assert A.trace == 3


def test_sd_examples():
    assert L.sd_mul(L.SdEl(0, 0, 1), L.SdEl(1, 0, 0), A) == L.SdEl(2, 1, 1)
    e = L.SdEl(0, 0, 0)
    g = L.SdEl(3, -1, 2)
    assert L.sd_mul(e, g, A) == g == L.sd_mul(g, e, A)
    assert L.sd_mul(g, L.sd_inverse(g, A), A) == e


@given(sd, sd, sd)
def test_sd_group(g, h, k):
    assert L.sd_mul(L.sd_mul(g, h, A), k, A) == L.sd_mul(g, L.sd_mul(h, k, A), A)
    np.testing.assert_array_equal(L.sd_matrix(L.sd_mul(g, h, A), A),
                                  L.sd_matrix(g, A) @ L.sd_matrix(h, A))


def test_eigen_data():
    assert abs(E.lam - (3 + math.sqrt(5)) / 2) <= 1e-12
    assert E.p == pytest.approx(math.log((3 + math.sqrt(5)) / 2), abs=1e-15)
    assert np.linalg.det(E.basis) == pytest.approx(1.0, abs=1e-14)
    D = np.linalg.solve(E.basis, A.as_array() @ E.basis)
    assert np.max(np.abs(D - np.diag([E.lam, 1 / E.lam]))) < 1e-10
    with pytest.raises(L.TraceTooSmall):
        L.eigen_data(L.IntMat2(1, 1, 0, 1))


def test_embed_examples():
    assert L.embed(L.SdEl(0, 0, 0), E) == S.SolEl(0.0, 0.0, 0.0)
    g = L.embed(L.SdEl(1, 0, 0), E)
    assert g.a == E.delta and g.b == -E.gamma


@given(sd)
def test_conjugation(g):
    c = L.conjugate(g, A, E)
    assert np.max(np.abs(c - S.sol_matrix(L.embed(g, E), E.params))) < 1e-9


@given(sd, sd, sd)
def test_embed_homomorphism(g, h, k):
    pr = E.params
    lhs = L.embed(L.sd_mul(L.sd_mul(g, h, A), k, A), E)
    rhs = S.sol_mul(S.sol_mul(L.embed(g, E), L.embed(h, E), pr), L.embed(k, E), pr)
    assert max(abs(lhs.a - rhs.a), abs(lhs.b - rhs.b), abs(lhs.c - rhs.c)) < 1e-9


def test_embed_injective_on_grid():
    pts = {tuple(np.round(L.embed(L.SdEl(k, l, m), E).as_array(), 9))
           for k in range(-4, 5) for l in range(-4, 5) for m in range(-4, 5)}
    assert len(pts) == 9 ** 3


@pytest.mark.parametrize("M", [L.IntMat2(3, 1, 2, 1), L.IntMat2(5, 2, 2, 1), L.IntMat2(1, 1, 1, 2)])
def test_other_hyperbolic_matrices(M):
    Em = L.eigen_data(M)
    g, h = L.SdEl(1, -2, 1), L.SdEl(0, 3, -1)
    lhs = L.embed(L.sd_mul(g, h, M), Em)
    rhs = S.sol_mul(L.embed(g, Em), L.embed(h, Em), Em.params)
    assert lhs.as_array() == pytest.approx(rhs.as_array(), abs=1e-9)


def test_bs_examples():
    a, b = L.bs_generators(2)
    ab = L.bs_mul(a, b)
    assert (ab.scale, ab.entry) == (2, 2)
    assert L.bs_mul(L.bs_power(b, 2), a) == ab
    e = L.BsEl(2, 0)
    assert L.bs_mul(e, ab) == ab == L.bs_mul(ab, e)
    for p in (2, 3, 5, 7):
        assert L.bs_relation_check(p)


def test_bs_normal_form():
    assert L.BsEl(3, 0, 9, 2) == L.BsEl(3, 0, 1, 0)
    assert L.BsEl.from_entry(2, 1, Fraction(3, 8)) == L.BsEl(2, 1, 3, 3)
    with pytest.raises(ValueError):
        L.BsEl.from_entry(2, 0, Fraction(1, 3))


@given(st.integers(-3, 3), st.integers(-20, 20), st.integers(0, 3),
       st.integers(-3, 3), st.integers(-20, 20), st.integers(0, 3))
def test_bs_height_additive_and_associative(m1, k1, l1, m2, k2, l2):
    g, h = L.BsEl(3, m1, k1, l1), L.BsEl(3, m2, k2, l2)
    assert L.bs_mul(g, h).m == m1 + m2
    k = L.BsEl(3, 1, 1, 1)
    assert L.bs_mul(L.bs_mul(g, h), k) == L.bs_mul(g, L.bs_mul(h, k))
