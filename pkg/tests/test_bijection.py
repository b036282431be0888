from collections import Counter

import pytest
from hypothesis import given, strategies as st

from wforms.bijection import (
    E1,
    E2,
    abstract_block,
    aprime_of,
    exceptional_pairs,
    filtration_level,
    filtration_member,
    in_DT,
    in_RT,
    low_aprime_rows,
    low_aprime_table,
    marker_monomial,
    markers,
    multiplier,
    param_rect_u,
    param_rect_u_inverse,
    param_rect_v,
    param_rect_v_inverse,
    param_tri_u,
    param_tri_u_inverse,
    param_tri_v,
    param_tri_v_inverse,
    phi,
    phi_rect,
    phi_tri,
    phihat,
    phihat_label_map,
    prec_compare,
    prec_key,
    presentation_order,
    q_lambda,
    special_block,
    special_blocks,
    table_rows,
)
from wforms.core_arith import eta, lambda_rho
from wforms.monomials import (
    DomainError,
    Region,
    WeightConstants,
    classify_region,
    enumerate_basis,
    in_Rprime,
    nonneg,
    t_invariant_M,
    t_invariant_R,
    vadd,
    vsub,
    weight_M,
    weight_R,
)


def slices(m_hi):
    return [(m, w) for m in range(2, m_hi + 1) for w in range(6 * m - 8)]


def block_slices(m_hi):
    return [(m, w) for m, w in slices(m_hi) if special_blocks(m, w)]


mw = st.integers(2, 9).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 6 * m - 9)))


# -- worked example -------------------------------------------------------------


def test_small_worked_example():
    assert phi((0, 4, 0), 3) == (0, 4, 3)
    assert phi((1, 2, 1), 3) == (1, 5, 2)
    assert phi((0, 1, 2), 3) == (1, 2, 4)


def test_larger_worked_example_multipliers():
    got = Counter(multiplier(u, 4) for u in enumerate_basis(4, 14, "Rprime"))
    assert got == Counter({(0, 0, 4): 2, (0, 3, 2): 2, (1, 1, 3): 1})


# -- bijection properties -----------------------------------------------------------


@pytest.mark.parametrize("m,w", slices(8))
def test_phi_is_divisible_bijection(m, w):
    dom = enumerate_basis(m, w, "Rprime")
    img = [phi(u, m) for u in dom]
    assert sorted(img) == enumerate_basis(m, w, "Mprime")
    for u, v in zip(dom, img):
        assert nonneg(vsub(v, u))
        assert weight_M(v, m) == weight_R(u)
        assert t_invariant_M(v, m) == t_invariant_R(u)
        assert classify_region(v, m, "M") == classify_region(u, m)


@given(mw)
def test_multipliers_have_weight_3m(pair):
    m, w = pair
    for u in enumerate_basis(m, w, "Rprime"):
        q = multiplier(u, m)
        assert weight_R(q) == 3 * m


# -- rectangular parametrisation and order --------------------------------------------


@given(mw)
def test_rect_params_round_trip(pair):
    m, w = pair
    for u in enumerate_basis(m, w, "Rprime"):
        if classify_region(u, m) is Region.RECTANGULAR:
            assert param_rect_u(m, *param_rect_u_inverse(u)) == u
    for v in enumerate_basis(m, w, "Mprime"):
        if classify_region(v, m, "M") is Region.RECTANGULAR:
            assert param_rect_v(m, *param_rect_v_inverse(v, m)) == v


def test_rect_param_domain_errors():
    with pytest.raises(DomainError):
        param_rect_u(3, 8, 0, 2)  # w + a > 6m-9
    with pytest.raises(DomainError):
        param_rect_u(3, 2, 1, 0)  # w - a - 6t < 0
    with pytest.raises(DomainError):
        param_rect_v(3, 8, 0, 5)
    with pytest.raises(DomainError):
        param_rect_u(3, -1, 0, 0)


@pytest.mark.parametrize("m,w", slices(7))
def test_phi_rect_adds_q_lambda(m, w):
    delta = WeightConstants(m, w).delta
    for u in enumerate_basis(m, w, "Rprime"):
        if classify_region(u, m) is Region.RECTANGULAR:
            lam, _ = lambda_rho(delta - u[0])
            assert phi_rect(u, m) == vadd(u, q_lambda(m, lam))
            assert phi_rect(u, m)[0] == u[0]


def test_phi_rect_rejects_triangular():
    with pytest.raises(DomainError):
        phi_rect((0, 1, 2), 3)


@pytest.mark.parametrize("m,w", [(m, w) for m, w in slices(7) if w >= 3 * (m - 1)])
def test_phi_rect_preserves_order(m, w):
    rect = [u for u in enumerate_basis(m, w, "Rprime") if classify_region(u, m) is Region.RECTANGULAR]
    by_u = sorted(rect, key=lambda u: prec_key(u, m))
    by_v = sorted(rect, key=lambda u: prec_key(phi(u, m), m, "M"))
    assert by_u == by_v
    assert len({prec_key(u, m) for u in rect}) == len(rect)


def test_prec_compare():
    assert prec_compare((1, 2, 1), (0, 4, 0), 3) == 1
    assert prec_compare((0, 4, 0), (1, 2, 1), 3) == -1
    assert prec_compare((0, 4, 0), (0, 4, 0), 3) == 0
    with pytest.raises(DomainError):
        prec_compare((0, 4, 0), (0, 0, 0), 3)


# -- markers ------------------------------------------------------------------------------


@pytest.mark.parametrize("m,w", [(m, w) for m, w in slices(8) if w >= 3 * (m - 1)])
def test_markers(m, w):
    wc = WeightConstants(m, w)
    rect = [u for u in enumerate_basis(m, w, "Rprime") if classify_region(u, m) is Region.RECTANGULAR]
    ms = markers(m, w)
    assert len(ms) == wc.delta // 2 + 1
    for r, u in enumerate(ms):
        assert u == (wc.delta - 2 * r, r + eta(w), 2 * wc.tau + 1)
        lam, rho = lambda_rho(wc.delta - u[0])
        assert lam == (r + 3) // 3
        assert rho % 2 == 0 and (rho - 2 * r) % 6 == 0
        below = [x for x in rect if x[1] <= r + eta(w)]
        assert max(below, key=lambda x: prec_key(x, m)) == u
        for x in rect:
            if prec_key(x, m) > prec_key(u, m):
                assert x[1] >= r + eta(w) + 1


def test_marker_domain():
    with pytest.raises(DomainError):
        marker_monomial(3, 5, 0)
    with pytest.raises(DomainError):
        marker_monomial(3, 8, 1)
    assert markers(3, 5) == []


# -- triangular region -----------------------------------------------------------------


@given(mw)
def test_tri_params_round_trip(pair):
    m, w = pair
    for u in enumerate_basis(m, w, "Rprime"):
        if classify_region(u, m) is Region.TRIANGULAR:
            p = param_tri_u_inverse(u)
            assert in_DT(m, *p)
            assert param_tri_u(m, *p) == u
    for v in enumerate_basis(m, w, "Mprime"):
        if classify_region(v, m, "M") is Region.TRIANGULAR:
            p = param_tri_v_inverse(v, m)
            assert in_DT(m, *p)
            assert param_tri_v(m, *p) == v


def test_tri_param_domain_errors():
    with pytest.raises(DomainError):
        param_tri_u(3, 8, 5, 0)
    with pytest.raises(DomainError):
        param_tri_v(3, 8, 3, 0)  # t_D = 0 below tau + 1
    assert param_tri_v(3, 8, 1, 0) == (1, 2, 4)


@pytest.mark.parametrize("m", range(2, 10))
def test_exceptional_pairs(m):
    pairs = exceptional_pairs(m)
    for u, v in pairs:
        w = weight_R(u)
        assert w % 3 == 2 and 3 * m - 4 <= w <= 6 * m - 10
        assert in_RT(u, m) and not in_Rprime(u, m)
        assert phi_tri(u, m) == v == vadd(u, (0, 0, m))


@pytest.mark.parametrize("m,w", slices(9))
def test_aprime_closed_form(m, w):
    for u in enumerate_basis(m, w, "Rprime"):
        if classify_region(u, m) is Region.TRIANGULAR:
            assert aprime_of(u, m) == multiplier(u, m)[0]


def test_aprime_rejects_rectangular():
    with pytest.raises(DomainError):
        aprime_of((0, 4, 0), 3)


# -- special blocks -------------------------------------------------------------------


def test_abstract_block_sizes():
    for tau in range(5):
        B, C = abstract_block(10, 0, tau)
        assert len(B) == len(C) == 2 * tau + 3
        assert all(weight_R(z) == 0 for z in B.values())


@pytest.mark.parametrize("tau", range(5))
def test_phihat_labels(tau):
    for l0 in range(tau + 2):
        lab = phihat_label_map(tau, l0)
        assert sorted(lab) == sorted(abstract_block(10, 0, tau)[0])
        assert sorted(lab.values()) == sorted(abstract_block(10, 0, tau)[1])
        assert lab[(0, l0)] == (1, l0)
    with pytest.raises(DomainError):
        phihat_label_map(tau, tau + 2)


@pytest.mark.parametrize("m,w", block_slices(8))
def test_special_block_translation(m, w):
    wc = WeightConstants(m, w)
    blocks = special_blocks(m, w)
    assert len(blocks) == wc.n_max + 1
    for blk in blocks:
        assert blk.corner == (wc.delta_n(blk.n) - 1, 3 * blk.n - 1 + eta(w), wc.c_w)
        assert len(blk.B) == len(blk.C) == 2 * wc.tau + 3
        assert all(in_Rprime(u, m) for u in blk.B_elems)
        # the corner is the only triangular member
        tri = [u for u in blk.B_elems if classify_region(u, m) is Region.TRIANGULAR]
        assert tri == [blk.corner]
        # phi on the block is phihat_0 translated by the corner
        assert {u: phi(u, m) for u in blk.B_elems} == phihat(m, w, blk.n, 0)
        qs = Counter(multiplier(u, m) for u in blk.B_elems)
        n, qn, qn1 = blk.n, q_lambda(m, blk.n), q_lambda(m, blk.n + 1)
        assert qs == Counter({vadd(qn, E1): 1, qn: wc.tau + 1, qn1: wc.tau + 1})


def test_block_domain_errors():
    with pytest.raises(DomainError):
        special_block(3, 6, 0)
    with pytest.raises(DomainError):
        special_block(3, 8, 1)
    assert special_blocks(3, 5) == []


# -- filtration ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,w", block_slices(8))
def test_phi_maps_H_onto_K(m, w):
    nmax = WeightConstants(m, w).n_max
    R = enumerate_basis(m, w, "Rprime")
    M = enumerate_basis(m, w, "Mprime")
    prev = set()
    for n in range(nmax + 1):
        H = {u for u in R if filtration_member(m, w, n, u)}
        K = {v for v in M if filtration_member(m, w, n, v, "M")}
        assert {phi(u, m) for u in H} == K
        assert prev <= H
        prev = H
    assert prev == set(R)
    assert all(0 <= filtration_level(m, w, u) <= nmax for u in R)


# -- low a' tables --------------------------------------------------------------------------


@pytest.mark.parametrize("m,w", block_slices(8))
def test_closed_form_tables_match_phi(m, w):
    closed = low_aprime_table(m, w)
    assert sorted((r.u, r.q, r.v) for r in closed) == sorted(low_aprime_rows(m, w))
    for r in closed:
        assert phi(r.u, m) == r.v
        assert r.label in ((1, 2, 3, 4) if w % 3 == 2 else (5, 6, 7, 8))


def test_table_row_u1_image():
    # u1 = (d-3, 3n+2, c_w) maps to (d-3, 6n+5, c_w+m-2n-2)
    m, w = 7, 20
    wc = WeightConstants(m, w)
    for r in low_aprime_table(m, w):
        if r.label == 1:
            d = wc.delta_n(r.n)
            assert r.v == (d - 3, 6 * r.n + 5, wc.c_w + m - 2 * r.n - 2)


def test_tables_reject_w0():
    with pytest.raises(DomainError):
        low_aprime_table(7, 18)
    with pytest.raises(DomainError):
        low_aprime_rows(7, 18)


# -- presentation --------------------------------------------------------------------------


@pytest.mark.parametrize("m,w", slices(7))
def test_presentation_is_permutation(m, w):
    order = presentation_order(m, w)
    assert sorted(order) == enumerate_basis(m, w, "Rprime")
    rows = table_rows(m, w)
    assert [tuple(r["u"]) for r in rows] == order
    for r in rows:
        assert [a + b for a, b in zip(r["u"], r["multiplier"])] == r["v"]


def test_presentation_small():
    rows = table_rows(3, 8)
    assert [tuple(r["u"]) for r in rows] == [(0, 4, 0), (1, 2, 1), (0, 1, 2)]
    assert [r["marker"] for r in rows] == [None, 0, None]
    assert [r["block"] for r in rows] == [0, 0, 0]
