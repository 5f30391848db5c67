import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from p2moduli.errors import FieldMismatch, ShapeMismatch
from p2moduli.exactlin import ExactMat, FieldSpec
from p2moduli.kronecker import (
    DimVec2,
    Side,
    Verdict,
    centralizer_dim,
    kron_decompose,
    kron_end_dim,
    kron_ext_dim,
    kron_hom_dim,
    kron_projective,
    kron_sample,
    kron_simple,
    make_kronecker_rep,
    mnf_family_q2,
    preinj_dims,
    preproj_dims,
)
from p2moduli.quivercore import euler_kronecker, gcd_all, tits_form


def test_preproj_examples():
    for u in (2, 3, 5):
        assert preproj_dims(u, 0) == (0, 1)
    assert preproj_dims(2, 3) == (3, 4)
    assert preproj_dims(3, 2) == (3, 8)
    assert preinj_dims(3, 2) == (8, 3)
    with pytest.raises(ValueError):
        preproj_dims(1, 2)


@given(st.integers(2, 6), st.integers(0, 12))
def test_preproj_recursion_is_real_root(u, m):
    lo, hi = preproj_dims(u, m), preproj_dims(u, m + 1)
    assert tits_form(u, lo) == 1
    assert abs(lo.x * hi.y - lo.y * hi.x) == 1
    if m >= 1:
        assert lo.x > 0 and lo.y > 0


def test_decompose_examples():
    d = kron_decompose(1, (2, 3))
    assert d.verdict == Verdict.RIGID
    assert {(tuple(d.dim_low), d.mult_low), (tuple(d.dim_high), d.mult_high)} == {((1, 1), 2), ((0, 1), 1)}

    d = kron_decompose(2, (4, 4))
    assert (d.verdict, d.mnf_type) == (Verdict.MNF_SQUARE, 4)

    d = kron_decompose(2, (3, 5))
    assert d.verdict == Verdict.RIGID
    assert (d.dim_low, d.dim_high, d.mult_low, d.mult_high) == ((1, 2), (2, 3), 1, 1)

    d = kron_decompose(3, (2, 2))
    assert (d.verdict, d.mnf_type) == (Verdict.MNF_SCHUR, 2)

    d = kron_decompose(3, (2, 6))
    assert (d.verdict, d.mnf_type, d.dim_low, d.mult_low) == (Verdict.MNF_TRIVIAL, 2, (1, 3), 2)

    d = kron_decompose(3, (1, 4))
    assert d.verdict == Verdict.RIGID
    assert (d.dim_low, d.dim_high, d.mult_low, d.mult_high) == ((0, 1), (1, 3), 1, 1)


def test_decompose_degenerate_cases():
    assert kron_decompose(3, (0, 0)).mnf_type == 0
    assert kron_decompose(3, (0, 5)).verdict == Verdict.MNF_TRIVIAL
    assert kron_decompose(3, (0, 5)).mnf_type == 5
    assert kron_decompose(0, (4, 0)).mnf_type == 4
    d = kron_decompose(0, (2, 3))
    assert d.verdict == Verdict.RIGID and d.side == Side.NONE
    assert kron_decompose(1, (3, 3)).verdict == Verdict.MNF_TRIVIAL
    d = kron_decompose(3, (8, 3))
    assert d.side == Side.PREINJECTIVE and d.verdict == Verdict.MNF_TRIVIAL


def test_sub_summand_table():
    pre = kron_decompose(3, (1, 4))
    assert pre.sub_summand() == ((1, 3), 1)
    assert pre.quot_summand() == ((0, 1), 1)
    inj = kron_decompose(3, (4, 1))
    assert inj.sub_summand() == ((1, 0), 1)
    assert inj.quot_summand() == ((3, 1), 1)
    # no arrows: the source-vertex simple is the sub-side summand
    assert kron_decompose(0, (2, 3)).sub_summand() == ((1, 0), 2)
    with pytest.raises(ValueError):
        kron_decompose(3, (2, 2)).sub_summand()


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 7), st.integers(0, 40), st.integers(0, 40))
def test_decomposition_bookkeeping(u, x, y):
    dec = kron_decompose(u, (x, y))
    g = gcd_all(x, y)
    if dec.verdict == Verdict.RIGID:
        assert dec.mult_low > 0 and dec.mult_high > 0
        total = (dec.mult_low * dec.dim_low.x + dec.mult_high * dec.dim_high.x,
                 dec.mult_low * dec.dim_low.y + dec.mult_high * dec.dim_high.y)
        assert total == (x, y)
        assert gcd_all(dec.mult_low, dec.mult_high) == g
    else:
        assert dec.mnf_type == g
        if dec.verdict == Verdict.MNF_TRIVIAL:
            assert dec.dim_low.scaled(dec.mult_low) == (x, y)
    if dec.verdict == Verdict.MNF_SQUARE:
        assert u == 2 and x == y


def test_sampling_deterministic(F):
    a = kron_sample(3, (2, 2), F, 17)
    b = kron_sample(3, (2, 2), F, 17)
    assert a == b
    assert kron_sample(3, (2, 2), F, 18) != a
    with pytest.raises(FieldMismatch):
        kron_sample(3, (2, 2), FieldSpec.rationals(), 1)


def test_schur_sample_end(F):
    ends = [kron_end_dim(kron_sample(3, (2, 2), F, s)) for s in range(100)]
    assert min(ends) >= 1
    assert sum(e == 1 for e in ends) >= 90


def test_rigid_sample_end(F):
    ends = [kron_end_dim(kron_sample(2, (3, 5), F, s)) for s in range(40)]
    assert min(ends) >= 4
    assert sum(e == 4 for e in ends) >= 36


def test_hom_examples(F):
    for u in (2, 3, 4):
        P0, P1 = kron_projective(u, 0, F), kron_projective(u, 1, F)
        assert kron_hom_dim(P0, P1) == u
        assert kron_hom_dim(P1, P0) == 0
    S = kron_simple(3, 0, F)
    two = make_kronecker_rep(F, [ExactMat.zeros(F, 0, 2)] * 3, dim=(2, 0))
    assert kron_end_dim(two) == 4
    assert kron_end_dim(S) == 1


def test_hom_mismatch(F):
    with pytest.raises(ValueError):
        kron_hom_dim(kron_simple(2, 0, F), kron_simple(3, 0, F))


def test_rep_shape_check(F):
    with pytest.raises(ShapeMismatch):
        make_kronecker_rep(F, [ExactMat.zeros(F, 2, 2), ExactMat.zeros(F, 2, 3)])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.tuples(st.integers(0, 3), st.integers(0, 3)),
       st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 2**32))
def test_hom_minus_ext_is_euler(u, d1, d2, seed):
    F = FieldSpec.prime(1009)
    R, S = kron_sample(u, d1, F, seed), kron_sample(u, d2, F, seed + 1)
    h = kron_hom_dim(R, S)
    chi = euler_kronecker(u, d1, d2)
    assert kron_ext_dim(R, S) == h - chi


def test_mnf_family_examples(F):
    assert kron_end_dim(mnf_family_q2(1, ExactMat(F, [[5]]))) == 1
    assert kron_end_dim(mnf_family_q2(2, ExactMat(F, [[1, 0], [0, 2]]))) == 2
    assert kron_end_dim(mnf_family_q2(2, ExactMat(F, [[0, 1], [0, 0]]))) == 2
    assert kron_end_dim(mnf_family_q2(2, ExactMat(F, [[3, 0], [0, 3]]))) == 4
    with pytest.raises(ShapeMismatch):
        mnf_family_q2(2, ExactMat(F, [[1, 2, 3], [4, 5, 6]]))


def test_centralizer_matches_end(F):
    rng = np.random.default_rng(2)
    for a in (1, 2, 3):
        p = ExactMat(F, F.random(rng, (a, a)))
        assert centralizer_dim(p) == kron_end_dim(mnf_family_q2(a, p))
