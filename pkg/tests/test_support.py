import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blockabs.densela import (
    PartialIsometry,
    neg_part_oracle,
    pos_part_oracle,
    support_projection_oracle,
)
from blockabs.errors import NotCommutingError, NotPartialIsometryError, PreconditionError, SingularError
from blockabs.support import (
    SLambda,
    neg_part_s1,
    neg_part_slambda,
    pos_part_e_plus_estar,
    pos_part_slambda,
    supp_commuting_pair,
    supp_neg_part,
    supp_neg_part_s1,
    supp_pos_e_plus_estar,
    supp_pos_part,
    supp_s1,
    supp_slambda,
    supp_sqrt_block,
    transport_support,
)

from helpers import entrywise_rel, gen, is_projector, random_b, random_lambda, rel

PHI = (1 + np.sqrt(5)) / 2


def rank1(v):
    v = np.asarray(v, dtype=float)
    return np.outer(v, v) / (v @ v)


class TestExamples:
    def test_pos_part(self):
        np.testing.assert_allclose(pos_part_slambda(SLambda(1, np.zeros((1, 1)))), np.diag([1, 0]), atol=1e-15)
        expected = PHI * rank1([PHI, 1])
        np.testing.assert_allclose(pos_part_slambda(SLambda(1, [[1.0]])), expected, atol=1e-14)
        np.testing.assert_allclose(expected, [[1.1708204, 0.7236068], [0.7236068, 0.4472136]], atol=1e-7)
        np.testing.assert_allclose(pos_part_slambda(SLambda(0, [[1.0]])), np.ones((2, 2)) / 2, atol=1e-15)

    def test_neg_part_s1(self):
        np.testing.assert_allclose(neg_part_s1(np.zeros((2, 2))), 0, atol=1e-15)
        n = neg_part_s1([[1.0]])
        assert np.linalg.matrix_rank(n, 1e-10) == 1
        np.testing.assert_allclose(np.trace(n).real, (np.sqrt(5) - 1) / 2, atol=1e-14)

    def test_supp_s1(self):
        np.testing.assert_allclose(supp_s1(np.zeros((1, 1))), np.diag([1, 0]), atol=1e-15)
        np.testing.assert_allclose(supp_s1([[1.0]]), np.eye(2), atol=1e-15)
        np.testing.assert_allclose(supp_s1([[0.0, 1.0]]), np.diag([1, 0, 1]), atol=1e-15)

    def test_supp_pos_part(self):
        np.testing.assert_allclose(supp_pos_part(SLambda(1, np.zeros((1, 1)))), np.diag([1, 0]), atol=1e-15)
        np.testing.assert_allclose(supp_pos_part(SLambda(1, [[1.0]])), rank1([PHI, 1]), atol=1e-14)
        np.testing.assert_allclose(supp_pos_part(SLambda(0, [[1.0]])), np.ones((2, 2)) / 2, atol=1e-15)

    def test_supp_neg_part_s1(self):
        np.testing.assert_allclose(supp_neg_part_s1(np.zeros((1, 1))), 0, atol=1e-15)
        np.testing.assert_allclose(supp_neg_part_s1([[1.0]]), rank1([1 - PHI, 1]), atol=1e-14)

    def test_idempotent_special_case(self):
        np.testing.assert_allclose(pos_part_e_plus_estar(np.zeros((1, 1))), np.diag([2, 0]), atol=1e-15)
        np.testing.assert_allclose(supp_pos_e_plus_estar(np.zeros((1, 1))), np.diag([1, 0]), atol=1e-15)
        s2 = np.sqrt(2)
        p = pos_part_e_plus_estar([[1.0]])
        np.testing.assert_allclose(p, (1 + s2) * rank1([1 + s2, 1]), atol=1e-14)
        np.testing.assert_allclose(p, [[2.0606602, 0.8535534], [0.8535534, 0.3535534]], atol=1e-7)
        np.testing.assert_allclose(supp_pos_e_plus_estar([[1.0]]), rank1([1 + s2, 1]), atol=1e-14)

    def test_sqrt_block(self):
        np.testing.assert_allclose(supp_sqrt_block(np.zeros((2, 2))), np.diag([1, 1, 0, 0]), atol=1e-15)
        np.testing.assert_allclose(supp_sqrt_block([[1.0]]), np.array([[1, 2], [2, 4]]) / 5, atol=1e-15)
        a = np.diag([1.0, 4.0])
        h = np.sqrt(a)
        tilde = np.block([[np.eye(2), 2 * h], [2 * h, 4 * a]])
        np.testing.assert_allclose(supp_sqrt_block(a), support_projection_oracle(tilde), atol=1e-12)

    def test_commuting_pair(self):
        np.testing.assert_allclose(supp_commuting_pair(np.zeros((2, 2)), np.eye(2)), np.diag([1, 1, 0, 0]), atol=1e-15)
        np.testing.assert_allclose(supp_commuting_pair([[1.0]], [[1.0]]), np.array([[1, 2], [2, 4]]) / 5, atol=1e-15)
        a, c = np.diag([0.0, 2.0, 5.0]), np.diag([1.0, 0.5, 3.0])
        h = np.sqrt(a)
        m = np.block([[c @ c, 2 * h @ c], [2 * h @ c, 4 * a]])
        np.testing.assert_allclose(supp_commuting_pair(a, c), support_projection_oracle(m), atol=1e-12)
        with pytest.raises(NotCommutingError):
            supp_commuting_pair(np.diag([1.0, 2.0]), np.array([[2.0, 1.0], [1.0, 2.0]]))
        with pytest.raises(SingularError):
            supp_commuting_pair(np.diag([1.0, 2.0]), np.diag([1.0, 0.0]))

    def test_transport(self):
        g = np.diag([1.0, 0.0])
        np.testing.assert_allclose(transport_support(g, np.eye(2)), g, atol=1e-15)
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(transport_support(g, swap), np.diag([0, 1]), atol=1e-15)
        emb = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        g2 = np.ones((2, 2))
        np.testing.assert_allclose(
            transport_support(g2, PartialIsometry(emb, 2)),
            support_projection_oracle(emb @ g2 @ emb.T),
            atol=1e-14,
        )
        with pytest.raises(NotPartialIsometryError):
            transport_support(g2, 2 * emb)
        with pytest.raises(NotPartialIsometryError):
            transport_support(np.eye(2), np.diag([1.0, 0.0]))

    def test_slambda_validation(self):
        with pytest.raises(PreconditionError):
            SLambda(np.nan, [[1.0]])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([-1, 0, 1]))
def test_parts_and_supports_match_oracle(seed, sign):
    g = gen(seed)
    s = SLambda(random_lambda(g, sign), random_b(g))
    sm = s.matrix()
    sp, sn = pos_part_oracle(sm), neg_part_oracle(sm)
    assert entrywise_rel(pos_part_slambda(s), sp) <= 1e-8
    assert entrywise_rel(neg_part_slambda(s), sn) <= 1e-8
    for p, target in (
        (supp_slambda(s), sm),
        (supp_pos_part(s), sp),
        (supp_neg_part(s), sn),
    ):
        assert entrywise_rel(p, support_projection_oracle(target)) <= 1e-8
        assert is_projector(p, 1e-9)
        assert rel(p @ target, target) <= 1e-9


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_s1_specializations(seed):
    g = gen(seed)
    b = random_b(g)
    s = SLambda(1.0, b)
    sm = s.matrix()
    assert entrywise_rel(neg_part_s1(b), neg_part_oracle(sm)) <= 1e-8
    assert entrywise_rel(supp_s1(b), support_projection_oracle(sm)) <= 1e-8
    assert entrywise_rel(supp_neg_part_s1(b), support_projection_oracle(neg_part_oracle(sm))) <= 1e-8
    assert rel(supp_neg_part_s1(b), supp_s1(b) - supp_pos_part(s)) <= 1e-9


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_idempotent_parts(seed):
    g = gen(seed)
    r, s = g.dim(), g.dim()
    e1 = g.gen_corner(r, s)
    sym = np.block([[2 * np.eye(r), e1], [e1.conj().T, np.zeros((s, s))]])
    plus = pos_part_oracle(sym)
    assert entrywise_rel(pos_part_e_plus_estar(e1), plus) <= 1e-8
    p = supp_pos_e_plus_estar(e1)
    assert entrywise_rel(p, support_projection_oracle(plus)) <= 1e-8
    assert is_projector(p, 1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_structured_supports_match_oracle(seed):
    g = gen(seed)
    n = g.dim()
    x = g.gen_matrix(n, int(g.rng.integers(0, n + 1)))
    a = x @ x.conj().T
    # exact square root from the factor: X = U S W*  =>  A^{1/2} = U S U*
    u, sv, _ = np.linalg.svd(x, full_matrices=False)
    half = (u * sv) @ u.conj().T
    _, v = np.linalg.eigh(a)
    tilde = np.block([[np.eye(n), 2 * half], [2 * half, 4 * a]])
    assert entrywise_rel(supp_sqrt_block(a), support_projection_oracle(tilde)) <= 1e-8
    # C a positive definite function of A commutes with it
    c = (v * (0.5 + g.rng.random(n))) @ v.conj().T
    m = np.block([[c @ c, 2 * half @ c], [2 * half @ c, 4 * a]])
    assert entrywise_rel(supp_commuting_pair(a, c), support_projection_oracle(m)) <= 1e-8
