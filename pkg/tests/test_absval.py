import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blockabs.absval import (
    BlockSymm,
    CaseTag,
    _abs_mu_only_closed_form,
    _swap_blocks,
    abs_qlm,
    abs_unit_block,
    case_of,
    sqrt_2x2,
    sqrt_shifted_block,
)
from blockabs.densela import abs_oracle, is_psd, polar_partial_isometry, psd_sqrt
from blockabs.errors import DimensionError, NotPositiveError, PreconditionError

from helpers import gen, random_block_symm, rel

S5 = np.sqrt(5.0)


def shifted_block(a, mu):
    """``[[I + A, (1+mu) A^{1/2}], [(1+mu) A^{1/2}, mu^2 I + A]]`` built directly."""
    n = a.shape[0]
    h = psd_sqrt(a)
    return np.block([[np.eye(n) + a, (1 + mu) * h], [(1 + mu) * h, mu * mu * np.eye(n) + a]])


class TestSqrt2x2:
    def test_first_branch(self):
        r = sqrt_2x2(1.0, 2.0)
        np.testing.assert_allclose(r, [[1, 1], [1, 2]], atol=1e-15)
        np.testing.assert_allclose(r @ r, [[2, 3], [3, 5]], atol=1e-12)

    def test_second_branch(self):
        r = sqrt_2x2(1.0, 0.0)
        np.testing.assert_allclose(r, np.array([[3, 1], [1, 2]]) / S5, atol=1e-15)
        np.testing.assert_allclose(r @ r, [[2, 1], [1, 1]], atol=1e-12)

    def test_boundary_uses_first_branch(self):
        np.testing.assert_allclose(sqrt_2x2(1.0, 1.0), np.ones((2, 2)), atol=1e-15)

    @pytest.mark.parametrize("b", [0.3, 1.0, 2.5, 7.0])
    def test_branches_agree_at_boundary(self, b):
        rb = np.sqrt(b)
        first = np.array([[1, rb], [rb, b]])
        t = np.sqrt(b * b - 2 * b + 4 * b + 1)
        second = np.array([[b + 1, (1 + b) * rb], [rb * (1 + b), b * b + b]]) / t
        np.testing.assert_allclose(first, second, atol=1e-12)
        np.testing.assert_allclose(sqrt_2x2(b, b), first, atol=1e-12)

    def test_rejects_nonpositive_b(self):
        with pytest.raises(PreconditionError):
            sqrt_2x2(0.0, 1.0)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(1e-3, 50), st.floats(-20, 20))
    def test_squares_to_target(self, b, mu):
        r = sqrt_2x2(b, mu)
        rb = np.sqrt(b)
        target = np.array([[1 + b, (1 + mu) * rb], [(1 + mu) * rb, mu * mu + b]])
        assert np.allclose(r, r.T) and np.all(np.linalg.eigvalsh(r) > -1e-9)
        assert np.max(np.abs(r @ r - target)) <= 1e-10 * (1 + np.max(np.abs(target)))


class TestSqrtShiftedBlock:
    def test_zero_a_negative_mu(self):
        np.testing.assert_allclose(sqrt_shifted_block(np.zeros((2, 2)), -1.0), np.eye(4), atol=1e-15)

    def test_scalar_matches_2x2(self):
        np.testing.assert_allclose(sqrt_shifted_block([[1.0]], 2.0), [[1, 1], [1, 2]], atol=1e-14)

    def test_split_spectrum(self):
        a = np.diag([1.0, 3.0])
        r = sqrt_shifted_block(a, 2.0)
        np.testing.assert_allclose(r @ r, shifted_block(a, 2.0), atol=1e-12)
        assert is_psd(r)

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositiveError):
            sqrt_shifted_block(np.diag([1.0, -1.0]), 0.5)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(-4, 6))
    def test_squares_to_target(self, seed, mu):
        g = gen(seed)
        n = g.dim()
        x = g.gen_matrix(n, n)
        a = x @ x.conj().T
        r = sqrt_shifted_block(a, mu)
        target = shifted_block(a, mu)
        assert rel(r @ r, target) < 1e-10
        assert rel(r, abs_oracle(r)) < 1e-10  # r is psd


class TestAbsUnitBlock:
    def test_zero_b(self):
        np.testing.assert_allclose(abs_unit_block(np.zeros((2, 2)), -3.0), np.diag([1, 1, 3, 3]), atol=1e-15)

    def test_scalar(self):
        np.testing.assert_allclose(abs_unit_block([[1.0]], 0.0), np.array([[3, 1], [1, 2]]) / S5, atol=1e-14)

    def test_inside_norm(self):
        b = np.diag([1.0, 3.0])
        q = np.block([[np.eye(2), b], [b, 4 * np.eye(2)]])
        np.testing.assert_allclose(abs_unit_block(b, 4.0), abs_oracle(q), atol=1e-12)

    def test_notation_of_the_two_displays_agrees(self):
        # V T^-1 (mu^2 - mu + 2 DD*) V* equals (mu^2 - mu + 2 D*D) S^-1 on R(D*)
        g = gen(11)
        for _ in range(20):
            m, k = g.dim(), g.dim()
            d = g.gen_matrix(m, k)
            mu = float(g.rng.uniform(-3, 3))
            dd, dtd = d @ d.conj().T, d.conj().T @ d
            t_inv = np.linalg.inv(psd_sqrt((mu - 1) ** 2 * np.eye(m) + 4 * dd))
            s_inv = np.linalg.inv(psd_sqrt((mu - 1) ** 2 * np.eye(k) + 4 * dtd))
            v = polar_partial_isometry(d).matrix
            lhs = v @ t_inv @ ((mu * mu - mu) * np.eye(m) + 2 * dd) @ v.conj().T
            rhs = ((mu * mu - mu) * np.eye(k) + 2 * dtd) @ s_inv @ v @ v.conj().T
            assert rel(lhs, rhs) < 1e-12


class TestCases:
    def test_case_examples(self):
        b = [[0.6, 0.8]]
        assert case_of(BlockSymm(0, 0, [[5.0]])) is CaseTag.BothZero
        assert case_of(BlockSymm(1, -1, b)) is CaseTag.ProductNegative
        assert case_of(BlockSymm(1, 0.5, b)) is CaseTag.ProductInsideNormSq
        assert case_of(BlockSymm(1, 1, b)) is CaseTag.ProductAboveNormSq
        assert case_of(BlockSymm(-2, 0, b)) is CaseTag.LambdaOnly
        assert case_of(BlockSymm(0, -2, b)) is CaseTag.MuOnly
        assert str(CaseTag.LambdaOnly) == "LambdaOnly"

    def test_abs_examples(self):
        r, tag = abs_qlm(BlockSymm(0, 0, [[2.0]]))
        assert tag is CaseTag.BothZero
        np.testing.assert_allclose(r, 2 * np.eye(2), atol=1e-15)
        r, tag = abs_qlm(BlockSymm(1, 0, [[1.0]]))
        assert tag is CaseTag.LambdaOnly
        np.testing.assert_allclose(r, np.array([[3, 1], [1, 2]]) / S5, atol=1e-14)
        r, tag = abs_qlm(BlockSymm(2, 1, [[1.0]]))
        assert tag is CaseTag.ProductAboveNormSq
        np.testing.assert_allclose(r, [[2, 1], [1, 1]], atol=1e-15)

    def test_negative_hand_value(self):
        # lam = -1, mu = 1, B = 1: Q = [[-1, 1], [1, 1]] has eigenvalues +-sqrt(2)
        r, tag = abs_qlm(BlockSymm(-1, 1, [[1.0]]))
        assert tag is CaseTag.ProductNegative
        np.testing.assert_allclose(r, np.sqrt(2) * np.eye(2), atol=1e-14)

    def test_shapes_and_validation(self):
        r, _ = abs_qlm(BlockSymm(1.0, 0.3, np.ones((2, 3))))
        assert r.shape == (5, 5)
        with pytest.raises(PreconditionError):
            BlockSymm(np.inf, 0, [[1.0]])
        with pytest.raises(DimensionError):
            BlockSymm(1, 1, np.zeros((2, 2, 2)))

    @pytest.mark.parametrize("tag", list(CaseTag))
    def test_oracle_per_case(self, tag):
        g = gen(100 + list(CaseTag).index(tag))
        for _ in range(40):
            q = random_block_symm(g, tag)
            r, got = abs_qlm(q)
            assert got is tag
            qm = q.matrix()
            assert rel(r, abs_oracle(qm), qm) <= 1e-8
            assert rel(r @ r, qm @ qm, qm @ qm) <= 1e-8
            assert is_psd(r)

    def test_mu_only_closed_form_matches_swap(self):
        g = gen(5)
        for _ in range(30):
            b = g.gen_matrix(g.dim(), g.dim())
            mu = float(g.rng.choice([-1, 1]) * g.rng.uniform(0.1, 3))
            r, tag = abs_qlm(BlockSymm(0.0, mu, b))
            assert tag is CaseTag.MuOnly
            assert rel(r, _abs_mu_only_closed_form(mu, b)) < 1e-12


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(list(CaseTag)))
def test_scaling_law(seed, tag):
    g = gen(seed)
    q = random_block_symm(g, tag)
    if q.lam == 0:
        return
    r, _ = abs_qlm(q)
    unit, _ = abs_qlm(BlockSymm(1.0, q.mu / q.lam, q.B / q.lam))
    assert rel(r, abs(q.lam) * unit) < 1e-9


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(list(CaseTag)))
def test_transpose_symmetry(seed, tag):
    g = gen(seed)
    q = random_block_symm(g, tag)
    m = q.B.shape[0]
    r, _ = abs_qlm(q)
    swapped, _ = abs_qlm(BlockSymm(q.mu, q.lam, q.B.conj().T))
    assert rel(_swap_blocks(swapped, q.B.shape[1]), r) < 1e-9
    assert r.shape[0] == m + q.B.shape[1]
