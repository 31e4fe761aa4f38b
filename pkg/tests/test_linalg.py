import numpy as np
import pytest
from numpy.testing import assert_allclose

from optsample import Kernel, chol_factor, chol_solve, gram, inv_sqrt, max_gen_eig, sym_eig
from optsample.errors import SingularMatrixError


def random_spd(rng, n, cond=100.0):
    q = np.linalg.qr(rng.standard_normal((n, n)))[0]
    evals = np.geomspace(1.0, cond, n)
    return q @ np.diag(evals) @ q.T


class TestSymEig:
    def test_identity(self):
        eig = sym_eig(np.eye(3))
        assert_allclose(eig.values, 1.0)

    def test_two_point_gram_closed_form(self):
        a = np.array([[1.0, np.exp(-1)], [np.exp(-1), 1.0]])
        eig = sym_eig(a)
        assert_allclose(eig.values, [1.0 + np.exp(-1), 1.0 - np.exp(-1)], rtol=1e-14)

    def test_diagonal_sorted_descending(self):
        eig = sym_eig(np.diag([3.0, 1.0, 2.0]))
        assert_allclose(eig.values, [3.0, 2.0, 1.0])

    def test_eigen_relation_and_orthonormality(self, rng):
        a = random_spd(rng, 8)
        eig = sym_eig(a)
        norm = np.abs(eig.values).max()
        assert_allclose(a @ eig.vectors, eig.vectors * eig.values, atol=1e-8 * norm)
        assert_allclose(eig.vectors.T @ eig.vectors, np.eye(8), atol=1e-10)

    def test_deterministic_sign(self, rng):
        a = random_spd(rng, 5)
        v1 = sym_eig(a).vectors
        v2 = sym_eig(a.copy()).vectors
        assert np.array_equal(v1, v2)
        for j in range(5):
            col = v1[:, j]
            nz = np.nonzero(np.abs(col) > 1e-12 * np.abs(col).max())[0]
            assert col[nz[0]] > 0

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            sym_eig(np.ones((2, 3)))


class TestCholSolve:
    def test_identity(self):
        b = np.array([1.0, 2.0, 3.0])
        assert_allclose(chol_solve(np.eye(3), b), b)

    def test_diagonal(self):
        x = chol_solve(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))
        assert_allclose(x, [1.0, 1.0])

    def test_near_singular_gram_uses_jitter(self):
        k = Kernel("gaussian", 1)
        a = gram(k, [0.0, 1e-9])
        factor = chol_factor(a)
        assert factor.jitter > 0
        b = np.array([1.0, 1.0])
        x = factor.solve(b)
        assert np.linalg.norm(a @ x - b) <= 1e-6 * np.linalg.norm(b)

    def test_residual_on_well_conditioned(self, rng):
        for _ in range(10):
            a = random_spd(rng, 6, cond=1e4)
            b = rng.standard_normal((6, 2))
            x = chol_solve(a, b)
            assert np.linalg.norm(a @ x - b) <= 1e-8 * np.linalg.norm(b)

    def test_singular_beyond_jitter(self):
        a = np.array([[1.0, 0.0], [0.0, -1.0]])
        with pytest.raises(SingularMatrixError):
            chol_factor(a)


class TestInvSqrt:
    def test_diagonal(self):
        assert_allclose(inv_sqrt(np.diag([4.0, 9.0])), np.diag([0.5, 1.0 / 3.0]), atol=1e-14)

    def test_identity(self):
        assert_allclose(inv_sqrt(np.eye(4)), np.eye(4), atol=1e-14)

    def test_defining_identity_on_gram(self):
        k = Kernel("gaussian", 1)
        a = gram(k, [0.0, 1.0])
        s = inv_sqrt(a)
        assert_allclose(s @ a @ s, np.eye(2), atol=1e-10)

    def test_round_trip_random(self, rng):
        for _ in range(10):
            a = random_spd(rng, 7, cond=1e5)
            s = inv_sqrt(a)
            assert_allclose(s @ a @ s, np.eye(7), atol=1e-8)
            assert_allclose(s, s.T, atol=1e-12)

    def test_rejects_singular(self):
        with pytest.raises(SingularMatrixError):
            inv_sqrt(np.diag([1.0, 1e-15]))


class TestMaxGenEig:
    def test_equal_matrices(self, rng):
        a = random_spd(rng, 5)
        assert max_gen_eig(a, a) == pytest.approx(1.0, abs=1e-10)

    def test_scaled_identity(self):
        assert max_gen_eig(2 * np.eye(3), np.eye(3)) == pytest.approx(2.0)

    def test_two_by_two_characteristic_root(self):
        # det(A - t B) = 2 t^2 - 6 t + 3 for these matrices; largest root
        # is (3 + sqrt 3)/2, cross-checked numerically below
        a = np.array([[2.0, 1.0], [1.0, 2.0]])
        b = np.diag([1.0, 2.0])
        expected = (3.0 + np.sqrt(3.0)) / 2.0
        theta = max_gen_eig(a, b)
        assert_allclose(theta, expected, rtol=1e-12)
        assert abs(2 * theta**2 - 6 * theta + 3) < 1e-10

    def test_matches_rayleigh_quotient_sup(self, rng):
        a = 0.5 * (lambda m: m + m.T)(rng.standard_normal((4, 4)))
        b = random_spd(rng, 4)
        theta = max_gen_eig(a, b)
        # no sampled quotient may exceed the reported maximum
        for _ in range(2000):
            v = rng.standard_normal(4)
            assert (v @ a @ v) / (v @ b @ v) <= theta + 1e-10
        # independent oracle: power iteration on B^{-1} A (via LU solves)
        # converges to the top generalized Rayleigh quotient
        v = rng.standard_normal(4)
        shift = a + 10.0 * b  # keep the iterated spectrum positive
        for _ in range(500):
            v = np.linalg.solve(b, shift @ v)
            v /= np.linalg.norm(v)
        ratio = (v @ a @ v) / (v @ b @ v)
        assert ratio == pytest.approx(theta, abs=1e-6)

    def test_singular_b_returns_inf(self):
        a = np.eye(2)
        b = np.array([[1.0, 0.0], [0.0, 0.0]])
        assert max_gen_eig(a, b) == np.inf

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            max_gen_eig(np.eye(2), np.eye(3))
