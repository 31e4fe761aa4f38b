import numpy as np
import pytest
from numpy.testing import assert_allclose

from optsample import (
    Expansion,
    Kernel,
    discrete_uniform_measure,
    energy_gap_bound,
    eval_expansion,
    gram,
    kl_eigenbasis,
    min_norm_interpolant,
    phi_norm,
    power_function,
    rkhs_inner,
    rkhs_norm,
    subspace_distance,
    subspace_distance_direct,
    subspace_energy,
)
from optsample.rkhs import power_function_basis_form

# phi at 0.5 for sinc with X = {0, 1, 2}: the kernel matrix is the
# identity, so phi^2 = 1 - sum_j sinc(0.5 - j)^2 (frozen from that formula)
SINC_PHI_HALF = 0.37999854432211366


class TestPowerFunction:
    def test_zero_on_sampling_points(self, gauss1d):
        X = np.array([[0.0], [1.0], [2.5]])
        assert_allclose(power_function(gauss1d, X, X.ravel()), 0.0, atol=1e-7)

    def test_single_point_projection(self, gauss1d):
        got = power_function(gauss1d, [0.0], 1.0)
        assert_allclose(got, np.sqrt(1.0 - np.exp(-2.0)), rtol=1e-12)

    def test_sinc_integer_translates(self, sinc1d):
        got = power_function(sinc1d, [0.0, 1.0, 2.0], 0.5)
        assert_allclose(got, SINC_PHI_HALF, rtol=1e-12)
        direct = np.sqrt(1.0 - sum(np.sinc(0.5 - j) ** 2 for j in (0, 1, 2)))
        assert_allclose(got, direct, rtol=1e-12)

    def test_schur_and_basis_forms_agree(self, rng):
        for family in ("gaussian", "exponential"):
            k = Kernel(family, 1)
            X = np.sort(rng.uniform(-3, 3, 5))[:, None]
            q = rng.uniform(-3, 3, 40)
            a = power_function(k, X, q)
            b = power_function_basis_form(k, X, q)
            assert_allclose(a * a, b * b, atol=1e-10)

    def test_bounds(self, gauss1d, rng):
        X = rng.uniform(-3, 3, (4, 1))
        phi = power_function(gauss1d, X, rng.uniform(-3, 3, 100))
        assert np.all(phi >= 0.0)
        assert np.all(phi <= 1.0 + 1e-12)

    def test_monotone_under_point_addition(self, gauss1d, rng):
        X = np.array([[-2.0], [0.5], [1.5]])
        bigger = np.vstack([X, [[2.5]]])
        q = rng.uniform(-3, 3, 50)
        assert np.all(
            power_function(gauss1d, bigger, q) <= power_function(gauss1d, X, q) + 1e-10
        )


class TestPhiNorm:
    def test_zero_when_points_cover_nodes(self, gauss1d):
        mu = discrete_uniform_measure([-1.0, 0.0, 1.0])
        X = mu.nodes
        assert phi_norm(gauss1d, X, mu, 2) == pytest.approx(0.0, abs=1e-7)
        assert phi_norm(gauss1d, X, mu, np.inf) == pytest.approx(0.0, abs=1e-7)

    def test_symmetric_two_node_measure(self, gauss1d):
        mu = discrete_uniform_measure([-1.0, 1.0])
        expected = np.sqrt(1.0 - np.exp(-2.0))
        assert phi_norm(gauss1d, [0.0], mu, np.inf) == pytest.approx(expected, rel=1e-12)
        assert phi_norm(gauss1d, [0.0], mu, 2) == pytest.approx(expected, rel=1e-12)

    def test_bad_p(self, gauss1d):
        mu = discrete_uniform_measure([0.0, 1.0])
        with pytest.raises(ValueError):
            phi_norm(gauss1d, [0.0], mu, 3)


class TestInterpolant:
    def test_kernel_section_interpolates_itself(self, gauss1d):
        X = np.array([[-1.0], [0.0], [2.0]])
        kx = gram(gauss1d, X)
        interp = min_norm_interpolant(gauss1d, X, kx[:, 1])
        assert_allclose(interp.coefficients, [0.0, 1.0, 0.0], atol=1e-10)

    def test_sinc_identity_system(self, sinc1d):
        interp = min_norm_interpolant(sinc1d, [0.0, 1.0, 2.0], [1.0, 0.0, 0.0])
        assert_allclose(interp.coefficients, [1.0, 0.0, 0.0], atol=1e-12)

    def test_two_point_hand_solve(self, gauss1d):
        interp = min_norm_interpolant(gauss1d, [0.0, 1.0], [1.0, 1.0])
        expected = np.full(2, 1.0 / (1.0 + np.exp(-1.0)))
        assert_allclose(interp.coefficients, expected, rtol=1e-12)

    def test_reproduces_samples(self, gauss1d, rng):
        X = np.sort(rng.uniform(-3, 3, 6))[:, None]
        values = rng.standard_normal(6)
        interp = min_norm_interpolant(gauss1d, X, values)
        assert np.linalg.norm(eval_expansion(interp, X) - values) <= 1e-8 * np.linalg.norm(values)

    def test_error_bound_by_power_function(self, gauss1d, rng):
        X = np.sort(rng.uniform(-3, 3, 5))[:, None]
        f = Expansion(rng.uniform(-3, 3, (7, 1)), rng.uniform(-1, 1, 7), gauss1d)
        interp = min_norm_interpolant(gauss1d, X, eval_expansion(f, X))
        q = rng.uniform(-3, 3, 60)
        resid = np.abs(eval_expansion(f, q) - eval_expansion(interp, q))
        bound = power_function(gauss1d, X, q) * rkhs_norm(f)
        assert np.all(resid <= bound + 1e-8)


class TestExpansionAlgebra:
    def test_zero_coefficients(self, gauss1d):
        f = Expansion([[0.0], [1.0]], [0.0, 0.0], gauss1d)
        assert_allclose(eval_expansion(f, [0.3, 0.9]), 0.0)

    def test_single_center_at_center(self, gauss1d):
        f = Expansion([[0.7]], [1.0], gauss1d)
        assert eval_expansion(f, [0.7])[0] == pytest.approx(1.0)

    def test_two_center_value(self, gauss1d):
        f = Expansion([[0.0], [1.0]], [1.0, 1.0], gauss1d)
        assert eval_expansion(f, [0.0])[0] == pytest.approx(1.0 + np.exp(-1.0), rel=1e-14)

    def test_inner_reproducing_property(self, gauss1d, rng):
        z, w = rng.uniform(-2, 2, 2)
        f = Expansion([[z]], [1.0], gauss1d)
        g = Expansion([[w]], [1.0], gauss1d)
        assert rkhs_inner(f, g) == pytest.approx(np.exp(-((z - w) ** 2)), rel=1e-12)
        assert rkhs_inner(f, f) == pytest.approx(1.0)

    def test_norm_quadratic_form(self, gauss1d):
        f = Expansion([[0.0], [1.0]], [1.0, -1.0], gauss1d)
        assert rkhs_inner(f, f) == pytest.approx(2.0 - 2.0 * np.exp(-1.0), rel=1e-12)

    def test_kernel_mismatch_rejected(self, gauss1d, exp1d):
        f = Expansion([[0.0]], [1.0], gauss1d)
        g = Expansion([[0.0]], [1.0], exp1d)
        with pytest.raises(ValueError):
            rkhs_inner(f, g)


class TestSubspaceDistance:
    def test_zero_when_spans_coincide(self, gauss1d):
        mu = discrete_uniform_measure([0.0, 1.0])
        basis = kl_eigenbasis(gauss1d, mu, 2)
        assert subspace_distance(gauss1d, mu.nodes, basis) <= 1e-7
        assert subspace_distance_direct(gauss1d, mu.nodes, basis) <= 1e-7

    def test_one_for_orthogonal_spans(self, sinc1d):
        basis = kl_eigenbasis(sinc1d, discrete_uniform_measure([0.0]), 1)
        assert subspace_distance(sinc1d, [5.0], basis) == pytest.approx(1.0)
        assert subspace_distance_direct(sinc1d, [5.0], basis) == pytest.approx(1.0, abs=1e-10)

    def test_formula_matches_projector_oracle(self, gauss1d, rng):
        mu = discrete_uniform_measure(np.linspace(-3, 3, 10))
        for _ in range(30):
            n = int(rng.integers(2, 5))
            basis = kl_eigenbasis(gauss1d, mu, n)
            X = rng.uniform(-3, 3, (n, 1))
            d1 = subspace_distance(gauss1d, X, basis)
            d2 = subspace_distance_direct(gauss1d, X, basis)
            assert abs(d1 - d2) <= 1e-8
            assert 0.0 <= d1 <= 1.0 + 1e-12

    def test_size_mismatch_rejected(self, gauss1d):
        mu = discrete_uniform_measure([0.0, 1.0, 2.0])
        basis = kl_eigenbasis(gauss1d, mu, 2)
        with pytest.raises(ValueError):
            subspace_distance(gauss1d, [0.0, 1.0, 2.0], basis)


class TestEnergyGapBound:
    def test_zero_distance_gives_zero_bound(self, gauss1d):
        mu = discrete_uniform_measure([0.0, 1.0])
        basis = kl_eigenbasis(gauss1d, mu, 2)
        assert energy_gap_bound(gauss1d, mu, mu.nodes, basis) <= 2e-7

    def test_unit_mass_measure_scales_by_two(self, gauss1d):
        mu = discrete_uniform_measure(np.linspace(-3, 3, 6))
        basis = kl_eigenbasis(gauss1d, mu, 2)
        X = np.array([[-0.5], [0.5]])
        d = subspace_distance(gauss1d, X, basis)
        assert energy_gap_bound(gauss1d, mu, X, basis) == pytest.approx(2.0 * d, rel=1e-12)

    def test_bounds_actual_energy_gap(self, gauss1d, rng):
        mu = discrete_uniform_measure(np.linspace(-3, 3, 8))
        basis = kl_eigenbasis(gauss1d, mu, 3)
        e_best = subspace_energy(gauss1d, mu, basis.expansions())
        for _ in range(30):
            X = rng.uniform(-3, 3, (3, 1))
            span = [Expansion(X[j : j + 1], [1.0], gauss1d) for j in range(3)]
            gap = subspace_energy(gauss1d, mu, span) - e_best
            assert gap <= energy_gap_bound(gauss1d, mu, X, basis) + 1e-9
