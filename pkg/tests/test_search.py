import numpy as np
import pytest
from numpy.testing import assert_allclose

from optsample import (
    BoxDomain,
    Kernel,
    ObjectiveSpec,
    SearchConfig,
    brute_force,
    discrete_uniform_measure,
    exp_two_point_optimal,
    greedy_exchange,
    grid_measure,
    optimize_points,
)
from optsample.errors import SearchFailedError
from optsample.search import nelder_mead, starting_configuration


def trace_spec(n=2, measure_nodes=9, domain=(-3.0, 3.0)):
    dom = BoxDomain([domain[0]], [domain[1]])
    k = Kernel("gaussian", 1)
    mu = discrete_uniform_measure(np.linspace(domain[0], domain[1], measure_nodes))
    return ObjectiveSpec(kind="trace", kernel=k, measure=mu, n=n, domain=dom)


class TestNelderMead:
    def test_quadratic_bowl(self):
        x, fx, converged = nelder_mead(
            lambda v: float((v - 1.5) @ (v - 1.5)), np.zeros(3), 0.5, 4000, 1e-12
        )
        assert converged
        assert_allclose(x, 1.5, atol=1e-5)
        assert fx < 1e-9

    def test_budget_exhaustion_reports_not_converged(self):
        _, _, converged = nelder_mead(
            lambda v: float(v @ v), np.full(2, 10.0), 0.1, 5, 1e-12
        )
        assert not converged


class TestOptimizePoints:
    def test_gaussian_single_point_hits_center(self, gauss1d, box33):
        mu = grid_measure(box33, 201)
        spec = ObjectiveSpec(kind="supnorm", kernel=gauss1d, measure=mu, n=1, domain=box33)
        result = optimize_points(spec, SearchConfig(restarts=5, seed=7))
        cell = 6.0 / 201
        assert abs(result.points.points[0, 0]) <= cell

    def test_exponential_two_point_closed_form(self, exp1d):
        dom = BoxDomain([0.0], [1.0])
        mu = grid_measure(dom, 400)
        spec = ObjectiveSpec(kind="supnorm", kernel=exp1d, measure=mu, n=2, domain=dom)
        result = optimize_points(spec, SearchConfig(seed=3))
        sol = exp_two_point_optimal(0.0, 1.0)
        got = result.points.points.ravel()
        assert abs(got[0] - sol.x1) <= 0.02
        assert abs(got[1] - sol.x2) <= 0.02

    def test_deterministic_repeat(self):
        spec = trace_spec(n=3)
        config = SearchConfig(restarts=6, seed=123)
        r1 = optimize_points(spec, config)
        r2 = optimize_points(spec, config)
        assert np.array_equal(r1.points.points, r2.points.points)
        assert r1.objective_value == r2.objective_value
        assert r1.best_start_index == r2.best_start_index

    def test_thread_count_invariance(self, monkeypatch):
        spec = trace_spec(n=3)
        config = SearchConfig(restarts=6, seed=5)
        results = []
        for threads in ("1", "3"):
            monkeypatch.setenv("OPTSAMPLE_THREADS", threads)
            results.append(optimize_points(spec, config))
        assert np.array_equal(results[0].points.points, results[1].points.points)
        assert results[0].objective_value == results[1].objective_value

    def test_never_worse_than_equally_spaced_start(self):
        spec = trace_spec(n=4)
        result = optimize_points(spec, SearchConfig(restarts=3, seed=9))
        baseline = spec.evaluate(starting_configuration(spec))
        assert result.objective_value <= baseline + 1e-12

    def test_reevaluation_reproduces_value(self):
        spec = trace_spec(n=3)
        result = optimize_points(spec, SearchConfig(restarts=4, seed=2))
        assert spec.evaluate(result.points.points) == result.objective_value

    def test_output_canonically_sorted(self):
        spec = trace_spec(n=4)
        pts = optimize_points(spec, SearchConfig(restarts=4, seed=11)).points.points
        assert np.all(np.diff(pts[:, 0]) >= 0)

    def test_all_penalty_raises(self, gauss1d):
        # separation floor wider than the domain: every configuration fails
        dom = BoxDomain([0.0], [1.0])
        mu = discrete_uniform_measure([0.25, 0.75])
        spec = ObjectiveSpec(
            kind="trace", kernel=gauss1d, measure=mu, n=3, domain=dom, delta_sep=10.0
        )
        with pytest.raises(SearchFailedError):
            optimize_points(spec, SearchConfig(restarts=2, seed=1))


class TestStartingConfiguration:
    def test_1d_endpoints(self):
        spec = trace_spec(n=3)
        assert_allclose(starting_configuration(spec).ravel(), [-3.0, 0.0, 3.0])

    def test_1d_single_point_midpoint(self):
        spec = trace_spec(n=1)
        assert_allclose(starting_configuration(spec).ravel(), [0.0])

    def test_2d_perfect_square(self):
        dom = BoxDomain([0.0, 0.0], [1.0, 1.0])
        k = Kernel("gaussian", 2)
        mu = grid_measure(dom, (5, 5))
        spec = ObjectiveSpec(kind="trace", kernel=k, measure=mu, n=4, domain=dom)
        start = starting_configuration(spec)
        assert start.shape == (4, 2)
        assert_allclose(sorted(set(start[:, 0])), [0.0, 1.0])

    def test_2d_non_square_falls_back(self):
        dom = BoxDomain([0.0, 0.0], [1.0, 1.0])
        k = Kernel("gaussian", 2)
        mu = grid_measure(dom, (5, 5))
        spec = ObjectiveSpec(kind="trace", kernel=k, measure=mu, n=5, domain=dom)
        start = starting_configuration(spec)
        assert start.shape == (5, 2)
        assert len(np.unique(start, axis=0)) == 5


class TestGreedyExchange:
    def test_all_candidates_selected_trivially(self):
        spec = trace_spec(n=4)
        cands = np.linspace(-3, 3, 4)[:, None]
        result = greedy_exchange(spec, cands, 4)
        assert_allclose(np.sort(result.points.points.ravel()), cands.ravel())
        assert len(result.improvement_trace) == 1

    def test_monotone_improvement_trace(self):
        spec = trace_spec(n=3, measure_nodes=15)
        cands = np.linspace(-3, 3, 12)[:, None]
        result = greedy_exchange(spec, cands, 3)
        trace = np.array(result.improvement_trace)
        assert np.all(np.diff(trace) <= 0)
        assert result.converged

    def test_matches_brute_force_on_generic_instance(self, gauss1d):
        # the measure is shifted off-center so the optimum is unique
        # (a symmetric instance has a mirror-degenerate optimal pair)
        dom = BoxDomain([-3.0], [3.0])
        mu = grid_measure(BoxDomain([-2.5], [3.0]), 61)
        for m, n in [(8, 2), (10, 3)]:
            spec = ObjectiveSpec(kind="trace", kernel=gauss1d, measure=mu, n=n, domain=dom)
            cands = np.linspace(-3, 3, m)[:, None]
            g = greedy_exchange(spec, cands, n)
            b = brute_force(spec, cands, n)
            assert np.array_equal(g.points.points, b.points.points)

    def test_mirror_tie_reaches_equal_value(self, gauss1d):
        # fully symmetric instance: two mirror-image global optima; greedy
        # may return either twin but at the same objective value
        dom = BoxDomain([-3.0], [3.0])
        mu = grid_measure(dom, 61)
        spec = ObjectiveSpec(kind="trace", kernel=gauss1d, measure=mu, n=3, domain=dom)
        cands = np.linspace(-3, 3, 10)[:, None]
        g = greedy_exchange(spec, cands, 3)
        b = brute_force(spec, cands, 3)
        assert g.objective_value == pytest.approx(b.objective_value, rel=1e-12)


class TestBruteForce:
    def test_single_point_picks_middle(self, gauss1d, box33):
        mu = grid_measure(box33, 61)
        spec = ObjectiveSpec(kind="supnorm", kernel=gauss1d, measure=mu, n=1, domain=box33)
        cands = np.linspace(-3, 3, 9)[:, None]
        result = brute_force(spec, cands, 1)
        assert result.points.points[0, 0] == pytest.approx(0.0)

    def test_never_beaten_by_greedy(self):
        spec = trace_spec(n=2, measure_nodes=13)
        cands = np.linspace(-3, 3, 8)[:, None]
        g = greedy_exchange(spec, cands, 2)
        b = brute_force(spec, cands, 2)
        assert b.objective_value <= g.objective_value + 1e-15

    def test_full_enumeration_deterministic(self, exp1d, box33):
        mu = grid_measure(box33, 41)
        spec = ObjectiveSpec(kind="trace", kernel=exp1d, measure=mu, n=2, domain=box33)
        cands = np.linspace(-3, 3, 8)[:, None]
        r1 = brute_force(spec, cands, 2)
        r2 = brute_force(spec, cands, 2)
        assert r1.starts_tried == 28
        assert np.array_equal(r1.points.points, r2.points.points)
        assert r1.best_start_index == r2.best_start_index

    def test_budget_guard(self):
        spec = trace_spec(n=10)
        cands = np.linspace(-3, 3, 150)[:, None]
        with pytest.raises(ValueError):
            brute_force(spec, cands, 10)


class TestSearchConfigValidation:
    def test_bad_values(self):
        with pytest.raises(ValueError):
            SearchConfig(restarts=0)
        with pytest.raises(ValueError):
            SearchConfig(tol=0.0)
        with pytest.raises(ValueError):
            SearchConfig(max_iters=0)
        with pytest.raises(ValueError):
            SearchConfig(simplex_scale=-1.0)
