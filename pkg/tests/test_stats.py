import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sst

from symrmt import ensembles as ens
from symrmt import kernels_finite as kf
from symrmt import kernels_limit as kl
from symrmt import stats


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10 ** 6), bins=st.integers(2, 80), n=st.integers(1, 500))
def test_histogram_has_unit_mass(seed, bins, n):
    x = np.random.default_rng(seed).standard_normal(n)
    h = stats.empirical_density(x, bins=bins)
    assert h.mass() == pytest.approx(1.0, rel=1e-12)
    assert h.counts.sum() == n


def test_histogram_edge_cases():
    h = stats.empirical_density([2.0, 2.0, 2.0])
    assert h.density.tolist() == [1.0] and h.counts.tolist() == [3]
    with pytest.raises(ValueError):
        stats.empirical_density([])
    with pytest.raises(ValueError):
        stats.empirical_density([1.0, 2.0], bins=1)
    with pytest.raises(ValueError):
        stats.empirical_density([5.0], range=(0, 1))
    assert np.allclose(stats.empirical_density([0.0, 1.0], bins=4).centers, [0.125, 0.375, 0.625, 0.875])


def test_ks_examples():
    assert stats.ks_distance([0.5], stats.uniform_cdf(0, 1)) == pytest.approx(0.5)
    assert stats.ks_distance([0.25, 0.75], stats.uniform_cdf(0, 1)) == pytest.approx(0.25)
    assert stats.ks_two_sample([1, 2, 3], [1, 2, 3]) == 0.0
    assert stats.ks_two_sample([0.0], [1.0]) == 1.0
    with pytest.raises(ValueError):
        stats.ks_distance([], stats.arcsine_cdf)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 300))
def test_ks_matches_scipy(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    assert stats.ks_distance(x, sst.norm.cdf) == pytest.approx(sst.kstest(x, "norm").statistic, abs=1e-12)
    y = rng.standard_normal(n + 7)
    assert stats.ks_two_sample(x, y) == pytest.approx(sst.ks_2samp(x, y).statistic, abs=1e-12)


def test_arcsine_cdf():
    assert stats.arcsine_cdf(0.0) == pytest.approx(0.5)
    th = np.random.default_rng(0).uniform(0, np.pi, 20000)
    assert stats.ks_distance(np.cos(th), stats.arcsine_cdf) < 0.015


def test_tabulated_cdf():
    F = stats.tabulated_cdf(lambda t: 3 * t ** 2, 0.0, 1.0)
    assert F(0.5) == pytest.approx(0.125, abs=1e-5)
    G = stats.edge_cdf(2, 0.5, xi_max=3.0)
    assert G(0.0) == 0.0 and G(3.0) == pytest.approx(1.0)
    assert np.all(np.diff(G(np.linspace(0, 3, 50))) >= 0)


@settings(max_examples=30, deadline=None)
@given(z=st.floats(-0.9, 0.9), R=st.integers(1, 500), xi=st.floats(-3, 3))
def test_bulk_rescale_round_trip(z, R, xi):
    theta = kl.LocalCoords(z, R).angle(xi)
    assert stats.rescale_levels(theta, "bulk", z, R) == pytest.approx(xi, abs=1e-9)


def test_edge_rescaling():
    R = 40
    assert stats.rescale_levels(np.pi / 40, "hard_edge_plus", 1.0, R) == pytest.approx(1.0)
    assert stats.rescale_levels(np.pi - np.pi / 40, "hard_edge_minus", -1.0, R) == pytest.approx(1.0)
    xi = stats.edge_levels(np.array([[0.01, 1.0, 3.0]]), R)
    assert np.all(xi < R / 4)
    assert xi.size == 1
    with pytest.raises(ValueError):
        stats.rescale_levels(0.1, "bulk", 1.0, R)
    with pytest.raises(ValueError):
        stats.rescale_levels(0.1, "hard_edge_plus", 0.5, R)
    with pytest.raises(ValueError):
        stats.rescale_levels(0.1, "middle", 0.0, R)


def test_poisson_pair_correlation_is_flat():
    rng = np.random.default_rng(0)
    draws = [rng.uniform(0, 100, 100) for _ in range(400)]
    g = stats.pair_correlation_estimate(draws, (30, 70), bins=10, r_max=5)
    assert np.max(np.abs(g.density - 1)) < 0.08


def test_cue_pair_correlation():
    R = 60
    th = ens.sample_thetas(ens.EnsembleSpec("CUE", R), 1000, seed=0)
    draws = th * R / (2 * np.pi)
    g = stats.pair_correlation_estimate(draws, (10, 50), bins=15, r_max=3)
    assert np.max(np.abs(g.density - stats.sine_pair_correlation(g.centers))) < 0.08


def test_pair_correlation_input_checks():
    with pytest.raises(ValueError):
        stats.pair_correlation_estimate([np.arange(5.0)] * 10, (0, 5), 5)
    with pytest.raises(ValueError):
        stats.pair_correlation_estimate([np.arange(5.0)] * 100, (3, 3), 5)
    with pytest.raises(ValueError):
        stats.pair_correlation_estimate([np.arange(5.0)] * 100, (50, 60), 5)


def test_convergence_report_bulk():
    grid = np.linspace(-1, 1, 5)
    reps = stats.convergence_report(lambda R: (lambda x, y: kf.cd_kernel(R, 0.0, 0.0, x, y)),
                                    kl.sine_scalar, grid, [50, 100], tolerance=0.05, name="bulk")
    assert [r.test_name for r in reps] == ["bulk R=50", "bulk R=100"]
    assert reps[1].max_abs_error < reps[0].max_abs_error < 0.05
    assert reps[1].passed
    d = reps[0].to_dict()
    assert d["pass"] is True and "passed" not in d


def test_convergence_report_requires_trend():
    grid = np.linspace(-1, 1, 3)
    reps = stats.convergence_report(lambda R: (lambda x, y: 0 * x + 1.0), kl.sine_scalar, grid, [10, 20])
    assert not reps[-1].passed
