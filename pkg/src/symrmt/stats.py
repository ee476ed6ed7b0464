"""Empirical statistics: histograms, KS distances, level rescaling,
pair correlation and finite-R kernel convergence reports."""

from dataclasses import dataclass, asdict

import numpy as np

from .kernels_limit import LocalCoords, edge_density
from .specfun import gauss_legendre_rule


@dataclass
class StatReport:
    test_name: str
    sample_count: int = 0
    bins: int = 0
    ks_distance: float = float("nan")
    max_abs_error: float = float("nan")
    l2_error: float = float("nan")
    tolerance: float = float("nan")
    passed: bool = False

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class Histogram:
    edges: np.ndarray
    density: np.ndarray
    counts: np.ndarray

    @property
    def centers(self):
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def widths(self):
        return np.diff(self.edges)

    def mass(self):
        return float(np.sum(self.density * self.widths))


def empirical_density(samples, bins=50, range=None):
    """Histogram normalized to unit mass.

    A constant sample with no range gives a single spike bin.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empirical_density needs at least one sample")
    if int(bins) < 2:
        raise ValueError("bins must be at least 2")
    if range is None:
        lo, hi = float(x.min()), float(x.max())
        if lo == hi:
            edges = np.array([lo - 0.5, lo + 0.5])
            return Histogram(edges, np.array([1.0]), np.array([x.size]))
        range = (lo, hi)
    counts, edges = np.histogram(x, bins=int(bins), range=range)
    total = counts.sum()
    if total == 0:
        raise ValueError("no samples inside the histogram range")
    return Histogram(edges, counts / (total * np.diff(edges)), counts)


def ks_distance(samples, cdf):
    """sup |F_n - F| for a vectorized reference cdf."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise ValueError("ks_distance needs samples")
    F = np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n), 0.0))


def ks_two_sample(x, y):
    x = np.sort(np.asarray(x, dtype=float).ravel())
    y = np.sort(np.asarray(y, dtype=float).ravel())
    if x.size == 0 or y.size == 0:
        raise ValueError("ks_two_sample needs samples")
    z = np.concatenate([x, y])
    Fx = np.searchsorted(x, z, side="right") / x.size
    Fy = np.searchsorted(y, z, side="right") / y.size
    return float(np.max(np.abs(Fx - Fy)))


def uniform_cdf(lo, hi):
    return lambda t: np.clip((np.asarray(t) - lo) / (hi - lo), 0.0, 1.0)


def arcsine_cdf(t):
    """cdf of x = cos(theta) with theta uniform on [0, pi]."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    return 1.0 - np.arccos(t) / np.pi


REFERENCE_CDFS = {
    "uniform": uniform_cdf(-1.0, 1.0),
    "uniform-theta": uniform_cdf(0.0, np.pi),
    "arcsine": arcsine_cdf,
}


def tabulated_cdf(density, lo, hi, panels=600, order=8):
    """cdf on [lo, hi] of a positive density, normalized on that interval.

    Gauss-Legendre on each panel, linear interpolation between panel ends.
    """
    rule = gauss_legendre_rule(order)
    t, w = rule.nodes, rule.weights
    edges = np.linspace(lo, hi, panels + 1)
    h = np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = mid[:, None] + 0.5 * h[:, None] * t[None, :]
    mass = np.sum(density(nodes) * w[None, :], axis=1) * 0.5 * h
    cum = np.concatenate([[0.0], np.cumsum(mass)])
    cum /= cum[-1]
    return lambda x: np.interp(np.asarray(x, dtype=float), edges, cum)


def edge_cdf(beta, a, xi_max=3.0):
    """Reference cdf of edge levels conditioned on (0, xi_max]."""
    return tabulated_cdf(lambda s: edge_density(beta, a, s), 0.0, xi_max)


def rescale_levels(thetas, regime, z_o, R):
    """Local coordinates of eigenangles near x = z_o."""
    th = np.asarray(thetas, dtype=float)
    if regime == "bulk":
        if not abs(z_o) < 1:
            raise ValueError("bulk rescaling needs |z_o| < 1")
        return (th - np.arccos(z_o)) * R / np.pi
    if regime == "hard_edge_plus":
        if z_o != 1:
            raise ValueError("the +1 hard edge needs z_o = 1")
        return th * R / np.pi
    if regime == "hard_edge_minus":
        if z_o != -1:
            raise ValueError("the -1 hard edge needs z_o = -1")
        return (np.pi - th) * R / np.pi
    raise ValueError("regime must be bulk, hard_edge_plus or hard_edge_minus")


def edge_levels(thetas, R, edge=+1):
    """Pooled edge-rescaled levels, kept only inside the window xi < R/4."""
    regime = "hard_edge_plus" if edge > 0 else "hard_edge_minus"
    xi = rescale_levels(thetas, regime, float(np.sign(edge)), R).ravel()
    return xi[(xi > 0) & (xi < R / 4)]


def pair_correlation_estimate(draws, window, bins, r_max=None):
    """Two-level correlation g(r) from per-draw rescaled levels.

    Ordered pairs (i, j), i != j, with xi_i in ``window`` are binned by
    |xi_j - xi_i|; counts are divided by the Poisson expectation
    n_window * rho * 2 dr, with rho the observed density in the window,
    so g -> 1 at large r for unit-density data.
    """
    draws = [np.asarray(d, dtype=float).ravel() for d in draws]
    if len(draws) < 100:
        raise ValueError("pair correlation needs at least 100 draws")
    lo, hi = window
    if not hi > lo:
        raise ValueError("window must have positive width")
    r_max = 0.5 * (hi - lo) if r_max is None else r_max
    edges = np.linspace(0.0, r_max, int(bins) + 1)
    counts = np.zeros(int(bins))
    n_in = 0
    for xi in draws:
        inside = xi[(xi >= lo) & (xi < hi)]
        n_in += inside.size
        if inside.size == 0:
            continue
        r = np.abs(xi[None, :] - inside[:, None]).ravel()
        r = r[r > 0]
        counts += np.histogram(r, bins=edges)[0]
    if n_in == 0:
        raise ValueError("no levels inside the window")
    rho = n_in / (len(draws) * (hi - lo))
    expected = n_in * rho * 2 * np.diff(edges)
    return Histogram(edges, counts / expected, counts)


def sine_pair_correlation(r):
    r = np.asarray(r, dtype=float)
    return 1.0 - np.sinc(r) ** 2


def convergence_report(finite_kernel, limit_kernel, grid, R_list, beta=2, z_o=0.0,
                       tolerance=np.inf, name="convergence"):
    """Compare rescaled finite-R kernels against a limit on grid x grid.

    ``finite_kernel(R)`` returns a vectorized f(x, y) in the original
    variable: the scalar kernel for beta = 2, the S entry otherwise.
    The scalar kernel is rescaled by sqrt|X'(u) X'(v)|, the S entry by
    |X'(v)|, with X the localization map at z_o. The last report's
    ``passed`` also requires a decreasing error trend.
    """
    g = np.asarray(grid, dtype=float)
    u, v = np.meshgrid(g, g, indexing="ij")
    limit = np.asarray(limit_kernel(u, v), dtype=float)
    reports = []
    for R in R_list:
        lc = LocalCoords(z_o, R)
        f = finite_kernel(R)
        raw = np.asarray(f(lc.x(u), lc.x(v)), dtype=float)
        if beta == 2:
            fin = np.sqrt(np.abs(lc.dx(u) * lc.dx(v))) * raw
        else:
            fin = np.abs(lc.dx(v)) * raw
        err = np.abs(fin - limit)
        mx = float(np.max(err))
        reports.append(StatReport(test_name=f"{name} R={R}", sample_count=int(err.size),
                                  max_abs_error=mx, l2_error=float(np.sqrt(np.mean(err ** 2))),
                                  tolerance=float(tolerance), passed=mx <= tolerance))
    errs = [r.max_abs_error for r in reports]
    trend = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    reports[-1].passed = reports[-1].passed and trend
    return reports
