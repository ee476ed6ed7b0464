"""Metropolis sampler for the Jacobi eigenvalue measure

    p(x) ~ |Van(x)|^beta prod (1 - x_j)^a (1 + x_j)^b   on [-1, 1]^R.

Many independent chains run side by side as numpy vectors. Each step
updates one coordinate with a uniform window proposal reflected at +-1.
The window is tuned during burn-in toward 30-50% acceptance.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class MCMCResult:
    samples: np.ndarray   # (n_samples, R), unsorted levels
    acceptance: float     # acceptance rate after burn-in
    width: float          # tuned proposal half-width
    chains: int


def _log_weight(x, a, b):
    with np.errstate(divide="ignore"):
        return a * np.log1p(-x) + b * np.log1p(x)


def _reflect(x):
    x = np.where(x > 1.0, 2.0 - x, x)
    return np.where(x < -1.0, -2.0 - x, x)


def _sweep(x, j_order, beta, a, b, width, rng):
    chains, R = x.shape
    accepted = 0
    for j in j_order:
        old = x[:, j]
        new = _reflect(old + width * rng.uniform(-1.0, 1.0, chains))
        others = np.delete(x, j, axis=1)
        with np.errstate(divide="ignore"):
            dvan = (np.sum(np.log(np.abs(others - new[:, None])), axis=1)
                    - np.sum(np.log(np.abs(others - old[:, None])), axis=1)) if R > 1 else 0.0
        dlog = beta * dvan + _log_weight(new, a, b) - _log_weight(old, a, b)
        ok = np.log(rng.uniform(size=chains)) < dlog
        x[:, j] = np.where(ok, new, old)
        accepted += int(np.count_nonzero(ok))
    return accepted


def mcmc_jacobi(R, beta, a, b, n_samples, burn_in=200, rng=None, chains=256,
                thin=None, return_info=False):
    """Draw ``n_samples`` level vectors from the Jacobi measure.

    ``burn_in`` and ``thin`` count sweeps (R single-coordinate updates);
    ``thin`` defaults to 5, i.e. 5R updates between kept samples.
    """
    if R < 1:
        raise ValueError("R must be positive")
    if a <= -1 or b <= -1:
        raise ValueError("a and b must exceed -1")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng() if rng is None else rng
    thin = 5 if thin is None else int(thin)
    chains = int(min(chains, n_samples))
    # start near the arcsine quantiles, shuffled per chain
    base = np.cos(np.pi * (np.arange(R) + 0.5) / R)
    x = np.tile(base, (chains, 1)) + 0.01 * rng.uniform(-1, 1, (chains, R))
    x = np.clip(x, -0.999, 0.999)
    width = min(1.0, 2.0 / R)
    order = np.arange(R)
    for s in range(burn_in):
        acc = _sweep(x, order, beta, a, b, width, rng) / (chains * R)
        if acc > 0.5:
            width = min(width * 1.25, 1.0)
        elif acc < 0.3:
            width = width / 1.25
    kept = -(-n_samples // chains)
    out = np.empty((kept, chains, R))
    total = 0
    for i in range(kept):
        for _ in range(thin):
            total += _sweep(x, order, beta, a, b, width, rng)
        out[i] = x
    samples = out.reshape(-1, R)[:n_samples]
    if not return_info:
        return samples
    rate = total / (kept * thin * chains * R)
    return MCMCResult(samples=samples, acceptance=rate, width=width, chains=chains)
