"""Scalar special functions used by the correlation kernels.

Jacobi polynomials for arbitrary real parameters, Bessel functions of the
first kind and their primitives, Gauss-Jacobi quadrature, and the classical
Darboux/Hilb asymptotic approximants (kept here as cross-check oracles).

Every function is pure and accepts numpy arrays for the evaluation point.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "JacobiParams",
    "QuadratureRule",
    "binom",
    "jacobi_poly",
    "jacobi_poly_sum",
    "jacobi_poly_deriv",
    "jacobi_coefficients",
    "jacobi_recurrence",
    "jacobi_seed_degree",
    "jacobi_pair",
    "bessel_j",
    "bessel_j_series",
    "bessel_j_primitive",
    "log_gamma",
    "gauss_jacobi_rule",
    "gauss_legendre_rule",
    "darboux_approx",
    "hilb_approx",
    "hilb2_approx",
]


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents ``(a, b)`` of an ensemble and the polynomial
    parameters ``(A, B)`` its kernel is built from.

    Use the ``orthogonal``/``unitary``/``symplectic`` constructors; they fix
    the relation between the two pairs for the given symmetry class.
    """

    A: float
    B: float
    a: float
    b: float
    beta: int

    @classmethod
    def unitary(cls, a, b):
        return cls(float(a), float(b), float(a), float(b), 2)

    @classmethod
    def orthogonal(cls, a, b):
        return cls(2.0 * a + 1.0, 2.0 * b + 1.0, float(a), float(b), 1)

    @classmethod
    def symplectic(cls, a, b):
        return cls(a - 1.0, b - 1.0, float(a), float(b), 4)

    @classmethod
    def for_beta(cls, beta, a, b):
        try:
            maker = {1: cls.orthogonal, 2: cls.unitary, 4: cls.symplectic}[int(beta)]
        except KeyError:
            raise ValueError(f"beta must be 1, 2 or 4, got {beta!r}") from None
        return maker(a, b)

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta!r}")


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight ``(1-t)**alpha * (1+t)**beta`` on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    exponents: tuple

    def integrate(self, f):
        return np.dot(self.weights, f(self.nodes))

    def mapped(self, lo, hi):
        """Nodes and weights on [lo, hi], weight factors rescaled accordingly.

        The weight is taken in the mapped variable, i.e. the returned rule
        integrates ``g(t) * (hi-t)**alpha * (t-lo)**beta`` over [lo, hi].
        """
        half = 0.5 * (hi - lo)
        alpha, beta = self.exponents
        t = lo + half * (self.nodes + 1.0)
        w = self.weights * half ** (1.0 + alpha + beta)
        return t, w


# ---------------------------------------------------------------------------
# Jacobi polynomials


def binom(a, k):
    """Generalized binomial coefficient a(a-1)...(a-k+1)/k! for integer k.

    Finite for every real a, including negative integers where
    scipy.special.binom returns nan.
    """
    k = int(k)
    if k < 0:
        return 0.0
    val = float(special.binom(a, k))
    if np.isfinite(val):
        return val
    out = 1.0
    for i in range(k):
        out *= (a - i) / (i + 1)
    return out


def jacobi_coefficients(N, A, B):
    """Monomial coefficients (ascending powers of x) of P_N^{(A,B)}.

    Built from the finite binomial sum; exact up to roundoff and intended
    for small degrees (seeds and oracles).
    """
    from numpy.polynomial import polynomial as P

    lo = np.array([-0.5, 0.5])  # (x-1)/2
    hi = np.array([0.5, 0.5])   # (x+1)/2
    out = np.zeros(N + 1)
    for k in range(N + 1):
        c = binom(A + N, k) * binom(B + N, N - k)
        if c == 0.0:
            continue
        term = P.polymul(P.polypow(lo, N - k), P.polypow(hi, k))
        out[: len(term)] += c * term
    return out


def jacobi_poly_sum(N, A, B, x):
    """P_N^{(A,B)}(x) straight from the finite binomial sum.

    Cancels badly for large N; used as an independent oracle and to seed
    the recurrence past its degenerate steps.
    """
    x = np.asarray(x, dtype=float)
    lo = 0.5 * (x - 1.0)
    hi = 0.5 * (x + 1.0)
    total = np.zeros_like(x)
    for k in range(N + 1):
        total = total + (binom(A + N, k) * binom(B + N, N - k)
                         * lo ** (N - k) * hi ** k)
    return total


def jacobi_recurrence(n, A, B):
    """Coefficients ``(p, q, r)`` with P_n = (p x + q) P_{n-1} - r P_{n-2}.

    Valid for ``n >= 2`` whenever the step is not degenerate (see
    :func:`jacobi_seed_degree`); ``n == 1`` returns the explicit P_1.
    """
    if n == 1:
        return 0.5 * (A + B + 2.0), 0.5 * (A - B), 0.0
    s = 2.0 * n + A + B
    d = 2.0 * n * (n + A + B) * (s - 2.0)
    p = (s - 1.0) * s * (s - 2.0) / d
    q = (s - 1.0) * (A * A - B * B) / d
    r = 2.0 * (n + A - 1.0) * (n + B - 1.0) * s / d
    return p, q, r


def _degenerate_step(n, A, B):
    return min(abs(n + A + B), abs(2.0 * n + A + B - 2.0)) < 0.5


@lru_cache(maxsize=1024)
def jacobi_seed_degree(N, A, B):
    """Largest degree m <= N whose recurrence step is (nearly) singular.

    Degrees up to m are evaluated from the binomial sum; the recurrence
    takes over from m+1. Returns 1 when every step is regular.
    """
    m = 1
    for n in range(2, N + 1):
        if _degenerate_step(n, A, B):
            m = n
    return m


def jacobi_pair(N, A, B, x, deriv=False):
    """Return ``(P_{N-1}(x), P_N(x))``, optionally with first derivatives.

    With ``deriv=True`` returns ``(P_{N-1}, P_N, P'_{N-1}, P'_N)``.
    Requires ``N >= 1``.
    """
    from numpy.polynomial import polynomial as P

    x = np.asarray(x, dtype=float)
    m = min(jacobi_seed_degree(N, A, B), N)
    c_prev = jacobi_coefficients(m - 1, A, B)
    c_cur = jacobi_coefficients(m, A, B)
    p_prev = P.polyval(x, c_prev)
    p_cur = P.polyval(x, c_cur)
    if deriv:
        d_prev = P.polyval(x, P.polyder(c_prev)) if m > 1 else np.zeros_like(x)
        d_cur = P.polyval(x, P.polyder(c_cur))
    for n in range(m + 1, N + 1):
        p, q, r = jacobi_recurrence(n, A, B)
        lin = p * x + q
        p_next = lin * p_cur - r * p_prev
        if deriv:
            d_next = p * p_cur + lin * d_cur - r * d_prev
            d_prev, d_cur = d_cur, d_next
        p_prev, p_cur = p_cur, p_next
    if deriv:
        return p_prev, p_cur, d_prev, d_cur
    return p_prev, p_cur


def jacobi_poly(N, A, B, x):
    """Jacobi polynomial P_N^{(A,B)}(x) for any real A, B.

    Uses the three-term recurrence, seeded from the binomial sum when
    a low-order step is singular (A+B near a negative integer).

    Examples
    --------
    >>> float(jacobi_poly(3, 0.0, 0.0, 1.0))
    1.0
    """
    x = np.asarray(x, dtype=float)
    if N == 0:
        return np.ones_like(x)
    return jacobi_pair(N, A, B, x)[1]


def jacobi_poly_deriv(N, A, B, x):
    """d/dx P_N^{(A,B)}(x) = (N+A+B+1)/2 * P_{N-1}^{(A+1,B+1)}(x)."""
    x = np.asarray(x, dtype=float)
    if N == 0:
        return np.zeros_like(x)
    return 0.5 * (N + A + B + 1.0) * jacobi_poly(N - 1, A + 1.0, B + 1.0, x)


# ---------------------------------------------------------------------------
# Gamma and Bessel


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("log_gamma is defined here for positive arguments only")
    return special.gammaln(x)


def bessel_j(nu, z):
    """Bessel function of the first kind J_nu(z) for real order, z >= 0."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("bessel_j requires z >= 0")
    return special.jv(nu, z)


def bessel_j_series(nu, z, terms=60):
    """Truncated power series of J_nu(z); an oracle for small |z|."""
    z = np.asarray(z, dtype=float)
    half = 0.5 * z
    total = np.zeros_like(z)
    for k in range(terms):
        total = total + (-1.0) ** k * half ** (2 * k) * special.rgamma(nu + k + 1.0) / special.factorial(k)
    with np.errstate(divide="ignore", invalid="ignore"):
        pref = np.where(z == 0.0, 1.0 if nu == 0 else 0.0, half ** nu)
    if nu == 0:
        return total
    return np.where(z == 0.0, 0.0, pref * total)


def bessel_j_primitive(nu, x):
    """Primitive  int_0^x J_nu(t) dt, analytically continued in nu.

    Evaluated through the Neumann series ``2 * sum_k J_{nu+2k+1}(x)``,
    which equals the integral for nu > -1 and is the analytic continuation
    (in nu) for nu <= -1, where it satisfies
    ``prim(nu, x) = 2 J_{nu+1}(x) + prim(nu+2, x)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bessel_j_primitive requires x >= 0")
    nu, x = np.broadcast_arrays(np.asarray(nu, dtype=float), x)
    if x.size == 0:
        return np.zeros(x.shape)
    # terms decay like (x/2)^m / m! once the order exceeds x
    reach = float(np.max(x - nu))
    kmax = int(0.5 * max(reach, 0.0) + 0.6 * np.sqrt(float(np.max(x)) + 1.0) + 25)
    k = np.arange(kmax).reshape((-1,) + (1,) * x.ndim)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = special.jv(nu[None, ...] + 2.0 * k + 1.0, x[None, ...])
    out = 2.0 * np.sum(vals, axis=0)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Quadrature


@lru_cache(maxsize=512)
def _gauss_jacobi_cached(n, alpha, beta):
    k = np.arange(n, dtype=float)
    ab = alpha + beta
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (ab + 2.0)
    if n > 1:
        kk = k[1:]
        diag[1:] = (beta ** 2 - alpha ** 2) / ((2 * kk + ab) * (2 * kk + ab + 2.0))
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = np.sqrt(4.0 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab)))
        kk = k[2:]
        s = 2 * kk + ab
        off[1:] = np.sqrt(4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab)
                          / (s ** 2 * (s + 1.0) * (s - 1.0)))
    nodes, vecs = eigh_tridiagonal(diag, off)
    log_mu0 = ((ab + 1.0) * np.log(2.0) + special.gammaln(alpha + 1.0)
               + special.gammaln(beta + 1.0) - special.gammaln(ab + 2.0))
    weights = np.exp(log_mu0) * vecs[0, :] ** 2
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_jacobi_rule(n, alpha, beta_exp):
    """n-point Gauss rule for (1-t)**alpha (1+t)**beta_exp on [-1, 1].

    Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
    orthonormal recurrence. Exact for polynomials of degree <= 2n-1.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if alpha <= -1 or beta_exp <= -1:
        raise ValueError("weight exponents must exceed -1 (non-integrable weight)")
    nodes, weights = _gauss_jacobi_cached(int(n), float(alpha), float(beta_exp))
    return QuadratureRule(nodes, weights, (float(alpha), float(beta_exp)))


def gauss_legendre_rule(n):
    return gauss_jacobi_rule(n, 0.0, 0.0)


# ---------------------------------------------------------------------------
# Asymptotic approximants (test oracles)


def _shifted_degree(N, A, B):
    return N + 0.5 * (A + B + 1.0)


def darboux_approx(N, A, B, theta):
    """Main term of Darboux's formula for P_N^{(A,B)}(cos theta)."""
    theta = np.asarray(theta, dtype=float)
    gamma = -(A + 0.5) * np.pi / 2.0
    amp = (np.pi * N) ** -0.5 * np.sin(theta / 2) ** (-A - 0.5) * np.cos(theta / 2) ** (-B - 0.5)
    return amp * np.cos(_shifted_degree(N, A, B) * theta + gamma)


def hilb_approx(N, A, B, theta):
    """Main term of Hilb's formula (Szego's Jacobi form), A > -1.

    Approximates ``sin(theta/2)**A * cos(theta/2)**B * P_N(cos theta)``.
    """
    if A <= -1:
        raise ValueError("hilb_approx needs A > -1; use hilb2_approx")
    theta = np.asarray(theta, dtype=float)
    log_pref = -A * np.log(N) + special.gammaln(N + A + 1.0) - special.gammaln(N + 1.0)
    return (np.exp(log_pref) * np.sqrt(theta / np.sin(theta))
            * special.jv(A, _shifted_degree(N, A, B) * theta))


def hilb2_approx(N, A, B, theta):
    """Main term of Szego's Hilb-type formula valid for any real A.

    Approximates P_N^{(A,B)}(cos theta) itself:
    ``sin(t/2)**-A * cos(t/2)**-B * sqrt(t/sin t) * J_A(N' t)``.
    The error is theta**(1/2-A) O(N**-3/2) away from the endpoints.
    """
    theta = np.asarray(theta, dtype=float)
    return (np.sin(theta / 2) ** (-A) * np.cos(theta / 2) ** (-B)
            * np.sqrt(theta / np.sin(theta))
            * special.jv(A, _shifted_degree(N, A, B) * theta))
