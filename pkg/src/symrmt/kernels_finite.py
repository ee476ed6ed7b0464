"""Finite-rank correlation kernels of the Jacobi ensembles.

The unitary kernel is the Christoffel-Darboux projector. The orthogonal and
symplectic kernels are obtained from it by the rank-one summation formulas

    S_R1(x, y) = sqrt((1-x^2)/(1-y^2)) K_{R-1}(x, y) + c_{R-2} psi_{R-1}(y) (eps psi_{R-2})(x)
    S_R4(x, y) = 1/2 sqrt(...) K_{2R}(x, y) - 1/2 c_{2R-1} psi_{2R}(y) (delta psi_{2R-1})(x)

with (A, B) = (2a+1, 2b+1) and (a-1, b-1) respectively. For the symplectic
case with a <= 0 the delta operator is replaced by its analytic continuation
in A.

The divided difference in the Christoffel-Darboux formula is never formed
explicitly: G_n = [P_n(x)P_{n-1}(y) - P_{n-1}(x)P_n(y)]/(x-y) obeys
G_n = p_n P_{n-1}(x) P_{n-1}(y) + r_n G_{n-1}, so the kernel is smooth
through the diagonal with no switching.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import special

from .specfun import (
    JacobiParams,
    binom,
    gauss_jacobi_rule,
    gauss_legendre_rule,
    jacobi_coefficients,
    jacobi_pair,
    jacobi_poly,
    jacobi_recurrence,
    jacobi_seed_degree,
)

DELTA_SWITCH = -1.0 + 1e-6


@dataclass(frozen=True)
class KernelBlock:
    """One 2x2 entry of a matrix kernel: [[S, I - delta*eps], [D, S^T]]."""

    S: float
    Iminus: float
    D: float
    ST: float
    delta_flag: int

    def as_array(self):
        return np.array([[self.S, self.Iminus], [self.D, self.ST]])


@dataclass(frozen=True)
class PsiData:
    N: int
    params: JacobiParams
    c_N: float


def weight(x, a, b):
    """|1-x|^a |1+x|^b (infinite at an endpoint with negative exponent)."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.abs(1.0 - x) ** a * np.abs(1.0 + x) ** b


def _check_open(*vals):
    for v in vals:
        if np.any(np.abs(np.asarray(v, dtype=float)) >= 1.0):
            raise ValueError("points must lie in the open interval (-1, 1)")


def _signed_log_gamma(z):
    return special.gammaln(z), special.gammasgn(z)


def _gamma_ratio(num, den):
    """prod Gamma(num) / prod Gamma(den); zero when a denominator has a pole."""
    if any(z <= 0 and float(z).is_integer() for z in den):
        return 0.0
    logv, sign = 0.0, 1.0
    for z in num:
        l, s = _signed_log_gamma(z)
        logv, sign = logv + l, sign * s
    for z in den:
        l, s = _signed_log_gamma(z)
        logv, sign = logv - l, sign * s
    return sign * np.exp(logv)


def cd_constant(N, A, B):
    """Prefactor of the Christoffel-Darboux formula for K_{N2}^{(A,B)}."""
    return (2.0 ** (-A - B) / (2 * N + A + B)
            * _gamma_ratio([N + 1.0, N + A + B + 1.0], [N + A, N + B]))


def c_coefficient(N, A, B):
    """c_N = 2^{-A-B-1} Gamma(N+2)Gamma(N+A+B+2) / (Gamma(N+A+1)Gamma(N+B+1))."""
    return 2.0 ** (-A - B - 1) * _gamma_ratio([N + 2.0, N + A + B + 2.0],
                                               [N + A + 1.0, N + B + 1.0])


def psi_data(N, params):
    return PsiData(N, params, c_coefficient(N, params.A, params.B))


@lru_cache(maxsize=128)
def _divided_seed(m, A, B):
    """Bivariate monomial coefficients of G_m (rows: powers of x)."""
    c = jacobi_coefficients(m, A, B)
    d = jacobi_coefficients(m - 1, A, B)
    d = np.concatenate([d, np.zeros(len(c) - len(d))])
    g = np.zeros((m, m))
    for i in range(m + 1):
        for j in range(i):
            mij = c[i] * d[j] - d[i] * c[j]
            if mij == 0.0:
                continue
            for k in range(i - j):
                g[j + k, i - 1 - k] += mij
    return g


def cd_divided(N, A, B, x, y, deriv=False):
    """G_N(x, y) and optionally dG_N/dx, via the G recurrence.

    x and y broadcast against each other.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    m = jacobi_seed_degree(N, A, B) if N > 1 else 1
    m = min(m, N)
    if m == 1:
        G = np.full(x.shape, jacobi_recurrence(1, A, B)[0])
        Gx = np.zeros(x.shape)
    else:
        g = _divided_seed(m, A, B)
        G = P.polyval2d(x, y, g)
        Gx = P.polyval2d(x, y, P.polyder(g, axis=0)) if deriv else None
    if N == m:
        return (G, Gx) if deriv else G
    # P_{m-1}, P_m at x and y, then recur upward
    if deriv:
        px0, px1, dx0, dx1 = jacobi_pair(m, A, B, x, deriv=True)
    else:
        px0, px1 = jacobi_pair(m, A, B, x)
    py0, py1 = jacobi_pair(m, A, B, y)
    for n in range(m + 1, N + 1):
        p, q, r = jacobi_recurrence(n, A, B)
        G = p * px1 * py1 + r * G
        if deriv:
            Gx = p * dx1 * py1 + r * Gx
            lin = p * x + q
            dnew = p * px1 + lin * dx1 - r * dx0
            dx0, dx1 = dx1, dnew
        if n < N:
            px0, px1 = px1, (p * x + q) * px1 - r * px0
            py0, py1 = py1, (p * y + q) * py1 - r * py0
    return (G, Gx) if deriv else G


def cd_kernel(N, A, B, x, y):
    """Unitary Jacobi kernel K_{N2}^{(A,B)}(x, y) on (-1, 1)^2.

    Examples
    --------
    >>> round(float(cd_kernel(1, 0.0, 0.0, 0.2, -0.4)), 12)
    0.5
    """
    if N < 1:
        raise ValueError("cd_kernel needs N >= 1")
    _check_open(x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    G = cd_divided(N, A, B, x, y)
    out = cd_constant(N, A, B) * np.sqrt(weight(x, A, B) * weight(y, A, B)) * G
    return out if np.ndim(out) else float(out)


def psi(N, A, B, t):
    """psi_N(t) = (1-t)^{(A-1)/2} (1+t)^{(B-1)/2} P_N^{(A,B)}(t)."""
    t = np.asarray(t, dtype=float)
    if (A < 1 and np.any(t >= 1)) or (B < 1 and np.any(t <= -1)):
        raise ValueError("psi is singular at this endpoint")
    out = weight(t, 0.5 * (A - 1), 0.5 * (B - 1)) * jacobi_poly(N, A, B, t)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# weighted integrals  int_lo^hi (1-t)^alpha (1+t)^gamma p(t) dt


def _angle_panels(phi_a, phi_b, hmax):
    edges = [phi_a]
    phi = phi_a
    while phi < phi_b:
        step = min(hmax, phi, 0.5 * (np.pi - phi))
        nxt = phi + step
        if nxt >= phi_b or phi_b - nxt < 1e-15:
            nxt = phi_b
        edges.append(nxt)
        phi = nxt
    return np.array(edges)


def _segment(alpha, gamma, p, lo, hi, deg):
    """Interior segment: Gauss-Legendre panels in the angle t = cos(phi)."""
    phi_a, phi_b = np.arccos(hi), np.arccos(lo)
    edges = _angle_panels(phi_a, phi_b, np.pi / (deg + 2))
    rule = gauss_legendre_rule(16)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    phi = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    w = (half[:, None] * rule.weights[None, :]).ravel()
    s, c = np.sin(0.5 * phi), np.cos(0.5 * phi)
    t = np.cos(phi)
    f = (2 * s * s) ** alpha * (2 * c * c) ** gamma * np.sin(phi) * p(t)
    return float(np.dot(w, f))


def _right_end(alpha, gamma, p, lo, deg):
    """int_lo^1 for lo >= 0: Gauss-Jacobi with the (1-t)^alpha weight."""
    rule = gauss_jacobi_rule(deg // 2 + 30, alpha, 0.0)
    t, w = rule.mapped(lo, 1.0)
    return float(np.dot(w, (1.0 + t) ** gamma * p(t)))


def weighted_integral(alpha, gamma, p, lo, hi, deg):
    """int_lo^hi (1-t)^alpha (1+t)^gamma p(t) dt, with p a polynomial-like
    callable of degree about ``deg`` and -1 <= lo <= hi <= 1.
    """
    if lo > hi:
        return -weighted_integral(alpha, gamma, p, hi, lo, deg)
    if lo == hi:
        return 0.0
    if lo == -1.0:
        # mirror t -> -t
        return weighted_integral(gamma, alpha, lambda s: p(-s), -hi, 1.0, deg)
    if hi == 1.0:
        if lo >= 0.0:
            return _right_end(alpha, gamma, p, lo, deg)
        return _right_end(alpha, gamma, p, 0.0, deg) + _segment(alpha, gamma, p, lo, 0.0, deg)
    return _segment(alpha, gamma, p, lo, hi, deg)


def eps_apply(N, A, B, x):
    """(eps psi_N)(x) = 1/2 int_{-1}^x psi_N - 1/2 int_x^1 psi_N."""
    if A <= -1 or B <= -1:
        raise ValueError("eps_apply needs A, B > -1")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    _check_open(xs)
    al, ga = 0.5 * (A - 1), 0.5 * (B - 1)
    p = lambda t: jacobi_poly(N, A, B, t)
    out = np.empty_like(xs)
    for i, xv in enumerate(xs):
        out[i] = 0.5 * (weighted_integral(al, ga, p, -1.0, xv, N)
                        - weighted_integral(al, ga, p, xv, 1.0, N))
    return out if np.ndim(x) else float(out[0])


def _taylor_at_one(N, A, B, terms=24):
    """Coefficients c_j with P_N(t) - P_N(1) = sum_{j>=1} c_j (t-1)^j."""
    j = np.arange(1, min(N, terms) + 1, dtype=float)
    return special.poch(N + A + B + 1.0, j) / (2.0 ** j * special.factorial(j)) * np.array([binom(N + A, N - int(i)) for i in j])


def _difference_quotient(N, A, B):
    """t -> (P_N(t) - P_N(1)) / (1 - t), stable near t = 1."""
    p1 = binom(N + A, N)
    coef = _taylor_at_one(N, A, B)
    h = 0.5 / max(N, 1) ** 2

    def q(t):
        t = np.asarray(t, dtype=float)
        s = 1.0 - t
        near = s < h
        sd = np.where(near, 1.0, s)
        direct = (jacobi_poly(N, A, B, t) - p1) / sd
        powers = (-np.where(near, s, 0.0))[..., None] ** np.arange(len(coef))
        series = -(powers @ coef)
        return np.where(near, series, direct)

    return q


def delta_apply(N, A, B, x):
    """(delta psi_N)(x) = int_x^1 psi_N, analytically continued to A > -2."""
    if A <= -2:
        raise ValueError("delta_apply needs A > -2")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= -1) or np.any(xs > 1):
        raise ValueError("delta_apply needs x in (-1, 1]")
    out = np.empty_like(xs)
    if A > DELTA_SWITCH:
        p = lambda t: jacobi_poly(N, A, B, t)
        for i, xv in enumerate(xs):
            out[i] = weighted_integral(0.5 * (A - 1), 0.5 * (B - 1), p, xv, 1.0, N)
        return out if np.ndim(x) else float(out[0])
    q = _difference_quotient(N, A, B)
    one = lambda t: np.ones_like(t)
    lead = binom(A + N, N - 1) / N
    for i, xv in enumerate(xs):
        regular = weighted_integral(0.5 * (A + 1), 0.5 * (B - 1), q, xv, 1.0, N)
        boundary = 2.0 * (1.0 - xv) ** (0.5 * (A + 1)) * (1.0 + xv) ** (0.5 * (B - 1))
        if B != 1.0:
            boundary += (B - 1.0) * weighted_integral(0.5 * (A + 1), 0.5 * (B - 3), one, xv, 1.0, 0)
        out[i] = regular + lead * boundary
    return out if np.ndim(x) else float(out[0])


# ---------------------------------------------------------------------------
# summation-formula kernels


def _check_r1(R, a, b):
    if R % 2:
        raise ValueError("the orthogonal summation formula needs R even")
    if R < 2:
        raise ValueError("R must be at least 2")
    if a <= -1 or b <= -1:
        raise ValueError("a, b must exceed -1")


def _check_r4(R, a, b):
    if R < 1:
        raise ValueError("R must be positive")
    if a <= -1 or b <= -1:
        raise ValueError("a, b must exceed -1")


def _vfactor(x, A, B):
    # sqrt(1-x^2) sqrt(w(x)) and its log-derivative
    v = weight(x, 0.5 * (A + 1), 0.5 * (B + 1))
    dlog = -0.5 * (A + 1) / (1 - x) + 0.5 * (B + 1) / (1 + x)
    return v, dlog


class _Ingredients:
    """Everything the beta = 1 or 4 kernel needs, for fixed (R, a, b)."""

    def __init__(self, beta, R, a, b):
        self.beta = beta
        if beta == 1:
            _check_r1(R, a, b)
            self.A, self.B = 2.0 * a + 1, 2.0 * b + 1
            self.Nk, self.half = R - 1, 1.0
            self.n_op, self.n_y = R - 2, R - 1
            self.cc = c_coefficient(R - 2, self.A, self.B)
        elif beta == 4:
            _check_r4(R, a, b)
            self.A, self.B = a - 1.0, b - 1.0
            self.Nk, self.half = 2 * R, 0.5
            self.n_op, self.n_y = 2 * R - 1, 2 * R
            self.cc = -0.5 * c_coefficient(2 * R - 1, self.A, self.B)
        else:
            raise ValueError("beta must be 1 or 4")
        self.C = self.half * cd_constant(self.Nk, self.A, self.B)
        self._op_cache = {}

    def op(self, x):
        """eps psi (beta 1) or delta psi (beta 4) at scalar x."""
        key = float(x)
        if key not in self._op_cache:
            if self.beta == 1:
                val = eps_apply(self.n_op, self.A, self.B, key)
            else:
                val = delta_apply(self.n_op, self.A, self.B, key)
            self._op_cache[key] = val
        return self._op_cache[key]

    def ops(self, x):
        x = np.asarray(x, dtype=float)
        flat = np.array([self.op(v) for v in x.ravel()])
        return flat.reshape(x.shape)

    def u(self, z):
        return weight(z, 0.5 * (self.A - 1), 0.5 * (self.B - 1))

    def S(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        v, _ = _vfactor(x, self.A, self.B)
        G = cd_divided(self.Nk, self.A, self.B, x, y)
        first = self.C * v * self.u(y) * G
        second = self.cc * psi(self.n_y, self.A, self.B, y) * self.ops(x)
        return first + second

    def D(self, x, y):
        v, dlog = _vfactor(x, self.A, self.B)
        G, Gx = cd_divided(self.Nk, self.A, self.B, x, y, deriv=True)
        first = self.C * self.u(y) * v * (dlog * G + Gx)
        dop = psi(self.n_op, self.A, self.B, x)
        if self.beta == 4:
            dop = -dop
        return first + self.cc * psi(self.n_y, self.A, self.B, y) * dop

    def I(self, x, y):
        """-int_x^y S(x, z) dz."""
        if x == y:
            return 0.0
        al, ga = 0.5 * (self.A - 1), 0.5 * (self.B - 1)
        v, _ = _vfactor(x, self.A, self.B)
        g = lambda z: cd_divided(self.Nk, self.A, self.B, x, z)
        first = self.C * v * weighted_integral(al, ga, g, x, y, self.Nk)
        pn = lambda z: jacobi_poly(self.n_y, self.A, self.B, z)
        second = self.cc * self.op(x) * weighted_integral(al, ga, pn, x, y, self.n_y)
        return -(first + second)


@lru_cache(maxsize=64)
def _ingredients(beta, R, a, b):
    return _Ingredients(beta, R, float(a), float(b))


def s_r1(R, a, b, x, y):
    """Orthogonal-ensemble scalar kernel S_R1^{(a,b)}(x, y), R even."""
    _check_r1(R, a, b)
    _check_open(x, y)
    out = _ingredients(1, R, a, b).S(x, y)
    return out if np.ndim(out) else float(out)


def s_r4(R, a, b, x, y):
    """Symplectic-ensemble scalar kernel S_R4^{(a,b)}(x, y)."""
    _check_r4(R, a, b)
    _check_open(x, y)
    out = _ingredients(4, R, a, b).S(x, y)
    return out if np.ndim(out) else float(out)


def kernel_block(beta, R, a, b, x, y):
    """The 2x2 matrix-kernel entry at (x, y) for beta = 1 or 4."""
    _check_open(x, y)
    ing = _ingredients(beta, R, a, b)
    x, y = float(x), float(y)
    S = float(ing.S(x, y))
    ST = float(ing.S(y, x))
    D = float(ing.D(x, y))
    I = ing.I(x, y)
    eps = 0.5 * np.sign(x - y) if beta == 1 else 0.0
    return KernelBlock(S=S, Iminus=I - eps, D=D, ST=ST, delta_flag=int(beta == 1))


def block_function(beta, R, a, b):
    return lambda x, y: kernel_block(beta, R, a, b, x, y)


def assemble_matrix_kernel(beta, R, a, b, points):
    """2n x 2n self-dual matrix [[S, I - delta eps], [D, S^T]] on the points."""
    from .qdet import assemble_blocks

    pts = [float(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    return assemble_blocks(block_function(beta, R, a, b), pts)
