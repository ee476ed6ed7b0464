"""Limiting correlation kernels.

Bulk: the arcsine global density and the scalar/matrix sine kernels.
Hard edge: the scalar Bessel kernel, the one-point densities and the
matrix Bessel kernels for beta = 1, 4 (with the analytic continuation of
the beta = 4 kernel to -1 < a <= 0).

Local coordinates follow ``x = cos(alpha_o + pi * xi / R)``; at the edge
``z_o = +1`` this is ``x = cos(pi * xi / R)`` with ``xi > 0``. The edge
``z_o = -1`` is handled by the mirror ``x -> -x`` with ``a`` replaced by ``b``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .kernels_finite import KernelBlock
from .specfun import bessel_j_primitive, gauss_jacobi_rule, gauss_legendre_rule

DIAG_TOL = 1e-7

REGIMES = ("bulk", "hard_edge_plus", "hard_edge_minus")


@dataclass(frozen=True)
class LocalCoords:
    """Localization map around the level ``z_o`` at rank ``R``."""

    z_o: float
    R: int

    def __post_init__(self):
        if not -1.0 <= self.z_o <= 1.0:
            raise ValueError("z_o must lie in [-1, 1]")
        if self.R < 1:
            raise ValueError("R must be positive")

    @property
    def alpha_o(self):
        return float(np.arccos(self.z_o))

    @property
    def regime(self):
        if self.z_o == 1.0:
            return "hard_edge_plus"
        if self.z_o == -1.0:
            return "hard_edge_minus"
        return "bulk"

    def angle(self, xi):
        return self.alpha_o + np.pi * np.asarray(xi, dtype=float) / self.R

    def x(self, xi):
        return np.cos(self.angle(xi))

    def dx(self, xi):
        """dx/dxi (negative: the map reverses orientation)."""
        return -np.pi / self.R * np.sin(self.angle(xi))


@dataclass(frozen=True)
class LimitKernelSpec:
    beta: int
    regime: str = "bulk"
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError("beta must be 1, 2 or 4")
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}")
        if self.regime != "bulk" and self.edge_exponent <= -1:
            raise ValueError("edge exponent must exceed -1")

    @property
    def edge_exponent(self):
        return self.b if self.regime == "hard_edge_minus" else self.a


def global_density(x):
    """Arcsine density 1/(pi sqrt(1-x^2))."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1):
        raise ValueError("global_density needs |x| < 1")
    return 1.0 / (np.pi * np.sqrt(1.0 - x * x))


# ---------------------------------------------------------------------------
# sine kernels


def _sinc(z):
    z = np.asarray(z, dtype=float)
    return np.sinc(z / np.pi)


def _sinc_prime(z):
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-3
    zs = np.where(small, 1.0, z)
    big = (zs * np.cos(zs) - np.sin(zs)) / zs ** 2
    return np.where(small, -z / 3.0 + z ** 3 / 30.0, big)


def sine_scalar(xi, eta):
    """sin(pi(xi-eta)) / (pi(xi-eta)), equal to 1 on the diagonal."""
    return _sinc(np.pi * (np.asarray(xi, dtype=float) - np.asarray(eta, dtype=float)))


def sine_integral(z):
    """Si(z) = int_0^z sin(t)/t dt."""
    return special.sici(np.asarray(z, dtype=float))[0]


def sine_matrix(beta, xi, eta):
    """Entries of the matrix sine kernel for beta = 1 or 4."""
    if beta not in (1, 4):
        raise ValueError("sine_matrix is defined for beta 1 and 4")
    scale = 2.0 if beta == 4 else 1.0
    d = np.pi * scale * (float(xi) - float(eta))
    S = float(_sinc(d))
    I = -float(sine_integral(-d)) / (np.pi * scale)
    D = np.pi * scale * float(_sinc_prime(d))
    eps = 0.5 * np.sign(float(xi) - float(eta)) if beta == 1 else 0.0
    return KernelBlock(S=S, Iminus=I - eps, D=D, ST=S, delta_flag=int(beta == 1))


# ---------------------------------------------------------------------------
# Bessel kernels


def kappa(alpha, x, y):
    """x J_{alpha+1/2}(x) J_{alpha-1/2}(y) - J_{alpha-1/2}(x) y J_{alpha+1/2}(y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    hi, lo = alpha + 0.5, alpha - 0.5
    return x * special.jv(hi, x) * special.jv(lo, y) - special.jv(lo, x) * y * special.jv(hi, y)


def _check_pos(*vals):
    for v in vals:
        if np.any(np.asarray(v) <= 0):
            raise ValueError("Bessel kernels need xi, eta > 0")


def edge_density_unitary(a, xi):
    z = np.pi * np.asarray(xi, dtype=float)
    return 0.5 * np.pi * z * (special.jv(a, z) ** 2 - special.jv(a - 1, z) * special.jv(a + 1, z))


def _bessel_kernel(a, xi, eta):
    # no parameter check: the shift identities use orders down to -2
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    xi, eta = np.broadcast_arrays(xi, eta)
    diag = np.abs(xi - eta) < DIAG_TOL
    e2 = np.where(diag, eta + 1.0, eta)
    with np.errstate(divide="ignore", invalid="ignore"):
        off = np.sqrt(xi * e2) / (xi ** 2 - e2 ** 2) * kappa(a + 0.5, np.pi * xi, np.pi * e2)
    out = np.where(diag, edge_density_unitary(a, xi), off)
    return out if out.ndim else float(out)


def bessel_scalar(a, xi, eta):
    """Scalar Bessel kernel of order a on (0, inf)^2."""
    if a <= -1:
        raise ValueError("bessel_scalar needs a > -1")
    _check_pos(xi, eta)
    return _bessel_kernel(a, xi, eta)


def _tail(nu, z):
    """int_z^inf J_nu for nu > -1."""
    return 1.0 - bessel_j_primitive(nu, z)


def edge_density(beta, a, xi):
    """Hard-edge one-point density for beta in {1, 2, 4}."""
    if a <= -1:
        raise ValueError("edge_density needs a > -1")
    _check_pos(xi)
    xi = np.asarray(xi, dtype=float)
    if beta == 2:
        return edge_density_unitary(a, xi)
    if beta == 1:
        A = 2 * a + 1
        z = np.pi * xi
        return edge_density_unitary(A, xi) + 0.5 * np.pi * special.jv(A, z) * _tail(A, z)
    if beta == 4:
        z = 2 * np.pi * xi
        return (edge_density_unitary(a, 2 * xi)
                - 0.5 * np.pi * special.jv(a - 1, z) * bessel_j_primitive(a + 1, z))
    raise ValueError("beta must be 1, 2 or 4")


def bessel_s1(a, xi, eta):
    """S entry of the beta = 1 matrix Bessel kernel."""
    A = 2 * a + 1
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    return (np.sqrt(xi / eta) * _bessel_kernel(A, xi, eta)
            + 0.5 * np.pi * special.jv(A, np.pi * eta) * _tail(A, np.pi * xi))


def bessel_s4(a, xi, eta):
    """S entry of the beta = 4 matrix Bessel kernel.

    For a <= 0 the primitive of J_{a-1} is the analytic continuation in
    the order, so the expression is finite on the whole range a > -1.
    """
    A = a - 1
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    return (np.sqrt(xi / eta) * _bessel_kernel(A, 2 * xi, 2 * eta)
            - 0.5 * np.pi * special.jv(A, 2 * np.pi * eta) * bessel_j_primitive(A, 2 * np.pi * xi))


def bessel_s1_alt(a, xi, eta, form):
    """Equivalent rewritings of the beta = 1 S entry with shifted orders.

    ``form`` is ``"down"`` (orders 2a, 2a-1) or ``"up"`` (orders 2a+2, 2a+3).
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    A = 2 * a + 1
    shift = {"down": -1, "up": +1}[form]
    return (np.sqrt(eta / xi) * _bessel_kernel(A + shift, xi, eta)
            + 0.5 * np.pi * special.jv(A, np.pi * eta)
            * (1.0 - bessel_j_primitive(A + 2 * shift, np.pi * xi)))


def bessel_s4_alt(a, xi, eta, form):
    """Equivalent rewritings of the beta = 4 S entry.

    ``"up"`` uses K^(a) and the primitive of J_{a+1}; ``"down"`` uses
    K^(a-2) and the primitive of J_{a-3}.
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    order = {"up": (a, a + 1), "down": (a - 2, a - 3)}[form]
    return (np.sqrt(eta / xi) * _bessel_kernel(order[0], 2 * xi, 2 * eta)
            - 0.5 * np.pi * special.jv(a - 1, 2 * np.pi * eta)
            * bessel_j_primitive(order[1], 2 * np.pi * xi))


@lru_cache(maxsize=256)
def _radial_rule(n, nu):
    rule = gauss_jacobi_rule(n, 0.0, 2 * nu + 1)
    t = 0.5 * (rule.nodes + 1.0)
    w = rule.weights * 0.5 ** (2 * nu + 2)
    return t, w


def _bessel_overlap_deriv(nu, u, v):
    """d/du of int_0^1 t J_nu(u t) J_nu(v t) dt, for nu > -1."""
    n = int(0.6 * (u + v)) + 24
    t, w = _radial_rule(n, float(nu))
    dj = 0.5 * (special.jv(nu - 1, u * t) - special.jv(nu + 1, u * t))
    # t^(2 nu + 1) is carried by the rule; the remaining factor is smooth
    f = t * dj * special.jv(nu, v * t) / (t ** (2 * nu))
    return float(np.dot(w, f))


def _bessel_overlap(nu, u, v):
    n = int(0.6 * (u + v)) + 24
    t, w = _radial_rule(n, float(nu))
    f = special.jv(nu, u * t) * special.jv(nu, v * t) / (t ** (2 * nu))
    return float(np.dot(w, f))


def _panel_integral(f, lo, hi, width=0.25, nodes=16):
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    m = max(1, int(np.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, m + 1)
    rule = gauss_legendre_rule(nodes)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    w = (half[:, None] * rule.weights[None, :]).ravel()
    return sign * float(np.dot(w, f(t)))


def bessel_matrix(beta, a, xi, eta):
    """Entries of the matrix Bessel kernel for beta = 1 or 4."""
    if beta not in (1, 4):
        raise ValueError("bessel_matrix is defined for beta 1 and 4")
    if a <= -1:
        raise ValueError("bessel_matrix needs a > -1")
    _check_pos(xi, eta)
    xi, eta = float(xi), float(eta)
    if beta == 1:
        S = float(bessel_s1(a, xi, eta))
        ST = float(bessel_s1(a, eta, xi))
        A = 2 * a + 1
        u, v = np.pi * xi, np.pi * eta
        # S = pi u <tJ_A(ut), J_A(vt)> + (pi/2) J_A(v) tail_A(u)
        D = (np.pi ** 2 * (_bessel_overlap(A, u, v) + u * _bessel_overlap_deriv(A, u, v))
             - 0.5 * np.pi ** 2 * special.jv(A, u) * special.jv(A, v))
        I = -_panel_integral(lambda t: bessel_s1(a, xi, t), xi, eta)
        eps = 0.5 * np.sign(xi - eta)
        return KernelBlock(S=S, Iminus=I - eps, D=float(D), ST=ST, delta_flag=1)
    S = float(bessel_s4(a, xi, eta))
    ST = float(bessel_s4(a, eta, xi))
    u, v = 2 * np.pi * xi, 2 * np.pi * eta
    # "up" form: S = pi v <tJ_a(ut), J_a(vt)> - (pi/2) J_{a-1}(v) prim_{a+1}(u)
    D = 2 * np.pi ** 2 * (v * _bessel_overlap_deriv(a, u, v)
                          - 0.5 * special.jv(a - 1, v) * special.jv(a + 1, u))
    I = -_panel_integral(lambda t: bessel_s4(a, xi, t), xi, eta, width=0.125)
    return KernelBlock(S=S, Iminus=I, D=float(D), ST=ST, delta_flag=0)


def limit_block(spec):
    """Return ``f(xi, eta)`` for a limit kernel described by ``spec``.

    Scalar (float) for beta = 2, :class:`KernelBlock` otherwise.
    """
    bulk = spec.regime == "bulk"
    a = spec.edge_exponent
    if spec.beta == 2:
        if bulk:
            return lambda x, y: float(sine_scalar(x, y))
        return lambda x, y: float(bessel_scalar(a, x, y))
    if bulk:
        return lambda x, y: sine_matrix(spec.beta, x, y)
    return lambda x, y: bessel_matrix(spec.beta, a, x, y)


def limit_s_entry(spec):
    """Vectorized S entry (scalar kernel for beta = 2) of a limit kernel."""
    a = spec.edge_exponent
    if spec.regime == "bulk":
        scale = 2.0 if spec.beta == 4 else 1.0
        return lambda x, y: sine_scalar(scale * np.asarray(x), scale * np.asarray(y))
    if spec.beta == 2:
        return lambda x, y: bessel_scalar(a, x, y)
    if spec.beta == 1:
        return lambda x, y: bessel_s1(a, x, y)
    return lambda x, y: bessel_s4(a, x, y)
