import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from symrmt import specfun as sf

# reference values from 30-digit arithmetic (independent Jacobi / Bessel / quadrature routines)
P5 = 0.26168625000000001862        # P_5^(0.5,-0.5)(0.3)
P10 = 0.19846648099581141999       # P_10^(1.3,-0.7)(-0.45)
P200 = 0.018664070424940414337     # Legendre P_200(0.1)
P7_M1M1 = -0.13870080000000000268  # P_7^(-1,-1)(0.2), binomial sum with polynomial binomials
P6_0M1 = 0.20654296875             # P_6^(0,-1)(0.5)
J1_2 = 0.5767248077568733872
JM05_1 = 0.43109886801837607952
PRIM_03_5 = 0.83419939275074973886   # int_0^5 J_0.3
PRIM_M15_1 = 1.3573143113399738443   # continued int_0^1 J_-1.5
PRIM_0_80 = 0.94482281938334394886   # int_0^80 J_0


def test_jacobi_degree_zero():
    assert sf.jacobi_poly(0, 2.3, -1.7, 0.4) == 1.0


def test_jacobi_degree_one():
    A, B, x = 0.7, -0.4, 0.35
    assert sf.jacobi_poly(1, A, B, x) == pytest.approx(((A + B + 2) * x + (A - B)) / 2, rel=1e-14)


@pytest.mark.parametrize("N", [0, 1, 5, 40, 300])
def test_jacobi_at_one(N):
    A, B = 1.7, -0.3
    ref = np.exp(special.gammaln(A + N + 1) - special.gammaln(N + 1) - special.gammaln(A + 1))
    assert sf.jacobi_poly(N, A, B, 1.0) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("N,A,B,x,ref", [
    (5, 0.5, -0.5, 0.3, P5),
    (10, 1.3, -0.7, -0.45, P10),
    (200, 0.0, 0.0, 0.1, P200),
    (7, -1.0, -1.0, 0.2, P7_M1M1),
    (6, 0.0, -1.0, 0.5, P6_0M1),
])
def test_jacobi_reference_values(N, A, B, x, ref):
    assert sf.jacobi_poly(N, A, B, x) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_binomial_sum_agrees_small_degree():
    for N in range(8):
        assert sf.jacobi_poly_sum(N, 0.0, -1.0, 0.5) == pytest.approx(sf.jacobi_poly(N, 0.0, -1.0, 0.5), abs=1e-13)


def test_binom_at_negative_integer():
    assert sf.binom(-1, 0) == 1.0
    assert sf.binom(-1, 3) == -1.0
    assert sf.binom(-2, 3) == -4.0
    assert sf.binom(2.5, 2) == pytest.approx(1.875)
    assert sf.binom(3, -1) == 0.0


def test_derivative_examples():
    assert sf.jacobi_poly_deriv(0, 1.0, 2.0, 0.3) == 0.0
    assert sf.jacobi_poly_deriv(1, 1.0, 2.0, 0.3) == pytest.approx(2.5)
    h = 1e-5
    fd = (sf.jacobi_poly(5, 0.5, -0.5, 0.3 + h) - sf.jacobi_poly(5, 0.5, -0.5, 0.3 - h)) / (2 * h)
    assert sf.jacobi_poly_deriv(5, 0.5, -0.5, 0.3) == pytest.approx(fd, rel=1e-6)


def test_jacobi_pair_derivatives():
    x = np.linspace(-0.9, 0.9, 7)
    p0, p1, d0, d1 = sf.jacobi_pair(9, 0.3, 1.2, x, deriv=True)
    assert np.allclose(d1, sf.jacobi_poly_deriv(9, 0.3, 1.2, x), rtol=1e-11, atol=1e-12)
    assert np.allclose(d0, sf.jacobi_poly_deriv(8, 0.3, 1.2, x), rtol=1e-11, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(N=st.integers(0, 20), A=st.floats(-1.9, 5), B=st.floats(-1.9, 5), x=st.floats(-1, 1))
def test_reflection_symmetry(N, A, B, x):
    p = sf.jacobi_poly(N, A, B, -x)
    q = (-1) ** N * sf.jacobi_poly(N, B, A, x)
    assert abs(p - q) <= 1e-10 * max(1.0, abs(q))


@settings(max_examples=40, deadline=None)
@given(A=st.floats(-0.95, 4), B=st.floats(-0.95, 4))
def test_orthogonality(A, B):
    rule = sf.gauss_jacobi_rule(12, A, B)
    V = np.array([sf.jacobi_poly(m, A, B, rule.nodes) for m in range(11)])
    G = (V * rule.weights) @ V.T
    nrm = np.sqrt(np.outer(np.diag(G), np.diag(G)))
    off = np.abs(G - np.diag(np.diag(G))) / nrm
    assert off.max() < 1e-10


def test_bessel_basics():
    assert sf.bessel_j(0, 0) == 1.0
    assert sf.bessel_j(2.5, 0) == 0.0
    assert sf.bessel_j(1, 2.0) == pytest.approx(J1_2, rel=1e-13)
    assert sf.bessel_j_series(1, 2.0, terms=30) == pytest.approx(J1_2, rel=1e-13)
    assert sf.bessel_j(-0.5, 1.0) == pytest.approx(JM05_1, rel=1e-13)
    with pytest.raises(ValueError):
        sf.bessel_j(0, -1.0)


def test_bessel_recurrence_grid():
    z = np.linspace(0.1, 20, 200)[None, :]
    nu = np.arange(-1.5, 10.01, 0.5)[:, None]
    t1, t2, t3 = sf.bessel_j(nu + 1, z), 2 * nu / z * sf.bessel_j(nu, z), sf.bessel_j(nu - 1, z)
    scale = np.maximum(np.maximum(abs(t1), abs(t2)), abs(t3))
    assert np.max(np.abs(t1 - t2 + t3) / scale) < 1e-9


def test_bessel_derivative():
    h = 1e-5
    z = np.linspace(0.5, 20, 50)
    for nu in (-1.5, 0.0, 0.5, 3.0):
        fd = (sf.bessel_j(nu, z + h) - sf.bessel_j(nu, z - h)) / (2 * h)
        assert np.allclose(fd, 0.5 * (sf.bessel_j(nu - 1, z) - sf.bessel_j(nu + 1, z)), atol=1e-6)


def test_primitive_values():
    assert sf.bessel_j_primitive(0.7, 0.0) == 0.0
    # the tail int_x^inf J_0 oscillates inside the envelope sqrt(2 / (pi x)), 0.089 at x = 80
    assert sf.bessel_j_primitive(0.0, 80.0) == pytest.approx(PRIM_0_80, rel=1e-12)
    for x in (20.0, 80.0, 320.0):
        assert abs(sf.bessel_j_primitive(0.0, x) - 1.0) < np.sqrt(2 / (np.pi * x))
    assert sf.bessel_j_primitive(0.3, 5.0) == pytest.approx(PRIM_03_5, rel=1e-12)
    assert sf.bessel_j_primitive(-1.5, 1.0) == pytest.approx(PRIM_M15_1, rel=1e-12)


def test_primitive_broadcasts():
    out = sf.bessel_j_primitive(np.array([0.0, 1.0, 2.0]), np.array([[1.0], [3.0]]))
    assert out.shape == (2, 3)
    assert out[1, 2] == pytest.approx(sf.bessel_j_primitive(2.0, 3.0))


@settings(max_examples=30, deadline=None)
@given(nu=st.floats(-0.9, 8), x=st.floats(0.05, 30))
def test_primitive_matches_quadrature(nu, x):
    def g(t):
        return special.jv(nu, t) / t ** nu if t > 1e-12 else 0.5 ** nu / special.gamma(nu + 1)
    ref, _ = integrate.quad(g, 0, x, weight="alg", wvar=(nu, 0.0), epsabs=1e-13, epsrel=1e-13, limit=200)
    assert sf.bessel_j_primitive(nu, x) == pytest.approx(ref, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(A=st.floats(-3.5, 6), x=st.floats(0.1, 25))
def test_primitive_shift(A, x):
    lhs = sf.bessel_j_primitive(A, x) + 2 * sf.bessel_j(A - 1, x)
    assert lhs == pytest.approx(sf.bessel_j_primitive(A - 2, x), abs=1e-9)


def test_log_gamma():
    assert sf.log_gamma(1.0) == 0.0
    assert sf.log_gamma(0.5) == pytest.approx(0.5 * np.log(np.pi), rel=1e-14)
    x = 50.0
    stirling = (x - 0.5) * np.log(x) - x + 0.5 * np.log(2 * np.pi)
    assert abs(sf.log_gamma(x) - stirling) < 0.02
    with pytest.raises(ValueError):
        sf.log_gamma(0.0)


def test_gauss_jacobi_examples():
    r = sf.gauss_jacobi_rule(1, 0, 0)
    assert r.nodes[0] == pytest.approx(0.0, abs=1e-15) and r.weights[0] == pytest.approx(2.0)
    r = sf.gauss_jacobi_rule(2, 0, 0)
    assert r.integrate(lambda t: t ** 2) == pytest.approx(2 / 3, rel=1e-14)
    r = sf.gauss_jacobi_rule(8, -0.5, -0.5)
    assert np.sum(r.weights) == pytest.approx(np.pi, rel=1e-13)
    with pytest.raises(ValueError):
        sf.gauss_jacobi_rule(4, -1.0, 0.0)


@pytest.mark.parametrize("n,al,be", [(5, 0.0, 0.0), (12, -0.5, 1.5), (30, 2.0, -0.7), (64, -0.9, -0.9)])
def test_gauss_jacobi_exactness(n, al, be):
    r = sf.gauss_jacobi_rule(n, al, be)
    assert np.all(r.weights > 0) and np.all(np.diff(r.nodes) > 0)
    k = np.arange(2 * n)
    exact = np.exp((al + be + k + 1) * np.log(2) + special.betaln(al + 1, be + k + 1))
    got = np.array([np.sum(r.weights * (1 + r.nodes) ** j) for j in k])
    assert np.max(np.abs(got / exact - 1)) < 1e-12
    xo, _ = special.roots_jacobi(n, al, be)
    assert np.max(np.abs(r.nodes - xo)) < 1e-12


def test_mapped_rule():
    r = sf.gauss_jacobi_rule(10, 0.5, 0.0)
    t, w = r.mapped(0.2, 1.0)
    # int_0.2^1 (1-t)^0.5 t^2 dt
    ref = integrate.quad(lambda s: (1 - s) ** 0.5 * s * s, 0.2, 1.0)[0]
    assert np.dot(w, t ** 2) == pytest.approx(ref, rel=1e-12)


def test_jacobi_params():
    p = sf.JacobiParams.orthogonal(0.5, -0.5)
    assert (p.A, p.B, p.beta) == (2.0, 0.0, 1)
    p = sf.JacobiParams.symplectic(0.5, -0.5)
    assert (p.A, p.B, p.beta) == (-0.5, -1.5, 4)


def test_darboux():
    N = 200
    err = abs(sf.darboux_approx(N, 0, 0, np.pi / 2) - sf.jacobi_poly(N, 0, 0, 0.0))
    assert err < 5 * N ** -1.5
    th = np.linspace(0.5, 2.5, 801)
    e = [np.max(np.abs(sf.darboux_approx(n, 0.5, -0.5, th) - sf.jacobi_poly(n, 0.5, -0.5, np.cos(th))))
         for n in (200, 400)]
    assert 0.5 < (e[1] / e[0]) / 2 ** -1.5 < 2.0
    assert np.isfinite(sf.darboux_approx(100, 0.5, -0.5, 1.0))


def test_hilb():
    N, t = 200, 2 / 200
    err = abs(sf.hilb_approx(N, 0, 0, t) - sf.jacobi_poly(N, 0, 0, np.cos(t)))
    assert err < 5 * t ** 0.5 * N ** -1.5
    assert sf.hilb_approx(300, -0.5, 0.5, 1 / 300) > 0
    with pytest.raises(ValueError):
        sf.hilb_approx(10, -1.0, 0, 0.5)


def test_hilb_second_form():
    N, t, A = 200, 0.8, -1.5
    err = abs(sf.hilb2_approx(N, A, 0, t) - sf.jacobi_poly(N, A, 0, np.cos(t)))
    assert err < 5 * t ** (0.5 - A) * N ** -1.5
    d = abs(sf.hilb2_approx(100, 0, 0, 1.0) - sf.hilb_approx(100, 0, 0, 1.0))
    assert d < 2 * 5 * 100 ** -1.5
