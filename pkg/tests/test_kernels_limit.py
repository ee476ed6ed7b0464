import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from symrmt import kernels_limit as kl

SI_PI_OVER_PI = 0.58948987223608363512   # Si(pi) / pi
RHO2_A0_HALF = 1.3424505021853108927     # unitary edge density, a = 0, xi = 1/2


def test_sine_kernel_values():
    assert kl.sine_scalar(0.3, 0.3) == 1.0
    assert kl.sine_scalar(1.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert kl.sine_scalar(0.5, 0.0) == pytest.approx(2 / np.pi, rel=1e-14)


def test_sine_matrix_values():
    blk = kl.sine_matrix(1, 1.0, 0.0)
    # I - eps at distance 1: Si(pi)/pi - 1/2
    assert blk.Iminus == pytest.approx(SI_PI_OVER_PI - 0.5, rel=1e-13)
    assert blk.D == pytest.approx(-1.0, rel=1e-13)
    blk4 = kl.sine_matrix(4, 0.25, 0.0)
    assert blk4.S == pytest.approx(2 / np.pi, rel=1e-14)
    assert blk4.Iminus == pytest.approx(-kl.sine_integral(-np.pi / 2) / (2 * np.pi), rel=1e-14)
    with pytest.raises(ValueError):
        kl.sine_matrix(2, 0.1, 0.2)


@settings(max_examples=40, deadline=None)
@given(xi=st.floats(-3, 3), eta=st.floats(-3, 3), beta=st.sampled_from([1, 4]))
def test_sine_matrix_derivative(xi, eta, beta):
    h = 1e-6
    d = (kl.sine_matrix(beta, xi + h, eta).S - kl.sine_matrix(beta, xi - h, eta).S) / (2 * h)
    assert kl.sine_matrix(beta, xi, eta).D == pytest.approx(d, abs=1e-6)


def test_global_density():
    assert kl.global_density(0.0) == pytest.approx(1 / np.pi)
    assert integrate.quad(kl.global_density, -1, 1)[0] == pytest.approx(1.0, rel=1e-8)
    with pytest.raises(ValueError):
        kl.global_density(1.0)


def test_edge_density_reference():
    assert kl.edge_density(2, 0.0, 0.5) == pytest.approx(RHO2_A0_HALF, rel=1e-13)


def test_half_integer_bessel_kernels():
    xi, eta = 0.7, 0.45
    s = np.sinc(xi - eta)
    t = np.sinc(xi + eta)
    assert kl.bessel_scalar(-0.5, xi, eta) == pytest.approx(s + t, rel=1e-12)
    assert kl.bessel_scalar(0.5, xi, eta) == pytest.approx(s - t, rel=1e-12)
    assert kl.edge_density(2, 0.5, xi) == pytest.approx(1 - np.sinc(2 * xi), rel=1e-12)


@pytest.mark.parametrize("beta,a", [(2, 0.0), (2, 1.5), (1, 0.0), (1, -0.5), (4, 0.0), (4, 1.0)])
def test_edge_density_approaches_one(beta, a):
    xi = np.linspace(30, 40, 51)
    # oscillations decay like xi^(-1/2) (beta 4) or faster
    assert np.max(np.abs(kl.edge_density(beta, a, xi) - 1)) < 1 / np.sqrt(xi[0])


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-0.9, 4), xi=st.floats(0.05, 6), eta=st.floats(0.05, 6))
def test_bessel_scalar_symmetric(a, xi, eta):
    assert kl.bessel_scalar(a, xi, eta) == pytest.approx(kl.bessel_scalar(a, eta, xi), rel=1e-9, abs=1e-12)


def test_bessel_scalar_diagonal_limit():
    a, xi = 1.3, 0.8
    assert kl.bessel_scalar(a, xi, xi + 1e-5) == pytest.approx(kl.bessel_scalar(a, xi, xi), rel=1e-5)


@settings(max_examples=25, deadline=None)
@given(a=st.floats(-0.9, 3), xi=st.floats(0.1, 4), eta=st.floats(0.1, 4))
def test_alternative_forms_agree(a, xi, eta):
    s1 = kl.bessel_s1(a, xi, eta)
    s4 = kl.bessel_s4(a, xi, eta)
    for form in ("down", "up"):
        assert kl.bessel_s1_alt(a, xi, eta, form) == pytest.approx(s1, abs=1e-9)
        assert kl.bessel_s4_alt(a, xi, eta, form) == pytest.approx(s4, abs=1e-9)


def test_kappa_antisymmetric():
    assert kl.kappa(0.3, 1.2, 1.2) == pytest.approx(0.0, abs=1e-15)
    assert kl.kappa(0.3, 1.2, 0.4) == pytest.approx(-kl.kappa(0.3, 0.4, 1.2), rel=1e-14)


@pytest.mark.parametrize("beta,a", [(1, 0.0), (1, 0.6), (4, 0.5), (4, -0.5)])
def test_bessel_matrix_entries(beta, a):
    xi, eta = 0.9, 0.35
    blk = kl.bessel_matrix(beta, a, xi, eta)
    s = kl.bessel_s1 if beta == 1 else kl.bessel_s4
    h = 1e-5
    fd = (s(a, xi + h, eta) - s(a, xi - h, eta)) / (2 * h)
    assert blk.D == pytest.approx(fd, rel=1e-6, abs=1e-8)
    I = -integrate.quad(lambda t: s(a, xi, t), xi, eta, epsabs=1e-12)[0]
    eps = 0.5 if beta == 1 else 0.0
    assert blk.Iminus == pytest.approx(I - eps, abs=1e-9)
    assert blk.ST == pytest.approx(float(s(a, eta, xi)), rel=1e-12)


def test_symplectic_edge_continuous_at_zero():
    vals = [kl.bessel_s4(a, 0.6, 0.3) for a in (-1e-6, 1e-6)]
    assert abs(vals[0] - vals[1]) < 1e-4


def test_local_coords():
    lc = kl.LocalCoords(0.0, 100)
    assert lc.regime == "bulk"
    assert lc.x(0.0) == pytest.approx(0.0, abs=1e-15)
    h = 1e-6
    assert lc.dx(0.3) == pytest.approx((lc.x(0.3 + h) - lc.x(0.3 - h)) / (2 * h), rel=1e-8)
    assert kl.LocalCoords(1.0, 10).regime == "hard_edge_plus"
    assert kl.LocalCoords(-1.0, 10).regime == "hard_edge_minus"
    with pytest.raises(ValueError):
        kl.LocalCoords(1.5, 10)


def test_limit_spec_and_dispatch():
    spec = kl.LimitKernelSpec(2, "hard_edge_minus", a=0.0, b=1.0)
    assert spec.edge_exponent == 1.0
    f = kl.limit_block(spec)
    assert f(0.4, 0.4) == pytest.approx(kl.edge_density(2, 1.0, 0.4))
    assert kl.limit_block(kl.LimitKernelSpec(1))(0.2, 0.2).S == pytest.approx(1.0)
    with pytest.raises(ValueError):
        kl.LimitKernelSpec(3)
    with pytest.raises(ValueError):
        kl.LimitKernelSpec(2, "hard_edge_plus", a=-1.0)
    with pytest.raises(ValueError):
        kl.bessel_scalar(0.0, -0.1, 0.2)
