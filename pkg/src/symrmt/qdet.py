"""Pfaffians, quaternion determinants and n-level correlations.

A 2n x 2n self-dual matrix is stored in block layout

    H = [[S, I - delta eps], [D, S^T]]      (each block n x n)

so that self-duality H = J H^T J^T, with J = [[0, -I], [I, 0]], means
that H J is antisymmetric. The quaternion determinant is then

    qdet H = Pf(H J) / Pf(J),

which is normalized by qdet(I) = 1 and squares to det H.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

IMAG_CLAMP = 1e-8
IMAG_FAIL = 1e-5


def J_matrix(n):
    """Canonical antisymmetric form [[0, -I_n], [I_n, 0]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def pfaffian_of_J(n):
    """Pf(J_n) = (-1)^n (-1)^{n(n-1)/2} under the convention Pf([[0,c],[-c,0]]) = c."""
    return (-1.0) ** n * (-1.0) ** (n * (n - 1) // 2)


def pfaffian(A):
    """Pfaffian of an antisymmetric matrix by pivoted skew elimination.

    Examples
    --------
    >>> pfaffian(np.array([[0.0, 3.0], [-3.0, 0.0]]))
    3.0
    """
    A = np.array(A, dtype=complex if np.iscomplexobj(A) else float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("pfaffian needs a square matrix")
    scale = np.max(np.abs(A)) if A.size else 0.0
    if np.max(np.abs(A + A.T), initial=0.0) > 1e-10 * max(scale, 1e-300):
        raise ValueError("matrix is not antisymmetric")
    if n % 2:
        return A.dtype.type(0)
    pf = A.dtype.type(1)
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], k:] = A[[kp, k + 1], k:]
            A[k:, [k + 1, kp]] = A[k:, [kp, k + 1]]
            pf = -pf
        piv = A[k, k + 1]
        if piv == 0:
            return A.dtype.type(0)
        pf = pf * piv
        if k + 2 < n:
            tau = A[k, k + 2:] / piv
            col = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


@dataclass(frozen=True)
class SelfDualMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("self-dual matrices are 2n x 2n")
        if not is_self_dual(m):
            raise ValueError("matrix is not self-dual")

    @property
    def n(self):
        return self.entries.shape[0] // 2

    @property
    def J(self):
        return J_matrix(self.n)


def dual(H):
    n = H.shape[0] // 2
    J = J_matrix(n)
    return J @ H.T @ J.T


def is_self_dual(H, tol=1e-8):
    H = np.asarray(H)
    scale = max(np.max(np.abs(H)), 1.0)
    return np.max(np.abs(H - dual(H))) <= tol * scale


def qdet(H):
    """Quaternion determinant of a self-dual 2n x 2n matrix."""
    M = H.entries if isinstance(H, SelfDualMatrix) else np.asarray(H)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise ValueError("qdet needs a 2n x 2n matrix")
    if not is_self_dual(M):
        raise ValueError("qdet needs a self-dual matrix")
    n = M.shape[0] // 2
    HJ = M @ J_matrix(n)
    HJ = 0.5 * (HJ - HJ.T)
    return pfaffian(HJ) / pfaffian_of_J(n)


def assemble_blocks(block_fn, points):
    """Build the block-layout matrix from ``block_fn(x, y) -> KernelBlock``."""
    n = len(points)
    S = np.empty((n, n))
    Im = np.empty((n, n))
    D = np.empty((n, n))
    ST = np.empty((n, n))
    for j, x in enumerate(points):
        for k, y in enumerate(points):
            blk = block_fn(x, y)
            S[j, k], Im[j, k], D[j, k], ST[j, k] = blk.S, blk.Iminus, blk.D, blk.ST
    return np.block([[S, Im], [D, ST]])


def _real(value):
    value = complex(value)
    scale = max(abs(value.real), 1.0)
    if abs(value.imag) > IMAG_FAIL * scale:
        raise ArithmeticError(f"correlation has imaginary part {value.imag:g}")
    return value.real


def correlation(beta, kernel_evaluator, points):
    """n-level correlation from a kernel.

    beta = 2: ``kernel_evaluator(x, y)`` returns a scalar; the result is a
    determinant. beta = 1, 4: it returns a KernelBlock; the result is the
    quaternion determinant of the assembled self-dual matrix.
    """
    pts = [float(p) for p in points]
    if beta == 2:
        K = np.array([[kernel_evaluator(x, y) for y in pts] for x in pts], dtype=float)
        return _real(np.linalg.det(K))
    if beta in (1, 4):
        H = assemble_blocks(kernel_evaluator, pts)
        H = 0.5 * (H + dual(H))  # remove roundoff asymmetry before the Pfaffian
        return _real(qdet(H))
    raise ValueError("beta must be 1, 2 or 4")


@dataclass(frozen=True)
class ChangeOfVariables:
    """Monotone differentiable map u -> X(u) with derivative dX."""

    X: Callable
    dX: Callable

    def check_monotone(self, grid):
        d = np.asarray([self.dX(u) for u in grid], dtype=float)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise ValueError("change of variables is not monotone on the grid")
        return self

    def orientation(self, u):
        return 1.0 if self.dX(u) > 0 else -1.0


def identity_map():
    return ChangeOfVariables(lambda u: u, lambda u: 1.0)


def rescale_scalar_kernel(K, cov):
    """(u, v) -> sqrt(|X'(u) X'(v)|) K(X(u), X(v))."""

    def kernel(u, v):
        return np.sqrt(np.abs(cov.dX(u) * cov.dX(v))) * K(cov.X(u), cov.X(v))

    return kernel


def rescale_matrix_kernel(Kblock, cov):
    """Transform a matrix kernel under u -> X(u).

    S picks up |X'(v)|, S^T picks up |X'(u)|, D picks up both; the I slot
    keeps its value up to the orientation sign, which also turns
    eps(X(u) - X(v)) into eps(u - v).
    """
    from .kernels_finite import KernelBlock

    def kernel(u, v):
        blk = Kblock(cov.X(u), cov.X(v))
        du, dv = abs(cov.dX(u)), abs(cov.dX(v))
        sgn = cov.orientation(u)
        return KernelBlock(S=blk.S * dv, Iminus=sgn * blk.Iminus, D=sgn * blk.D * du * dv,
                           ST=blk.ST * du, delta_flag=blk.delta_flag)

    return kernel
