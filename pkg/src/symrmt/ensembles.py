"""Matrix models of the compact symmetric spaces.

Each family is realized as H = g * Omega(g)^{-1} for a Haar-random g in
the ambient group, and its free eigenangles are extracted from the
spectrum of H. Type II families are the groups themselves.

Sizes: ``R`` is the rank, ``L`` the offset M - N (for D III, ``L`` is the
parity of N, so N = 2R + L).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .mcmc import mcmc_jacobi  # noqa: F401  (re-exported)

FAMILIES = ("AI", "AII", "AIII", "BDI", "DIII", "CI", "CII",
            "CUE", "SO_odd", "USp_group", "SO_even")
CIRCULAR = ("AI", "AII", "CUE")
TYPE_I = ("AIII", "BDI", "DIII", "CI", "CII")
TYPE_II = ("SO_odd", "USp_group", "SO_even")

MEMBERSHIP_TOL = 1e-8
UNIT_TOL = 1e-8
GROUP_TOL = 1e-6


class CircularFamilyError(ValueError):
    """Raised when Jacobi parameters are requested for a circular family."""


class SpectrumError(RuntimeError):
    """Eigenvalues do not have the structure the family guarantees."""


@dataclass(frozen=True)
class EnsembleSpec:
    family: str
    R: int
    L: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.R < 1:
            raise ValueError("rank must be positive")
        if self.L < 0:
            raise ValueError("L must be nonnegative")
        if self.family == "DIII" and self.L not in (0, 1):
            raise ValueError("for DIII, L is the parity of N (0 or 1)")
        if self.family not in ("AIII", "BDI", "CII", "DIII") and self.L:
            raise ValueError(f"{self.family} takes no L parameter")

    @property
    def M(self):
        return self.R + self.L

    @property
    def N(self):
        if self.family == "DIII":
            return 2 * self.R + self.L
        return self.R

    @property
    def group(self):
        """Ambient group letter and matrix size of g."""
        f = self.family
        if f in ("AI", "CUE"):
            return "U", self.R
        if f == "AII":
            return "U", 2 * self.R
        if f == "AIII":
            return "U", self.M + self.N
        if f == "BDI":
            return "O", self.M + self.N
        if f == "DIII":
            return "SO", 2 * self.N
        if f == "CI":
            return "USp", 2 * self.R
        if f == "CII":
            return "USp", 2 * (self.M + self.N)
        if f == "SO_even":
            return "SO", 2 * self.R
        if f == "SO_odd":
            return "SO", 2 * self.R + 1
        return "USp", 2 * self.R

    @property
    def dim(self):
        return self.group[1]

    @property
    def forced(self):
        """Number of eigenvalues forced to +1."""
        return {"AIII": self.L, "BDI": self.L, "DIII": 2 * self.L,
                "CII": 2 * self.L, "SO_odd": 1}.get(self.family, 0)

    @property
    def pair_multiplicity(self):
        return 2 if self.family in ("AII", "DIII", "CII") else 1

    @property
    def circular(self):
        return self.family in CIRCULAR


@dataclass
class SpectrumSample:
    thetas: np.ndarray
    levels: np.ndarray
    forced: int
    pair_multiplicity: int


@dataclass(frozen=True)
class RootSystem:
    """Positive roots as (tag, multiplicity); tags: 'diff', 'sum', 'single', 'double'."""

    roots: tuple = field(default_factory=tuple)

    def multiplicity(self, tag):
        return dict(self.roots).get(tag, 0)


# ---------------------------------------------------------------------------
# fixed matrices


def J_matrix(n):
    eye = np.eye(n)
    z = np.zeros((n, n))
    return np.block([[z, -eye], [eye, z]])


def Iprime(M, N):
    return np.diag(np.concatenate([np.ones(M), -np.ones(N)]))


def Iprime_CII(M, N):
    ip = Iprime(M, N)
    z = np.zeros_like(ip)
    return np.block([[ip, z], [z, ip]])


# ---------------------------------------------------------------------------
# Haar sampling


def rng_stream(master_seed, stream_index):
    """Independent generator for substream ``stream_index`` of ``master_seed``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(stream_index),))
    return np.random.default_rng(ss)


def _phase_fix(Q, Rm):
    d = np.diagonal(Rm, axis1=-2, axis2=-1)
    ph = d / np.abs(d)
    return Q * ph[..., None, :]


def _haar_unitary(n, count, rng):
    Z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    Q, Rm = np.linalg.qr(Z)
    return _phase_fix(Q, Rm)


def _haar_orthogonal(n, count, rng):
    Z = rng.standard_normal((count, n, n))
    Q, Rm = np.linalg.qr(Z)
    return _phase_fix(Q, Rm)


def _haar_special_orthogonal(n, count, rng):
    Q = _haar_orthogonal(n, count, rng)
    flip = np.linalg.det(Q) < 0
    Q[flip, :, 0] *= -1
    return Q


def _haar_symplectic(size, count, rng, block=16):
    """Quaternionic Gram-Schmidt: column n+j is J conj(column j).

    Columns are orthogonalized a block at a time against the finished
    ones (matrix products), then one by one inside the block.
    """
    if size % 2:
        raise ValueError("USp needs an even size")
    n = size // 2
    J = J_matrix(n)
    basis = np.zeros((count, size, size), dtype=complex)  # pairs (c_j, J conj c_j)
    done = 0
    while done < n:
        k = min(block, n - done)
        C = (rng.standard_normal((count, size, k)) + 1j * rng.standard_normal((count, size, k))) / np.sqrt(2)
        if done:
            B = basis[:, :, :2 * done]
            for _ in range(2):
                C = C - B @ (np.conj(np.swapaxes(B, 1, 2)) @ C)
        for i in range(k):
            c = C[:, :, i]
            m = 2 * (done + i)
            if i:
                L = basis[:, :, 2 * done:m]
                for _ in range(2):
                    c = c - (L @ (np.conj(np.swapaxes(L, 1, 2)) @ c[:, :, None]))[:, :, 0]
            c = c / np.linalg.norm(c, axis=1, keepdims=True)
            basis[:, :, m] = c
            basis[:, :, m + 1] = c.conj() @ J.T
        done += k
    return np.concatenate([basis[:, :, 0::2], basis[:, :, 1::2]], axis=2)


def haar_sample(group, size, rng, count=None):
    """Haar-random element(s) of U(size), O(size), SO(size) or USp(size).

    With ``count`` given, returns a stack of shape (count, size, size).
    """
    k = 1 if count is None else int(count)
    maker = {"U": _haar_unitary, "O": _haar_orthogonal,
             "SO": _haar_special_orthogonal, "USp": _haar_symplectic}
    if group not in maker:
        raise ValueError("group must be U, O, SO or USp")
    if size < 1:
        raise ValueError("size must be positive")
    out = maker[group](size, k, rng)
    return out[0] if count is None else out


def group_residual(group, g):
    """Max deviation of g from the defining identities of its group."""
    g = np.asarray(g)
    n = g.shape[-1]
    res = np.max(np.abs(g @ np.conj(np.swapaxes(g, -1, -2)) - np.eye(n)))
    if group in ("O", "SO"):
        res = max(res, np.max(np.abs(np.imag(g))))
    if group == "SO":
        res = max(res, np.max(np.abs(np.linalg.det(np.real(g)) - 1)))
    if group == "USp":
        J = J_matrix(n // 2)
        res = max(res, np.max(np.abs(g @ J @ np.swapaxes(g, -1, -2) - J)))
    return float(res)


# ---------------------------------------------------------------------------
# realizations


def _T(x):
    return np.swapaxes(x, -1, -2)


def _H(x):
    return np.conj(_T(x))


def realize(spec, g, check=True):
    """H = g Omega(g)^{-1} for the family; g may be a stack of matrices."""
    g = np.asarray(g)
    group, size = spec.group
    if g.shape[-1] != size:
        raise ValueError(f"{spec.family} needs g of size {size}, got {g.shape[-1]}")
    if check and group_residual(group, g) > MEMBERSHIP_TOL:
        raise ValueError(f"g is not in {group}({size})")
    f = spec.family
    if f == "AI":
        H = g @ _T(g)
    elif f == "AII":
        J = J_matrix(spec.R)
        H = g @ J @ _T(g) @ J.T
    elif f in ("AIII", "BDI"):
        ip = Iprime(spec.M, spec.N)
        H = g @ ip @ _H(g) @ ip
    elif f == "CI":
        ip = Iprime(spec.R, spec.R)
        H = g @ ip @ _H(g) @ ip
    elif f == "CII":
        ip = Iprime_CII(spec.M, spec.N)
        H = g @ ip @ _H(g) @ ip
    elif f == "DIII":
        J = J_matrix(spec.N)
        H = g @ J.T @ _T(g) @ J
    else:
        H = g
    return H


def membership_residual(spec, H):
    """Max violation of the identities characterizing the family's H."""
    H = np.asarray(H)
    n = H.shape[-1]
    res = np.max(np.abs(H @ _H(H) - np.eye(n)))  # all are unitary
    f = spec.family
    if f == "AI":
        res = max(res, np.max(np.abs(H - _T(H))))
    elif f == "AII":
        J = J_matrix(n // 2)
        res = max(res, np.max(np.abs(H - J @ _T(H) @ J.T)))
    elif f in ("AIII", "BDI", "CI", "CII"):
        ip = {"CI": lambda: Iprime(spec.R, spec.R), "CII": lambda: Iprime_CII(spec.M, spec.N)}.get(
            f, lambda: Iprime(spec.M, spec.N))()
        G = H @ ip
        res = max(res, np.max(np.abs(G - _H(G))))
        if f == "BDI":
            res = max(res, np.max(np.abs(np.imag(H))))
        if f == "CI":
            J = J_matrix(spec.R)
            res = max(res, np.max(np.abs(G @ J @ _T(G) + J)))
        if f == "CII":
            J = J_matrix(n // 2)
            res = max(res, np.max(np.abs(H @ J @ _T(H) - J)))
    elif f == "DIII":
        J = J_matrix(n // 2)
        HJ = H @ J
        res = max(res, np.max(np.abs(np.imag(H))), np.max(np.abs(HJ + _T(HJ))))
    return float(res)


def is_dexter(H):
    """True when H J is reducible to +J by a proper orthogonal change of basis."""
    from .qdet import pfaffian

    n = H.shape[-1] // 2
    J = J_matrix(n)
    HJ = np.real(H @ J)
    HJ = 0.5 * (HJ - HJ.T)
    return bool(np.sign(pfaffian(HJ)) == np.sign(pfaffian(J)))


# ---------------------------------------------------------------------------
# spectra


def _group_angles(ang, size, tol):
    """Sort angles and average consecutive groups of ``size``."""
    ang = np.sort(ang, axis=-1)
    k = ang.shape[-1] // size
    blocks = ang[..., : k * size].reshape(ang.shape[:-1] + (k, size))
    spread = blocks.max(axis=-1) - blocks.min(axis=-1)
    return blocks.mean(axis=-1), spread


def spectra(spec, H, tol=1e-6):
    """Free eigenangles of a stack of matrices, shape (count, R)."""
    H = np.asarray(H)
    single = H.ndim == 2
    if single:
        H = H[None]
    lam = np.linalg.eigvals(H)
    mod = np.abs(lam)
    if np.max(np.abs(mod - 1.0)) > UNIT_TOL:
        raise SpectrumError("eigenvalues are not unimodular")
    ang = np.angle(lam / mod)
    m = spec.pair_multiplicity
    if spec.circular:
        ang = np.mod(ang, 2 * np.pi)
        if m == 1:
            out = np.sort(ang, axis=-1)
        else:
            out, spread = _group_angles(ang, 2, tol)
            bad = spread.max(axis=-1) > tol
            if np.any(bad):
                # a doubled eigenvalue straddling angle 0: shift the cut to pi
                alt = np.mod(ang[bad] + np.pi, 2 * np.pi)
                o2, s2 = _group_angles(alt, 2, tol)
                if np.max(s2) > tol:
                    raise SpectrumError("doubled eigenvalues could not be paired")
                out[bad] = np.sort(np.mod(o2 - np.pi, 2 * np.pi), axis=-1)
        return out[0] if single else out
    a = np.sort(np.abs(ang), axis=-1)
    f = spec.forced
    if f and np.max(a[..., :f]) > tol:
        raise SpectrumError("forced eigenvalues +1 missing")
    if f and a.shape[-1] > f and np.min(a[..., f]) < 10 * tol:
        # a free level sits on top of the forced ones; measure-zero, keep going
        pass
    thetas, spread = _group_angles(a[..., f:], 2 * m, tol)
    if np.max(spread, initial=0.0) > tol:
        raise SpectrumError("eigenvalues do not group into conjugate pairs/quadruples")
    return thetas[0] if single else thetas


def spectrum(spec, H):
    """SpectrumSample of one realized matrix."""
    th = spectra(spec, H)
    return SpectrumSample(thetas=th, levels=np.cos(th), forced=spec.forced,
                          pair_multiplicity=spec.pair_multiplicity)


def sample_thetas(spec, count, seed=0, chunk=512, threads=1):
    """Eigenangles of ``count`` independent draws, shape (count, R).

    Draw i belongs to chunk i // chunk, which uses substream
    (seed, chunk index); the output does not depend on ``threads``.
    """
    group, size = spec.group
    nchunks = -(-int(count) // chunk)

    def work(ci):
        n = min(chunk, count - ci * chunk)
        rng = rng_stream(seed, ci)
        g = haar_sample(group, size, rng, count=n)
        return spectra(spec, realize(spec, g, check=False))

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, range(nchunks)))
    else:
        parts = [work(ci) for ci in range(nchunks)]
    return np.concatenate(parts, axis=0) if parts else np.zeros((0, spec.R))


# ---------------------------------------------------------------------------
# parameters and Weyl density


def table_params(spec):
    """(beta, a, b) of the Jacobi measure on x = cos(theta)."""
    f, L = spec.family, spec.L
    if f in CIRCULAR:
        raise CircularFamilyError(f"{f} is a circular ensemble, not a Jacobi ensemble")
    table = {
        "AIII": (2, float(L), 0.0),
        "BDI": (1, 0.5 * (L - 1), -0.5),
        "DIII": (4, 2.0 * L, 0.0),
        "CI": (1, 0.0, 0.0),
        "CII": (4, 2.0 * L + 1, 1.0),
        "SO_even": (2, -0.5, -0.5),
        "USp_group": (2, 0.5, 0.5),
        "SO_odd": (2, 0.5, -0.5),
    }
    return table[f]


def root_system(spec):
    f, L = spec.family, spec.L
    table = {
        "AI": (("diff", 1),),
        "AII": (("diff", 4),),
        "CUE": (("diff", 2),),
        "AIII": (("diff", 2), ("sum", 2), ("single", 2 * L), ("double", 1)),
        "BDI": (("diff", 1), ("sum", 1), ("single", L)),
        "DIII": (("diff", 4), ("sum", 4), ("single", 4 * L), ("double", 1)),
        "CI": (("diff", 1), ("sum", 1), ("double", 1)),
        "CII": (("diff", 4), ("sum", 4), ("single", 4 * L), ("double", 3)),
        "SO_even": (("diff", 2), ("sum", 2)),
        "SO_odd": (("diff", 2), ("sum", 2), ("single", 2)),
        "USp_group": (("diff", 2), ("sum", 2), ("double", 2)),
    }
    return RootSystem(tuple((t, m) for t, m in table[f] if m))


def log_weyl_density(spec, thetas):
    th = np.asarray(thetas, dtype=float)
    rs = root_system(spec)
    out = np.zeros(th.shape[:-1])
    j, k = np.triu_indices(th.shape[-1], 1)
    with np.errstate(divide="ignore"):
        for tag, m in rs.roots:
            if tag == "diff":
                v = np.abs(np.sin(0.5 * (th[..., k] - th[..., j])))
            elif tag == "sum":
                v = np.abs(np.sin(0.5 * (th[..., k] + th[..., j])))
            elif tag == "single":
                v = np.abs(np.sin(0.5 * th))
            else:
                v = np.abs(np.sin(th))
            out = out + m * np.sum(np.log(v), axis=-1)
    return out


def weyl_density(spec, thetas):
    """prod over positive roots of |sin(alpha(Theta)/2)|^{m_alpha}."""
    return np.exp(log_weyl_density(spec, thetas))


def log_jacobi_theta_density(beta, a, b, thetas):
    """log of |Van(cos)|^beta prod (1-cos)^{a+1/2} (1+cos)^{b+1/2} (density in theta)."""
    th = np.asarray(thetas, dtype=float)
    x = np.cos(th)
    j, k = np.triu_indices(th.shape[-1], 1)
    with np.errstate(divide="ignore"):
        van = np.sum(np.log(np.abs(x[..., k] - x[..., j])), axis=-1)
        # 1 -+ cos(theta) via half angles keeps full relative precision near 0, pi
        w = np.sum((a + 0.5) * np.log(2 * np.sin(0.5 * th) ** 2)
                   + (b + 0.5) * np.log(2 * np.cos(0.5 * th) ** 2), axis=-1)
    return beta * van + w
