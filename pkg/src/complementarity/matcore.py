"""Dense complex linear algebra for the fixed sizes 2 and 4.

Matrices are plain ``numpy`` ``complex128`` arrays. The eigensolver is a
cyclic complex Jacobi iteration that also accepts stacks of matrices with
shape ``(..., n, n)``, so that thousands of 4x4 problems can be diagonalized
in one vectorized pass.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonHermitianInput, NotPSD

HERMITIAN_TOL = 1e-10
PSD_CLAMP = 1e-10
JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-14

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SIGMA.setflags(write=False)


def set_hermitian_tol(tol):
    """Set the global relative Hermiticity tolerance; returns the old value."""
    global HERMITIAN_TOL
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    old, HERMITIAN_TOL = HERMITIAN_TOL, float(tol)
    return old


@dataclass(frozen=True)
class SectorPair:
    """Real symmetric part ``sym`` (A) and real antisymmetric part ``antisym`` (N)."""

    sym: np.ndarray
    antisym: np.ndarray

    def combine(self):
        return self.sym + 1j * self.antisym

    def free_parameters(self):
        """Upper-triangle entries carrying the independent parameters of each part."""
        n = self.sym.shape[-1]
        iu = np.triu_indices(n)
        iu_strict = np.triu_indices(n, k=1)
        return self.sym[iu], self.antisym[iu_strict]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues[..., None, :]) @ np.swapaxes(u.conj(), -1, -2)


def as_cmatrix(m, dims=(2, 4)):
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2] or m.shape[-1] not in dims:
        raise DimensionMismatch(f"expected a square matrix of size {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hermitian_residual(m):
    """Relative ``||m - m^H||_F / ||m||_F`` (0 for the zero matrix)."""
    m = np.asarray(m, dtype=complex)
    diff = np.linalg.norm(m - np.swapaxes(m.conj(), -1, -2), axis=(-2, -1))
    scale = np.linalg.norm(m, axis=(-2, -1))
    return np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), diff)


def check_hermitian(m, tol=None):
    tol = HERMITIAN_TOL if tol is None else tol
    res = np.max(hermitian_residual(m))
    if res > tol:
        raise NonHermitianInput(res)


def hermitian_split(m):
    """Split a Hermitian matrix into ``A + iN`` with ``A`` symmetric and ``N`` antisymmetric."""
    m = as_cmatrix(m)
    check_hermitian(m)
    re, im = m.real, m.imag
    sym = 0.5 * (re + np.swapaxes(re, -1, -2))
    antisym = 0.5 * (im - np.swapaxes(im, -1, -2))
    n = m.shape[-1]
    antisym[..., np.arange(n), np.arange(n)] = 0.0
    return SectorPair(sym, antisym)


def trace_product(a, b):
    """``Tr(ab)`` without forming the product."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-2:] != b.shape[-2:]:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return np.einsum("...ij,...ji->...", a, b)


def partial_trace_pol(m):
    """Trace out polarization (the inner factor) of a 4x4 path-polarization matrix."""
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (4, 4):
        raise DimensionMismatch(f"expected 4x4, got {m.shape}")
    blocks = m.reshape(m.shape[:-2] + (2, 2, 2, 2))
    return np.einsum("...ipjp->...ij", blocks)


def partial_trace_path(m):
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (4, 4):
        raise DimensionMismatch(f"expected 4x4, got {m.shape}")
    blocks = m.reshape(m.shape[:-2] + (2, 2, 2, 2))
    return np.einsum("...pipj->...ij", blocks)


def _offdiag_norm(a):
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., mask]) ** 2, axis=-1))


def eig_hermitian(m, check=True):
    """Eigen-decomposition of a Hermitian matrix (or stack) by cyclic Jacobi rotations.

    Eigenvalues are returned in descending order with matching orthonormal
    eigenvector columns. Raises :class:`NoConvergence` if the off-diagonal
    Frobenius norm is not below ``JACOBI_TOL * ||m||_F`` after
    ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    m = as_cmatrix(m)
    if check:
        check_hermitian(m)
    batch_shape = m.shape[:-2]
    n = m.shape[-1]
    a = m.reshape((-1, n, n)).copy()
    # exact Hermitian symmetrization so rotations act on a self-adjoint array
    a = 0.5 * (a + np.swapaxes(a.conj(), -1, -2))
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    scale = np.linalg.norm(a, axis=(-2, -1))
    target = JACOBI_TOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        if np.all(_offdiag_norm(a) <= target):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        if not np.all(_offdiag_norm(a) <= target):
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    w = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return Spectrum(w.reshape(batch_shape + (n,)), v.reshape(batch_shape + (n, n)))


def _rotate(a, v, p, q):
    """Annihilate a[:, p, q] in place for every matrix of the stack."""
    b = a[:, p, q]
    mag = np.abs(b)
    active = mag > np.finfo(float).tiny
    if not np.any(active):
        return
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    phase = np.where(active, b / np.where(active, mag, 1.0), 1.0).conj()
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        zeta = (aqq - app) / (2.0 * mag)
        t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    t = np.where(active & np.isfinite(t), t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    # 2x2 unitary U with U^H [[app, b], [b*, aqq]] U diagonal
    u = np.empty((a.shape[0], 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 0, 1] = s
    u[:, 1, 0] = -s * phase
    u[:, 1, 1] = c * phase
    idx = [p, q]
    a[:, :, idx] = a[:, :, idx] @ u
    a[:, idx, :] = np.swapaxes(u.conj(), -1, -2) @ a[:, idx, :]
    v[:, :, idx] = v[:, :, idx] @ u
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real


def spectral_apply(m, func, check=True):
    """``U f(Lambda) U^H`` for Hermitian ``m``."""
    spec = eig_hermitian(m, check=check)
    u = spec.eigenvectors
    return (u * func(spec.eigenvalues)[..., None, :]) @ np.swapaxes(u.conj(), -1, -2)


def mat_exp_hermitian(m):
    return spectral_apply(m, np.exp)


def clamp_psd(eigenvalues, tol=None):
    """Zero eigenvalues in ``[-tol, 0)``; raise :class:`NotPSD` below ``-tol``."""
    tol = PSD_CLAMP if tol is None else tol
    w = np.asarray(eigenvalues, dtype=float)
    lowest = np.min(w) if w.size else 0.0
    if lowest < -tol:
        raise NotPSD(lowest)
    return np.where(w < 0, 0.0, w)


def rank_floor(eigenvalues, rel):
    """Zero eigenvalues not above ``rel * max|eigenvalue|`` (per matrix of a stack)."""
    w = np.asarray(eigenvalues, dtype=float)
    top = np.max(np.abs(w), axis=-1, keepdims=True)
    return np.where(w <= rel * top, 0.0, w)


def mat_sqrt_psd(m, floor=0.0):
    """Principal square root of a PSD matrix.

    ``floor`` > 0 additionally treats eigenvalues below ``floor * lambda_max``
    as exact zeros, which keeps rounding noise out of the square root.
    """
    spec = eig_hermitian(m)
    w = clamp_psd(spec.eigenvalues)
    if floor:
        w = rank_floor(w, floor)
    u = spec.eigenvectors
    return (u * np.sqrt(w)[..., None, :]) @ np.swapaxes(u.conj(), -1, -2)


def dagger(m):
    return np.swapaxes(np.conj(m), -1, -2)
