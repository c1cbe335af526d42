"""Dense complex linear-algebra kernels.

Everything downstream reduces to a handful of operations on small Hermitian
matrices: a cyclic Jacobi eigensolver, spectral matrix functions, the
spectral Sylvester solver for ``XA + AX = C`` with ``A`` positive definite,
and the Frobenius (Hilbert-Schmidt) inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NoConvergence,
    NotHermitian,
    SingularPencil,
)

HERMITIAN_TOL = 1e-10
SQRT_CLIP = 1e-12
PENCIL_TOL = 1e-12
_EPS = np.finfo(float).eps


def as_square(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a finite complex square array, or raise."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DimensionMismatch(f"{name} has non-finite entries")
    return M


def dagger(A: np.ndarray) -> np.ndarray:
    return A.conj().T


def hermitian_defect(A: np.ndarray) -> float:
    """Relative distance ``||A - A^dag|| / ||A||`` (0 for the zero matrix)."""
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(A - dagger(A)) / scale)


def frob_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product ``tr(A^dag B)``."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def frob_norm(A) -> float:
    """``sqrt(tr(A^dag A))``."""
    return float(np.linalg.norm(np.asarray(A, dtype=complex)))


@dataclass(frozen=True)
class EigenDecomposition:
    """``A = U diag(eigenvalues) U^dag`` with ascending real eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ dagger(U)


def _jacobi_sweeps(A: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return np.real(np.diag(A)).copy(), V
    target = _EPS * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            return np.real(np.diag(A)).copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-3 * target / n:
                    continue
                # unit phase so that the (p, q) pivot becomes real and positive
                phase = apq / r
                app = A[p, p].real
                aqq = A[q, q].real
                zeta = (aqq - app) / (2.0 * r)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                J = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = dagger(J) @ A[idx, :]
                V[:, idx] = V[:, idx] @ J
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def herm_eig(A, max_sweeps: int = 60) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Raises :class:`NotHermitian` when ``||A - A^dag|| / ||A|| > 1e-10``.
    The input is symmetrised before iterating.
    """
    A = as_square(A)
    if hermitian_defect(A) > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (defect {hermitian_defect(A):.3e})")
    work = 0.5 * (A + dagger(A))
    lam, V = _jacobi_sweeps(work, max_sweeps)
    order = np.argsort(lam, kind="stable")
    return EigenDecomposition(lam[order], V[:, order])


def herm_fn(A, f: Callable[[np.ndarray], np.ndarray], eig: EigenDecomposition | None = None) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``f`` receives the eigenvalue array and must return an array of the same
    length (real or complex). Non-finite values raise :class:`DomainError`.
    """
    if eig is None:
        eig = herm_eig(A)
    values = np.asarray(f(eig.eigenvalues))
    if values.shape != eig.eigenvalues.shape:
        raise DimensionMismatch("f must map the eigenvalue array elementwise")
    if not np.all(np.isfinite(values)):
        raise DomainError("function undefined on part of the spectrum")
    U = eig.eigenvectors
    out = (U * values) @ dagger(U)
    if not np.iscomplexobj(values) or np.all(np.imag(values) == 0):
        out = 0.5 * (out + dagger(out))
    return out


def _clipped_sqrt(lam: np.ndarray) -> np.ndarray:
    if np.any(lam < -SQRT_CLIP):
        raise DomainError(f"negative eigenvalue {lam.min():.3e} below -{SQRT_CLIP:g}")
    return np.sqrt(np.clip(lam, 0.0, None))


def sqrtm_psd(A, eig: EigenDecomposition | None = None) -> np.ndarray:
    """Unique positive semidefinite square root; eigenvalues in [-1e-12, 0) clip to 0."""
    return herm_fn(A, _clipped_sqrt, eig)


def inv_herm(A, power: int = 1, eig: EigenDecomposition | None = None) -> np.ndarray:
    """``A^{-power}`` for invertible Hermitian ``A``."""

    def f(lam):
        if np.any(lam == 0.0):
            raise DomainError("matrix is singular")
        return lam ** (-float(power))

    return herm_fn(A, f, eig)


def unitary_propagator(A, t: float, eig: EigenDecomposition | None = None) -> np.ndarray:
    """``exp(-i A t)`` for Hermitian ``A``; exactly the identity at ``t = 0``."""
    if t == 0:
        return np.eye(as_square(A, "A").shape[0], dtype=complex)
    return herm_fn(A, lambda lam: np.exp(-1j * lam * t), eig)


def sylvester_solve(A, C, eig: EigenDecomposition | None = None) -> np.ndarray:
    """Solve ``X A + A X = C`` for Hermitian positive-definite ``A``.

    In the eigenbasis of ``A`` the equation decouples entrywise,
    ``X~_ij = C~_ij / (l_i + l_j)``. When ``C`` is Hermitian (anti-Hermitian)
    the returned ``X`` is exactly Hermitian (anti-Hermitian).
    """
    A = as_square(A, "A")
    C = as_square(C, "C")
    if A.shape != C.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {C.shape}")
    if eig is None:
        eig = herm_eig(A)
    lam = eig.eigenvalues
    denom = lam[:, None] + lam[None, :]
    if np.any(denom <= PENCIL_TOL):
        raise SingularPencil(f"l_i + l_j <= {PENCIL_TOL:g}; A is not positive definite")
    U = eig.eigenvectors
    X = U @ ((dagger(U) @ C @ U) / denom) @ dagger(U)
    if hermitian_defect(C) <= HERMITIAN_TOL:
        X = 0.5 * (X + dagger(X))
    elif np.linalg.norm(C + dagger(C)) <= HERMITIAN_TOL * np.linalg.norm(C):
        X = 0.5 * (X - dagger(X))
    return X
