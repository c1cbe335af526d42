"""Density matrices, purifications and the bundle maps between them.

A purification is any ``n x n`` complex matrix ``W`` with ``tr(W W^dag) = 1``;
the projection ``W -> W W^dag`` sends it to a density matrix, and right
multiplication by a unitary moves along the fibre without changing the
projection. Invertible purifications form the total space over the strictly
positive densities, which carries the global section ``rho -> sqrt(rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, InvalidState, NotHermitian, NotStrictlyPositive, NotTangent, NotUnitary
from .numerics import (
    EigenDecomposition,
    as_square,
    dagger,
    frob_norm,
    herm_eig,
    herm_fn,
    inv_herm,
    sqrtm_psd,
)

STATE_TOL = 1e-10
TANGENT_TOL = 1e-9
UNITARY_TOL = 1e-10
INVERTIBLE_TOL = 1e-10
RANDOM_DENSITY_EPS = 1e-3

MatrixLike = Union[np.ndarray, "Purification", "DensityMatrix"]


def density_report(rho) -> dict[str, bool]:
    """Check each density-matrix invariant separately.

    Keys: ``hermitian``, ``psd``, ``trace``, ``invertible`` (strict
    positivity). Used by the command-line validator, which reports each
    invariant on its own line.
    """
    M = as_square(rho, "rho")
    report = {"hermitian": bool(np.linalg.norm(M - dagger(M)) <= STATE_TOL)}
    lam = np.linalg.eigvalsh(0.5 * (M + dagger(M)))
    report["psd"] = bool(lam.min() >= -STATE_TOL)
    report["trace"] = bool(abs(np.trace(M) - 1.0) <= STATE_TOL)
    report["invertible"] = bool(lam.min() >= STATE_TOL)
    return report


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    ``strictly_positive`` is derived on construction: true when the smallest
    eigenvalue is at least ``1e-10``.
    """

    rho: np.ndarray
    # validation tolerance; numerical integrators pass their own error budget
    tol: float = field(default=STATE_TOL, repr=False)
    strictly_positive: bool = field(init=False)
    eig: EigenDecomposition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        M = as_square(self.rho, "rho")
        tol = float(self.tol)
        if np.linalg.norm(M - dagger(M)) > tol:
            raise NotHermitian("density matrix is not Hermitian")
        M = 0.5 * (M + dagger(M))
        eig = herm_eig(M)
        if eig.eigenvalues[0] < -tol:
            raise InvalidState(f"density matrix has negative eigenvalue {eig.eigenvalues[0]:.3e}")
        tr = np.trace(M).real
        if abs(tr - 1.0) > tol:
            raise InvalidState(f"density matrix trace is {tr:.12g}, expected 1")
        M.setflags(write=False)
        object.__setattr__(self, "rho", M)
        object.__setattr__(self, "eig", eig)
        object.__setattr__(self, "strictly_positive", bool(eig.eigenvalues[0] >= STATE_TOL))

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.rho @ self.rho)))


@dataclass(frozen=True, eq=False)
class Purification:
    """Point ``W`` on the unit sphere ``tr(W W^dag) = 1`` of ``M(n, C)``."""

    W: np.ndarray
    invertible: bool = field(init=False)

    def __post_init__(self):
        W = as_square(self.W, "W").copy()
        norm2 = np.real(np.vdot(W, W))
        if abs(norm2 - 1.0) > STATE_TOL:
            raise InvalidState(f"tr(W W^dag) = {norm2:.12g}, expected 1")
        sigma_min = np.linalg.svd(W, compute_uv=False)[-1]
        W.setflags(write=False)
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "invertible", bool(sigma_min >= INVERTIBLE_TOL))

    @property
    def n(self) -> int:
        return self.W.shape[0]


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Matrix ``X`` at ``base`` satisfying ``Re tr(W^dag X) = 0``."""

    base: Purification
    X: np.ndarray

    def __post_init__(self):
        X = as_square(self.X, "X")
        if X.shape != self.base.W.shape:
            raise NotTangent(f"tangent shape {X.shape} does not match base {self.base.W.shape}")
        radial = abs(np.real(np.vdot(self.base.W, X)))
        if radial > TANGENT_TOL * max(frob_norm(X), 1.0):
            raise NotTangent(f"|Re tr(W^dag X)| = {radial:.3e} exceeds tangency tolerance")
        X = X.copy()
        X.setflags(write=False)
        object.__setattr__(self, "X", X)


@dataclass(frozen=True, eq=False, init=False)
class Hamiltonian:
    """Hermitian Hamiltonian, shifted to be invertible, with cached inverses.

    ``shift="auto"`` leaves ``H`` alone unless some eigenvalue has modulus below
    ``1e-10``; then ``H -> H + c I`` with ``c = 1 + |lambda_min|`` (smallest
    eigenvalue), which makes the shifted operator positive definite. A numeric
    ``shift`` is always applied. The shift only multiplies the propagator by a
    global phase, so projected dynamics are unchanged; metric values are not.
    """

    original: np.ndarray
    shift: float = field(init=False)
    H: np.ndarray = field(init=False, repr=False)
    eig: EigenDecomposition = field(init=False, repr=False, compare=False)
    Hinv: np.ndarray = field(init=False, repr=False, compare=False)
    Hinv2: np.ndarray = field(init=False, repr=False, compare=False)

    def __init__(self, H, shift: Union[str, float] = "auto"):
        H0 = as_square(H, "H")
        eig0 = herm_eig(H0)  # raises NotHermitian
        H0 = 0.5 * (H0 + dagger(H0))
        lam = eig0.eigenvalues
        if shift == "auto":
            c = float(1.0 + abs(lam[0])) if np.min(np.abs(lam)) < STATE_TOL else 0.0
        else:
            c = float(shift)
        if c == 0.0:
            Hs, eig = H0, eig0
        else:
            Hs = H0 + c * np.eye(H0.shape[0])
            eig = herm_eig(Hs)
        if np.min(np.abs(eig.eigenvalues)) < STATE_TOL:
            raise DomainError(f"Hamiltonian is singular after shift c={c:g}")
        for arr in (H0, Hs):
            arr.setflags(write=False)
        object.__setattr__(self, "original", H0)
        object.__setattr__(self, "shift", c)
        object.__setattr__(self, "H", Hs)
        object.__setattr__(self, "eig", eig)
        object.__setattr__(self, "Hinv", inv_herm(Hs, 1, eig))
        object.__setattr__(self, "Hinv2", inv_herm(Hs, 2, eig))

    @property
    def n(self) -> int:
        return self.H.shape[0]

    @property
    def norm(self) -> float:
        """Spectral norm of the shifted operator."""
        return float(np.max(np.abs(self.eig.eigenvalues)))


def _mat(x: MatrixLike) -> np.ndarray:
    if isinstance(x, Purification):
        return x.W
    if isinstance(x, DensityMatrix):
        return x.rho
    if isinstance(x, TangentVector):
        return x.X
    return np.asarray(x, dtype=complex)


def project(W: Purification) -> DensityMatrix:
    """Bundle projection ``W -> W W^dag``."""
    M = _mat(W)
    return DensityMatrix(M @ dagger(M))


def section(rho: DensityMatrix, require_invertible: bool = False) -> Purification:
    """Canonical purification: the positive square root of ``rho``.

    With ``require_invertible=True`` a rank-deficient ``rho`` raises
    :class:`NotStrictlyPositive` instead of returning a boundary point.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if require_invertible and not rho.strictly_positive:
        raise NotStrictlyPositive("density matrix has a (numerically) zero eigenvalue")
    root = sqrtm_psd(rho.rho, rho.eig)
    # the square root of a trace-1 matrix has unit Frobenius norm up to round-off
    return Purification(root / np.linalg.norm(root))


def fibre_act(W: Purification, u) -> Purification:
    """Right action ``W -> W u`` of a unitary ``u``."""
    u = as_square(u, "u")
    if u.shape != W.W.shape:
        raise NotUnitary(f"unitary shape {u.shape} does not match {W.W.shape}")
    if np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0])) > UNITARY_TOL:
        raise NotUnitary("u is not unitary")
    return Purification(W.W @ u)


# --- seeded test data -----------------------------------------------------


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_density(n: int, seed: int, strictly_positive: bool = True) -> DensityMatrix:
    """``G G^dag / tr(G G^dag)`` for complex Gaussian ``G`` (plus ``1e-3 I`` if strict)."""
    rng = np.random.default_rng(seed)
    G = _ginibre(rng, n)
    M = G @ dagger(G)
    if strictly_positive:
        M = M + RANDOM_DENSITY_EPS * np.eye(n)
    M = 0.5 * (M + dagger(M))
    return DensityMatrix(M / np.trace(M).real)


def random_purification(n: int, seed: int) -> Purification:
    rng = np.random.default_rng(seed)
    G = _ginibre(rng, n)
    return Purification(G / np.linalg.norm(G))


def random_tangent(W: Purification, seed: int) -> TangentVector:
    """Gaussian ambient matrix with its radial component removed."""
    rng = np.random.default_rng(seed)
    G = _ginibre(rng, W.n)
    Wm = W.W
    X = G - np.real(np.vdot(Wm, G)) / np.real(np.vdot(Wm, Wm)) * Wm
    return TangentVector(W, X)


def random_hermitian(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    G = _ginibre(rng, n)
    return 0.5 * (G + dagger(G))


def random_unitary(n: int, seed: int) -> np.ndarray:
    """``exp(i A)`` for a seeded random Hermitian ``A``."""
    return herm_fn(random_hermitian(n, seed), lambda lam: np.exp(1j * lam))


def random_hamiltonian(n: int, seed: int, low: float = 0.5, high: float = 3.0) -> np.ndarray:
    """Hermitian matrix with eigenvalues of random sign and modulus in ``[low, high]``.

    Keeps ``||H|| <= high`` and the condition number bounded, which is what the
    tolerance-sensitive checks need.
    """
    rng = np.random.default_rng(seed)
    lam = rng.uniform(low, high, size=n) * rng.choice([-1.0, 1.0], size=n)
    U = random_unitary(n, int(rng.integers(2**31)))
    H = (U * lam) @ dagger(U)
    return 0.5 * (H + dagger(H))
