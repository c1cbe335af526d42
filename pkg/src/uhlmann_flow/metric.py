"""The Hamiltonian-dependent metric on purifications and what it induces.

For a Hamiltonian ``H`` the metric on tangent matrices is

    g(X, Y) = 1/2 tr(X^dag H^-2 Y + Y^dag H^-2 X) = Re tr(X^dag H^-2 Y),

defined on the whole of ``M(n, C)`` (the "ambient" extension) and restricted
to the sphere ``tr(W W^dag) = 1``. Vertical vectors ``W A`` (``A``
anti-Hermitian) point along the fibres; their g-orthogonal complement is the
horizontal space. Horizontal lifts of Hermitian traceless ``Y`` at ``rho``
reduce to one Sylvester solve, and so does the induced base metric. With
``H = I`` the base metric is the Bures metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasePointMismatch, DegenerateFrame, NotHermitian, NotStrictlyPositive, NotTangent, SingularBase
from .numerics import as_square, dagger, sylvester_solve
from .states import DensityMatrix, Hamiltonian, Purification, TangentVector, _mat

BASE_TOL = 1e-10
FRAME_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DynamicMetric:
    """Metric ``Re tr(X^dag H^-power Y)``.

    ``power=2`` is the dynamic metric. Other powers exist only so that the
    verification suite can be run against a deliberately wrong metric.
    """

    ham: Hamiltonian
    power: int = 2

    @property
    def weight(self) -> np.ndarray:
        if self.power == 2:
            return self.ham.Hinv2
        if self.power == 1:
            return self.ham.Hinv
        lam = self.ham.eig.eigenvalues ** (-float(self.power))
        U = self.ham.eig.eigenvectors
        return (U * lam) @ dagger(U)

    @property
    def n(self) -> int:
        return self.ham.n

    def inner(self, X, Y) -> float:
        """Ambient metric on arbitrary matrices (no tangency required)."""
        return float(np.real(np.vdot(_mat(X), self.weight @ _mat(Y))))


def identity_metric(n: int) -> DynamicMetric:
    return DynamicMetric(Hamiltonian(np.eye(n)))


def _same_base(X: TangentVector, Y: TangentVector) -> None:
    if X.base is not Y.base and not np.array_equal(X.base.W, Y.base.W):
        raise BasePointMismatch("tangent vectors are attached to different points")


def g_total(metric: DynamicMetric, X: TangentVector, Y: TangentVector) -> float:
    """Metric value of two tangent vectors at the same point."""
    _same_base(X, Y)
    return metric.inner(X.X, Y.X)


def horizontality_residual(metric: DynamicMetric, W, X) -> float:
    """``||X^dag K W - W^dag K X||`` with ``K = H^-power``; zero iff ``X`` is horizontal."""
    Wm, Xm, K = _mat(W), _mat(X), metric.weight
    return float(np.linalg.norm(dagger(Xm) @ K @ Wm - dagger(Wm) @ K @ Xm))


def split(metric: DynamicMetric, X: TangentVector) -> tuple[TangentVector, TangentVector]:
    """Decompose ``X`` into (vertical, horizontal) parts.

    The vertical part is ``W A`` with ``A`` anti-Hermitian solving
    ``A M + M A = -K`` where ``M = W^dag H^-2 W`` and
    ``K = X^dag H^-2 W - W^dag H^-2 X``.
    """
    base = X.base
    if not base.invertible:
        raise SingularBase("fibre splitting needs an invertible purification")
    Wm, Xm, Q = base.W, X.X, metric.weight
    M = dagger(Wm) @ Q @ Wm
    M = 0.5 * (M + dagger(M))
    K = dagger(Xm) @ Q @ Wm - dagger(Wm) @ Q @ Xm
    A = sylvester_solve(M, -K)
    A = 0.5 * (A - dagger(A))
    vertical = Wm @ A
    return TangentVector(base, vertical), TangentVector(base, Xm - vertical)


def _check_base_tangent(Y, name: str) -> np.ndarray:
    Y = as_square(Y, name)
    if np.linalg.norm(Y - dagger(Y)) > BASE_TOL * max(1.0, np.linalg.norm(Y)):
        raise NotHermitian(f"{name} must be Hermitian")
    if abs(np.trace(Y)) > BASE_TOL:
        raise NotTangent(f"{name} must be traceless (tr = {np.trace(Y):.3e})")
    return 0.5 * (Y + dagger(Y))


def _check_rho(rho) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if not rho.strictly_positive:
        raise NotStrictlyPositive("base metric is only defined at strictly positive densities")
    return rho


def lift_generator(metric: DynamicMetric, rho, Y) -> np.ndarray:
    """Hermitian ``G_Y`` with ``H^-1 Y H^-1 = G_Y R + R G_Y``, ``R = H^-1 rho H^-1``."""
    rho = _check_rho(rho)
    Y = _check_base_tangent(Y, "Y")
    Hinv = metric.ham.Hinv
    R = Hinv @ rho.rho @ Hinv
    return sylvester_solve(0.5 * (R + dagger(R)), Hinv @ Y @ Hinv)


def horizontal_lift(metric: DynamicMetric, rho, Y, W: Purification) -> TangentVector:
    """Horizontal tangent ``H G_Y H^-1 W`` at ``W`` projecting onto ``Y``."""
    rho = _check_rho(rho)
    if W.n != rho.n or np.linalg.norm(W.W @ dagger(W.W) - rho.rho) > BASE_TOL:
        raise BasePointMismatch("W does not purify rho")
    G = lift_generator(metric, rho, Y)
    ham = metric.ham
    return TangentVector(W, ham.H @ G @ ham.Hinv @ W.W)


def pushforward(W, Xdot) -> np.ndarray:
    """Differential of the projection: ``Xdot W^dag + W Xdot^dag``."""
    Wm, Xm = _mat(W), _mat(Xdot)
    return Xm @ dagger(Wm) + Wm @ dagger(Xm)


def base_metric(metric: DynamicMetric, rho, Y, Z) -> float:
    """Induced metric on strictly positive densities, ``1/2 tr(H^-1 G_Y H^-1 Z)``."""
    Z = _check_base_tangent(Z, "Z")
    G = lift_generator(metric, rho, Y)
    Hinv = metric.ham.Hinv
    return float(0.5 * np.real(np.trace(Hinv @ G @ Hinv @ Z)))


def bures_metric(rho, Y, Z) -> float:
    """Bures metric ``1/2 tr(G_Y Z)`` with ``Y = G_Y rho + rho G_Y``."""
    rho = _check_rho(rho)
    Y = _check_base_tangent(Y, "Y")
    Z = _check_base_tangent(Z, "Z")
    G = sylvester_solve(rho.rho, Y, rho.eig)
    return float(0.5 * np.real(np.trace(G @ Z)))


def chord_distance(metric: DynamicMetric, W, V) -> float:
    """Ambient metric length of ``W - V``."""
    D = _mat(W) - _mat(V)
    return float(np.sqrt(max(metric.inner(D, D), 0.0)))


# --- orthonormal frames and volume ----------------------------------------


@dataclass(frozen=True, eq=False)
class Frame:
    base: Purification
    vectors: list

    def matrices(self) -> list:
        return [v.X for v in self.vectors]


def _coordinate_direction(n: int, k: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=complex)
    i, j = divmod(k % (n * n), n)
    E[i, j] = 1.0 if k < n * n else 1j
    return E


def frame(metric: DynamicMetric, W: Purification, seed: int) -> Frame:
    """g-orthonormal basis of the tangent space at ``W`` (``2n^2 - 1`` vectors).

    Starts from the real coordinate directions of ``M(n, C)`` with the one most
    aligned with ``W`` dropped, in a seeded order, projects them onto the
    tangent space and runs Gram-Schmidt in the metric.
    """
    if not W.invertible:
        raise SingularBase("frames are built at invertible purifications")
    n = W.n
    Wm = W.W
    coords = np.concatenate([Wm.real.ravel(), Wm.imag.ravel()])
    radial = int(np.argmax(np.abs(coords)))
    order = [k for k in np.random.default_rng(seed).permutation(2 * n * n) if k != radial]

    basis: list[np.ndarray] = []
    for k in order:
        X = _coordinate_direction(n, int(k))
        X = X - np.real(np.vdot(Wm, X)) * Wm
        for _ in range(2):
            for E in basis:
                X = X - metric.inner(E, X) * E
        norm2 = metric.inner(X, X)
        norm = np.sqrt(norm2) if norm2 > 0 else 0.0
        if norm < FRAME_TOL:
            raise DegenerateFrame(f"coordinate direction {k} is dependent on earlier ones")
        basis.append(X / norm)
    return Frame(W, [TangentVector(W, X) for X in basis])


def gram_matrix(metric: DynamicMetric, vectors) -> np.ndarray:
    mats = [_mat(v) for v in vectors]
    K = metric.weight
    KV = [K @ V for V in mats]
    return np.array([[np.real(np.vdot(U, KW)) for KW in KV] for U in mats])


def gram_det(metric: DynamicMetric, vectors) -> float:
    """Determinant of the metric Gram matrix; its square root is the volume factor."""
    return float(np.linalg.det(gram_matrix(metric, vectors)))
