"""Hamiltonian flow on purifications and numerical checks of its geometry.

The Hamiltonian vector field is ``W -> -i H W``; its flow is
``W -> exp(-i H t) W`` and projects to von Neumann evolution of
``rho = W W^dag``. The functions named ``*_defect`` / ``*_residual`` return
the size of the violation of one geometric identity and are meant to be
compared against a tolerance by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StepTooLarge
from .metric import DynamicMetric
from .numerics import dagger, frob_norm, herm_eig, unitary_propagator
from .states import DensityMatrix, Hamiltonian, Purification, TangentVector, _mat, project, random_tangent

# RK4 output is checked at the accuracy the integrator promises, not at round-off
RK4_STATE_TOL = 1e-6


def _ham(h) -> Hamiltonian:
    if isinstance(h, DynamicMetric):
        return h.ham
    if isinstance(h, Hamiltonian):
        return h
    return Hamiltonian(h)


def propagator(ham, t: float) -> np.ndarray:
    """``exp(-i H t)`` for the (shifted) Hamiltonian."""
    ham = _ham(ham)
    return unitary_propagator(ham.H, t, ham.eig)


def ham_field(ham, W) -> TangentVector:
    """Hamiltonian vector field ``-i H W`` at ``W``."""
    ham = _ham(ham)
    if not isinstance(W, Purification):
        W = Purification(W)
    return TangentVector(W, -1j * ham.H @ W.W)


def flow(ham, W, t: float) -> Purification:
    if not isinstance(W, Purification):
        W = Purification(W)
    return Purification(propagator(ham, t) @ W.W)


def evolve_exact(ham, rho, t: float) -> DensityMatrix:
    """``exp(-iHt) rho exp(iHt)``."""
    rho = _mat(rho)
    U = propagator(ham, t)
    out = U @ rho @ dagger(U)
    return DensityMatrix(0.5 * (out + dagger(out)))


def _von_neumann_rhs(H: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return -1j * (H @ rho - rho @ H)


def evolve_rk4(ham, rho, t: float, dt: float) -> DensityMatrix:
    """Classical fourth-order Runge-Kutta for ``d rho/dt = -i[H, rho]``.

    Takes ``ceil(t / dt)`` equal steps (so the step used never exceeds ``dt``)
    and re-Hermitises after each one. Raises :class:`StepTooLarge` when
    ``dt * ||H|| > 0.5``. The result is validated against ``RK4_STATE_TOL``
    rather than machine tolerance: truncation error can push the zero
    eigenvalues of a pure state slightly negative.
    """
    ham = _ham(ham)
    if dt <= 0 or t < 0:
        raise ValueError("need dt > 0 and t >= 0")
    if dt * ham.norm > 0.5:
        raise StepTooLarge(f"dt * ||H|| = {dt * ham.norm:.3g} > 0.5")
    rho = _mat(rho).copy()
    steps = int(np.ceil(t / dt - 1e-9)) if t > 0 else 0
    H = ham.H
    if steps:
        h = t / steps
        for _ in range(steps):
            k1 = _von_neumann_rhs(H, rho)
            k2 = _von_neumann_rhs(H, rho + 0.5 * h * k1)
            k3 = _von_neumann_rhs(H, rho + 0.5 * h * k2)
            k4 = _von_neumann_rhs(H, rho + h * k3)
            rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            rho = 0.5 * (rho + dagger(rho))
    return DensityMatrix(rho, tol=RK4_STATE_TOL)


@dataclass(frozen=True, eq=False)
class FlowResult:
    times: np.ndarray
    points: list
    projections: list


def trajectory(ham, W, times) -> FlowResult:
    """Sample the flow through ``W`` at the given times (sorted ascending)."""
    times = np.sort(np.asarray(times, dtype=float))
    points = [flow(ham, W, t) for t in times]
    return FlowResult(times, points, [project(p) for p in points])


def killing_defect(metric: DynamicMetric, A, W, X, Y, t: float) -> float:
    """``|g(exp(-iAt) X, exp(-iAt) Y) - g(X, Y)|``.

    Vanishes (to round-off) whenever ``[H, A] = 0``.
    """
    A = _mat(A)
    U = unitary_propagator(A, t, metric.ham.eig if A is metric.ham.H else herm_eig(A))
    Xm, Ym = _mat(X), _mat(Y)
    return abs(metric.inner(U @ Xm, U @ Ym) - metric.inner(Xm, Ym))


def isometry_defect(metric: DynamicMetric, W, X, Y, t: float) -> float:
    """Killing defect of the Hamiltonian flow itself."""
    return killing_defect(metric, metric.ham.H, W, X, Y, t)


def acceleration(ham, W, t: float) -> tuple[np.ndarray, np.ndarray]:
    """``(gamma(t), gamma''(t))`` along the flow, with ``gamma'' = -H^2 gamma``."""
    ham = _ham(ham)
    gamma = propagator(ham, t) @ _mat(W)
    return gamma, -(ham.H @ (ham.H @ gamma))


def geodesic_residual(metric: DynamicMetric, W, t: float, probes: int = 20, seed: int = 0) -> float:
    """Largest tangential component of the acceleration at ``gamma(t)``.

    Returns ``max |g(gamma'', X)| / ||X||`` over ``probes`` seeded random
    tangent vectors ``X`` at ``gamma(t)``.
    """
    gamma, acc = acceleration(metric.ham, W, t)
    P = Purification(gamma)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for s in rng.integers(2**31, size=probes):
        X = random_tangent(P, int(s)).X
        worst = max(worst, abs(metric.inner(acc, X)) / frob_norm(X))
    return worst


def normal_acceleration(metric: DynamicMetric, W, t: float) -> float:
    """``|g(gamma'', gamma)|``: the normal component, equal to 1 on the unit sphere."""
    gamma, acc = acceleration(metric.ham, W, t)
    return abs(metric.inner(acc, gamma))


def unit_speed_defect(metric: DynamicMetric, W) -> float:
    """``|g(h_W, h_W) - 1|``. Accepts raw matrices so off-sphere inputs can be probed."""
    Wm = _mat(W)
    h = -1j * metric.ham.H @ Wm
    return abs(metric.inner(h, h) - 1.0)


def derivative_defect(ham, W, t: float, eps: float = 1e-5) -> float:
    """Central-difference check of ``d/dt pi(gamma) = -i[H, pi(gamma)]``."""
    ham = _ham(ham)
    plus = project(flow(ham, W, t + eps)).rho
    minus = project(flow(ham, W, t - eps)).rho
    rho = project(flow(ham, W, t)).rho
    fd = (plus - minus) / (2 * eps)
    return frob_norm(fd - _von_neumann_rhs(ham.H, rho))
