"""Almost-periodicity of von Neumann evolution with a discrete spectrum.

In the energy eigenbasis ``rho_{nn'}(t) = rho_{nn'}(0) exp(i w_{nn'} t)`` with
``w_{nn'} = E_{n'} - E_n``, so the Frobenius deviation after a delay ``T``

    d(T) = sqrt(sum |rho_{nn'}|^2 |exp(i w_{nn'} T) - 1|^2)

does not depend on the reference time. A recurrence scan looks for delays
where ``d(T) < eps``: a uniform coarse grid first, then golden-section
refinement of every promising local minimum.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import IndexOutOfRange
from .numerics import dagger, frob_norm
from .states import _mat
from .dynamics import _ham

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
# |rho_nn'| below 1e-12 or |w| below 1e-12 counts as zero for the stationarity test
STATIONARY_WEIGHT = 1e-24
STATIONARY_FREQ = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralState:
    """A density matrix written in the eigenbasis of a Hamiltonian."""

    energies: np.ndarray
    basis: np.ndarray
    rho_energy: np.ndarray

    @property
    def n(self) -> int:
        return len(self.energies)

    @property
    def frequencies(self) -> np.ndarray:
        """``w[n, n'] = E_{n'} - E_n`` (antisymmetric)."""
        return self.energies[None, :] - self.energies[:, None]

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.rho_energy) ** 2

    @property
    def stationary(self) -> bool:
        """True when every term with non-negligible weight has zero frequency."""
        active = self.weights > STATIONARY_WEIGHT
        return bool(np.all(np.abs(self.frequencies[active]) <= STATIONARY_FREQ))

    def to_original(self, M) -> np.ndarray:
        U = self.basis
        return U @ np.asarray(M) @ dagger(U)


def energy_rep(ham, rho) -> SpectralState:
    """Express ``rho`` in the (ascending) eigenbasis of ``H``.

    The energies reported are those of the Hamiltonian as given; any
    invertibility shift cancels in the frequencies anyway.
    """
    ham = _ham(ham)
    U = ham.eig.eigenvectors
    energies = ham.eig.eigenvalues - ham.shift
    R = dagger(U) @ _mat(rho) @ U
    return SpectralState(energies, U, 0.5 * (R + dagger(R)))


def deviation(state: SpectralState, T) -> np.ndarray | float:
    """Closed-form ``||rho(t + T) - rho(t)||``; vectorised over ``T``."""
    T_arr = np.atleast_1d(np.asarray(T, dtype=float))
    w = state.frequencies.ravel()
    wt = state.weights.ravel()
    keep = (wt > 0.0) & (w != 0.0)
    w, wt = w[keep], wt[keep]
    if w.size == 0:
        out = np.zeros_like(T_arr)
    else:
        # |e^{ix} - 1|^2 = 4 sin^2(x/2)
        phase = np.sin(0.5 * np.outer(T_arr, w)) ** 2
        out = 2.0 * np.sqrt(phase @ wt)
    return float(out[0]) if np.ndim(T) == 0 else out


def lipschitz_bound(state: SpectralState) -> float:
    """``||[H, rho]||``, an upper bound on ``|d'(T)|``."""
    return float(np.sqrt(np.sum(state.weights * state.frequencies**2)))


@dataclass
class RecurrenceReport:
    epsilon: float
    t_max: float
    hits: list = field(default_factory=list)
    scanned_points: int = 0
    stationary: bool = False

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "t_max": self.t_max,
            "hits": [{"T": T, "deviation": d} for T, d in self.hits],
            "scanned_points": self.scanned_points,
            "stationary": self.stationary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "RecurrenceReport":
        return cls(
            epsilon=float(data["epsilon"]),
            t_max=float(data["t_max"]),
            hits=[(float(h["T"]), float(h["deviation"])) for h in data["hits"]],
            scanned_points=int(data["scanned_points"]),
            stationary=bool(data.get("stationary", False)),
        )


def _golden_section(f, a: float, b: float, tol: float = 1e-13, max_iter: int = 200) -> tuple[float, float]:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def recurrence_scan(state: SpectralState, epsilon: float, t_max: float, grid_points: int = 10_000) -> RecurrenceReport:
    """Find delays ``0 < T <= t_max`` with ``d(T) < epsilon``.

    The deviation is sampled at ``T_k = k t_max / grid_points``. A coarse local
    minimum is refined when its value is below ``2 epsilon`` plus the largest
    change the deviation can undergo within one grid step (``L h``, with ``L``
    the Lipschitz bound); otherwise a sharp true minimum between grid points
    could be missed. Each hit reports the better of the refined and the coarse
    value, so it never exceeds the coarse value it started from. ``T = 0`` is
    the trivial recurrence and is never reported.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    report = RecurrenceReport(float(epsilon), float(t_max), scanned_points=int(grid_points))
    if state.stationary:
        report.stationary = True
        return report

    h = t_max / grid_points
    grid = h * np.arange(0, grid_points + 1)
    d = deviation(state, grid)
    d[0] = 0.0
    threshold = 2.0 * epsilon + lipschitz_bound(state) * h

    f = lambda T: deviation(state, T)  # noqa: E731
    hits: list[tuple[float, float]] = []
    for k in range(1, grid_points + 1):
        left = d[k - 1]
        right = d[k + 1] if k < grid_points else np.inf
        if not (d[k] <= left and d[k] <= right and d[k] < threshold):
            continue
        a, b = grid[k - 1], grid[min(k + 1, grid_points)]
        T, val = _golden_section(f, a, b)
        if d[k] <= val:
            T, val = grid[k], d[k]
        if val < epsilon:
            if hits and T - hits[-1][0] <= h:
                if val < hits[-1][1]:
                    hits[-1] = (float(T), float(val))
                continue
            hits.append((float(T), float(val)))
    report.hits = sorted(hits)
    return report


def deviation_curve_csv(state: SpectralState, t_max: float, grid_points: int) -> str:
    """CSV ``T,deviation`` on the scan grid (17 significant digits)."""
    grid = t_max / grid_points * np.arange(1, grid_points + 1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "deviation"])
    for T, dv in zip(grid, deviation(state, grid)):
        w.writerow([f"{T:.17g}", f"{dv:.17g}"])
    return buf.getvalue()


def truncate(state: SpectralState, N: int, Nprime: int) -> tuple[np.ndarray, float]:
    """Keep energy-basis entries with ``n <= N`` and ``n' <= N'``.

    The error is the Frobenius norm of *every* discarded entry, including the
    off-diagonal blocks, and is time independent.
    """
    n = state.n
    if not (0 <= N < n and 0 <= Nprime < n):
        raise IndexOutOfRange(f"need 0 <= N, N' < {n}, got ({N}, {Nprime})")
    sigma = np.zeros_like(state.rho_energy)
    sigma[: N + 1, : Nprime + 1] = state.rho_energy[: N + 1, : Nprime + 1]
    return sigma, frob_norm(state.rho_energy - sigma)


def exact_period(energies) -> float | None:
    """``2 pi L`` with ``L`` the lcm of the denominators of all frequencies.

    Entries must be exact rationals (``int``, ``Fraction`` or a string such as
    ``"1/2"``); a ``float`` entry is treated as possibly irrational and the
    result is ``None``. With no nonzero frequency the state never moves and
    ``0.0`` is returned by convention.
    """
    values = []
    for e in energies:
        if isinstance(e, float) or not isinstance(e, (int, Fraction, str)):
            return None
        values.append(Fraction(e))
    dens = [abs(b - a).denominator for a in values for b in values if a != b]
    if not dens:
        return 0.0
    return 2.0 * math.pi * reduce(math.lcm, dens)

