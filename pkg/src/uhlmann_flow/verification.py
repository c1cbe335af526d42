"""Seeded battery of geometric checks for one Hamiltonian.

Each check draws its own random points and tangents, records the worst
defect seen and compares it with a fixed tolerance. The negative control
inverts the comparison: a non-commuting generator must *fail* to be an
isometry, otherwise the metric is suspected of being degenerate.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import (
    evolve_exact,
    flow,
    geodesic_residual,
    isometry_defect,
    killing_defect,
    propagator,
    unit_speed_defect,
)
from .errors import DegenerateFrame
from .metric import DynamicMetric, base_metric, chord_distance, frame, gram_det, horizontal_lift
from .states import (
    Hamiltonian,
    project,
    random_density,
    random_hamiltonian,
    random_hermitian,
    random_purification,
    random_tangent,
    section,
)

TIMES = (0.1, 1.0, 10.0)
NEGATIVE_CONTROL_FLOOR = 1e-4
NEGATIVE_CONTROL_RATE = 0.95
VOLUME_MAX_N = 4


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    # "max_defect": value must not exceed tolerance;
    # "min_rate": fraction of trials whose defect exceeded the floor (negative control)
    kind: str = "max_defect"


def _seeds(rng: np.random.Generator, k: int) -> list[int]:
    return [int(s) for s in rng.integers(2**31, size=k)]


def _rel(defect: float, scale: float) -> float:
    return defect / (1.0 + abs(scale))


def run_suite(ham: Hamiltonian, seed: int = 7, checks: int = 10, power: int = 2) -> list[CheckResult]:
    """Run every check ``checks`` times on seeded random data.

    ``power`` selects the metric weight ``H^-power``; anything but 2 is a
    fault-injection mode used to confirm that the suite localises errors.
    """
    n = ham.n
    metric = DynamicMetric(ham, power=power)
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []

    def add(name, value, tol):
        results.append(CheckResult(name, float(value), tol, bool(value <= tol)))

    add("unit_speed", max(unit_speed_defect(metric, random_purification(n, s)) for s in _seeds(rng, checks)), 1e-12)

    iso, comm, neg_hits, neg_total = 0.0, 0.0, 0, 0
    A_comm = ham.H @ ham.H
    for s in _seeds(rng, checks):
        sub = np.random.default_rng(s)
        W = random_purification(n, int(sub.integers(2**31)))
        X = random_tangent(W, int(sub.integers(2**31)))
        Y = random_tangent(W, int(sub.integers(2**31)))
        A_neg = random_hermitian(n, int(sub.integers(2**31)))
        g = metric.inner(X, Y)
        for t in TIMES:
            iso = max(iso, _rel(isometry_defect(metric, W, X, Y, t), g))
            comm = max(comm, _rel(killing_defect(metric, A_comm, W, X, Y, t), g))
            neg_total += 1
            neg_hits += killing_defect(metric, A_neg, W, X, Y, t) > NEGATIVE_CONTROL_FLOOR
    add("isometry", iso, 1e-11)
    add("killing_commutant", comm, 1e-11)
    rate = neg_hits / neg_total
    results.append(
        CheckResult("killing_negative_control", rate, NEGATIVE_CONTROL_RATE, rate >= NEGATIVE_CONTROL_RATE, "min_rate")
    )

    geo = 0.0
    for s in _seeds(rng, checks):
        W = random_purification(n, s)
        for t in (0.0, 0.5, 5.0):
            geo = max(geo, geodesic_residual(metric, W, t, probes=20, seed=s))
    add("geodesic", geo, 1e-10)

    proj = 0.0
    for s in _seeds(rng, checks):
        W = random_purification(n, s)
        for t in TIMES:
            lhs = project(flow(ham, W, t)).rho
            rhs = evolve_exact(ham, project(W), t).rho
            proj = max(proj, float(np.linalg.norm(lhs - rhs)))
    add("von_neumann_projection", proj, 1e-11)

    chord = 0.0
    for s in _seeds(rng, checks):
        W, V = random_purification(n, s), random_purification(n, s + 1)
        d0 = chord_distance(metric, W, V)
        for t in TIMES:
            chord = max(chord, abs(chord_distance(metric, flow(ham, W, t), flow(ham, V, t)) - d0))
    add("chord_distance", chord, 1e-12)

    # frames have 2n^2 - 1 vectors; keep the volume check cheap at larger n
    vol = 0.0
    try:
        for s in _seeds(rng, 1 if n > VOLUME_MAX_N else min(checks, 3)):
            W = random_purification(n, s)
            F = frame(metric, W, s)
            for t in (0.5, 5.0):
                U = propagator(ham, t)
                vol = max(vol, abs(gram_det(metric, [U @ X for X in F.matrices()]) - 1.0))
    except DegenerateFrame:
        # an indefinite weight has no orthonormal frame
        vol = float("inf")
    add("liouville_volume", vol, 1e-8)

    bures = 0.0
    for s in _seeds(rng, checks):
        sub = np.random.default_rng(s)
        rho = random_density(n, int(sub.integers(2**31)))
        Y = random_hermitian(n, int(sub.integers(2**31)))
        Y = Y - np.trace(Y) / n * np.eye(n)
        W = section(rho)
        L = horizontal_lift(metric, rho, Y, W)
        value = base_metric(metric, rho, Y, Y)
        bures = max(bures, abs(metric.inner(L, L) - value) / max(1.0, abs(value)))
    add("base_metric_consistency", bures, 1e-9)
    return results


def suite_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)


def first_failure(results: list[CheckResult]) -> str | None:
    for r in results:
        if not r.passed:
            return r.name
    return None


def results_to_dicts(results: list[CheckResult]) -> list[dict]:
    return [asdict(r) for r in results]


def default_hamiltonian(n: int, seed: int) -> Hamiltonian:
    return Hamiltonian(random_hamiltonian(n, seed))
