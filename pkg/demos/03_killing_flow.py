"""The flow W -> exp(-iHt) W: unit speed, isometric, geodesic, von Neumann below."""
import numpy as np

from uhlmann_flow import (
    DynamicMetric,
    Hamiltonian,
    evolve_exact,
    flow,
    geodesic_residual,
    isometry_defect,
    project,
    random_purification,
    random_tangent,
    unit_speed_defect,
)
from uhlmann_flow.states import random_hamiltonian

n = 4
metric = DynamicMetric(Hamiltonian(random_hamiltonian(n, seed=3)))
W = random_purification(n, seed=4)
X, Y = random_tangent(W, 5), random_tangent(W, 6)

print("unit speed defect:", unit_speed_defect(metric, W))
for t in (0.1, 1.0, 10.0):
    print(f"t={t:5}: isometry {isometry_defect(metric, W, X, Y, t):.1e}, "
          f"geodesic {geodesic_residual(metric, W, t):.1e}, "
          f"projection {np.linalg.norm(project(flow(metric, W, t)).rho - evolve_exact(metric, project(W), t).rho):.1e}")

# the plain Frobenius metric does not see the flow as a unit-speed curve
flat = DynamicMetric(Hamiltonian(np.eye(n)))
h = -1j * metric.ham.H @ W.W
print("Frobenius speed^2:", flat.inner(h, h), " dynamic speed^2:", metric.inner(h, h))
