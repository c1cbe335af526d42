"""Volume preservation: an orthonormal frame stays orthonormal under the flow."""
from uhlmann_flow import DynamicMetric, Hamiltonian, frame, gram_det, propagator, random_purification
from uhlmann_flow.states import random_hamiltonian

for n in (2, 3):
    metric = DynamicMetric(Hamiltonian(random_hamiltonian(n, seed=n)))
    F = frame(metric, random_purification(n, seed=10 + n), seed=0)
    print(f"n={n}: {len(F.vectors)} frame vectors, gram_det {gram_det(metric, F.matrices()):.15f}")
    for t in (0.5, 5.0):
        U = propagator(metric.ham, t)
        print(f"   t={t}: gram_det after flow {gram_det(metric, [U @ X for X in F.matrices()]):.15f}")
