"""Purifications, the projection W -> W W^dag and the fibres over a density matrix."""
import numpy as np

from uhlmann_flow import fibre_act, project, random_density, section
from uhlmann_flow.states import random_unitary

rho = random_density(3, seed=1)
print("rho eigenvalues:", np.round(rho.eig.eigenvalues, 4))

# canonical purification: the positive square root
W = section(rho)
print("tr(W W^dag) =", np.vdot(W.W, W.W).real)
print("|pi(sqrt rho) - rho| =", np.linalg.norm(project(W).rho - rho.rho))

# moving along the fibre changes W but not rho
V = fibre_act(W, random_unitary(3, seed=2))
print("|W - Wu| =", np.linalg.norm(W.W - V.W))
print("|pi(Wu) - rho| =", np.linalg.norm(project(V).rho - rho.rho))
