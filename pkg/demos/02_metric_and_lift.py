"""The Hamiltonian-dependent metric, horizontal lifts and the Bures special case."""
import numpy as np

from uhlmann_flow import DynamicMetric, Hamiltonian, base_metric, bures_metric, horizontal_lift, section
from uhlmann_flow.metric import identity_metric, pushforward

rho = np.diag([0.5, 0.5])
Y = np.diag([0.1, -0.1])

# with H = I the induced metric is the Bures metric
print("H = I       :", base_metric(identity_metric(2), rho, Y, Y))
print("Bures       :", bures_metric(rho, Y, Y))

# a different Hamiltonian gives a different metric on the same states
metric = DynamicMetric(Hamiltonian(np.diag([1.0, 2.0])))
print("H = diag(1,2):", base_metric(metric, rho, Y, Y))

# the lift is horizontal and projects back onto Y, and its length is the base metric
W = section(rho)
L = horizontal_lift(metric, rho, Y, W)
print("pushforward of lift:\n", np.round(pushforward(W, L).real, 12))
print("g(lift, lift) =", metric.inner(L, L))
