"""Recurrence of von Neumann evolution for commensurate and incommensurate spectra."""
import math

import numpy as np

from uhlmann_flow import Hamiltonian, deviation, energy_rep, exact_period, random_density, recurrence_scan, truncate

rho = random_density(3, seed=11)

state = energy_rep(Hamiltonian(np.diag([0.0, 1.0, 2.0])), rho)
report = recurrence_scan(state, epsilon=1e-6, t_max=10.0)
print("energies (0,1,2): hits", report.hits, " exact period", exact_period([0, 1, 2]))

state = energy_rep(Hamiltonian(np.diag([0.0, 1.0, math.sqrt(2)])), rho)
report = recurrence_scan(state, epsilon=0.1, t_max=500.0)
print(f"energies (0,1,sqrt2): {len(report.hits)} near-recurrences below 0.1")
for T, d in report.hits[:4]:
    print(f"   T={T:10.4f}  d={d:.4f}  recomputed {deviation(state, T):.4f}")

# truncating the energy representation costs a fixed, time independent error
sigma, err = truncate(state, 1, 1)
print("truncation to the two lowest levels, error", err)
