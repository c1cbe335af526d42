import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uhlmann_flow.dynamics import evolve_exact
from uhlmann_flow.errors import IndexOutOfRange
from uhlmann_flow.recurrence import (
    RecurrenceReport,
    deviation,
    deviation_curve_csv,
    energy_rep,
    exact_period,
    lipschitz_bound,
    recurrence_scan,
    truncate,
)
from uhlmann_flow.states import Hamiltonian, random_density, random_hamiltonian

PLUS = np.full((2, 2), 0.5)


def generic_rho(n, seed=11):
    return random_density(n, seed)


def test_energy_rep_diagonal():
    rho = np.diag([0.2, 0.3, 0.5])
    st_ = energy_rep(Hamiltonian(np.diag([1.0, 2.0, 3.0])), rho)
    assert np.allclose(st_.rho_energy, rho)
    assert np.allclose(st_.energies, [1, 2, 3])


def test_energy_rep_orders_ascending():
    rho = np.diag([0.3, 0.7])
    st_ = energy_rep(Hamiltonian(np.diag([1.0, 0.0])), rho)
    assert np.allclose(st_.energies, [0, 1])
    assert np.allclose(st_.rho_energy, np.diag([0.7, 0.3]))
    assert np.allclose(st_.to_original(st_.rho_energy), rho)


def test_deviation_examples():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0])), PLUS)
    assert deviation(st_, 0.0) == 0.0
    assert deviation(st_, np.pi) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert deviation(st_, 2 * np.pi) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 5), seed=st.integers(0, 10**6), t=st.floats(0, 5), T=st.floats(0, 20))
def test_deviation_matches_direct_evolution(n, seed, t, T):
    # independent of reference time, equal to the evolved Frobenius difference
    ham = Hamiltonian(random_hamiltonian(n, seed))
    rho = random_density(n, seed + 1)
    a = evolve_exact(ham, rho, t + T).rho
    b = evolve_exact(ham, rho, t).rho
    assert deviation(energy_rep(ham, rho), T) == pytest.approx(np.linalg.norm(a - b), abs=1e-10)


def test_lipschitz_bound_is_commutator_norm():
    H = random_hamiltonian(3, 1)
    rho = random_density(3, 2).rho
    L = lipschitz_bound(energy_rep(Hamiltonian(H), rho))
    assert L == pytest.approx(np.linalg.norm(H @ rho - rho @ H), rel=1e-12)


def test_scan_commensurate():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0, 2.0])), generic_rho(3))
    rep = recurrence_scan(st_, 1e-6, 10.0)
    assert len(rep.hits) == 1
    T, d = rep.hits[0]
    assert abs(T - 2 * np.pi) <= 1e-6
    assert d <= 1e-9


def test_scan_half_frequency():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 0.5])), generic_rho(2))
    rep = recurrence_scan(st_, 1e-6, 15.0)
    assert abs(rep.hits[0][0] - 4 * np.pi) <= 1e-6


def test_scan_incommensurate_hits_reverify():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0, math.sqrt(2)])), generic_rho(3))
    rep = recurrence_scan(st_, 0.1, 500.0)
    assert rep.hits
    for T, d in rep.hits:
        assert deviation(st_, T) < 0.1
        assert deviation(st_, T) == pytest.approx(d, abs=1e-14)
    Ts = [T for T, _ in rep.hits]
    assert Ts == sorted(Ts)


def test_scan_against_brute_force():
    # fine brute-force grid as an oracle: every sampled point below eps/2 lies near a reported hit
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0, math.sqrt(2)])), generic_rho(3))
    rep = recurrence_scan(st_, 0.1, 100.0)
    grid = np.linspace(0.0, 100.0, 200_001)
    d = deviation(st_, grid)
    # skip the trivial recurrence at T = 0: start once the orbit has left the eps ball
    start = np.argmax(d >= 0.1)
    low = grid[start:][d[start:] < 0.05]
    assert low.size
    hits = np.array([T for T, _ in rep.hits])
    for T in low:
        assert np.min(np.abs(hits - T)) < 0.5


def test_scan_stationary_and_empty():
    rep = recurrence_scan(energy_rep(Hamiltonian(np.diag([1.0, 2.0])), np.diag([0.4, 0.6])), 1e-3, 5.0)
    assert rep.stationary and rep.hits == []
    rep = recurrence_scan(energy_rep(Hamiltonian(np.diag([0.0, 1.0])), PLUS), 1e-6, 3.0)
    assert rep.hits == [] and not rep.stationary


def test_scan_argument_checks():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0])), PLUS)
    for args in [(0.0, 1.0, 10), (1e-3, -1.0, 10), (1e-3, 1.0, 1)]:
        with pytest.raises(ValueError):
            recurrence_scan(st_, *args)


def test_report_round_trip():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0, 2.0])), generic_rho(3))
    rep = recurrence_scan(st_, 1e-6, 10.0, 5000)
    back = RecurrenceReport.from_dict(__import__("json").loads(rep.to_json()))
    assert back == rep


def test_curve_csv():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0])), PLUS)
    lines = deviation_curve_csv(st_, 2 * np.pi, 4).splitlines()
    assert lines[0] == "T,deviation"
    assert len(lines) == 5
    T, d = map(float, lines[2].split(","))
    assert T == np.pi and d == deviation(st_, np.pi)


def test_truncation_examples():
    st_ = energy_rep(Hamiltonian(np.diag([0.0, 1.0])), PLUS)
    sigma, err = truncate(st_, 0, 0)
    assert np.allclose(sigma, [[0.5, 0], [0, 0]])
    assert err == pytest.approx(0.8660254, abs=1e-7)
    sigma, err = truncate(st_, 1, 1)
    assert err == 0.0 and np.array_equal(sigma, st_.rho_energy)
    with pytest.raises(IndexOutOfRange):
        truncate(st_, 2, 0)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 6), seed=st.integers(0, 10**6), data=st.data())
def test_truncation_closed_form(n, seed, data):
    N = data.draw(st.integers(0, n - 1))
    Np = data.draw(st.integers(0, n - 1))
    st_ = energy_rep(Hamiltonian(random_hamiltonian(n, seed)), random_density(n, seed + 1))
    _, err = truncate(st_, N, Np)
    R = st_.rho_energy
    discarded = [abs(R[i, j]) ** 2 for i in range(n) for j in range(n) if i > N or j > Np]
    assert err == pytest.approx(math.sqrt(sum(discarded)), abs=1e-15)


def test_exact_period():
    assert exact_period([0, 1, 2]) == pytest.approx(2 * np.pi)
    assert exact_period([0, Fraction(1, 2)]) == pytest.approx(4 * np.pi)
    assert exact_period(["0", "1/3", "1/2"]) == pytest.approx(12 * np.pi)
    assert exact_period([5]) == 0.0
    assert exact_period([0, math.sqrt(2)]) is None
