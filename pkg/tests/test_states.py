import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uhlmann_flow.errors import DomainError, InvalidState, NotHermitian, NotStrictlyPositive, NotTangent, NotUnitary
from uhlmann_flow.states import (
    DensityMatrix,
    Hamiltonian,
    Purification,
    TangentVector,
    density_report,
    fibre_act,
    project,
    random_density,
    random_hamiltonian,
    random_purification,
    random_tangent,
    random_unitary,
    section,
)

S = 1 / np.sqrt(2)


def test_projection_examples():
    assert np.allclose(project(Purification(np.eye(2) * S)).rho, np.diag([0.5, 0.5]))
    assert np.allclose(project(Purification([[0, S], [S, 0]])).rho, np.diag([0.5, 0.5]))


def test_section_examples():
    W = section(DensityMatrix(np.diag([0.25, 0.75])))
    assert np.allclose(W.W, np.diag([0.5, 0.8660254]), atol=1e-7)
    assert np.allclose(section(np.eye(2) / 2).W, np.eye(2) * S)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**31 - 1))
def test_section_is_right_inverse(n, seed):
    rho = random_density(n, seed)
    W = section(rho)
    assert np.linalg.norm(project(W).rho - rho.rho) <= 1e-12
    assert np.allclose(W.W, W.W.conj().T)


def test_section_rank_deficient():
    plus = np.full((2, 2), 0.5)
    W = section(plus)
    assert not W.invertible
    assert np.allclose(project(W).rho, plus)
    with pytest.raises(NotStrictlyPositive):
        section(plus, require_invertible=True)


def test_fibre_action_examples():
    W = random_purification(3, 1)
    Wp = fibre_act(W, np.exp(0.7j) * np.eye(3))
    assert np.allclose(project(Wp).rho, project(W).rho)
    a, b = 0.6, 0.8
    X = np.array([[0, 1], [1, 0]])
    V = fibre_act(Purification(np.diag([a, b])), X)
    assert np.allclose(V.W, [[0, a], [b, 0]])
    assert np.allclose(project(V).rho, np.diag([a * a, b * b]))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), s1=st.integers(0, 10**6), s2=st.integers(0, 10**6))
def test_fibre_preserves_projection(n, s1, s2):
    W = random_purification(n, s1)
    u = random_unitary(n, s2)
    assert np.linalg.norm(project(fibre_act(W, u)).rho - project(W).rho) <= 1e-12


def test_fibre_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        fibre_act(random_purification(2, 0), 2 * np.eye(2))


def test_generators_deterministic():
    assert np.array_equal(random_density(4, 3).rho, random_density(4, 3).rho)
    assert np.array_equal(random_purification(4, 3).W, random_purification(4, 3).W)
    assert not np.array_equal(random_purification(4, 3).W, random_purification(4, 4).W)
    assert random_density(4, 3).strictly_positive


def test_random_tangent_is_tangent():
    W = random_purification(3, 2)
    X = random_tangent(W, 5)
    assert abs(np.real(np.vdot(W.W, X.X))) <= 1e-12


def test_density_validation():
    with pytest.raises(InvalidState):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(InvalidState):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(NotHermitian):
        DensityMatrix([[0.5, 0.1], [0.0, 0.5]])
    assert not DensityMatrix(np.diag([1.0, 0.0])).strictly_positive
    assert DensityMatrix(np.full((2, 2), 0.5)).purity() == pytest.approx(1.0)


def test_density_report_keys():
    r = density_report(np.diag([0.6, 0.6]))
    assert r == {"hermitian": True, "psd": True, "trace": False, "invertible": True}
    assert all(density_report(np.diag([0.5, 0.5])).values())


def test_purification_validation():
    with pytest.raises(InvalidState):
        Purification(np.eye(2))
    assert not Purification(np.diag([1.0, 0.0])).invertible


def test_tangent_validation():
    W = Purification(np.eye(2) * S)
    with pytest.raises(NotTangent):
        TangentVector(W, W.W)
    TangentVector(W, 1j * W.W)


def test_hamiltonian_shift():
    H = Hamiltonian(np.diag([0.0, 1.0, 2.0]))
    assert H.shift == 1.0
    assert np.allclose(H.H, np.diag([1.0, 2.0, 3.0]))
    # negative smallest eigenvalue: shift makes the operator positive definite
    H = Hamiltonian(np.diag([-2.0, 0.0]))
    assert H.shift == 3.0
    assert np.all(H.eig.eigenvalues > 0)
    assert Hamiltonian(np.diag([1.0, 2.0])).shift == 0.0
    assert Hamiltonian(np.diag([1.0, 2.0]), shift=1.0).shift == 1.0
    with pytest.raises(DomainError):
        Hamiltonian(np.diag([0.0, 1.0]), shift=0.0)
    with pytest.raises(NotHermitian):
        Hamiltonian([[0, 1], [0, 0]])


def test_hamiltonian_caches():
    H = Hamiltonian(random_hamiltonian(4, 2))
    assert np.allclose(H.Hinv @ H.H, np.eye(4), atol=1e-12)
    assert np.allclose(H.Hinv2 @ H.H @ H.H, np.eye(4), atol=1e-12)
    assert H.norm <= 3.0
