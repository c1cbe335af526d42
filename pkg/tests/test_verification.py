import pytest

from uhlmann_flow.verification import default_hamiltonian, first_failure, run_suite, suite_passed

EXPECTED = [
    "unit_speed",
    "isometry",
    "killing_commutant",
    "killing_negative_control",
    "geodesic",
    "von_neumann_projection",
    "chord_distance",
    "liouville_volume",
    "base_metric_consistency",
]


@pytest.mark.parametrize("n", [2, 4])
def test_suite_passes(n):
    results = run_suite(default_hamiltonian(n, 7), seed=7, checks=5)
    assert [r.name for r in results] == EXPECTED
    assert suite_passed(results), [r for r in results if not r.passed]
    assert first_failure(results) is None


def test_fault_injection_is_localised():
    # e^{-iHt} is an isometry of any metric built from H, so only curvature-sensitive checks fail
    results = {r.name: r for r in run_suite(default_hamiltonian(4, 7), seed=7, checks=5, power=1)}
    assert results["isometry"].passed
    assert results["chord_distance"].passed
    assert not results["geodesic"].passed
    assert not results["unit_speed"].passed


def test_suite_is_deterministic():
    a = run_suite(default_hamiltonian(3, 1), seed=3, checks=3)
    b = run_suite(default_hamiltonian(3, 1), seed=3, checks=3)
    assert [r.value for r in a] == [r.value for r in b]
