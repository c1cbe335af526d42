"""The verification battery on a healthy metric and on a deliberately wrong one."""
from uhlmann_flow.verification import default_hamiltonian, first_failure, run_suite

ham = default_hamiltonian(4, seed=7)
for power in (2, 1):
    results = run_suite(ham, seed=7, checks=5, power=power)
    print(f"weight H^-{power}: first failure = {first_failure(results)}")
    for r in results:
        print(f"   {r.name:26s} {r.value:10.2e}  {'ok' if r.passed else 'FAIL'}")
