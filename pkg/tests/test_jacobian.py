import numpy as np

from src.divisor.membership import count_on_translate
from src.families.siegel import random_siegel, product_tau
from src.families.newton import through_torsion_translate
from src.torsion.group import TorsionPoint
from src.jacobian.square_roots import (
    SquareRootReport, PASS, CONDITIONAL_PASS, FAIL,
    count_noneffective_square_roots, count_effective_theta_characteristics
)

def test_count_noneffective_square_roots():
    tau = random_siegel(2, seed=0)
    report = count_noneffective_square_roots(tau, np.zeros(2))
    assert report.n_noneffective == 10 and report.lower_bound == 4
    assert report.status == PASS and report.exit_code == 0

    tau = product_tau([1j, 1.2j, 1.7j])
    report = count_noneffective_square_roots(tau, np.zeros(3))
    assert report.n_noneffective == 27 >= report.lower_bound == 8
    print("test_count_noneffective_square_roots passed")

def test_complement_identity():
    rng = np.random.default_rng(0)
    for seed in range(3):
        tau = random_siegel(3, seed=seed)
        x = TorsionPoint.from_index(int(rng.integers(64)), 3)
        for a in [rng.uniform(-0.5, 0.5, 3) + 0.1j, through_torsion_translate(tau, x, seed)]:
            count = count_on_translate(tau, a)
            report = SquareRootReport.from_count_report(count)
            assert report.n_noneffective + count.n_on + count.n_uncertain == 64
            assert report.n_noneffective >= 64 - count.bound_thm1
            assert report.status == PASS
    print("test_complement_identity passed")

def test_effective_theta_characteristics():
    assert count_effective_theta_characteristics(random_siegel(2, seed=3)) == 6
    assert count_effective_theta_characteristics(random_siegel(3, seed=3)) == 28
    print("test_effective_theta_characteristics passed")

def test_status():
    # g=1, one Off and two Uncertain points
    report = SquareRootReport("synthetic", np.zeros(1), 1, 1, 2)
    assert report.status == CONDITIONAL_PASS and report.exit_code == 2

    report = SquareRootReport("synthetic", np.zeros(1), 1, 3, 0)
    assert report.status == FAIL and report.exit_code == 1

    report = SquareRootReport("synthetic", np.zeros(1), 3, 1, 0)
    assert report.to_dict()["status"] == PASS
    print("test_status passed")

if __name__ == "__main__":
    test_count_noneffective_square_roots()
    test_complement_identity()
    test_effective_theta_characteristics()
    test_status()
