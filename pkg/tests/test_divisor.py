import json
import numpy as np

from src.theta.riemann_matrix import RiemannMatrix
from src.theta.characteristics import all_characteristics
from src.torsion.group import TorsionPoint, all_torsion_points
from src.divisor.membership import (
    ON, OFF, Thresholds, MembershipVerdict, CountReport, classify, classify_characteristic,
    count_on_translate, symmetry_crosscheck, half_period, verify_bounds
)
from src.divisor.projective import (
    spanning_check, hyperplane_check, plane_check, addition_residual, section_values
)
from src.families.siegel import random_siegel, product_tau
from src.families.newton import through_torsion_translate
from src.evaluation.metrics import singular_value_ratio, numerical_rank

def test_thresholds():
    thresholds = Thresholds()
    assert thresholds.state(1e-12) == ON
    assert thresholds.state(1e-2) == OFF
    assert thresholds.state(1e-6) == "Uncertain"

    # an error bound straddling the threshold is not trusted
    assert thresholds.state(1e-9, err_ratio=1e-7) == "Uncertain"

    try:
        Thresholds(on=1e-4, off=1e-6)
        assert False
    except ValueError:
        pass
    print("test_thresholds passed")

def test_classify():
    tau = random_siegel(2, seed=0)
    zero = np.zeros(2)
    for x in all_torsion_points(2):
        verdict = classify(tau, zero, x)
        if x.is_odd:
            assert verdict.state == ON and verdict.residual < 1e-10
        else:
            assert verdict.state == OFF

    # g=1, a = w - w with w the odd half period
    tau = RiemannMatrix(1j)
    w = np.array([(1 + 1j) / 2])
    verdict = classify(tau, w - w, TorsionPoint.from_bits([1], [1]))
    assert verdict.state == ON
    print("test_classify passed")

def test_classify_characteristic():
    # translate and theta constant classifications agree
    for g in [1, 2, 3]:
        for seed in range(3):
            tau = random_siegel(g, seed=seed)
            report = count_on_translate(tau, np.zeros(g))
            for v, chr in zip(report.verdicts, all_characteristics(g)):
                v_chr = classify_characteristic(tau, chr)
                assert v.state == v_chr.state
                assert v.point.index == chr.index
    print("test_classify_characteristic passed")

def test_count_on_translate():
    tau = random_siegel(2, seed=1)
    report = count_on_translate(tau, np.zeros(2))
    assert report.n_on == 6 and report.n_uncertain == 0
    assert report.n_on + report.n_off + report.n_uncertain == 16
    assert report.bound_thm1 == 12 and report.bound_thm2 == 4
    assert report.symmetric
    assert report.on_indices == sorted(report.on_indices)

    tau = product_tau([1j, 2j])
    report = count_on_translate(tau, np.zeros(2))
    assert report.n_on == 7 and report.n_uncertain == 0

    # g=1 translate meets the torsion in at most one point
    rng = np.random.default_rng(0)
    tau = RiemannMatrix(0.2 + 1.1j)
    for _ in range(10):
        a = rng.uniform(-0.5, 0.5, 1) + 1j * rng.uniform(-0.5, 0.5, 1)
        report = count_on_translate(tau, a)
        assert report.n_on <= 1 <= report.bound_thm1

    row = report.csv_row(sound=True)
    assert list(row.keys())[0] == "g" and list(row.keys())[-1] == "sound"
    print("test_count_on_translate passed")

def test_half_period():
    tau = random_siegel(2, seed=2)
    for x in all_torsion_points(2):
        assert half_period(x.coordinates(tau), tau) == x
    assert half_period(np.zeros(2), tau) == TorsionPoint.from_index(0, 2)
    assert half_period(np.array([0.1 + 0.3j, 0.2]), tau) is None
    print("test_half_period passed")

def test_symmetry_crosscheck():
    rng = np.random.default_rng(3)
    for seed in range(5):
        tau = random_siegel(2, seed=seed)
        a = rng.uniform(-0.5, 0.5, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        for x in all_torsion_points(2):
            agree, (v_pos, v_neg) = symmetry_crosscheck(tau, a, x)
            if not (v_pos.is_uncertain or v_neg.is_uncertain):
                assert agree

    # point constructed on the translate is On for both signs
    tau = random_siegel(2, seed=7)
    x = TorsionPoint.from_index(9, 2)
    a = through_torsion_translate(tau, x, seed=0)
    agree, (v_pos, v_neg) = symmetry_crosscheck(tau, a, x)
    assert agree and v_pos.is_on and v_neg.is_on
    print("test_symmetry_crosscheck passed")

def test_spanning_check():
    ratio, passed = spanning_check(RiemannMatrix(1j), [0])
    assert passed and ratio > 1e-6

    for seed in range(5):
        tau = random_siegel(2, seed=seed)
        for b in [[0, 0], [0, 1], [1, 0], [1, 1]]:
            _, passed = spanning_check(tau, b)
            assert passed

    M = np.random.default_rng(0).standard_normal((4, 4))
    assert np.isclose(singular_value_ratio(M), singular_value_ratio(3.7j * M))
    print("test_spanning_check passed")

def test_hyperplane_check():
    tau = product_tau([1j, 2j])
    report = count_on_translate(tau, np.zeros(2))
    violation, rank = hyperplane_check(tau, np.zeros(2), report.on_points)
    assert rank <= 3 and violation < 1e-8
    assert report.hyperplane_rank == rank

    violation, rank = hyperplane_check(tau, np.zeros(2), report.on_points[:1])
    assert rank == 1 and violation < 1e-8

    assert hyperplane_check(tau, np.zeros(2), []) == (0., 0)
    print("test_hyperplane_check passed")

def test_addition_formula():
    rng = np.random.default_rng(4)
    for g in [1, 2, 3]:
        tau = random_siegel(g, seed=g)
        U = rng.uniform(-0.5, 0.5, size=(2, 20, g))
        V = rng.uniform(-0.5, 0.5, size=(2, 20, g))
        Z, W = U @ tau.tau.T + V
        assert addition_residual(tau, Z, W).max() <= 1e-9
    print("test_addition_formula passed")

def test_plane_check():
    for seed in range(3):
        tau = random_siegel(2, seed=seed)
        x = TorsionPoint.from_index(5 + seed, 2)
        a = through_torsion_translate(tau, x, seed=seed)
        report = count_on_translate(tau, a)
        assert x.index in report.on_indices
        assert not report.symmetric

        residual, rank, passed = plane_check(tau, a, report.on_points)
        assert residual <= 1e-6
        assert passed and rank <= 1

    # every section vanishes at the odd half periods for a = 0
    tau = random_siegel(3, seed=0)
    odd = [x for x in all_torsion_points(3) if x.is_odd]
    _, residual = section_values(tau, np.zeros(3), odd)
    assert residual.shape == (28, 4) and residual.max() <= 1e-6

    assert plane_check(tau, np.zeros(3), []) == (0., 0, True)
    print("test_plane_check passed")

def test_verify_bounds():
    tau = product_tau([1j, 1.5j, 2j])
    report = count_on_translate(tau, np.zeros(3))
    assert report.n_on == 37
    verdict = verify_bounds(report, symmetric=True, irreducible=False)
    assert verdict.passed and verdict.sound and verdict.exit_code == 0
    assert verdict.checks["bound_thm1"] == (37, 56, True)
    assert verdict.checks["odd_lower_bound"][2]

    tau = random_siegel(2, seed=5)
    report = count_on_translate(tau, np.zeros(2))
    verdict = verify_bounds(report)
    assert verdict.passed and report.n_on == 6 <= 12

    # five points on an irreducible non-symmetric translate at g=2 is too many
    verdicts = [
        MembershipVerdict(ON if i < 5 else OFF, 0., 0., TorsionPoint.from_index(i, 2))
        for i in range(16)
    ]
    report = CountReport("synthetic", [0.3 + 0.1j, 0.2j], verdicts, symmetric=False)
    verdict = verify_bounds(report, symmetric=False, irreducible=True)
    assert not verdict.passed and verdict.exit_code == 1
    assert verdict.checks["bound_thm2"] == (5, 4, False)
    print("test_verify_bounds passed")

def test_numerical_rank():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((6, 2)) @ rng.standard_normal((2, 4))
    assert numerical_rank(A) == 2
    assert numerical_rank(1e-20 * A) == 2
    assert numerical_rank(np.zeros((3, 4))) == 0
    assert numerical_rank(np.zeros((0, 4))) == 0
    print("test_numerical_rank passed")

def test_lattice_translate():
    # translates differing by a period define the same divisor
    tau = RiemannMatrix(1j)
    report = count_on_translate(tau, [20j])
    assert report.n_on == 1 and report.n_uncertain == 0
    assert report.on_indices == [3] and report.symmetric

    tau = product_tau([1j, 2j])
    period = tau.lattice_point([3, -2], [1, 5])
    report_0 = count_on_translate(tau, np.zeros(2))
    report = count_on_translate(tau, period)
    assert report.on_indices == report_0.on_indices and report.n_uncertain == 0
    assert report.hyperplane_violation <= 1e-6

    tau = random_siegel(2, seed=7)
    x = TorsionPoint.from_index(9, 2)
    a = through_torsion_translate(tau, x, seed=0) + tau.lattice_point([-4, 2], [7, 0])
    report = count_on_translate(tau, a)
    assert 9 in report.on_indices
    residual, _, _ = plane_check(tau, a, report.on_points)
    assert residual <= 1e-6
    print("test_lattice_translate passed")

def test_report_json():
    tau = random_siegel(2, seed=4)
    report = count_on_translate(tau, np.zeros(2))
    out = report.to_dict()
    json.dumps(out, allow_nan=False)
    for v, r in zip(report.verdicts, out["global_residuals"]):
        if v.is_on:
            assert r <= 1e-8
    assert min(r for v, r in zip(report.verdicts, out["global_residuals"]) if v.is_off) > 1e-5

    # no Off points
    verdicts = [MembershipVerdict(ON, 0., 0., TorsionPoint.from_index(i, 1)) for i in range(4)]
    report = CountReport("synthetic", [0.1j], verdicts)
    out = report.to_dict()
    assert out["min_residual_off"] is None and out["global_residuals"] is None
    json.dumps(out, allow_nan=False)
    print("test_report_json passed")

if __name__ == "__main__":
    test_thresholds()
    test_classify()
    test_classify_characteristic()
    test_count_on_translate()
    test_half_period()
    test_symmetry_crosscheck()
    test_spanning_check()
    test_hyperplane_check()
    test_addition_formula()
    test_plane_check()
    test_verify_bounds()
    test_numerical_rank()
    test_lattice_translate()
    test_report_json()
