import os
import warnings
import json
import tempfile
import numpy as np

from src.theta.core import theta
from src.theta.riemann_matrix import RiemannMatrix, reduce_point
from src.theta.errors import SiegelError, ConvergenceError
from src.torsion.group import TorsionPoint, all_torsion_points
from src.divisor.membership import classify, count_on_translate
from src.families.siegel import (
    random_siegel, product_tau, random_product_taus, load_tau, save_tau, FamilySpec
)
from src.families.oracle import product_oracle, product_oracle_count
from src.families.newton import find_on_theta, through_torsion_translate

def test_random_siegel():
    tau_1 = random_siegel(3, seed=42)
    tau_2 = random_siegel(3, seed=42)
    assert np.array_equal(tau_1.tau, tau_2.tau)
    assert not np.array_equal(tau_1.tau, random_siegel(3, seed=43).tau)

    for seed in range(100):
        tau = random_siegel(3, seed=seed)
        assert tau.min_eig >= 0.2 - 1e-12
        assert np.abs(tau.tau.real).max() <= 0.5
    print("test_random_siegel passed")

def test_random_siegel_counts():
    for seed in range(20):
        report = count_on_translate(random_siegel(2, seed=seed), np.zeros(2))
        assert report.n_on == 6 and report.n_uncertain == 0
    print("test_random_siegel_counts passed")

def test_product_tau():
    tau = product_tau([1j, 2j])
    assert np.array_equal(tau.tau, np.diag([1j, 2j]))

    try:
        product_tau([1j, 0.1j])
        assert False
    except SiegelError:
        pass

    # theta of a product factorizes
    rng = np.random.default_rng(0)
    taus = random_product_taus(3, rng)
    tau = product_tau(taus)
    for _ in range(5):
        z = rng.uniform(-0.5, 0.5, 3) + 1j * rng.uniform(-0.3, 0.3, 3)
        value = theta(z, tau).value
        value_ = np.prod([theta(z[i:i + 1], RiemannMatrix(taus[i])).value for i in range(3)])
        assert abs(value - value_) <= 1e-10 * (1 + abs(value))
    print("test_product_tau passed")

def test_product_oracle():
    assert product_oracle(1) == {TorsionPoint.from_bits([1], [1])}
    for g, count in zip([1, 2, 3, 4], [1, 7, 37, 175]):
        assert len(product_oracle(g)) == count == product_oracle_count(g)
    for g in range(1, 7):
        assert product_oracle_count(g) < 4 ** g - 2 ** g

    # torsion translates shift the set
    x = TorsionPoint.from_index(6, 2)
    assert product_oracle(2, x) == {y.add(x) for y in product_oracle(2)}
    print("test_product_oracle passed")

def test_product_oracle_numerics():
    rng = np.random.default_rng(1)
    tau = product_tau(random_product_taus(2, rng))
    for y in [None] + all_torsion_points(2):
        a = np.zeros(2) if y is None else y.coordinates(tau)
        report = count_on_translate(tau, a)
        assert set(report.on_indices) == {x.index for x in product_oracle(2, y)}
        assert report.n_uncertain == 0

    for g, count in zip([3, 4], [37, 175]):
        tau = product_tau(random_product_taus(g, rng))
        report = count_on_translate(tau, np.zeros(g))
        assert report.n_on == count and report.n_uncertain == 0
        assert report.hyperplane_rank <= 2 ** g - 1
    print("test_product_oracle_numerics passed")

def test_find_on_theta():
    tau = RiemannMatrix(1j)
    w = find_on_theta(tau, seed=0)
    assert np.abs(reduce_point(w - (1 + 1j) / 2, tau)).max() < 1e-8

    tau = random_siegel(2, seed=3)
    w, history = find_on_theta(tau, seed=1, return_history=True)
    assert theta(w, tau).residual <= 1e-10
    assert history[-1] <= 1e-10
    assert all(r_1 < r_0 for r_0, r_1 in zip(history[-3:-1], history[-2:]))

    # one iteration on one line cannot reach the tolerance
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        try:
            find_on_theta(tau, seed=1, max_iter=1, max_restarts=1)
            assert False
        except ConvergenceError:
            pass
        assert any(issubclass(w_.category, RuntimeWarning) for w_ in w)
    print("test_find_on_theta passed")

def test_through_torsion_translate():
    tau = random_siegel(3, seed=2)
    for index in [0, 17, 63]:
        x = TorsionPoint.from_index(index, 3)
        a = through_torsion_translate(tau, x, seed=index)
        assert classify(tau, a, x).is_on
    print("test_through_torsion_translate passed")

def test_tau_files():
    tau = random_siegel(2, seed=9)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "tau.json")
        save_tau(tau, path)
        tau_ = load_tau(path)
        assert np.array_equal(tau.tau, tau_.tau)

        spec = FamilySpec("file", path=path)
        assert np.array_equal(spec.build().tau, tau.tau)

        # missing imaginary part
        with open(path, "w") as f:
            json.dump({"g": 2, "re": [[0, 0], [0, 0]]}, f)
        try:
            load_tau(path)
            assert False
        except SiegelError:
            pass
    print("test_tau_files passed")

def test_family_spec():
    tau_1 = FamilySpec("near_product", 3, seed=4, perturbation=0.05).build()
    tau_2 = FamilySpec("near_product", 3, seed=4, perturbation=0.05).build()
    assert np.array_equal(tau_1.tau, tau_2.tau)
    assert np.abs(tau_1.tau - np.diag(np.diag(tau_1.tau))).max() <= 0.05 * np.sqrt(2)

    tau = FamilySpec("product", taus=[1j, 2j]).build()
    assert tau.g == 2 and np.array_equal(tau.tau, np.diag([1j, 2j]))

    try:
        FamilySpec("bogus", 2)
        assert False
    except ValueError:
        pass
    print("test_family_spec passed")

if __name__ == "__main__":
    test_random_siegel()
    test_random_siegel_counts()
    test_product_tau()
    test_product_oracle()
    test_product_oracle_numerics()
    test_find_on_theta()
    test_through_torsion_translate()
    test_tau_files()
    test_family_spec()
