import warnings
import numpy as np

from src.theta.riemann_matrix import RiemannMatrix, reduce_point
from src.theta.characteristics import HalfCharacteristic, all_characteristics
from src.theta.errors import SiegelError, DimensionError, IllConditionedError
from src.theta.core import (
    theta, theta_batch, theta_gradient, evaluate_batch, truncation_radius,
    second_order_coords, second_order_batch, theta_constants, theta_scale
)
from src.families.siegel import random_siegel
from src.evaluation.metrics import numerical_rank

THETA_00_I = 1.0864348112133080 # pi^(1/4) / Gamma(3/4)

def test_riemann_matrix():
    tau = RiemannMatrix([[1j, 0.2], [0.2, 2j]])
    assert tau.g == 2
    assert np.isclose(tau.min_eig, 1.) and np.isclose(tau.max_eig, 2.)
    assert np.allclose(tau.imag @ tau.imag_inv, np.eye(2))

    # scalar input is a 1x1 matrix
    assert RiemannMatrix(1j).g == 1

    # not symmetric
    try:
        RiemannMatrix([[1j, 0.2], [0.3, 2j]])
        assert False
    except SiegelError:
        pass

    # imaginary part not positive definite
    try:
        RiemannMatrix([[1j, 2j], [2j, 1j]])
        assert False
    except SiegelError:
        pass

    # not square
    try:
        RiemannMatrix(np.ones((2, 3)) * 1j)
        assert False
    except DimensionError:
        pass

    tau_ = RiemannMatrix.from_dict(tau.to_dict())
    assert np.array_equal(tau.tau, tau_.tau)
    print("test_riemann_matrix passed")

def test_characteristics():
    chr = HalfCharacteristic.from_index(3, 1)
    assert chr.eps.tolist() == [1] and chr.delta.tolist() == [1]
    assert chr.is_odd

    chr = HalfCharacteristic.from_index(6, 2)
    assert chr.eps.tolist() == [0, 1] and chr.delta.tolist() == [1, 0]
    assert chr.parity == 0 and chr.index == 6

    assert all(c.index == i for i, c in enumerate(all_characteristics(3)))
    assert HalfCharacteristic([1, 0], [1, 1]) + HalfCharacteristic([1, 1], [0, 1]) == \
        HalfCharacteristic([0, 1], [1, 0])

    try:
        HalfCharacteristic([2, 0], [0, 0])
        assert False
    except DimensionError:
        pass
    print("test_characteristics passed")

def test_theta_examples():
    tau = RiemannMatrix(1j)
    zero = np.zeros(1)

    # even constant
    out = theta(zero, tau)
    assert abs(out.value - THETA_00_I) < 1e-12
    assert out.err <= 1e-12

    # odd constant
    out = theta(zero, tau, HalfCharacteristic([1], [1]))
    assert abs(out.value) < 1e-12

    # block diagonal factorization
    tau_2 = RiemannMatrix(np.diag([1j, 2j]))
    value = theta(np.zeros(2), tau_2).value
    value_ = theta(zero, RiemannMatrix(1j)).value * theta(zero, RiemannMatrix(2j)).value
    assert abs(value - value_) < 1e-12
    print("test_theta_examples passed")

def test_theta_symmetry():
    rng = np.random.default_rng(0)
    tau = random_siegel(2, seed=3)
    Z = rng.uniform(-0.5, 0.5, size=(20, 2)) + 1j * rng.uniform(-0.5, 0.5, size=(20, 2))
    pos = theta_batch(Z, tau)
    neg = theta_batch(-Z, tau)
    assert np.all(np.abs(pos.value - neg.value) <= 2 * pos.err)
    print("test_theta_symmetry passed")

def test_truncation_radius():
    tau = RiemannMatrix(1j)
    r_12 = truncation_radius(tau, np.zeros(1), 1e-12)
    r_3 = truncation_radius(tau, np.zeros(1), 1e-3)
    assert r_12 <= 8
    assert r_3 <= r_12

    # scaling Im tau by 4 about halves the radius
    r_4 = truncation_radius(tau.scaled(4.), np.zeros(1), 1e-12)
    assert 0.4 < r_4 / r_12 < 0.6

    # requested accuracy below double precision is clamped
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        truncation_radius(tau, np.zeros(1), 1e-15)
        assert any(issubclass(w_.category, RuntimeWarning) for w_ in w)

    # tiny imaginary part exceeds the cap
    try:
        truncation_radius(RiemannMatrix(1e-4j), np.zeros(1), 1e-12)
        assert False
    except IllConditionedError:
        pass
    print("test_truncation_radius passed")

def test_error_bound():
    rng = np.random.default_rng(1)
    for g in [1, 2, 3]:
        tau = random_siegel(g, seed=g)
        Z = rng.uniform(-0.5, 0.5, size=(5, g)) @ tau.tau.T + rng.uniform(-0.5, 0.5, size=(5, g))
        for chr in [None, all_characteristics(g)[-1]]:
            out = evaluate_batch(Z, tau, chr)
            out_2 = evaluate_batch(Z, tau, chr, radius=2 * out.radius)
            assert np.all(np.abs(out_2.value - out.value) <= out.err + out_2.err)

    # large summands: rounding dominates and the caller is warned
    tau = RiemannMatrix(1j)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        out = theta(np.array([3j]), tau, eps_req=1e-12)
        assert out.err > 1e-12
        assert any(issubclass(w_.category, RuntimeWarning) for w_ in w)

    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        out = theta(np.zeros(1), tau, eps_req=1e-12)
        assert out.err <= 1e-12
        assert not any(issubclass(w_.category, RuntimeWarning) for w_ in w)
    print("test_error_bound passed")

def test_theta_gradient():
    tau = RiemannMatrix(1j)
    zero = np.zeros(1)

    # even function
    grad = theta_gradient(zero, tau)
    assert abs(grad[0].value) < 1e-12

    # odd function has a simple zero at the origin
    grad = theta_gradient(zero, tau, HalfCharacteristic([1], [1]))
    assert abs(grad[0].value) > 1

    # central differences
    h = 1e-5
    tau = random_siegel(2, seed=5)
    z = np.array([0.1 + 0.2j, -0.3 + 0.05j])
    grad = theta_gradient(z, tau)
    scale = theta(z, tau).scale
    for j in range(2):
        e = np.zeros(2)
        e[j] = h
        fd = (theta(z + e, tau).value - theta(z - e, tau).value) / (2 * h)
        assert abs(grad[j].value - fd) <= 1e-6 * max(abs(grad[j].value), 0.1 * scale)
    print("test_theta_gradient passed")

def test_second_order_coords():
    tau = RiemannMatrix(1j)
    coords = second_order_coords(np.zeros(1), tau)
    assert len(coords) == 2
    assert all(abs(c.value) > 0.1 for c in coords)

    # duplication: sum_eps Theta[eps](z) Theta[eps](0) = theta(z)^2
    rng = np.random.default_rng(2)
    tau = random_siegel(2, seed=11)
    Z = rng.uniform(-0.5, 0.5, size=(20, 2)) @ tau.tau.T + rng.uniform(-0.5, 0.5, size=(20, 2))
    coords_z, _ = second_order_batch(Z, tau)
    coords_0, _ = second_order_batch(np.zeros((1, 2)), tau)
    lhs = theta_batch(Z, tau).value ** 2
    rhs = coords_z @ coords_0[0]
    assert np.all(np.abs(lhs - rhs) <= 1e-9 * (1 + np.abs(lhs)))

    # shifting by a period gives the same projective point
    z = Z[0]
    w = z + tau.lattice_point([1, 0], [0, 1])
    coords_zw, _ = second_order_batch(np.stack([z, w]), tau)
    assert numerical_rank(coords_zw) == 1
    print("test_second_order_coords passed")

def test_theta_constants():
    for g in [1, 2, 3]:
        tau = random_siegel(g, seed=20 + g)
        consts = theta_constants(tau)
        S = theta_scale(tau)
        assert len(consts) == 4 ** g
        assert abs(S - max(abs(c.value) for c in consts)) <= 1e-10 * S
        for c, chr in zip(consts, all_characteristics(g)):
            if chr.is_odd:
                assert abs(c.value) <= 1e-10 * S
            else:
                assert abs(c.value) > 1e-5 * S
    print("test_theta_constants passed")

def test_reduce_point():
    tau = random_siegel(2, seed=4)
    z = np.array([0.1 + 0.01j, -0.2 + 0.02j])
    w = z + tau.lattice_point([3, -2], [1, 5])
    assert np.allclose(reduce_point(w, tau), reduce_point(z, tau))

    # theta vanishing is invariant under the reduction
    out = theta(w, tau)
    out_ = theta(reduce_point(w, tau), tau)
    assert np.isclose(out.residual, out_.residual, rtol=1e-8)
    print("test_reduce_point passed")

if __name__ == "__main__":
    test_riemann_matrix()
    test_characteristics()
    test_theta_examples()
    test_theta_symmetry()
    test_truncation_radius()
    test_error_bound()
    test_theta_gradient()
    test_second_order_coords()
    test_theta_constants()
    test_reduce_point()
