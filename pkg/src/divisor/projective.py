import numpy as np

from src.theta.core import DEFAULT_EPS_REQ, evaluate_batch, theta_gradient_batch, second_order_batch
from src.theta.riemann_matrix import reduce_point, reduce_points
from src.torsion.group import coset, torsion_coordinates
from src.evaluation.metrics import (
    RANK_RTOL, normalize_rows, numerical_rank, relative_residual, singular_value_ratio
)

SPANNING_MIN_RATIO = 1e-6

def spanning_check(tau, b_bits, eps_req=DEFAULT_EPS_REQ, min_ratio=SPANNING_MIN_RATIO):
    """ Check that the second order images of a coset H_b span P^{2^g - 1}

    Args:
        tau (RiemannMatrix): period matrix
        b_bits (array_like): coset label. size=[g]
        eps_req (float, optional): requested theta accuracy. Default=1e-12
        min_ratio (float, optional): pass threshold on sigma_min / sigma_max. Default=1e-6

    Returns:
        ratio (float): smallest over largest singular value of the normalized image matrix
        passed (bool): ratio > min_ratio
    """
    points = coset(b_bits)
    coords, _ = second_order_batch(torsion_coordinates(points, tau), tau, eps_req)
    ratio = singular_value_ratio(normalize_rows(coords).T)
    return ratio, ratio > min_ratio

def hyperplane_check(tau, a, on_points, eps_req=DEFAULT_EPS_REQ, rtol=RANK_RTOL):
    """ Check that the On points of t_a^* Theta lie on the hyperplane sum_eps Theta[eps](a) X_eps = 0

    By the addition formula sum_eps Theta[eps](a) Theta[eps](x) = theta(x + a) theta(x - a).

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate. size=[g]
        on_points (list): TorsionPoint classified On
        eps_req (float, optional): requested theta accuracy. Default=1e-12
        rtol (float, optional): relative rank threshold. Default=1e-8

    Returns:
        max_violation (float): max over points of |sum_eps c_eps X_eps| / sum_eps |c_eps X_eps|
        rank (int): numerical rank of the On point coordinates
    """
    if len(on_points) == 0:
        return 0., 0
    # lattice shifts of a scale every Theta[eps](a) by one common factor
    a = reduce_point(a, tau)
    c, _ = second_order_batch(a.reshape(1, -1), tau, eps_req)
    X, _ = second_order_batch(torsion_coordinates(on_points, tau), tau, eps_req)

    lhs = np.abs(X @ c[0])
    norm = np.abs(X) @ np.abs(c[0])
    violation = lhs / np.where(norm > 0, norm, 1.)
    return float(violation.max()), numerical_rank(X, rtol)

def addition_residual(tau, Z, W, eps_req=DEFAULT_EPS_REQ):
    """ Second order addition formula theta(z + w) theta(z - w) = sum_eps Theta[eps](z) Theta[eps](w)

    Args:
        tau (RiemannMatrix): period matrix
        Z (np.array): points. size=[batch_size, g]
        W (np.array): points. size=[batch_size, g]

    Returns:
        residual (np.array): |lhs - rhs| / (1 + |lhs|). size=[batch_size]
    """
    Z, W = tau.check_points(Z), tau.check_points(W)
    lhs = evaluate_batch(Z + W, tau, eps_req=eps_req).value * \
        evaluate_batch(Z - W, tau, eps_req=eps_req).value
    coords_z, _ = second_order_batch(Z, tau, eps_req)
    coords_w, _ = second_order_batch(W, tau, eps_req)
    rhs = np.sum(coords_z * coords_w, axis=-1)
    return relative_residual(lhs, rhs)

def section_values(tau, a, points, eps_req=DEFAULT_EPS_REQ):
    """ The g + 1 sections vanishing on t_a^* Theta cap t_{-a}^* Theta

        F_0(x) = theta(x + a) theta(x - a)
        F_j(x) = d_j theta(x + a) theta(x - a) - theta(x + a) d_j theta(x - a)

    x + a and x - a are reduced mod the lattice first, which rescales F by a nonzero
    factor on the common zeros of both theta factors.

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate. size=[g]
        points (list): TorsionPoint

    Returns:
        F (np.array): section values. size=[len(points), g + 1]
        residual (np.array): |F| normalized by the dominant summands of both factors. size=[len(points), g + 1]
    """
    a = tau.check_vector(a)
    X = torsion_coordinates(points, tau)
    pos = theta_gradient_batch(reduce_points(X + a, tau), tau, eps_req=eps_req)
    neg = theta_gradient_batch(reduce_points(X - a, tau), tau, eps_req=eps_req)

    f0 = pos.value * neg.value
    fj = pos.grad * neg.value[:, None] - pos.value[:, None] * neg.grad
    F = np.concatenate([f0[:, None], fj], axis=-1)

    s_pos, s_neg = pos.scale[:, None], neg.scale[:, None]
    norm_j = s_pos * s_neg * (1 + np.abs(pos.grad) / s_pos + np.abs(neg.grad) / s_neg)
    norm = np.concatenate([(s_pos * s_neg), norm_j], axis=-1)
    return F, np.abs(F) / norm

def plane_check(tau, a, on_points, eps_req=DEFAULT_EPS_REQ, rtol=RANK_RTOL):
    """ Check that the On points of a non-symmetric translate lie on a (2^g - g - 2)-plane

    Every On point x has theta(x + a) = 0 and, since 2x is a period, theta(x - a) = 0,
    so the g + 1 sections of section_values vanish on it. Under irreducibility of
    Theta and non-symmetry of the translate their images span a plane of that dimension.

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate. size=[g]
        on_points (list): TorsionPoint classified On
        eps_req (float, optional): requested theta accuracy. Default=1e-12
        rtol (float, optional): relative rank threshold. Default=1e-8

    Returns:
        max_residual (float): largest normalized section value over the On points
        rank (int): numerical rank of the On point second order coordinates
        passed (bool): rank <= 2^g - g - 1
    """
    if len(on_points) == 0:
        return 0., 0, True
    _, residual = section_values(tau, a, on_points, eps_req)
    X, _ = second_order_batch(torsion_coordinates(on_points, tau), tau, eps_req)
    rank = numerical_rank(X, rtol)
    return float(residual.max()), rank, rank <= 2 ** tau.g - tau.g - 1
