import numpy as np
from scipy.linalg import svdvals

RANK_RTOL = 1e-8

def singular_values(M):
    """ Singular values in descending order, empty for an empty matrix """
    M = np.asarray(M)
    if M.size == 0:
        return np.zeros(0)
    return svdvals(M)

def singular_value_ratio(M):
    """ Smallest over largest singular value

    Args:
        M (np.array): matrix. size=[m, n]

    Returns:
        ratio (float): sigma_min / sigma_max, 0 for a zero or empty matrix
    """
    s = singular_values(M)
    if len(s) == 0 or s[0] == 0:
        return 0.
    return float(s[-1] / s[0])

def normalize_rows(M):
    """ Scale every nonzero row to unit norm. Rows are homogeneous coordinates
    of projective points so the scaling leaves the point unchanged.
    """
    M = np.asarray(M)
    norm = np.linalg.norm(M, axis=-1, keepdims=True)
    return M / np.where(norm > 0, norm, 1.)

def numerical_rank(M, rtol=RANK_RTOL, projective=True):
    """ Number of singular values above rtol times the largest

    Args:
        M (np.array): matrix, one row per point when projective. size=[m, n]
        rtol (float, optional): relative threshold. Default=1e-8
        projective (bool, optional): normalize rows first. Default=True

    Returns:
        rank (int): numerical rank, 0 for an empty or zero matrix
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if projective:
        M = normalize_rows(M)
    s = singular_values(M)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))

def relative_residual(lhs, rhs):
    """ |lhs - rhs| / (1 + |lhs|) elementwise """
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return np.abs(lhs - rhs) / (1 + np.abs(lhs))

def finite_difference_error(exact, approx, floor=0.):
    """ Componentwise relative error |exact - approx| / max(|exact|, floor) """
    exact, approx = np.asarray(exact), np.asarray(approx)
    denom = np.maximum(np.abs(exact), floor)
    return np.abs(exact - approx) / np.where(denom > 0, denom, 1.)
