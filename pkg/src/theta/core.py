import math
import warnings
import numpy as np

from src.theta.characteristics import HalfCharacteristic, bit_vectors, all_characteristics
from src.theta.errors import DimensionError, IllConditionedError

DEFAULT_EPS_REQ = 1e-12
MIN_EPS_REQ = 1e-13
MAX_RADIUS = 60.
ROUNDING = 4 * np.finfo(np.float64).eps
CHUNK_SIZE = 2 ** 19 # max batch_size * num_lattice_points held in memory

class ThetaValue:
    """ Theta function value with an absolute error bound

    Attributes:
        value (complex): series value
        err (float): bound on truncation plus accumulated rounding error
        scale (float): modulus of the dominant summand at the evaluated point
    """
    def __init__(self, value, err, scale=1.):
        self.value = complex(value)
        self.err = float(err)
        self.scale = float(scale)

    @property
    def residual(self):
        """ |value| relative to the dominant summand """
        return abs(self.value) / self.scale if self.scale > 0 else float("inf")

    def __repr__(self):
        return f"ThetaValue({self.value:.12g}, err={self.err:.2e})"

class ThetaBatch:
    """ Series evaluated over a batch of points

    Attributes:
        value (np.array): size=[batch_size]
        err (np.array): size=[batch_size]
        scale (np.array): dominant summand modulus. size=[batch_size]
        grad (np.array, None): z-gradient. size=[batch_size, g]
        grad_err (np.array, None): size=[batch_size, g]
        radius (float): truncation radius in lattice coordinates
        num_terms (int): lattice points in the summation box
    """
    def __init__(self, value, err, scale, grad, grad_err, radius, num_terms):
        self.value = value
        self.err = err
        self.scale = scale
        self.grad = grad
        self.grad_err = grad_err
        self.radius = radius
        self.num_terms = num_terms

    @property
    def residual(self):
        return np.abs(self.value) / self.scale

    def __getitem__(self, i):
        return ThetaValue(self.value[i], self.err[i], self.scale[i])

    def __len__(self):
        return len(self.value)

def _clamp_eps(eps_req):
    if not eps_req > 0:
        raise ValueError(f"eps_req must be positive, got {eps_req}")
    if eps_req < MIN_EPS_REQ:
        warnings.warn(
            f"eps_req={eps_req:.1e} is below double precision reach, clamped to {MIN_EPS_REQ:.0e}",
            RuntimeWarning
        )
        eps_req = MIN_EPS_REQ
    return eps_req

def _check_characteristic(chr, g):
    if chr is None:
        return HalfCharacteristic.zero(g)
    if chr.g != g:
        raise DimensionError(f"characteristic has g={chr.g}, tau has g={g}")
    return chr

def _required_rho2(tau, log_growth, c_inf, eps_tail, gradient=False):
    """ Squared ellipsoid radius (Im tau norm) leaving an omitted tail below eps_tail

    Summands outside q(m) = (m - c)' Y (m - c) <= rho^2 are bounded through
    q >= lam |m - c|^2 with lam the smallest eigenvalue of Y = Im tau, giving
        tail <= exp(log_growth) exp(-pi rho^2 / 2) (1 + sqrt(2 / lam))^g
    and for the gradient, using |m_j| <= sqrt(q / lam) + |c_j| and sqrt(q) <= exp(pi q / 4),
        tail <= exp(log_growth) 2 pi (1 / sqrt(lam) + |c|_inf) exp(-3 pi rho^2 / 8) (1 + sqrt(8 / (3 lam)))^g
    """
    g, lam = tau.g, tau.min_eig
    log_eps = math.log(eps_tail)
    rho2 = 2 / math.pi * (log_growth + g * math.log1p(math.sqrt(2 / lam)) - log_eps)
    if gradient:
        log_c = np.log(2 * math.pi * (1 / math.sqrt(lam) + c_inf))
        rho2_grad = 8 / (3 * math.pi) * (
            log_growth + log_c + g * math.log1p(math.sqrt(8 / (3 * lam))) - log_eps
        )
        rho2 = np.maximum(rho2, rho2_grad)

    # the nearest shifted lattice point is always inside
    return np.maximum(rho2, g * tau.max_eig / 4 + 1e-9)

def _tail_bound(tau, log_growth, c_inf, rho2, gradient=False):
    g, lam = tau.g, tau.min_eig
    if not gradient:
        return np.exp(log_growth - math.pi * rho2 / 2 + g * math.log1p(math.sqrt(2 / lam)))
    return 2 * math.pi * (1 / math.sqrt(lam) + c_inf) * np.exp(
        log_growth - 3 * math.pi * rho2 / 8 + g * math.log1p(math.sqrt(8 / (3 * lam)))
    )

def _growth(y, tau):
    """ Centers -Y^{-1} Im z, log growth pi Im z' Y^{-1} Im z and |center|_inf """
    centers = -(y @ tau.imag_inv)
    log_growth = math.pi * np.einsum("bi,ij,bj->b", y, tau.imag_inv, y)
    return centers, log_growth, np.abs(centers).max(-1)

def truncation_radius(tau, shift, eps_req=DEFAULT_EPS_REQ, gradient=False, max_radius=MAX_RADIUS):
    """ Truncation radius of the recentred theta series

    Args:
        tau (RiemannMatrix): period matrix
        shift (np.array): imaginary part of the evaluation point. size=[g]
        eps_req (float): bound on the omitted tail
        gradient (bool, optional): also bound the differentiated tail. Default=False
        max_radius (float, optional): hard cap. Default=60

    Returns:
        radius (float): longest semi-axis, in lattice coordinates, of the summation
            ellipsoid centred at -(Im tau)^{-1} shift
    """
    eps_req = _clamp_eps(eps_req)
    shift = np.asarray(shift, dtype=float).reshape(1, -1)
    if shift.shape[1] != tau.g:
        raise DimensionError(f"expected shift of length {tau.g}, got {shift.shape[1]}")
    _, log_growth, c_inf = _growth(shift, tau)
    rho2 = _required_rho2(tau, log_growth[0], c_inf[0], eps_req, gradient)
    radius = math.sqrt(float(rho2) / tau.min_eig)
    if radius > max_radius:
        raise IllConditionedError(
            f"truncation radius {radius:.1f} exceeds cap {max_radius}, min eig of Im tau={tau.min_eig:.3e}"
        )
    return radius

def _lattice_box(lo, hi):
    axes = [np.arange(l, h + 1) for l, h in zip(lo, hi)]
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack(grid, axis=-1).reshape(-1, len(axes)).astype(float)

def evaluate_batch(Z, tau, chr=None, eps_req=DEFAULT_EPS_REQ, radius=None, gradient=False, max_radius=MAX_RADIUS):
    """ Evaluate theta[eps; delta](z, tau) over a batch of points

    The series is summed over the shifted lattice points m = n + eps/2 inside the
    ellipsoid (m - c)' Im tau (m - c) <= rho^2 centred at c = -(Im tau)^{-1} Im z.

    Args:
        Z (np.array): evaluation points. size=[batch_size, g]
        tau (RiemannMatrix): period matrix
        chr (HalfCharacteristic, optional): characteristic. Default=[0;0]
        eps_req (float, optional): requested absolute truncation error. Default=1e-12
        radius (float, optional): override truncation radius in lattice coordinates. Default=None
        gradient (bool, optional): also return the z-gradient. Default=False
        max_radius (float, optional): hard cap on the radius. Default=60

    Returns:
        out (ThetaBatch): values, error bounds and dominant summand moduli
    """
    Z = tau.check_points(Z)
    chr = _check_characteristic(chr, tau.g)
    eps_req = _clamp_eps(eps_req)
    g, lam = tau.g, tau.min_eig
    centers, log_growth, c_inf = _growth(Z.imag, tau)

    fixed_radius = radius is not None
    if not fixed_radius:
        rho2 = float(np.max(_required_rho2(tau, log_growth, c_inf, eps_req / 2, gradient)))
        radius = math.sqrt(rho2 / lam)
        if radius > max_radius:
            raise IllConditionedError(
                f"truncation radius {radius:.1f} exceeds cap {max_radius}, min eig of Im tau={lam:.3e}"
            )
    else:
        rho2 = float(radius) ** 2 * lam

    shift = chr.eps / 2
    delta_shift = chr.delta / 2
    half_width = np.sqrt(rho2 * np.diag(tau.imag_inv))
    box_size = int(np.prod(2 * half_width + 2))
    chunk = max(1, CHUNK_SIZE // box_size)

    value = np.zeros(len(Z), dtype=np.complex128)
    abs_sum = np.zeros(len(Z))
    log_scale = np.full(len(Z), -np.inf)
    grad = np.zeros((len(Z), g), dtype=np.complex128) if gradient else None
    grad_abs_sum = np.zeros((len(Z), g)) if gradient else None
    num_terms = 0
    for start in range(0, len(Z), chunk):
        idx = slice(start, start + chunk)
        c = centers[idx]
        lo = np.floor((c - shift - half_width).min(0)).astype(int)
        hi = np.ceil((c - shift + half_width).max(0)).astype(int)
        M = _lattice_box(lo, hi) + shift
        num_terms = max(num_terms, len(M))

        D = M[None, :, :] - c[:, None, :]
        q = np.einsum("bni,ij,bnj->bn", D, tau.imag, D)
        inside = q <= rho2

        quad = np.einsum("ni,ij,nj->n", M, tau.tau, M)
        phase = 1j * math.pi * quad[None, :] + 2j * math.pi * (Z[idx] + delta_shift) @ M.T
        phase = np.where(inside, phase, -1000.)
        terms = np.exp(phase)
        abs_terms = np.abs(terms)

        value[idx] = terms.sum(-1)
        abs_sum[idx] = abs_terms.sum(-1)
        log_scale[idx] = np.where(inside, phase.real, -np.inf).max(-1)
        if gradient:
            grad[idx] = 2j * math.pi * (terms @ M)
            grad_abs_sum[idx] = 2 * math.pi * (abs_terms @ np.abs(M))

    err = _tail_bound(tau, log_growth, c_inf, rho2) + ROUNDING * abs_sum
    if not fixed_radius and len(err) > 0 and err.max() > eps_req:
        warnings.warn(
            f"reported err {err.max():.2e} exceeds eps_req={eps_req:.1e} through rounding of large summands",
            RuntimeWarning
        )
    grad_err = None
    if gradient:
        grad_tail = _tail_bound(tau, log_growth, c_inf, rho2, gradient=True)
        grad_err = grad_tail[:, None] + ROUNDING * grad_abs_sum
    return ThetaBatch(value, err, np.exp(log_scale), grad, grad_err, radius, num_terms)

def theta(z, tau, chr=None, eps_req=DEFAULT_EPS_REQ, radius=None):
    """ Riemann theta function with characteristic at a single point

    Args:
        z (np.array): complex vector. size=[g]
        tau (RiemannMatrix): period matrix
        chr (HalfCharacteristic, optional): characteristic. Default=[0;0]
        eps_req (float, optional): requested absolute error. Default=1e-12
        radius (float, optional): override truncation radius. Default=None

    Returns:
        out (ThetaValue): value with err <= eps_req, or a RuntimeWarning when rounding of large
            summands pushes err above it
    """
    z = tau.check_vector(z)
    out = evaluate_batch(z.reshape(1, -1), tau, chr, eps_req, radius)
    return out[0]

def theta_batch(Z, tau, chr=None, eps_req=DEFAULT_EPS_REQ, radius=None):
    return evaluate_batch(Z, tau, chr, eps_req, radius)

def theta_gradient(z, tau, chr=None, eps_req=DEFAULT_EPS_REQ, radius=None):
    """ Termwise z-gradient of theta[eps; delta](z, tau)

    Returns:
        out (list): g ThetaValue, component j is d theta / d z_j
    """
    z = tau.check_vector(z)
    out = evaluate_batch(z.reshape(1, -1), tau, chr, eps_req, radius, gradient=True)
    return [
        ThetaValue(out.grad[0, j], out.grad_err[0, j], out.scale[0]) for j in range(tau.g)
    ]

def theta_gradient_batch(Z, tau, chr=None, eps_req=DEFAULT_EPS_REQ, radius=None):
    return evaluate_batch(Z, tau, chr, eps_req, radius, gradient=True)

def second_order_batch(Z, tau, eps_req=DEFAULT_EPS_REQ):
    """ Second order theta coordinates Theta[eps](z) = theta[eps; 0](2z, 2 tau)

    Args:
        Z (np.array): points. size=[batch_size, g]
        tau (RiemannMatrix): period matrix
        eps_req (float, optional): requested absolute error. Default=1e-12

    Returns:
        value (np.array): coordinates, column k is eps = k-th vector of bit_vectors(g). size=[batch_size, 2^g]
        err (np.array): error bounds. size=[batch_size, 2^g]
    """
    Z = tau.check_points(Z)
    tau2 = tau.scaled(2.)
    value, err = [], []
    for eps in bit_vectors(tau.g):
        chr = HalfCharacteristic(eps, np.zeros(tau.g, dtype=int))
        out = evaluate_batch(2 * Z, tau2, chr, eps_req)
        value.append(out.value)
        err.append(out.err)
    return np.stack(value, axis=-1), np.stack(err, axis=-1)

def second_order_coords(z, tau, eps_req=DEFAULT_EPS_REQ):
    """ Homogeneous coordinates of the |2 Theta| map at z

    Returns:
        out (list): 2^g ThetaValue ordered by eps as in bit_vectors(g)
    """
    z = tau.check_vector(z)
    value, err = second_order_batch(z.reshape(1, -1), tau, eps_req)
    return [ThetaValue(v, e) for v, e in zip(value[0], err[0])]

def theta_constants(tau, eps_req=DEFAULT_EPS_REQ):
    """ theta[eps; delta](0, tau) for all characteristics, ordered by torsion index

    Returns:
        out (list): 4^g ThetaValue
    """
    zero = np.zeros(tau.g, dtype=np.complex128)
    return [theta(zero, tau, chr, eps_req) for chr in all_characteristics(tau.g)]

def theta_scale(tau, eps_req=DEFAULT_EPS_REQ):
    """ S(tau): largest theta constant modulus over all characteristics

    Evaluated in one batch through
        |theta[eps; delta](0, tau)| = |theta((tau eps + delta) / 2, tau)| exp(-pi eps' Im tau eps / 4)
    """
    chrs = all_characteristics(tau.g)
    E = np.stack([c.eps for c in chrs]).astype(float)
    D = np.stack([c.delta for c in chrs]).astype(float)
    out = evaluate_batch((E @ tau.tau.T + D) / 2, tau, eps_req=eps_req)
    factor = np.exp(-math.pi * np.einsum("bi,ij,bj->b", E, tau.imag, E) / 4)
    return float(np.max(np.abs(out.value) * factor))
