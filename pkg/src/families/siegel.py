import json
import numpy as np

from src.theta.riemann_matrix import RiemannMatrix
from src.theta.errors import SiegelError, DimensionError

MIN_EIG = 0.2
PRODUCT_IM_RANGE = (0.8, 2.)

def _symmetric_uniform(rng, g, low=-0.5, high=0.5):
    X = rng.uniform(low, high, size=(g, g))
    return np.triu(X) + np.triu(X, 1).T

def random_siegel(g, seed, min_eig=MIN_EIG):
    """ Sample a period matrix tau = X + iY

    X is symmetric with entries uniform in [-1/2, 1/2], Y = B B' / g + min_eig I with
    B standard normal, so the smallest eigenvalue of Y is at least min_eig.

    Args:
        g (int): dimension
        seed (int): generator seed
        min_eig (float, optional): eigenvalue floor of Im tau. Default=0.2

    Returns:
        tau (RiemannMatrix): sampled period matrix
    """
    if g < 1:
        raise DimensionError(f"g must be positive, got {g}")
    if not min_eig > 0:
        raise SiegelError(f"min_eig must be positive, got {min_eig}")
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((g, g))
    Y = B @ B.T / g + min_eig * np.eye(g)
    X = _symmetric_uniform(rng, g)
    return RiemannMatrix(X + 1j * Y, descriptor=f"random(g={g},seed={seed})")

def _format_complex(t):
    return f"{t.real:g}{t.imag:+g}i"

def product_tau(taus, min_imag=MIN_EIG):
    """ Block diagonal period matrix of a product of elliptic curves

    Args:
        taus (list): g complex scalars with Im tau_i >= min_imag
        min_imag (float, optional): Default=0.2

    Returns:
        tau (RiemannMatrix): diag(tau_1, ..., tau_g)
    """
    taus = np.asarray(taus, dtype=np.complex128).reshape(-1)
    if len(taus) == 0:
        raise DimensionError("product needs at least one elliptic factor")
    if np.any(taus.imag < min_imag):
        raise SiegelError(f"elliptic factors need Im tau_i >= {min_imag}, got {taus.imag.tolist()}")
    descriptor = "product(" + ",".join(_format_complex(t) for t in taus) + ")"
    return RiemannMatrix(np.diag(taus), descriptor=descriptor)

def random_product_taus(g, rng, im_range=PRODUCT_IM_RANGE):
    """ Random elliptic factors with real part in [-1/2, 1/2] and imaginary part in im_range """
    return rng.uniform(-0.5, 0.5, size=g) + 1j * rng.uniform(*im_range, size=g)

def perturb(tau, size, rng):
    """ tau plus a symmetric complex perturbation with entries of modulus at most size """
    P = _symmetric_uniform(rng, tau.g, -size, size) + 1j * _symmetric_uniform(rng, tau.g, -size, size)
    return RiemannMatrix(tau.tau + P, descriptor=f"{tau.descriptor}+perturb({size:g})")

def load_tau(path):
    """ Load a period matrix file {"g": int, "re": [[float]], "im": [[float]]} """
    with open(path, "r") as f:
        data = json.load(f)
    try:
        return RiemannMatrix.from_dict(data, descriptor=f"file({path})")
    except (KeyError, TypeError) as e:
        raise SiegelError(f"malformed period matrix file {path}: {e!r}")

def save_tau(tau, path):
    with open(path, "w") as f:
        json.dump(tau.to_dict(), f)

class FamilySpec:
    """ Source of period matrices

    Attributes:
        kind (str): one of random, product, near_product, file
        g (int): dimension
        seed (int): generator seed
        min_eig (float): eigenvalue floor for random
        taus (list, None): elliptic factors for product kinds, sampled from seed when None
        path (str, None): period matrix file
        perturbation (float): perturbation size for near_product
    """
    kinds = ["random", "product", "near_product", "file"]

    def __init__(self, kind, g=None, seed=0, min_eig=MIN_EIG, taus=None, path=None, perturbation=0.):
        if kind not in self.kinds:
            raise ValueError(f"unknown family kind {kind}, choose from {self.kinds}")
        if taus is not None:
            g = len(taus) if g is None else g
            if len(taus) != g:
                raise DimensionError(f"{len(taus)} elliptic factors given for g={g}")
        if kind != "file" and (g is None or g < 1):
            raise DimensionError(f"family {kind} needs a positive g, got {g}")
        if kind == "file" and path is None:
            raise ValueError("file family needs a path")
        self.kind = kind
        self.g = g
        self.seed = seed
        self.min_eig = min_eig
        self.taus = taus
        self.path = path
        self.perturbation = perturbation

    def build(self):
        """ Deterministic period matrix for this spec """
        if self.kind == "random":
            return random_siegel(self.g, self.seed, self.min_eig)
        if self.kind == "file":
            return load_tau(self.path)

        rng = np.random.default_rng(self.seed)
        taus = random_product_taus(self.g, rng) if self.taus is None else self.taus
        tau = product_tau(taus)
        if self.kind == "near_product":
            tau = perturb(tau, self.perturbation, rng)
        return tau

    def __repr__(self):
        return f"FamilySpec({self.kind}, g={self.g}, seed={self.seed})"
