import numpy as np
from scipy.linalg import cholesky, eigvalsh, LinAlgError

from src.theta.errors import SiegelError, DimensionError

SYMMETRY_RTOL = 1e-12

class RiemannMatrix:
    """ Point of the Siegel upper half-space defining the ppav C^g / (Z^g + tau Z^g)

    Attributes:
        g (int): dimension
        tau (np.array): complex symmetric matrix. size=[g, g]
        imag (np.array): Im tau. size=[g, g]
        imag_inv (np.array): (Im tau)^{-1}. size=[g, g]
        chol (np.array): lower triangular factor of Im tau. size=[g, g]
        min_eig (float): smallest eigenvalue of Im tau
        max_eig (float): largest eigenvalue of Im tau
        descriptor (str): short text used in reports
    """
    def __init__(self, tau, descriptor=""):
        """
        Args:
            tau (array_like): complex g x g matrix or scalar for g=1
            descriptor (str, optional): report descriptor. Default=""
        """
        tau = np.atleast_2d(np.asarray(tau, dtype=np.complex128))
        if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] == 0:
            raise DimensionError(f"tau must be a non-empty square matrix, got shape {tau.shape}")
        if not np.all(np.isfinite(tau)):
            raise SiegelError("tau has non-finite entries")

        scale = np.abs(tau).max()
        asym = np.abs(tau - tau.T).max()
        if asym > SYMMETRY_RTOL * scale:
            raise SiegelError(f"tau is not symmetric, max |tau_ij - tau_ji| = {asym:.3e}")

        # symmetrize exactly so downstream quadratic forms are real
        self.tau = 0.5 * (tau + tau.T)
        self.g = self.tau.shape[0]
        self.imag = self.tau.imag.copy()
        self.descriptor = descriptor

        try:
            self.chol = cholesky(self.imag, lower=True)
        except LinAlgError:
            raise SiegelError("Im tau is not positive definite")
        if np.any(np.diag(self.chol) <= 0):
            raise SiegelError("Im tau is not positive definite")

        eigs = eigvalsh(self.imag)
        self.min_eig = float(eigs[0])
        self.max_eig = float(eigs[-1])
        self.imag_inv = np.linalg.inv(self.imag)
        self.imag_inv = 0.5 * (self.imag_inv + self.imag_inv.T)

    def __repr__(self):
        return f"RiemannMatrix(g={self.g}, descriptor={self.descriptor!r})"

    def scaled(self, c):
        """ Riemann matrix c * tau for real c > 0 """
        return RiemannMatrix(c * self.tau, descriptor=f"{c}*{self.descriptor}")

    def check_vector(self, z):
        """ Cast z to a complex vector of length g """
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        if len(z) != self.g:
            raise DimensionError(f"expected vector of length {self.g}, got {len(z)}")
        return z

    def check_points(self, Z):
        """ Cast Z to a complex array of points. size=[batch_size, g] """
        Z = np.asarray(Z, dtype=np.complex128)
        if Z.ndim == 1:
            Z = Z.reshape(1, -1)
        if Z.ndim != 2 or Z.shape[1] != self.g:
            raise DimensionError(f"expected points of size [batch_size, {self.g}], got {Z.shape}")
        return Z

    def lattice_point(self, k, l):
        """ Period tau k + l for integer vectors k, l """
        return self.tau @ np.asarray(k, dtype=float) + np.asarray(l, dtype=float)

    def to_dict(self):
        return {
            "g": self.g,
            "re": self.tau.real.tolist(),
            "im": self.tau.imag.tolist()
        }

    @classmethod
    def from_dict(cls, data, descriptor=""):
        """ Build from the period-matrix JSON object {"g", "re", "im"} """
        g = int(data["g"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
        if re.shape != (g, g) or im.shape != (g, g):
            raise DimensionError(f"re/im must be {g}x{g}, got {re.shape} and {im.shape}")
        return cls(re + 1j * im, descriptor=descriptor)

def reduce_points(Z, tau):
    """ Representatives of a batch of points modulo the period lattice Z^g + tau Z^g

    Args:
        Z (np.array): complex points. size=[batch_size, g]
        tau (RiemannMatrix): period matrix

    Returns:
        W (np.array): Z - tau k - l with (Im tau)^{-1} Im W and Re W - Re(tau) (Im tau)^{-1} Im W
            both in [-1/2, 1/2)^g. size=[batch_size, g]
    """
    Z = tau.check_points(Z)
    U = Z.imag @ tau.imag_inv.T
    K = np.floor(U + 0.5)
    W = Z - K @ tau.tau.T
    V = W.real - (W.imag @ tau.imag_inv.T) @ tau.tau.real.T
    L = np.floor(V + 0.5)
    return W - L

def reduce_point(z, tau):
    """ Representative of z modulo the period lattice, see reduce_points. size=[g] """
    z = tau.check_vector(z)
    return reduce_points(z.reshape(1, -1), tau)[0]
