import math
import numpy as np

from src.theta.characteristics import HalfCharacteristic, bit_vectors
from src.theta.errors import DimensionError

class TorsionPoint:
    """ 2-torsion point x = (tau eps + delta) / 2 of C^g / (Z^g + tau Z^g)

    Stored exactly as its characteristic bits. The complex coordinates are only
    derived on demand through coordinates(tau).
    """
    def __init__(self, chr):
        """
        Args:
            chr (HalfCharacteristic): characteristic naming the point
        """
        self.chr = chr

    @classmethod
    def from_index(cls, index, g):
        return cls(HalfCharacteristic.from_index(index, g))

    @classmethod
    def from_bits(cls, eps, delta):
        return cls(HalfCharacteristic(eps, delta))

    @property
    def g(self):
        return self.chr.g

    @property
    def index(self):
        return self.chr.index

    @property
    def eps(self):
        return self.chr.eps

    @property
    def delta(self):
        return self.chr.delta

    @property
    def is_odd(self):
        return self.chr.is_odd

    def coordinates(self, tau):
        """ Complex representative (tau eps + delta) / 2. size=[g] """
        if tau.g != self.g:
            raise DimensionError(f"point has g={self.g}, tau has g={tau.g}")
        return (tau.tau @ self.eps + self.delta) / 2

    def add(self, other):
        return TorsionPoint(self.chr + other.chr)

    def __eq__(self, other):
        return isinstance(other, TorsionPoint) and self.chr == other.chr

    def __hash__(self):
        return hash(self.chr)

    def __repr__(self):
        return f"TorsionPoint({self.index}, {self.chr})"

class SymplecticBasis:
    """ Basis a_1..a_g, b_1..b_g of the 2-torsion group with <a_i, b_j> = delta_ij """
    def __init__(self, a, b):
        """
        Args:
            a (list): g TorsionPoint spanning the isotropic subgroup H
            b (list): g TorsionPoint
        """
        if len(a) != len(b):
            raise DimensionError(f"basis halves differ in size: {len(a)} != {len(b)}")
        self.a = list(a)
        self.b = list(b)

    @property
    def g(self):
        return len(self.a)

    @property
    def generators(self):
        return self.a + self.b

def pairing(x, y):
    """ Weil pairing on the 2-torsion: <(e, d), (e', d')> = e.d' + e'.d mod 2

    Args:
        x (TorsionPoint): first point
        y (TorsionPoint): second point

    Returns:
        out (int): 0 or 1
    """
    if x.g != y.g:
        raise DimensionError(f"mismatched g: {x.g} != {y.g}")
    return int(x.eps @ y.delta + y.eps @ x.delta) % 2

def gram_matrix(points):
    """ Pairing matrix of a list of torsion points over F_2. size=[n, n] """
    n = len(points)
    G = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            G[i, j] = pairing(points[i], points[j])
    return G

def standard_basis(g):
    """ a_i = (e_i, 0), b_i = (0, e_i) """
    eye = np.eye(g, dtype=int)
    zero = np.zeros(g, dtype=int)
    a = [TorsionPoint.from_bits(eye[i], zero) for i in range(g)]
    b = [TorsionPoint.from_bits(zero, eye[i]) for i in range(g)]
    return SymplecticBasis(a, b)

def standard_symplectic_form(g):
    """ [[0, I], [I, 0]] over F_2 """
    eye = np.eye(g, dtype=int)
    zero = np.zeros((g, g), dtype=int)
    return np.block([[zero, eye], [eye, zero]])

def all_torsion_points(g):
    """ The 4^g points of order dividing two, ordered by index """
    return [TorsionPoint.from_index(i, g) for i in range(4 ** g)]

def torsion_coordinates(points, tau):
    """ Stack complex representatives of torsion points. size=[len(points), g] """
    if len(points) == 0:
        return np.zeros((0, tau.g), dtype=np.complex128)
    return np.stack([x.coordinates(tau) for x in points])

def coset(b_bits):
    """ Coset H_b = {(eps, b) : eps in {0,1}^g} of H = <a_1, ..., a_g>

    Args:
        b_bits (array_like): bit vector. size=[g]

    Returns:
        points (list): 2^g TorsionPoint ordered by index
    """
    b_bits = np.asarray(b_bits, dtype=int).reshape(-1)
    return [TorsionPoint.from_bits(eps, b_bits) for eps in bit_vectors(len(b_bits))]

def coset_profile(points, g):
    """ Number of points in each coset H_b

    Args:
        points (iterable): TorsionPoint
        g (int): dimension

    Returns:
        counts (np.array): counts[b] with b the integer value of the delta bits. size=[2^g]
    """
    counts = np.zeros(2 ** g, dtype=int)
    for x in points:
        if x.g != g:
            raise DimensionError(f"point has g={x.g}, expected {g}")
        counts[x.index % 2 ** g] += 1
    return counts

def max_coset_intersection(points, g):
    """ max over b of |S cap H_b|, always >= ceil(|S| / 2^g) """
    points = list(points)
    if len(points) == 0:
        return 0
    return int(coset_profile(points, g).max())

def parity_counts(g):
    """ Number of odd and even characteristics

    Returns:
        odd (int): 2^(g-1) (2^g - 1)
        even (int): 2^(g-1) (2^g + 1)
    """
    if g < 1:
        raise DimensionError(f"g must be positive, got {g}")
    odd = 2 ** (g - 1) * (2 ** g - 1)
    even = 2 ** (g - 1) * (2 ** g + 1)
    return odd, even

def count_odd(g):
    """ Odd characteristics counted by enumeration rather than formula """
    return sum(x.is_odd for x in all_torsion_points(g))

def pigeonhole_floor(size, g):
    return math.ceil(size / 2 ** g)
