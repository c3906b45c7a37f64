import numpy as np

from src.theta.errors import DimensionError

def _as_bits(bits, name):
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if np.any((bits != 0) & (bits != 1)):
        raise DimensionError(f"{name} must be a 0/1 vector, got {bits.tolist()}")
    return bits

class HalfCharacteristic:
    """ Half-integer characteristic [eps; delta] in {0,1}^g x {0,1}^g

    Names the 2-torsion point (tau eps + delta) / 2 and the theta function
    theta[eps; delta](z, tau) = sum_n exp(i pi (n + eps/2)' tau (n + eps/2)
        + 2 i pi (n + eps/2)' (z + delta/2)).
    """
    def __init__(self, eps, delta):
        """
        Args:
            eps (array_like): bit vector. size=[g]
            delta (array_like): bit vector. size=[g]
        """
        self.eps = _as_bits(eps, "eps")
        self.delta = _as_bits(delta, "delta")
        if len(self.eps) != len(self.delta):
            raise DimensionError(
                f"eps and delta lengths differ: {len(self.eps)} != {len(self.delta)}"
            )

    @property
    def g(self):
        return len(self.eps)

    @property
    def parity(self):
        """ eps' delta mod 2, 1 for odd characteristics """
        return int(self.eps @ self.delta) % 2

    @property
    def is_odd(self):
        return self.parity == 1

    @property
    def index(self):
        """ Integer with the eps bits high and the delta bits low, most significant first """
        bits = np.concatenate([self.eps, self.delta])
        return int(bits @ (2 ** np.arange(2 * self.g - 1, -1, -1)))

    @classmethod
    def from_index(cls, index, g):
        if not 0 <= index < 4 ** g:
            raise DimensionError(f"index {index} out of range for g={g}")
        bits = (index >> np.arange(2 * g - 1, -1, -1)) & 1
        return cls(bits[:g], bits[g:])

    @classmethod
    def zero(cls, g):
        return cls(np.zeros(g, dtype=int), np.zeros(g, dtype=int))

    def __add__(self, other):
        """ Group law of the 2-torsion (bitwise xor) """
        if self.g != other.g:
            raise DimensionError(f"mismatched g: {self.g} != {other.g}")
        return HalfCharacteristic(self.eps ^ other.eps, self.delta ^ other.delta)

    def __eq__(self, other):
        return (
            isinstance(other, HalfCharacteristic) and self.g == other.g
            and np.array_equal(self.eps, other.eps) and np.array_equal(self.delta, other.delta)
        )

    def __hash__(self):
        return hash((self.g, self.index))

    def __repr__(self):
        e = "".join(str(b) for b in self.eps)
        d = "".join(str(b) for b in self.delta)
        return f"[{e};{d}]"

def bit_vectors(g):
    """ All vectors of {0,1}^g ordered by their integer value, most significant bit first

    Returns:
        bits (np.array): size=[2^g, g]
    """
    idx = np.arange(2 ** g)
    return (idx[:, None] >> np.arange(g - 1, -1, -1)[None, :]) & 1

def all_characteristics(g):
    """ All 4^g half characteristics ordered by index """
    return [HalfCharacteristic.from_index(i, g) for i in range(4 ** g)]
