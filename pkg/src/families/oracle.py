from src.theta.characteristics import HalfCharacteristic
from src.torsion.group import TorsionPoint, all_torsion_points

def _shift_characteristic(shift, g):
    if shift is None:
        return HalfCharacteristic.zero(g)
    if isinstance(shift, TorsionPoint):
        shift = shift.chr
    if shift.g != g:
        raise ValueError(f"shift has g={shift.g}, expected {g}")
    return shift

def on_product_theta(chr):
    """ Whether the half period of chr lies on Theta of a product of elliptic curves

    theta over diag(tau_1, ..., tau_g) is the product of the elliptic theta functions and
    each of those vanishes only at its odd half period, so x lies on Theta iff some
    factor has eps_i = delta_i = 1.
    """
    return bool((chr.eps & chr.delta).any())

def product_oracle(g, shift=None):
    """ Torsion points on t_y^* Theta for a product of elliptic curves

    Args:
        g (int): dimension
        shift (HalfCharacteristic, TorsionPoint, optional): torsion translate y. Default=0

    Returns:
        points (set): TorsionPoint x with x + y on Theta
    """
    shift = _shift_characteristic(shift, g)
    return {x for x in all_torsion_points(g) if on_product_theta(x.chr + shift)}

def product_oracle_count(g):
    """ 2^2g - 3^g torsion points on Theta of a product of g elliptic curves """
    return 4 ** g - 3 ** g
