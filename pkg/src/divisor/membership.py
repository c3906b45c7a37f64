import numpy as np

from src.theta.core import DEFAULT_EPS_REQ, evaluate_batch, theta_scale
from src.theta.riemann_matrix import reduce_points
from src.torsion.group import (
    TorsionPoint, all_torsion_points, torsion_coordinates,
    max_coset_intersection, parity_counts
)
from src.divisor.projective import hyperplane_check

ON = "On"
OFF = "Off"
UNCERTAIN = "Uncertain"

ON_THRESHOLD = 1e-8
OFF_THRESHOLD = 1e-5
HALF_PERIOD_TOL = 1e-9

class Thresholds:
    """ Residual thresholds of the three-state vanishing test """
    def __init__(self, on=ON_THRESHOLD, off=OFF_THRESHOLD):
        if not 0 < on < off:
            raise ValueError(f"thresholds must satisfy 0 < on < off, got on={on}, off={off}")
        self.on = float(on)
        self.off = float(off)

    def state(self, residual, err_ratio=0.):
        """ Classify a normalized residual

        Args:
            residual (float): |theta| over the dominant summand modulus
            err_ratio (float, optional): reported err over the same modulus. Default=0

        Returns:
            state (str): On, Off or Uncertain
        """
        if residual + err_ratio < self.on:
            return ON
        if residual - err_ratio > self.off:
            return OFF
        return UNCERTAIN

    def __repr__(self):
        return f"Thresholds(on={self.on:.0e}, off={self.off:.0e})"

class MembershipVerdict:
    """ Classification of one point against a divisor

    Attributes:
        state (str): On, Off or Uncertain
        residual (float): |theta| normalized by the dominant summand of the series
        err_ratio (float): error bound normalized the same way
        point (TorsionPoint, None): classified torsion point
        abs_value (float, None): |theta| at the lattice-reduced evaluation point
    """
    def __init__(self, state, residual, err_ratio=0., point=None, abs_value=None):
        assert state in (ON, OFF, UNCERTAIN)
        self.state = state
        self.residual = float(residual)
        self.err_ratio = float(err_ratio)
        self.point = point
        self.abs_value = None if abs_value is None else float(abs_value)

    @property
    def is_on(self):
        return self.state == ON

    @property
    def is_off(self):
        return self.state == OFF

    @property
    def is_uncertain(self):
        return self.state == UNCERTAIN

    def __repr__(self):
        return f"MembershipVerdict({self.state}, residual={self.residual:.2e}, point={self.point})"

def _check_translate(tau, a):
    if a is None:
        return np.zeros(tau.g, dtype=np.complex128)
    return tau.check_vector(a)

def classify_batch(tau, a, points, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Classify torsion points against t_a^* Theta = {z : theta(z + a) = 0}

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate. size=[g]
        points (list): TorsionPoint to classify
        thresholds (Thresholds, optional): Default=Thresholds()
        eps_req (float, optional): requested theta accuracy. Default=1e-12

    Returns:
        verdicts (list): MembershipVerdict in the order of points
    """
    thresholds = Thresholds() if thresholds is None else thresholds
    a = _check_translate(tau, a)
    if len(points) == 0:
        return []

    # t_a^* Theta only depends on x + a modulo the lattice
    Z = reduce_points(torsion_coordinates(points, tau) + a[None, :], tau)
    out = evaluate_batch(Z, tau, eps_req=eps_req)
    residual = out.residual
    err_ratio = out.err / out.scale
    return [
        MembershipVerdict(thresholds.state(r, e), r, e, x, abs(v))
        for r, e, x, v in zip(residual, err_ratio, points, out.value)
    ]

def classify(tau, a, x, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Classify a single torsion point x against t_a^* Theta """
    return classify_batch(tau, a, [x], thresholds, eps_req)[0]

def classify_characteristic(tau, chr, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Vanishing test of the theta constant theta[eps; delta](0, tau)

    theta(x, tau) at x = (tau eps + delta) / 2 equals theta[eps; delta](0, tau) times
    a nonzero exponential factor, so this agrees with classify(tau, 0, x).
    """
    thresholds = Thresholds() if thresholds is None else thresholds
    out = evaluate_batch(np.zeros((1, tau.g), dtype=np.complex128), tau, chr, eps_req)
    residual = out.residual[0]
    err_ratio = out.err[0] / out.scale[0]
    return MembershipVerdict(
        thresholds.state(residual, err_ratio), residual, err_ratio, TorsionPoint(chr), abs(out.value[0])
    )

def symmetry_crosscheck(tau, a, x, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Whether x is classified alike on t_a^* Theta and t_{-a}^* Theta

    Returns:
        agree (bool): states are equal
        verdicts (tuple): the two MembershipVerdict
    """
    a = _check_translate(tau, a)
    v_pos = classify(tau, a, x, thresholds, eps_req)
    v_neg = classify(tau, -a, x, thresholds, eps_req)
    return v_pos.state == v_neg.state, (v_pos, v_neg)

def half_period(a, tau, tol=HALF_PERIOD_TOL):
    """ Torsion point represented by a if 2a lies on the period lattice, else None """
    a = tau.check_vector(a)
    u = 2 * tau.imag_inv @ a.imag
    k = np.round(u)
    v = 2 * a.real - tau.tau.real @ k
    l = np.round(v)
    if np.abs(u - k).max() > tol or np.abs(v - l).max() > tol:
        return None
    return TorsionPoint.from_bits(np.mod(k, 2).astype(int), np.mod(l, 2).astype(int))

def theorem_bounds(g):
    """ 2^2g - 2^g and 2^2g - (g + 1) 2^g """
    return 4 ** g - 2 ** g, 4 ** g - (g + 1) * 2 ** g

class CountReport:
    """ Classification of all 4^g torsion points against one translate

    Attributes:
        descriptor (str): period matrix descriptor
        g (int): dimension
        a (np.array): translate. size=[g]
        verdicts (list): MembershipVerdict ordered by torsion index
        n_on, n_off, n_uncertain (int): state counts
        bound_thm1 (int): 2^2g - 2^g
        bound_thm2 (int): 2^2g - (g + 1) 2^g
        hyperplane_rank (int): rank of the second order coordinates of the On points
        hyperplane_violation (float): largest normalized hyperplane residual over the On points
        max_coset (int): max over cosets H_b of the On points in H_b
        symmetric (bool): the translate is symmetric (2a on the lattice)
        theta_scale (float, None): S(tau), largest theta constant modulus
        meta (dict): family, seed, translate_kind, translate_index
        notes (str): free text
    """
    def __init__(
        self, descriptor, a, verdicts, hyperplane_rank=0, hyperplane_violation=0.,
        symmetric=False, theta_scale=None, meta=None, notes=""
        ):
        self.descriptor = descriptor
        self.a = np.asarray(a, dtype=np.complex128)
        self.g = len(self.a)
        self.verdicts = verdicts
        self.n_on = sum(v.is_on for v in verdicts)
        self.n_off = sum(v.is_off for v in verdicts)
        self.n_uncertain = sum(v.is_uncertain for v in verdicts)
        self.bound_thm1, self.bound_thm2 = theorem_bounds(self.g)
        self.hyperplane_rank = int(hyperplane_rank)
        self.hyperplane_violation = float(hyperplane_violation)
        self.max_coset = max_coset_intersection(self.on_points, self.g)
        self.symmetric = bool(symmetric)
        self.theta_scale = None if theta_scale is None else float(theta_scale)
        self.meta = {
            "family": "", "seed": None, "translate_kind": "explicit", "translate_index": None
        }
        if meta is not None:
            self.meta.update(meta)
        self.notes = notes
        assert self.n_on + self.n_off + self.n_uncertain == 4 ** self.g

    @property
    def on_points(self):
        return [v.point for v in self.verdicts if v.is_on]

    @property
    def on_indices(self):
        return [v.point.index for v in self.verdicts if v.is_on]

    @property
    def uncertain_indices(self):
        return [v.point.index for v in self.verdicts if v.is_uncertain]

    @property
    def max_residual_on(self):
        return max([v.residual for v in self.verdicts if v.is_on], default=0.)

    @property
    def min_residual_off(self):
        """ Smallest Off residual, None without Off points """
        return min([v.residual for v in self.verdicts if v.is_off], default=None)

    @property
    def global_residuals(self):
        """ |theta(x + a)| / S(tau) ordered by torsion index, None when S(tau) is unknown """
        if self.theta_scale is None or any(v.abs_value is None for v in self.verdicts):
            return None
        return [v.abs_value / self.theta_scale for v in self.verdicts]

    def to_dict(self):
        return {
            "tau": self.descriptor,
            "g": self.g,
            "translate": {"re": self.a.real.tolist(), "im": self.a.imag.tolist()},
            **self.meta,
            "symmetric": self.symmetric,
            "n_on": self.n_on,
            "n_off": self.n_off,
            "n_uncertain": self.n_uncertain,
            "bound_thm1": self.bound_thm1,
            "bound_thm2": self.bound_thm2,
            "hyperplane_rank": self.hyperplane_rank,
            "hyperplane_violation": self.hyperplane_violation,
            "max_coset_intersection": self.max_coset,
            "on_indices": self.on_indices,
            "uncertain_indices": self.uncertain_indices,
            "max_residual_on": self.max_residual_on,
            "min_residual_off": self.min_residual_off,
            "theta_scale": self.theta_scale,
            "global_residuals": self.global_residuals,
            "notes": self.notes
        }

    def csv_row(self, sound):
        """ Row of the fixed-order experiment table """
        return {
            "g": self.g,
            "family": self.meta["family"],
            "seed": self.meta["seed"],
            "translate_kind": self.meta["translate_kind"],
            "translate_index": self.meta["translate_index"],
            "n_on": self.n_on,
            "n_off": self.n_off,
            "n_uncertain": self.n_uncertain,
            "bound_thm1": self.bound_thm1,
            "bound_thm2": self.bound_thm2,
            "hyperplane_rank": self.hyperplane_rank,
            "sound": bool(sound)
        }

    def __repr__(self):
        return (
            f"CountReport(g={self.g}, n_on={self.n_on}, n_off={self.n_off}, "
            f"n_uncertain={self.n_uncertain}, rank={self.hyperplane_rank})"
        )

def count_on_translate(tau, a, thresholds=None, eps_req=DEFAULT_EPS_REQ, meta=None):
    """ Classify all 4^g torsion points against t_a^* Theta

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate. size=[g]
        thresholds (Thresholds, optional): Default=Thresholds()
        eps_req (float, optional): requested theta accuracy. Default=1e-12
        meta (dict, optional): experiment metadata copied into the report. Default=None

    Returns:
        report (CountReport): counts, bounds and hyperplane diagnostics
    """
    a = _check_translate(tau, a)
    verdicts = classify_batch(tau, a, all_torsion_points(tau.g), thresholds, eps_req)
    on_points = [v.point for v in verdicts if v.is_on]
    violation, rank = hyperplane_check(tau, a, on_points, eps_req)

    notes = []
    n_uncertain = sum(v.is_uncertain for v in verdicts)
    if n_uncertain > 0:
        notes.append(f"{n_uncertain} uncertain verdicts")
    return CountReport(
        tau.descriptor, a, verdicts, rank, violation,
        symmetric=half_period(a, tau) is not None, theta_scale=theta_scale(tau, eps_req),
        meta=meta, notes="; ".join(notes)
    )

class BoundsVerdict:
    """ Outcome of verify_bounds

    Attributes:
        passed (bool): every asserted bound holds on the On count
        sound (bool): the bounds also hold with Uncertain points counted as On
        checks (dict): name -> (value, bound, passed)
        messages (list): one line per failed or skipped check
    """
    def __init__(self):
        self.passed = True
        self.sound = True
        self.checks = {}
        self.messages = []

    def add(self, name, value, bound, passed, sound):
        self.checks[name] = (int(value), int(bound), bool(passed))
        self.passed = self.passed and passed
        self.sound = self.sound and sound
        if not passed:
            self.messages.append(f"{name} violated: {value} vs bound {bound}")
        elif not sound:
            self.messages.append(f"{name} holds only without uncertain points")

    @property
    def exit_code(self):
        """ 0 verified, 2 conditional pass, 1 violation """
        if not self.passed:
            return 1
        return 0 if self.sound else 2

    def to_dict(self):
        return {
            "passed": self.passed,
            "sound": self.sound,
            "checks": {k: list(v) for k, v in self.checks.items()},
            "messages": self.messages
        }

def verify_bounds(report, symmetric=None, irreducible=False):
    """ Check the On count against the bounds on torsion points of a translate

    Args:
        report (CountReport): classification of all torsion points
        symmetric (bool, optional): translate is symmetric. Default=report.symmetric
        irreducible (bool, optional): caller asserts Theta is irreducible. Default=False

    Returns:
        verdict (BoundsVerdict): per check results
    """
    symmetric = report.symmetric if symmetric is None else symmetric
    n_on, n_upper = report.n_on, report.n_on + report.n_uncertain
    verdict = BoundsVerdict()

    verdict.add(
        "not_all", n_on, 4 ** report.g - 1,
        n_on < 4 ** report.g, n_upper < 4 ** report.g
    )
    verdict.add(
        "bound_thm1", n_on, report.bound_thm1,
        n_on <= report.bound_thm1, n_upper <= report.bound_thm1
    )
    if irreducible and not symmetric:
        verdict.add(
            "bound_thm2", n_on, report.bound_thm2,
            n_on <= report.bound_thm2, n_upper <= report.bound_thm2
        )
    else:
        verdict.messages.append("bound_thm2 skipped: translate symmetric or Theta not asserted irreducible")

    # odd characteristics always vanish on a torsion translate
    if report.symmetric:
        odd, _ = parity_counts(report.g)
        verdict.add("odd_lower_bound", n_upper, odd, n_upper >= odd, n_on >= odd)
    return verdict
