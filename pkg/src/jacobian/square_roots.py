import numpy as np

from src.theta.core import DEFAULT_EPS_REQ
from src.divisor.membership import count_on_translate

PASS = "pass"
CONDITIONAL_PASS = "conditional pass"
FAIL = "fail"

class SquareRootReport:
    """ Square roots eta of a line bundle with h^0(eta x M) = 0

    The square roots of a fixed bundle form a torsor under the 2-torsion, so with one
    root encoded as the translate a they are the points x + a, and eta x M is
    non-effective exactly when x is off t_a^* Theta.

    Attributes:
        descriptor (str): period matrix descriptor
        g (int): dimension
        a (np.array): translate encoding one square root. size=[g]
        n_noneffective (int): torsion points classified Off
        n_effective (int): torsion points classified On
        n_uncertain (int): unresolved torsion points
        lower_bound (int): 2^g
        status (str): pass, conditional pass or fail
    """
    def __init__(self, descriptor, a, n_noneffective, n_effective, n_uncertain):
        self.descriptor = descriptor
        self.a = np.asarray(a, dtype=np.complex128)
        self.g = len(self.a)
        self.n_noneffective = int(n_noneffective)
        self.n_effective = int(n_effective)
        self.n_uncertain = int(n_uncertain)
        self.lower_bound = 2 ** self.g
        assert self.n_noneffective + self.n_effective + self.n_uncertain == 4 ** self.g

        if self.n_noneffective >= self.lower_bound:
            self.status = PASS
        elif self.n_noneffective + self.n_uncertain >= self.lower_bound:
            self.status = CONDITIONAL_PASS
        else:
            self.status = FAIL

    @classmethod
    def from_count_report(cls, report):
        return cls(report.descriptor, report.a, report.n_off, report.n_on, report.n_uncertain)

    @property
    def exit_code(self):
        return {PASS: 0, CONDITIONAL_PASS: 2, FAIL: 1}[self.status]

    def to_dict(self):
        return {
            "tau": self.descriptor,
            "g": self.g,
            "translate": {"re": self.a.real.tolist(), "im": self.a.imag.tolist()},
            "n_noneffective": self.n_noneffective,
            "n_effective": self.n_effective,
            "n_uncertain": self.n_uncertain,
            "lower_bound": self.lower_bound,
            "status": self.status
        }

    def __repr__(self):
        return (
            f"SquareRootReport(g={self.g}, n_noneffective={self.n_noneffective}, "
            f"lower_bound={self.lower_bound}, status={self.status})"
        )

def count_noneffective_square_roots(tau, a, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Count the square roots of a translate whose twist has no sections

    Args:
        tau (RiemannMatrix): period matrix
        a (np.array): translate encoding one square root. size=[g]
        thresholds (Thresholds, optional): Default=Thresholds()
        eps_req (float, optional): requested theta accuracy. Default=1e-12

    Returns:
        report (SquareRootReport): counts and status against the 2^g lower bound
    """
    report = count_on_translate(tau, a, thresholds, eps_req)
    return SquareRootReport.from_count_report(report)

def count_effective_theta_characteristics(tau, thresholds=None, eps_req=DEFAULT_EPS_REQ):
    """ Number of theta characteristics with a nonzero section

    With M trivial and L the canonical bundle the square roots are the theta
    characteristics and the translate is a = 0. On a generic Jacobian this gives
    the odd ones: 6 for g = 2 and 28 for g = 3.
    """
    report = count_noneffective_square_roots(tau, np.zeros(tau.g), thresholds, eps_req)
    return report.n_effective
