import numpy as np
from tqdm import tqdm

from src.theta.core import DEFAULT_EPS_REQ, evaluate_batch, theta_constants
from src.theta.characteristics import all_characteristics, bit_vectors
from src.torsion.group import TorsionPoint, parity_counts
from src.divisor.membership import count_on_translate, classify_characteristic, verify_bounds
from src.divisor.projective import addition_residual, spanning_check, plane_check
from src.families.siegel import random_siegel, FamilySpec
from src.families.oracle import product_oracle
from src.families.newton import through_torsion_translate
from src.jacobian.square_roots import SquareRootReport, FAIL
from src.evaluation.metrics import finite_difference_error

PARITY_TOL = 1e-10
ADDITION_TOL = 1e-9
GRADIENT_TOL = 1e-6
GRADIENT_STEP = 1e-5
SECTION_TOL = 1e-6
HYPERPLANE_TOL = 1e-6

class SuiteResult:
    """ Outcome of one property suite

    Attributes:
        name (str): suite name
        passed (bool): every case passed
        stat (float): headline statistic, e.g. max residual
        num_cases (int): number of evaluated cases
        failures (list): short description of each failed case
    """
    def __init__(self, name):
        self.name = name
        self.passed = True
        self.stat = 0.
        self.num_cases = 0
        self.failures = []

    def record(self, passed, stat=0., case=""):
        self.num_cases += 1
        self.stat = max(self.stat, float(stat))
        if not passed:
            self.passed = False
            self.failures.append(case)

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "stat": self.stat,
            "num_cases": self.num_cases,
            "failures": self.failures
        }

    def __repr__(self):
        status = "passed" if self.passed else "FAILED"
        return f"{self.name}: {status}, stat={self.stat:.3e}, cases={self.num_cases}"

def random_points(tau, n, rng):
    """ Points tau u + v with u, v uniform in [-1/2, 1/2]^g. size=[n, g] """
    U = rng.uniform(-0.5, 0.5, size=(n, tau.g))
    V = rng.uniform(-0.5, 0.5, size=(n, tau.g))
    return U @ tau.tau.T + V

def _cases(g_list, seeds, desc):
    cases = [(g, s) for g in g_list for s in seeds]
    return tqdm(cases, desc=desc, leave=False)

def parity_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Odd theta constants vanish and a = 0 counts exactly the odd characteristics """
    result = SuiteResult("parity")
    for g, seed in _cases(g_list, seeds, "parity"):
        tau = random_siegel(g, seed)
        consts = theta_constants(tau, eps_req)
        S = max(abs(t.value) for t in consts)
        odd = max(abs(t.value) / S for t, c in zip(consts, all_characteristics(g)) if c.is_odd)
        result.record(odd <= PARITY_TOL, odd, f"g={g} seed={seed} odd constant {odd:.2e}")

        report = count_on_translate(tau, None, thresholds, eps_req)
        n_odd, _ = parity_counts(g)
        ok = report.n_on == n_odd and report.n_uncertain == 0
        result.record(ok, odd, f"g={g} seed={seed} n_on={report.n_on} n_uncertain={report.n_uncertain}")
    return result

def convention_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Translate classification at a = 0 agrees with the theta constant classification """
    result = SuiteResult("convention")
    for g, seed in _cases(g_list, seeds, "convention"):
        tau = random_siegel(g, seed)
        report = count_on_translate(tau, None, thresholds, eps_req)
        for v, chr in zip(report.verdicts, all_characteristics(g)):
            v_chr = classify_characteristic(tau, chr, thresholds, eps_req)
            result.record(
                v.state == v_chr.state, abs(v.residual - v_chr.residual),
                f"g={g} seed={seed} {chr}: {v.state} vs {v_chr.state}"
            )
    return result

def addition_suite(g_list, seeds, n=100, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ theta(z + w) theta(z - w) = sum_eps Theta[eps](z) Theta[eps](w) at random z, w """
    result = SuiteResult("addition")
    for g, seed in _cases(g_list, seeds, "addition"):
        tau = random_siegel(g, seed)
        rng = np.random.default_rng(seed)
        Z, W = random_points(tau, n, rng), random_points(tau, n, rng)
        residual = addition_residual(tau, Z, W, eps_req).max()
        result.record(residual <= ADDITION_TOL, residual, f"g={g} seed={seed} residual {residual:.2e}")
    return result

def gradient_suite(g_list, seeds, n=10, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Termwise gradient against central differences away from zeros """
    result = SuiteResult("gradient")
    for g, seed in _cases(g_list, seeds, "gradient"):
        tau = random_siegel(g, seed)
        rng = np.random.default_rng(seed)
        Z = random_points(tau, n, rng)
        out = evaluate_batch(Z, tau, eps_req=eps_req, gradient=True)

        fd = np.zeros_like(out.grad)
        for j in range(g):
            e = np.zeros(g)
            e[j] = GRADIENT_STEP
            plus = evaluate_batch(Z + e, tau, eps_req=eps_req).value
            minus = evaluate_batch(Z - e, tau, eps_req=eps_req).value
            fd[:, j] = (plus - minus) / (2 * GRADIENT_STEP)

        # skip components near a zero of the gradient
        mask = np.abs(out.grad) > 0.1 * out.scale[:, None]
        err = finite_difference_error(out.grad, fd)[mask]
        err = err.max() if len(err) > 0 else 0.
        result.record(err <= GRADIENT_TOL, err, f"g={g} seed={seed} relative error {err:.2e}")
    return result

def radius_suite(g_list, seeds, n=10, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Doubling the truncation radius moves every value by less than the reported errors """
    result = SuiteResult("radius")
    for g, seed in _cases(g_list, seeds, "radius"):
        tau = random_siegel(g, seed)
        rng = np.random.default_rng(seed)
        Z = random_points(tau, n, rng)
        chr = all_characteristics(g)[rng.integers(4 ** g)]
        out = evaluate_batch(Z, tau, chr, eps_req)
        out_2 = evaluate_batch(Z, tau, chr, eps_req, radius=2 * out.radius)
        change = np.abs(out_2.value - out.value)
        ratio = (change / (out.err + out_2.err)).max()
        result.record(ratio <= 1, ratio, f"g={g} seed={seed} change/err {ratio:.2e}")
    return result

def spanning_suite(g_list, seeds, eps_req=DEFAULT_EPS_REQ, coset=None, **kwargs):
    """ Second order images of every coset H_b (or of one coset index) span the projective space """
    result = SuiteResult("spanning")
    for g, seed in _cases(g_list, seeds, "spanning"):
        tau = random_siegel(g, seed)
        cosets = bit_vectors(g) if coset is None else bit_vectors(g)[[coset]]
        for b in cosets:
            ratio, passed = spanning_check(tau, b, eps_req)
            # stat tracks the worst case as 1 - ratio
            result.record(passed, 1 - ratio, f"g={g} seed={seed} coset {b.tolist()} ratio {ratio:.2e}")
    return result

def hyperplane_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ On points of a product at a = 0 lie on the hyperplane cut by Theta[eps](0) """
    result = SuiteResult("hyperplane")
    for g, seed in _cases(g_list, seeds, "hyperplane"):
        tau = FamilySpec("product", g, seed).build()
        report = count_on_translate(tau, None, thresholds, eps_req)
        ok = report.hyperplane_rank <= 2 ** g - 1 and report.hyperplane_violation <= HYPERPLANE_TOL
        result.record(
            ok, report.hyperplane_violation,
            f"g={g} seed={seed} rank {report.hyperplane_rank} violation {report.hyperplane_violation:.2e}"
        )
    return result

def plane_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Sections vanish on the On points of translates through a torsion point """
    result = SuiteResult("plane")
    for g, seed in _cases(g_list, seeds, "plane"):
        tau = random_siegel(g, seed)
        rng = np.random.default_rng(seed)
        x = TorsionPoint.from_index(int(rng.integers(4 ** g)), g)
        a = through_torsion_translate(tau, x, seed)
        report = count_on_translate(tau, a, thresholds, eps_req)
        residual, rank, passed = plane_check(tau, a, report.on_points, eps_req)

        ok = x.index in report.on_indices and residual <= SECTION_TOL
        if not report.symmetric:
            ok = ok and passed
        result.record(ok, residual, f"g={g} seed={seed} x={x.index} rank {rank} residual {residual:.2e}")
    return result

def product_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, torsion_translates=True, **kwargs):
    """ Numeric On sets of products equal the combinatorial oracle """
    result = SuiteResult("product")
    for g, seed in _cases(g_list, seeds, "product"):
        tau = FamilySpec("product", g, seed).build()
        shifts = [None]
        if torsion_translates:
            shifts += [TorsionPoint.from_index(i, g) for i in range(4 ** g)]
        for y in shifts:
            a = None if y is None else y.coordinates(tau)
            report = count_on_translate(tau, a, thresholds, eps_req)
            expected = {x.index for x in product_oracle(g, y)}
            ok = set(report.on_indices) == expected and report.n_uncertain == 0
            label = "zero" if y is None else y.index
            result.record(ok, report.max_residual_on, f"g={g} seed={seed} translate {label}")
    return result

def bounds_suite(g_list, seeds, thresholds=None, eps_req=DEFAULT_EPS_REQ, **kwargs):
    """ Theorem bounds and the square root lower bound on random and constructed translates """
    result = SuiteResult("bounds")
    for g, seed in _cases(g_list, seeds, "bounds"):
        tau = random_siegel(g, seed)
        rng = np.random.default_rng(seed)
        x = TorsionPoint.from_index(int(rng.integers(4 ** g)), g)
        translates = {
            "zero": None,
            "random": random_points(tau, 1, rng)[0],
            "through": through_torsion_translate(tau, x, seed)
        }
        for kind, a in translates.items():
            report = count_on_translate(tau, a, thresholds, eps_req)
            verdict = verify_bounds(report)
            roots = SquareRootReport.from_count_report(report)
            ok = verdict.passed and roots.status != FAIL
            result.record(ok, report.n_on, f"g={g} seed={seed} {kind}: {verdict.messages}")
    return result

SUITES = {
    "parity": parity_suite,
    "convention": convention_suite,
    "addition": addition_suite,
    "gradient": gradient_suite,
    "radius": radius_suite,
    "spanning": spanning_suite,
    "hyperplane": hyperplane_suite,
    "plane": plane_suite,
    "product": product_suite,
    "bounds": bounds_suite
}

def run_suites(names, g_list, seeds, **kwargs):
    """ Run the named suites, "all" expands to every suite """
    if "all" in names:
        names = list(SUITES.keys())
    return [SUITES[name](g_list, seeds, **kwargs) for name in names]
