import sys
import warnings
import numpy as np
from tqdm import tqdm

from src.torsion.group import TorsionPoint
from src.divisor.membership import Thresholds, count_on_translate, verify_bounds
from src.families.siegel import FamilySpec, MIN_EIG
from src.families.newton import through_torsion_translate
from src.experiments.config import (
    ExperimentParser, ConfigError, EXIT_USAGE, MAX_EPS_REQ, add_numerics_args
)
from src.experiments.suites import random_points
from src.experiments.reports import write_csv
from src.theta.core import MIN_EPS_REQ

TRANSLATES = ["zero", "torsion", "through", "random"]

def parse_args(argv=None):
    parser = ExperimentParser(description="sample period matrices and translates, one csv row each")
    parser.add_argument("--family", type=str, choices=["random", "product", "near_product"],
        default="random", help="period matrix family, default=random")
    parser.add_argument("--g", type=int, default=2, help="dimension for random families, default=2")
    parser.add_argument("--g_min", type=int, default=1, help="first dimension of product sweeps, default=1")
    parser.add_argument("--g_max", type=int, default=4, help="last dimension of product sweeps, default=4")
    parser.add_argument("--num_samples", type=int, default=100, help="samples per dimension, default=100")
    parser.add_argument("--seed", type=int, default=0, help="first seed, default=0")
    parser.add_argument("--min_eig", type=float, default=MIN_EIG,
        help="eigenvalue floor of Im tau, default=0.2")
    parser.add_argument("--perturbation", type=float, default=0.05,
        help="entry size of the near_product perturbation, default=0.05")
    parser.add_argument("--translate", type=str, choices=TRANSLATES, default="zero",
        help="translate per sample, default=zero")
    add_numerics_args(parser)
    parser.add_argument("--csv", type=str, default=None, help="output csv, default=stdout")
    arglist = parser.parse_args(argv)
    return arglist

def _validate(arglist):
    if not MIN_EPS_REQ <= arglist.eps_req <= MAX_EPS_REQ:
        raise ConfigError(f"eps_req must lie in [{MIN_EPS_REQ}, {MAX_EPS_REQ}], got {arglist.eps_req}")
    if arglist.num_samples < 1:
        raise ConfigError(f"num_samples must be positive, got {arglist.num_samples}")
    if arglist.family == "random":
        g_list = [arglist.g]
    else:
        g_list = list(range(arglist.g_min, arglist.g_max + 1))
    if len(g_list) == 0 or min(g_list) < 1:
        raise ConfigError(f"invalid dimensions {g_list}")
    try:
        thresholds = Thresholds(arglist.on_threshold, arglist.off_threshold)
    except ValueError as e:
        raise ConfigError(str(e))
    return g_list, thresholds

def sample_translate(tau, kind, seed):
    """ Translate of one sample, drawn from a stream of the sample seed apart from the family's """
    rng = np.random.default_rng([seed, 1])
    if kind == "zero":
        return np.zeros(tau.g, dtype=np.complex128), None
    index = int(rng.integers(4 ** tau.g))
    x = TorsionPoint.from_index(index, tau.g)
    if kind == "torsion":
        return x.coordinates(tau), index
    if kind == "through":
        return through_torsion_translate(tau, x, seed), index
    return random_points(tau, 1, rng)[0], None

def main(arglist):
    try:
        g_list, thresholds = _validate(arglist)
    except ConfigError as e:
        print(f"explore: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    rows = []
    failures = []
    max_on = {}
    cases = [(g, arglist.seed + i) for g in g_list for i in range(arglist.num_samples)]
    for g, seed in tqdm(cases, desc="explore", file=sys.stderr):
        family = FamilySpec(
            arglist.family, g, seed, arglist.min_eig, perturbation=arglist.perturbation
        )
        try:
            tau = family.build()
            a, index = sample_translate(tau, arglist.translate, seed)
            meta = {
                "family": family.kind, "seed": seed,
                "translate_kind": arglist.translate, "translate_index": index
            }
            report = count_on_translate(tau, a, thresholds, arglist.eps_req, meta=meta)
        except (ValueError, RuntimeError) as e:
            warnings.warn(f"sample g={g} seed={seed} failed: {e}", RuntimeWarning)
            failures.append((g, seed))
            continue

        verdict = verify_bounds(report)
        rows.append(report.csv_row(verdict.sound))
        max_on[g] = max(max_on.get(g, 0), report.n_on)

    write_csv(rows, arglist.csv)
    for g, n in max_on.items():
        print(f"g={g}: max n_on={n}, bound {4 ** g - 2 ** g}, product value {4 ** g - 3 ** g}", file=sys.stderr)
    if len(failures) > 0:
        print(f"{len(failures)} of {len(cases)} samples failed: {failures}", file=sys.stderr)
        return 1
    return 0

if __name__ == "__main__":
    arglist = parse_args()
    sys.exit(main(arglist))
