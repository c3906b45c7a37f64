import os
import sys

from src.experiments.config import (
    ExperimentParser, ConfigError, EXIT_USAGE, MAX_EPS_REQ, bool_, str_list_, add_numerics_args
)
from src.experiments.suites import SUITES, run_suites
from src.experiments.reports import save_args, save_json
from src.divisor.membership import Thresholds
from src.theta.core import MIN_EPS_REQ

def parse_args(argv=None):
    parser = ExperimentParser(description="run numerical property suites")
    parser.add_argument("--check", type=str_list_, default=["all"],
        help=f"comma separated suites from all,{','.join(SUITES.keys())}, default=all")
    parser.add_argument("--g_list", type=str_list_, default=["1", "2", "3"],
        help="dimensions to test, default=1,2,3")
    parser.add_argument("--g", type=int, default=None, help="single dimension, overrides g_list")
    parser.add_argument("--num_seeds", type=int, default=20, help="period matrices per g, default=20")
    parser.add_argument("--seed", type=int, default=0, help="first seed, default=0")
    parser.add_argument("--n", type=int, default=100,
        help="random points per period matrix for addition, gradient and radius, default=100")
    parser.add_argument("--coset", type=int, default=None,
        help="restrict the spanning check to one coset index, default=None")
    parser.add_argument("--torsion_translates", type=bool_, default=True,
        help="include all torsion translates in the product check, default=True")
    add_numerics_args(parser)
    parser.add_argument("--save", type=bool_, default=False)
    parser.add_argument("--save_path", type=str, default="../exp/verify")
    arglist = parser.parse_args(argv)
    return arglist

def _validate(arglist):
    unknown = [c for c in arglist.check if c != "all" and c not in SUITES]
    if len(unknown) > 0:
        raise ConfigError(f"unknown checks {unknown}")
    if not MIN_EPS_REQ <= arglist.eps_req <= MAX_EPS_REQ:
        raise ConfigError(f"eps_req must lie in [{MIN_EPS_REQ}, {MAX_EPS_REQ}], got {arglist.eps_req}")
    try:
        g_list = [arglist.g] if arglist.g is not None else [int(g) for g in arglist.g_list]
        thresholds = Thresholds(arglist.on_threshold, arglist.off_threshold)
    except ValueError as e:
        raise ConfigError(str(e))
    if any(g < 1 for g in g_list):
        raise ConfigError(f"dimensions must be positive, got {g_list}")
    if arglist.coset is not None and any(not 0 <= arglist.coset < 2 ** g for g in g_list):
        raise ConfigError(f"coset index {arglist.coset} out of range for g in {g_list}")
    return g_list, thresholds

def main(arglist):
    try:
        g_list, thresholds = _validate(arglist)
    except ConfigError as e:
        print(f"verify: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    seeds = list(range(arglist.seed, arglist.seed + arglist.num_seeds))
    print(f"checks: {arglist.check}, g: {g_list}, seeds: {seeds[0]}..{seeds[-1]}")
    try:
        results = run_suites(
            arglist.check, g_list, seeds, n=arglist.n, thresholds=thresholds,
            eps_req=arglist.eps_req, coset=arglist.coset,
            torsion_translates=arglist.torsion_translates
        )
    except RuntimeError as e:
        print(f"verify: numerical failure: {e}", file=sys.stderr)
        return 1

    for result in results:
        print(result)
        for case in result.failures:
            print(f"  failed: {case}")

    if arglist.save:
        save_args(arglist, arglist.save_path)
        save_json([r.to_dict() for r in results], os.path.join(arglist.save_path, "verify.json"))
        print(f"\nresults saved at {arglist.save_path}")
    return 0 if all(r.passed for r in results) else 1

if __name__ == "__main__":
    arglist = parse_args()
    sys.exit(main(arglist))
