import os
import sys
import numpy as np

from src.divisor.membership import count_on_translate, verify_bounds
from src.jacobian.square_roots import SquareRootReport, FAIL
from src.experiments.config import (
    ExperimentParser, ExperimentConfig, ConfigError, EXIT_USAGE, bool_,
    add_family_args, add_translate_args, add_numerics_args
)
from src.experiments.reports import save_args, save_json, write_csv

def parse_args(argv=None):
    parser = ExperimentParser(description="count torsion points on a translated theta divisor")
    add_family_args(parser)
    add_translate_args(parser)
    add_numerics_args(parser)
    parser.add_argument("--irreducible", type=bool_, default=False,
        help="assert Theta is irreducible to enable the stronger bound, default=False")
    parser.add_argument("--save", type=bool_, default=False)
    parser.add_argument("--save_path", type=str, default="../exp/count")
    parser.add_argument("--csv", type=str, default=None,
        help="append the report row to this csv file, default=None")
    arglist = parser.parse_args(argv)
    return arglist

def main(arglist):
    try:
        config = ExperimentConfig.from_args(arglist, "count")
        tau = config.family.build()
        a, meta = config.translate.build(tau)
    except (ConfigError, ValueError, OSError) as e:
        print(f"count: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    meta.update({"family": config.family.kind, "seed": config.family.seed})

    print(f"tau: {tau.descriptor}, g={tau.g}, min eig Im tau={tau.min_eig:.3f}")
    print(f"translate: {meta['translate_kind']}, a={np.round(a, 6).tolist()}")
    try:
        report = count_on_translate(tau, a, config.thresholds, config.eps_req, meta=meta)
    except RuntimeError as e:
        print(f"count: numerical failure: {e}", file=sys.stderr)
        return 1
    verdict = verify_bounds(report, irreducible=config.irreducible)
    roots = SquareRootReport.from_count_report(report)

    print(report)
    print(f"on indices: {report.on_indices}")
    if report.n_uncertain > 0:
        print(f"uncertain indices: {report.uncertain_indices}")
    for name, (value, bound, passed) in verdict.checks.items():
        print(f"{name}: {value} vs {bound} {'ok' if passed else 'VIOLATED'}")
    for msg in verdict.messages:
        print(msg)
    print(roots)

    if arglist.save:
        save_args(arglist, arglist.save_path)
        save_json({
            "count": report.to_dict(),
            "bounds": verdict.to_dict(),
            "square_roots": roots.to_dict()
        }, os.path.join(arglist.save_path, "report.json"))
        print(f"\nreport saved at {arglist.save_path}")
    if arglist.csv is not None:
        write_csv([report.csv_row(verdict.sound)], arglist.csv, append=True)

    if not verdict.passed or roots.status == FAIL:
        return 1
    if report.n_uncertain > 0 or not verdict.sound:
        return 2
    return 0

if __name__ == "__main__":
    arglist = parse_args()
    sys.exit(main(arglist))
