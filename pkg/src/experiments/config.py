import sys
import argparse
import numpy as np

from src.theta.core import DEFAULT_EPS_REQ, MIN_EPS_REQ
from src.divisor.membership import Thresholds, ON_THRESHOLD, OFF_THRESHOLD
from src.families.siegel import FamilySpec, MIN_EIG
from src.families.newton import through_torsion_translate
from src.torsion.group import TorsionPoint

EXIT_USAGE = 64
MAX_EPS_REQ = 1e-3

class ConfigError(ValueError):
    """ Invalid experiment configuration or input file """

class ExperimentParser(argparse.ArgumentParser):
    """ Argument parser exiting with the usage code on malformed flags """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")

bool_ = lambda x: x if isinstance(x, bool) else x == "True"
str_list_ = lambda x: [s for s in x.replace(" ", "").split(",") if s != ""]

def parse_complex(s):
    """ Parse "2i", "-i", "0.5+1.2i" or "0.3" into a complex number """
    s = s.replace(" ", "")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {s!r}")

def parse_complex_list(s):
    return [parse_complex(t) for t in str_list_(s)]

def add_family_args(parser):
    parser.add_argument("--random", type=bool_, nargs="?", const=True, default=False,
        help="sample a random period matrix, default=False")
    parser.add_argument("--product", type=str, default=None,
        help="elliptic factors of a product, e.g. i,2i, default=None")
    parser.add_argument("--tau_file", type=str, default=None,
        help="period matrix json file, default=None")
    parser.add_argument("--g", type=int, default=None, help="dimension for random families")
    parser.add_argument("--seed", type=int, default=0, help="family seed, default=0")
    parser.add_argument("--min_eig", type=float, default=MIN_EIG,
        help="eigenvalue floor of Im tau for random families, default=0.2")

def add_numerics_args(parser):
    parser.add_argument("--eps_req", type=float, default=DEFAULT_EPS_REQ,
        help="requested theta accuracy, default=1e-12")
    parser.add_argument("--on_threshold", type=float, default=ON_THRESHOLD,
        help="residual below which a point is On, default=1e-8")
    parser.add_argument("--off_threshold", type=float, default=OFF_THRESHOLD,
        help="residual above which a point is Off, default=1e-5")

def add_translate_args(parser):
    parser.add_argument("--translate", type=str, choices=TranslateSpec.kinds, default="zero",
        help="translate kind, default=zero")
    parser.add_argument("--index", type=int, default=None,
        help="torsion index for torsion and through translates, default=None")
    parser.add_argument("--translate_seed", type=int, default=0,
        help="newton seed for through translates, default=0")
    parser.add_argument("--vector", type=str, default=None,
        help="explicit translate, e.g. 0.1+0.2i,0.3i, default=None")

class TranslateSpec:
    """ Translate a of t_a^* Theta

    Attributes:
        kind (str): zero, torsion (a = x), through (x on t_a^* Theta) or explicit
        index (int, None): torsion index for torsion and through
        seed (int): newton seed for through
        vector (list, None): explicit complex translate
    """
    kinds = ["zero", "torsion", "through", "explicit"]

    def __init__(self, kind="zero", index=None, seed=0, vector=None):
        if kind not in self.kinds:
            raise ConfigError(f"unknown translate kind {kind}, choose from {self.kinds}")
        if kind in ["torsion", "through"] and index is None:
            raise ConfigError(f"translate {kind} needs --index")
        if kind == "explicit" and vector is None:
            raise ConfigError("translate explicit needs --vector")
        self.kind = kind
        self.index = index
        self.seed = seed
        self.vector = vector

    def validate(self, g):
        if self.index is not None and not 0 <= self.index < 4 ** g:
            raise ConfigError(f"torsion index {self.index} out of range [0, {4 ** g}) for g={g}")
        if self.kind == "explicit" and len(self.vector) != g:
            raise ConfigError(f"translate has length {len(self.vector)}, expected g={g}")

    def build(self, tau):
        """
        Returns:
            a (np.array): translate. size=[g]
            meta (dict): translate_kind and translate_index for reports
        """
        self.validate(tau.g)
        meta = {"translate_kind": self.kind, "translate_index": self.index}
        if self.kind == "zero":
            a = np.zeros(tau.g, dtype=np.complex128)
        elif self.kind == "torsion":
            a = TorsionPoint.from_index(self.index, tau.g).coordinates(tau)
        elif self.kind == "through":
            x = TorsionPoint.from_index(self.index, tau.g)
            a = through_torsion_translate(tau, x, self.seed)
        else:
            a = np.asarray(self.vector, dtype=np.complex128)
        return a, meta

class ExperimentConfig:
    """ Validated configuration shared by the scripts

    Attributes:
        command (str): count, verify or explore
        family (FamilySpec, None): period matrix source
        translate (TranslateSpec, None): translate
        thresholds (Thresholds): membership thresholds
        eps_req (float): requested theta accuracy
        irreducible (bool): caller asserts Theta is irreducible
        save_path (str, None): output directory
    """
    def __init__(
        self, command, family=None, translate=None, thresholds=None,
        eps_req=DEFAULT_EPS_REQ, irreducible=False, save_path=None
        ):
        self.command = command
        self.family = family
        self.translate = translate
        self.thresholds = Thresholds() if thresholds is None else thresholds
        self.eps_req = eps_req
        self.irreducible = irreducible
        self.save_path = save_path
        self.validate()

    def validate(self):
        if not MIN_EPS_REQ <= self.eps_req <= MAX_EPS_REQ:
            raise ConfigError(f"eps_req must lie in [{MIN_EPS_REQ}, {MAX_EPS_REQ}], got {self.eps_req}")
        if self.family is not None and self.translate is not None and self.family.g is not None:
            self.translate.validate(self.family.g)

    @classmethod
    def from_args(cls, arglist, command):
        """ Build from parsed flags, raising ConfigError on any inconsistency """
        family = family_from_args(arglist)
        translate = None
        if hasattr(arglist, "translate"):
            vector = None if arglist.vector is None else parse_complex_list(arglist.vector)
            translate = TranslateSpec(
                arglist.translate, arglist.index, arglist.translate_seed, vector
            )
        try:
            thresholds = Thresholds(arglist.on_threshold, arglist.off_threshold)
        except ValueError as e:
            raise ConfigError(str(e))
        return cls(
            command, family, translate, thresholds, arglist.eps_req,
            getattr(arglist, "irreducible", False), getattr(arglist, "save_path", None)
        )

def family_from_args(arglist):
    """ FamilySpec from --random / --product / --tau_file, exactly one allowed """
    sources = [bool(arglist.random), arglist.product is not None, arglist.tau_file is not None]
    if sum(sources) != 1:
        raise ConfigError("give exactly one of --random, --product, --tau_file")
    try:
        if arglist.random:
            return FamilySpec("random", arglist.g, arglist.seed, arglist.min_eig)
        if arglist.product is not None:
            taus = parse_complex_list(arglist.product)
            return FamilySpec("product", arglist.g, arglist.seed, taus=taus)
        return FamilySpec("file", arglist.g, arglist.seed, path=arglist.tau_file)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(str(e))
