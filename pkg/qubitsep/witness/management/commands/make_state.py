from typing import List

import numpy as np

from witness.errors import BadParams, ParseError
from witness.linalg import DensityMatrix
from witness.management.base import WitnessCommand
from witness.matrix_io import MatrixFile, readMatrixFile
from witness import states

USAGE = {
    "ghz": "ghz [--qubits 3|4]",
    "werner": "werner --x X   (0 <= X <= 1)",
    "embed": "embed --way 1..6 (--from MATRIXFILE | --bell)",
    "molecule": "molecule --p-ab P --p-ac P --p-bc P   (weights in [0, 1] summing to 1)",
    "upb": "upb",
    "product": "product --factor RE0,IM0,RE1,IM1 (3 or 4 times)",
    "w": "w",
    "mixed": "mixed [--qubits 3|4]",
}


def parseFactor(text: str) -> np.ndarray:
    try:
        re0, im0, re1, im1 = (float(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"--factor {text}", "expected four comma-separated numbers RE0,IM0,RE1,IM1")
    return np.array([complex(re0, im0), complex(re1, im1)])


class Command(WitnessCommand):
    help = "Writes a state of one of the built-in families as a MatrixFile to standard output."

    def add_arguments(self, parser):
        parser.add_argument("family", choices=list(USAGE))
        parser.add_argument("--qubits", type=int, default=3)
        parser.add_argument("--x", type=float)
        parser.add_argument("--way", type=int)
        parser.add_argument("--from", dest="fromPath")
        parser.add_argument("--bell", action="store_true")
        parser.add_argument("--p-ab", type=float, dest="pAB")
        parser.add_argument("--p-ac", type=float, dest="pAC")
        parser.add_argument("--p-bc", type=float, dest="pBC")
        parser.add_argument("--factor", action="append", default=[], dest="factors")
        super().add_arguments(parser)

    def run(self, *args, **options):
        family = options["family"]
        rho = self.build(family, options)
        self.stdout.write(MatrixFile.fromDensity(rho).dumps())

    def build(self, family: str, options) -> DensityMatrix:
        def require(*names: str):
            missing = [name for name in names if options.get(name) is None]
            if missing:
                raise BadParams(f"Missing parameters for '{family}'. Usage: make_state {USAGE[family]}")

        tol = self.tolerance(options)
        if family == "ghz":
            return states.ghz(self.qubits(family, options))
        elif family == "werner":
            require("x")
            return states.wernerEmbedded(options["x"])
        elif family == "embed":
            require("way")
            return states.embedBipartite(self.bipartite(family, options), options["way"])
        elif family == "molecule":
            require("pAB", "pAC", "pBC")
            return states.moleculeState(states.MoleculeParams(options["pAB"], options["pAC"], options["pBC"], tol))
        elif family == "upb":
            return states.upbState()
        elif family == "product":
            factors: List[np.ndarray] = [parseFactor(f) for f in options["factors"]]
            if len(factors) not in (3, 4):
                raise BadParams(f"'product' takes 3 or 4 factors, got {len(factors)}. "
                                f"Usage: make_state {USAGE[family]}")
            return states.productPure(*factors, tol=tol)
        elif family == "w":
            return states.wState()
        else:
            return states.maximallyMixed(self.qubits(family, options))

    @staticmethod
    def qubits(family: str, options) -> int:
        if options["qubits"] not in (3, 4):
            raise BadParams(f"--qubits must be 3 or 4. Usage: make_state {USAGE[family]}")
        return options["qubits"]

    def bipartite(self, family: str, options) -> DensityMatrix:
        if options["bell"] == bool(options["fromPath"]):
            raise BadParams(f"Give exactly one of --from and --bell. Usage: make_state {USAGE[family]}")
        if options["bell"]:
            return states.bellState()
        r, _, _ = self.loadDensity(options["fromPath"], options)
        return r
