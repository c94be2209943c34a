import logging
from typing import Tuple

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from witness.errors import WitnessError
from witness.linalg import DensityMatrix
from witness.matrix_io import readMatrixFile, MatrixFile

logger = logging.getLogger(settings.WITNESS_LOG_NAME)

HUMAN = "human"
MACHINE = "machine"

EXIT_ENTANGLED = 2

NO_VALIDATE_WARNING = ("Input was NOT validated as a density matrix (--no-validate); reductions and verdicts "
                       "may be meaningless.")


class WitnessCommand(BaseCommand):
    """
    Common flags of the witness commands. Subclasses implement ``run``; any WitnessError it raises is
    logged and turned into a CommandError, which exits with status 1.
    """

    def add_arguments(self, parser):
        parser.add_argument("--tol", type=float, default=None,
                            help=f"numerical tolerance (default: WITNESS_TOL = {settings.WITNESS_TOL:g})")
        parser.add_argument("--format", choices=[HUMAN, MACHINE], default=HUMAN, dest="outputFormat",
                            help="human-readable text or machine-readable JSON")
        parser.add_argument("--no-validate", action="store_true", dest="noValidate",
                            help="skip density matrix validation of the input")

    def handle(self, *args, **options):
        try:
            self.run(*args, **options)
        except WitnessError as e:
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]}: {e.adminMessage}")
            raise CommandError(e.userMessage)

    def run(self, *args, **options):
        raise NotImplementedError("subclasses of WitnessCommand must provide a run() method")

    @staticmethod
    def tolerance(options) -> float:
        tol = options.get("tol")
        if tol is None:
            return settings.WITNESS_TOL
        if tol < 0:
            raise CommandError(f"--tol must be non-negative, got {tol}")
        return tol

    def loadDensity(self, path, options) -> Tuple[DensityMatrix, MatrixFile, str]:
        """Reads and (unless --no-validate) validates a MatrixFile. Returns the state, the file and its digest."""
        matrixFile, digest = readMatrixFile(path)
        logger.info(f"read {path} ({matrixFile.nQubits} qubits, sha256 {digest})")
        validate = not options.get("noValidate")
        if not validate:
            logger.warning(f"{path}: validation skipped")
        # an explicit --tol overrides the file's own tolerance
        tol = options.get("tol")
        return matrixFile.toDensity(self.tolerance(options) if tol is not None or matrixFile.tol is None else None,
                                    validate), matrixFile, digest
