import logging

from django.conf import settings

from witness.management.base import WitnessCommand, MACHINE, EXIT_ENTANGLED, NO_VALIDATE_WARNING
from witness.matrix_io import ReportDocument
from witness.separability import witness, pureStateOf, pureFullySeparable

logger = logging.getLogger(settings.WITNESS_LOG_NAME)


class Command(WitnessCommand):
    help = ("Runs the entanglement witness on a 3- or 4-qubit density matrix. Exits with 2 if the state is "
            "entangled, 0 if the witness is inconclusive and 1 on errors.")

    def add_arguments(self, parser):
        parser.add_argument("path", help="MatrixFile to analyze, '-' for standard input")
        super().add_arguments(parser)

    def run(self, *args, **options):
        rho, matrixFile, digest = self.loadDensity(options["path"], options)
        report = witness(rho, rho.tol)
        pureSeparable = self.pureVerdict(rho)

        warnings = () if rho.validated else (NO_VALIDATE_WARNING,)
        document = ReportDocument.fromWitness(report, digest, matrixFile.measure(), rho.tol, rho.validated, warnings,
                                              pureSeparable)
        if options["outputFormat"] == MACHINE:
            self.stdout.write(document.dumps())
        else:
            self.stdout.write(document.render())

        logger.info(f"{options['path']}: {report.conclusion.value}")
        if report.entangled:
            raise SystemExit(EXIT_ENTANGLED)

    @staticmethod
    def pureVerdict(rho):
        """Exact decision for validated three-qubit inputs of rank one, None otherwise."""
        if rho.nQubits != 3 or not rho.validated:
            return None
        psi = pureStateOf(rho, settings.WITNESS_RANK_TOL)
        if psi is None:
            return None
        separable = pureFullySeparable(psi, settings.WITNESS_RANK_TOL, rho.tol)
        logger.info(f"rank-one input, pure-state test: {'fully separable' if separable else 'entangled'}")
        return separable
