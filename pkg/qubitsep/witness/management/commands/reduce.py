from witness.management.base import WitnessCommand
from witness.matrix_io import MatrixFile
from witness.reductions import reduce


class Command(WitnessCommand):
    help = "Writes one bipartite reduction of a 3- or 4-qubit density matrix as a 2-qubit MatrixFile."

    def add_arguments(self, parser):
        parser.add_argument("path", help="MatrixFile to reduce, '-' for standard input")
        parser.add_argument("--label", required=True, help='reduction label, e.g. "A,B", "A,BC" or "AB,CD"')
        super().add_arguments(parser)

    def run(self, *args, **options):
        rho, _, _ = self.loadDensity(options["path"], options)
        reduced = reduce(rho, options["label"])
        self.stdout.write(MatrixFile.fromDensity(reduced).dumps())
