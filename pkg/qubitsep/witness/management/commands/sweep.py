import json

from django.conf import settings

from witness.management.base import WitnessCommand, MACHINE
from witness.sweep import runSweep, SweepFamily


class Command(WitnessCommand):
    help = "Evaluates the witness along a one-parameter family and reports where its conclusion flips."

    def add_arguments(self, parser):
        parser.add_argument("family", choices=SweepFamily.values)
        parser.add_argument("--start", type=float, default=0.0)
        parser.add_argument("--stop", type=float, default=1.0)
        parser.add_argument("--steps", type=int, default=101)
        parser.add_argument("--width", type=float, default=None,
                            help=f"final bracket width (default: SWEEP_BISECTION_WIDTH = "
                                 f"{settings.SWEEP_BISECTION_WIDTH:g})")
        super().add_arguments(parser)

    def run(self, *args, **options):
        width = options["width"] if options["width"] is not None else settings.SWEEP_BISECTION_WIDTH
        result = runSweep(options["family"], options["start"], options["stop"], options["steps"],
                          self.tolerance(options), width, settings.SWEEP_TIMEOUT)

        if options["outputFormat"] == MACHINE:
            self.stdout.write(json.dumps({
                "family": result.family,
                "points": [p.toDict() for p in result.points],
                "thresholds": [{"low": t.low, "high": t.high, "estimate": t.estimate,
                                "entangled_above": t.entangledAbove} for t in result.thresholds],
            }, indent=1))
        else:
            self.stdout.write(result.render())
