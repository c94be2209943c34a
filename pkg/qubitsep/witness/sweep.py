"""
One-parameter sweeps of a state family through the witness, locating where its conclusion flips.

Grid points run as a Celery group (in-process while CELERY_TASK_ALWAYS_EAGER is set); every flip between
neighbouring grid points is then refined by bisection in-process.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from celery import group
from django.conf import settings
from django.db import models

from witness.errors import BadRange
from witness.linalg import DensityMatrix, DEFAULT_TOL
from witness.separability import WitnessReport, Conclusion, witness
from witness.states import wernerEmbedded, moleculeState, MoleculeParams

logger = logging.getLogger(settings.WITNESS_LOG_NAME)

DEFAULT_BISECTION_WIDTH = 1e-6


class SweepFamily(models.TextChoices):
    WERNER = "werner", "x R + (1 - x) I/8"
    # path p_AB = t, p_AC = 0, p_BC = 1 - t
    MOLECULE = "molecule", "molecule p_AB = t, p_BC = 1 - t"


FAMILY_DOMAINS: Dict[str, Tuple[float, float]] = {
    SweepFamily.WERNER: (0.0, 1.0),
    SweepFamily.MOLECULE: (0.0, 1.0),
}


def familyState(family: str, parameter: float) -> DensityMatrix:
    family = SweepFamily(family)
    if family == SweepFamily.WERNER:
        return wernerEmbedded(parameter)
    return moleculeState(MoleculeParams(parameter, 0.0, 1.0 - parameter))


@dataclass(frozen=True)
class SweepPoint:
    parameter: float
    minPtEigenvalues: Dict[str, float]
    conclusion: str

    @property
    def minimum(self) -> float:
        return min(self.minPtEigenvalues.values())

    @property
    def entangled(self) -> bool:
        return self.conclusion == Conclusion.ENTANGLED

    @classmethod
    def fromReport(cls, parameter: float, report: WitnessReport) -> "SweepPoint":
        return cls(float(parameter), {str(v.label): v.minPtEigenvalue for v in report.verdicts},
                   report.conclusion.value)

    def toDict(self) -> dict:
        return {"parameter": self.parameter, "min_pt_eigenvalues": self.minPtEigenvalues,
                "conclusion": self.conclusion}

    @classmethod
    def fromDict(cls, document: dict) -> "SweepPoint":
        return cls(float(document["parameter"]), dict(document["min_pt_eigenvalues"]), document["conclusion"])


@dataclass(frozen=True)
class Threshold:
    low: float
    high: float
    entangledAbove: bool

    @property
    def estimate(self) -> float:
        return (self.low + self.high) / 2

    @property
    def width(self) -> float:
        return self.high - self.low


@dataclass(frozen=True)
class SweepResult:
    family: str
    points: Tuple[SweepPoint, ...]
    thresholds: Tuple[Threshold, ...]

    def table(self) -> pd.DataFrame:
        records = []
        for point in self.points:
            record = {"parameter": point.parameter}
            record.update(point.minPtEigenvalues)
            record["minimum"] = point.minimum
            record["conclusion"] = point.conclusion
            records.append(record)
        return pd.DataFrame.from_records(records)

    def render(self) -> str:
        lines = [self.table().to_string(index=False, float_format=lambda v: f"{v: .6f}"), ""]
        if not self.thresholds:
            conclusions = sorted({p.conclusion for p in self.points})
            lines.append(f"no threshold found, all points {'/'.join(conclusions)}")
        for threshold in self.thresholds:
            direction = "entangled above" if threshold.entangledAbove else "entangled below"
            lines.append(f"threshold {threshold.estimate:.6f} +- {threshold.width / 2:.1e} ({direction})")
        return "\n".join(lines)


def bisect(entangled: Callable[[float], bool], low: float, high: float,
           width: float = DEFAULT_BISECTION_WIDTH) -> Threshold:
    """Narrows a bracket whose ends disagree on ``entangled`` until it is at most ``width`` wide."""
    lowSide = entangled(low)
    if entangled(high) == lowSide:
        raise BadRange(f"[{low}, {high}] does not bracket a change of conclusion")
    while high - low > width:
        middle = (low + high) / 2
        if entangled(middle) == lowSide:
            low = middle
        else:
            high = middle
    return Threshold(low, high, entangledAbove=not lowSide)


def checkRange(family: str, start: float, stop: float, steps: int) -> None:
    try:
        low, high = FAMILY_DOMAINS[SweepFamily(family)]
    except ValueError:
        raise BadRange(f"Unknown sweep family '{family}'. Choose from {', '.join(SweepFamily.values)}.")
    if not (np.isfinite(start) and np.isfinite(stop)) or start >= stop:
        raise BadRange(f"Sweep range [{start}, {stop}] must be finite with start < stop.")
    if start < low or stop > high:
        raise BadRange(f"Sweep range [{start}, {stop}] leaves the {family} domain [{low}, {high}].")
    if steps < 2:
        raise BadRange(f"A sweep needs at least 2 steps, got {steps}.")


def evaluateGrid(family: str, parameters: List[float], tol: float, timeout: Optional[float] = None) -> List[SweepPoint]:
    from witness.tasks import evaluateSweepPoint

    result = group(evaluateSweepPoint.s(family, parameter, tol) for parameter in parameters).apply_async()
    points = [SweepPoint.fromDict(r.get(timeout=timeout)) for r in result.results]
    return sorted(points, key=lambda p: p.parameter)


def runSweep(family: str, start: float, stop: float, steps: int, tol: float = DEFAULT_TOL,
             width: float = DEFAULT_BISECTION_WIDTH, timeout: Optional[float] = None) -> SweepResult:
    """
    Evaluates the witness at ``steps`` evenly spaced parameters in [start, stop] and bisects every
    neighbouring pair with different conclusions down to ``width``.

    :raises BadRange: for an unknown family, an empty or out-of-domain range or fewer than 2 steps
    """
    checkRange(family, start, stop, steps)
    parameters = [float(t) for t in np.linspace(start, stop, steps)]
    logger.info(f"sweeping {family} over [{start}, {stop}] in {steps} steps")
    points = evaluateGrid(family, parameters, tol, timeout)

    def entangled(parameter: float) -> bool:
        return witness(familyState(family, parameter), tol).entangled

    thresholds = []
    for left, right in zip(points, points[1:]):
        if left.entangled != right.entangled:
            logger.info(f"{family}: conclusion flips in [{left.parameter}, {right.parameter}]")
            threshold = bisect(entangled, left.parameter, right.parameter, width)
            logger.info(f"{family}: threshold {threshold.estimate!r} (width {threshold.width:.2e})")
            thresholds.append(threshold)

    return SweepResult(SweepFamily(family).value, tuple(points), tuple(thresholds))
