import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from django.conf import settings
from django.db import models

from witness.errors import WrongArity, WrongDim
from witness.linalg import (DensityMatrix, PureState, ComplexMatrix, asComplexMatrix, hermitianEigenvalues, matrixRank,
                            DEFAULT_TOL, DEFAULT_RANK_TOL)
from witness.reductions import ReductionLabel, ReductionSet, reduceAllTripartite, reduceAllQuadripartite

logger = logging.getLogger(settings.WITNESS_LOG_NAME)


class Side(models.TextChoices):
    X = "X", "first qubit"
    Y = "Y", "second qubit"


class Conclusion(models.TextChoices):
    ENTANGLED = "ENTANGLED", "entangled"
    # the reductions cannot certify separability of a mixed state
    INCONCLUSIVE = "INCONCLUSIVE", "inconclusive"


class PureSplit(models.TextChoices):
    A_BC = "A-BC", "A against BC"
    B_CA = "B-CA", "B against CA"
    C_AB = "C-AB", "C against AB"


def partialTranspose(sigma: Union[DensityMatrix, ComplexMatrix], side: Side = Side.Y) -> ComplexMatrix:
    """
    Transposes one qubit of a two-qubit operator.

    Y: [s^T_Y]_{mn,rs} = s_{ms,rn}, X: [s^T_X]_{mn,rs} = s_{rn,ms}
    """
    mat = asComplexMatrix(sigma.mat if isinstance(sigma, DensityMatrix) else sigma)
    if mat.shape != (4, 4):
        raise WrongDim("4x4", mat.shape)

    tensor = mat.reshape(2, 2, 2, 2)
    if side == Side.Y:
        return tensor.transpose(0, 3, 2, 1).reshape(4, 4)
    elif side == Side.X:
        return tensor.transpose(2, 1, 0, 3).reshape(4, 4)
    else:
        raise ValueError(f"unknown side '{side}'")


@dataclass(frozen=True)
class PptVerdict:
    label: Optional[ReductionLabel]
    minPtEigenvalue: float
    separable: bool
    toleranceUsed: float


def pptSeparable(sigma: DensityMatrix, tol: float = DEFAULT_TOL, label: Optional[ReductionLabel] = None,
                 method: str = "lapack") -> PptVerdict:
    """
    Exact separability decision for a two-qubit state: separable iff the partial transpose has no eigenvalue
    below -tol. Only T_Y is diagonalized, T_X has the same spectrum.

    Hermiticity is checked against the larger of ``tol`` and the tolerance ``sigma`` was validated with.
    """
    if sigma.nQubits != 2:
        raise WrongArity((2,), sigma.nQubits)
    hermiticityTol = max(tol, sigma.tol) if sigma.validated else math.inf
    spectrum = hermitianEigenvalues(partialTranspose(sigma, Side.Y), hermiticityTol, method)
    return PptVerdict(label, spectrum.minimum, spectrum.minimum >= -tol, tol)


@dataclass(frozen=True)
class WitnessReport:
    nQubits: int
    verdicts: Tuple[PptVerdict, ...]
    conclusion: Conclusion
    culprit: Optional[ReductionLabel]

    @property
    def entangled(self) -> bool:
        return self.conclusion == Conclusion.ENTANGLED

    @property
    def minPtEigenvalue(self) -> float:
        return min(v.minPtEigenvalue for v in self.verdicts)

    def verdict(self, label) -> PptVerdict:
        label = ReductionLabel.parse(label, self.nQubits)
        return next(v for v in self.verdicts if v.label == label)


def witnessReductions(reductions: ReductionSet, tol: float = DEFAULT_TOL, method: str = "lapack") -> WitnessReport:
    verdicts = tuple(pptSeparable(sigma, tol, label, method) for label, sigma in reductions.items())
    for verdict in verdicts:
        logger.debug(f"{verdict.label}: min PT eigenvalue {verdict.minPtEigenvalue!r}, separable {verdict.separable}")

    if all(v.separable for v in verdicts):
        logger.info(f"{reductions.nQubits}-qubit witness: all {len(verdicts)} reductions PPT, inconclusive")
        return WitnessReport(reductions.nQubits, verdicts, Conclusion.INCONCLUSIVE, None)

    culprit = min(verdicts, key=lambda v: v.minPtEigenvalue)
    logger.info(f"{reductions.nQubits}-qubit witness: entangled, culprit {culprit.label} "
                f"(min PT eigenvalue {culprit.minPtEigenvalue:.6g})")
    return WitnessReport(reductions.nQubits, verdicts, Conclusion.ENTANGLED, culprit.label)


def witnessTripartite(rho: DensityMatrix, tol: float = DEFAULT_TOL, method: str = "lapack") -> WitnessReport:
    return witnessReductions(reduceAllTripartite(rho), tol, method)


def witnessQuadripartite(rho: DensityMatrix, tol: float = DEFAULT_TOL, method: str = "lapack") -> WitnessReport:
    return witnessReductions(reduceAllQuadripartite(rho), tol, method)


def witness(rho: DensityMatrix, tol: float = DEFAULT_TOL, method: str = "lapack") -> WitnessReport:
    if rho.nQubits == 3:
        return witnessTripartite(rho, tol, method)
    elif rho.nQubits == 4:
        return witnessQuadripartite(rho, tol, method)
    raise WrongArity((3, 4), rho.nQubits)


def necessaryConditionHolds(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> bool:
    """True if every reduction is PPT. A necessary condition only: PPT-entangled states pass it too."""
    return witness(rho, tol).conclusion == Conclusion.INCONCLUSIVE


# pure states

@dataclass(frozen=True)
class SplitVerdict:
    split: PureSplit
    separable: bool
    maxMinorModulus: float


def _asPureState(psi, nQubits: int, tol: float) -> PureState:
    if not isinstance(psi, PureState):
        psi = PureState.fromCoefficients(psi, tol)
    if psi.nQubits != nQubits:
        raise WrongArity((nQubits,), psi.nQubits)
    return psi


def splitMatrix(psi: PureState, split: PureSplit) -> np.ndarray:
    """
    The 2x4 coefficient matrix of a split: rows indexed by the single party, columns by the other two in
    the order (A, B, C) without it.
    """
    tensor = psi.tensor
    if split == PureSplit.A_BC:
        return tensor.reshape(2, 4)
    elif split == PureSplit.B_CA:
        return tensor.transpose(1, 0, 2).reshape(2, 4)
    elif split == PureSplit.C_AB:
        return tensor.transpose(2, 0, 1).reshape(2, 4)
    raise ValueError(f"unknown split '{split}'")


def maxMinorModulus(mat: np.ndarray) -> float:
    return max(abs(mat[0, k] * mat[1, l] - mat[0, l] * mat[1, k])
               for k, l in itertools.combinations(range(mat.shape[1]), 2))


def pureSplitSeparable(psi, split: PureSplit, tol: float = DEFAULT_RANK_TOL,
                       normTol: float = DEFAULT_TOL) -> SplitVerdict:
    """
    A three-qubit pure state is separable across a split iff its 2x4 coefficient matrix has rank below 2,
    i.e. every 2x2 minor vanishes.

    :raises NotNormalized: for coefficient vectors off the unit sphere by more than ``normTol``
    """
    psi = _asPureState(psi, 3, normTol)
    split = PureSplit(split)
    modulus = float(maxMinorModulus(splitMatrix(psi, split)))
    return SplitVerdict(split, modulus <= tol, modulus)


def pureFullySeparable(psi, tol: float = DEFAULT_RANK_TOL, normTol: float = DEFAULT_TOL) -> bool:
    psi = _asPureState(psi, 3, normTol)
    return all(pureSplitSeparable(psi, split, tol).separable for split in PureSplit)


def pureBipartiteSeparable(psi, tol: float = DEFAULT_RANK_TOL, normTol: float = DEFAULT_TOL) -> bool:
    """Two-qubit pure state: separable iff c00 c11 - c01 c10 = 0."""
    psi = _asPureState(psi, 2, normTol)
    c = psi.coeffs
    return bool(abs(c[0] * c[3] - c[1] * c[2]) <= tol)


def pureStateOf(rho: DensityMatrix, rankTol: float = DEFAULT_RANK_TOL) -> Optional[PureState]:
    """
    The vector psi with rho = |psi><psi| up to a global phase, or None if rho has rank above one at ``rankTol``.
    """
    if matrixRank(rho.mat, rankTol) != 1:
        return None
    _, vectors = np.linalg.eigh((rho.mat + rho.mat.conj().T) / 2)
    return PureState.fromCoefficients(vectors[:, -1], rho.tol)
