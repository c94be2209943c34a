"""
Constructors for the state families the witness is exercised on, plus closed forms used as oracles.
"""
import math
from dataclasses import dataclass
from functools import reduce as foldl
from typing import Sequence, Tuple

import numpy as np

from witness.errors import OutOfRange, BadWay, BadParams, BadGamma, NotNormalized, WrongArity, WrongDim
from witness.linalg import (DensityMatrix, PureState, ComplexMatrix, validateDensity, permuteQubits, DEFAULT_TOL)
from witness.reductions import ReductionLabel, ReductionKind, reducePair

SQRT_HALF = 1 / math.sqrt(2)

KET_0 = np.array([1, 0], dtype=np.complex128)
KET_1 = np.array([0, 1], dtype=np.complex128)
KET_PLUS = np.array([SQRT_HALF, SQRT_HALF], dtype=np.complex128)
KET_MINUS = np.array([SQRT_HALF, -SQRT_HALF], dtype=np.complex128)


def ket(bits: str) -> np.ndarray:
    """Computational basis vector, e.g. ket("010")."""
    vector = np.zeros(2 ** len(bits), dtype=np.complex128)
    vector[int(bits, 2)] = 1
    return vector


def projector(vector) -> ComplexMatrix:
    vector = np.asarray(vector, dtype=np.complex128)
    return np.outer(vector, vector.conj())


def _unitVector(vector, name: str, tol: float) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
    if vector.shape != (2,):
        raise WrongDim(f"2-component {name}", vector.shape)
    deviation = abs(float(np.vdot(vector, vector).real) - 1.0)
    if deviation > tol:
        raise NotNormalized(deviation, tol)
    return vector


def ghz(nQubits: int = 3) -> DensityMatrix:
    if nQubits not in (3, 4):
        raise WrongArity((3, 4), nQubits)
    return PureState.fromCoefficients((ket("0" * nQubits) + ket("1" * nQubits)) * SQRT_HALF).densityMatrix()


def ghzQuadripartite() -> DensityMatrix:
    return ghz(4)


def wState() -> DensityMatrix:
    return PureState.fromCoefficients((ket("001") + ket("010") + ket("100")) / math.sqrt(3)).densityMatrix()


def bellState() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2)"""
    return PureState.fromCoefficients((ket("00") + ket("11")) * SQRT_HALF).densityMatrix()


def maximallyMixed(nQubits: int) -> DensityMatrix:
    dim = 2 ** nQubits
    return validateDensity(np.eye(dim) / dim, nQubits)


def wernerEmbedded(x: float) -> DensityMatrix:
    """
    x R + (1 - x) I/8 with R the equal mixture of (|010> - |101>)/sqrt(2) and (|011> - |100>)/sqrt(2).
    Its (A,BC) reduction is the two-qubit Werner state x S + (1 - x) I/4, S the singlet.
    """
    if not 0 <= x <= 1:
        raise OutOfRange("x", x, 0, 1)
    r = (projector((ket("010") - ket("101")) * SQRT_HALF) + projector((ket("011") - ket("100")) * SQRT_HALF)) / 2
    return validateDensity(x * r + (1 - x) * np.eye(8) / 8, 3)


def wernerPtEigenvalues(x: float) -> Tuple[float, float, float, float]:
    """Spectrum of the partial transpose of x S + (1 - x) I/4, ascending for x > 0."""
    return (1 - 3 * x) / 4, (1 + x) / 4, (1 + x) / 4, (1 + x) / 4


# way -> (A, B, C) bits of the pattern-p image of |i j>
_EMBEDDINGS = {
    1: lambda i, j, p: (i, j, j ^ p),
    2: lambda i, j, p: (j ^ p, i, j),
    3: lambda i, j, p: (j, j ^ p, i),
}


def embedBipartite(r, way: int) -> DensityMatrix:
    """
    Places a two-qubit state R into three qubits so that one reduction returns R.

    Ways 1 to 3 copy R onto the split reductions (A,BC), (B,CA) and (C,AB): the image is
    (1/2) sum_p V_p R V_p^H with V_p pairing the partner with the carrier through pattern p.
    Ways 4 to 6 tensor R with a maximally mixed third qubit: R_AB x I_C/2, R_AC x I_B/2, I_A/2 x R_BC.

    :raises BadWay: unless ``way`` is one of 1..6
    """
    if isinstance(way, bool) or way not in range(1, 7):
        raise BadWay(way)
    if not isinstance(r, DensityMatrix):
        r = validateDensity(r, 2)
    elif r.nQubits != 2:
        raise WrongArity((2,), r.nQubits)

    if way in _EMBEDDINGS:
        rho = np.zeros((8, 8), dtype=np.complex128)
        for p in (0, 1):
            isometry = np.zeros((8, 4), dtype=np.complex128)
            for i in (0, 1):
                for j in (0, 1):
                    a, b, c = _EMBEDDINGS[way](i, j, p)
                    isometry[4 * a + 2 * b + c, 2 * i + j] = 1
            rho += isometry @ r.mat @ isometry.conj().T / 2
    elif way == 4:
        rho = np.kron(r.mat, np.eye(2) / 2)
    elif way == 5:
        rho = permuteQubits(np.kron(r.mat, np.eye(2) / 2), (0, 2, 1))
    else:
        rho = np.kron(np.eye(2) / 2, r.mat)

    return validateDensity(rho, 3, r.tol)


# entanglement molecules

MOLECULE_PAIRS = ("AB", "AC", "BC")

MOLECULE_VECTORS = {
    "AB": (ket("010") + ket("100")) * SQRT_HALF,
    "AC": (ket("001") + ket("100")) * SQRT_HALF,
    "BC": (ket("001") + ket("010")) * SQRT_HALF,
}


@dataclass(frozen=True)
class MoleculeParams:
    pAB: float
    pAC: float
    pBC: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        weights = self.weights
        if not all(np.isfinite(weights)):
            raise BadParams("Molecule weights must be finite.")
        if any(w < -self.tol or w > 1 + self.tol for w in weights):
            raise BadParams(f"Molecule weights {weights} must each lie in [0, 1].")
        if abs(sum(weights) - 1) > self.tol:
            raise BadParams(f"Molecule weights {weights} must sum to 1, got {sum(weights)!r}.")

    @property
    def weights(self) -> Tuple[float, float, float]:
        return self.pAB, self.pAC, self.pBC

    def weight(self, pair: str) -> float:
        return dict(zip(MOLECULE_PAIRS, self.weights))[_moleculePair(pair).parties]


def _moleculePair(pair) -> ReductionLabel:
    label = ReductionLabel.parse(pair, 3)
    if label.kind != ReductionKind.PAIR_TRACE:
        raise BadParams(f"Molecule reductions are pair traces, got '{pair}'.")
    return label


def moleculeState(params: MoleculeParams) -> DensityMatrix:
    rho = sum(weight * projector(MOLECULE_VECTORS[pair]) for pair, weight in zip(MOLECULE_PAIRS, params.weights))
    return validateDensity(rho, 3, params.tol)


def moleculePairReductionEntries(params: MoleculeParams, pair) -> DensityMatrix:
    """
    The pair trace of a molecule. For the pair (r, s) the coherence between |01> and |10> is p_rs/2 and the
    |00> population is alpha = (sum of the other two weights)/2.
    """
    return reducePair(moleculeState(params), _moleculePair(pair))


def moleculePtMinEigenvalue(params: MoleculeParams, pair) -> float:
    """(alpha - sqrt(alpha^2 + p^2))/2, negative whenever p_rs > 0."""
    pair = _moleculePair(pair)
    p = params.weight(pair)
    alpha = (sum(params.weights) - p) / 2
    return (alpha - math.hypot(alpha, p)) / 2


# unextendible product basis

UPB_VECTORS = (
    (KET_0, KET_1, KET_PLUS),
    (KET_1, KET_PLUS, KET_0),
    (KET_PLUS, KET_0, KET_1),
    (KET_MINUS, KET_MINUS, KET_MINUS),
)


def upbState() -> DensityMatrix:
    """(I - sum of the four UPB projectors)/4, PPT in every reduction yet entangled."""
    vectors = [foldl(np.kron, factors) for factors in UPB_VECTORS]
    gram = np.array([[np.vdot(u, v) for v in vectors] for u in vectors])
    if not np.allclose(gram, np.eye(len(vectors)), rtol=0, atol=1e-12):
        raise BadParams("UPB vectors are not orthonormal.")
    return validateDensity((np.eye(8) - sum(projector(v) for v in vectors)) / 4, 3)


# product states

def productVector(*factors, tol: float = DEFAULT_TOL) -> PureState:
    if len(factors) not in (3, 4):
        raise WrongArity((3, 4), len(factors))
    vectors = [_unitVector(f, "factor", tol) for f in factors]
    return PureState.fromCoefficients(foldl(np.kron, vectors), tol)


def productPure(*factors, tol: float = DEFAULT_TOL) -> DensityMatrix:
    return productVector(*factors, tol=tol).densityMatrix(tol)


def coherenceFactor(v) -> float:
    """gamma = 2 Re(v0 v1*)"""
    v = np.asarray(v, dtype=np.complex128)
    return float(2 * (v[0] * v[1].conj()).real)


def omegaMatrix(u, gamma: float, tol: float = DEFAULT_TOL) -> ComplexMatrix:
    """[[|u0|^2, gamma u0 u1*], [gamma u0* u1, |u1|^2]], PSD with determinant |u0 u1|^2 (1 - gamma^2)."""
    u = _unitVector(u, "vector", tol)
    if not np.isfinite(gamma) or abs(gamma) > 1 + tol:
        raise BadGamma(gamma)
    coherence = gamma * u[0] * u[1].conj()
    return np.array([[abs(u[0]) ** 2, coherence],
                     [coherence.conjugate(), abs(u[1]) ** 2]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class OmegaParams:
    u: np.ndarray
    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.gamma) or abs(self.gamma) > 1 + DEFAULT_TOL:
            raise BadGamma(self.gamma)

    @classmethod
    def fromCoherenceVector(cls, u, v) -> "OmegaParams":
        return cls(np.asarray(u, dtype=np.complex128), coherenceFactor(v))

    @property
    def populations(self) -> Tuple[float, float]:
        return float(abs(self.u[0]) ** 2), float(abs(self.u[1]) ** 2)

    def matrix(self) -> ComplexMatrix:
        return omegaMatrix(self.u, self.gamma)


def productClosedForm(factors: Sequence, label) -> ComplexMatrix:
    """
    Reduction of a product pure state without summing patterns: each side is omega(carrier, product of the
    partners' coherence factors), so (A,BC) gives rho_A x omega(b, gamma_C) and (AB,CD) gives
    omega(a, gamma_B) x omega(c, gamma_D). Traced parties drop out.
    """
    factors = [np.asarray(f, dtype=np.complex128) for f in factors]
    label = ReductionLabel.parse(label, len(factors))
    sides = []
    for group in label.groups:
        positions = ["ABCD".index(p) for p in group]
        gamma = math.prod(coherenceFactor(factors[q]) for q in positions[1:])
        sides.append(omegaMatrix(factors[positions[0]], gamma))
    return np.kron(*sides)
