"""
Dense complex linear algebra for qubit density matrices.

Basis convention: the composite index of an n-qubit basis state is
b = sum_q bit_q * 2^(n-1-q), party A (q = 0) being the most significant bit. For
three qubits the row of |i_A j_B k_C> is 4i + 2j + k, which is exactly numpy's
C-order reshape of a (2^n, 2^n) matrix into a (2,)*2n tensor with the ket axes
first. Every entrywise formula in this package goes through that reshape.
"""
import math
import string
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from witness.errors import NonFinite, NotHermitian, TraceNotOne, NotPSD, WrongDim, NotNormalized, BadSubset

ComplexMatrix = npt.NDArray[np.complex128]

PARTIES = "ABCD"
MAX_QUBITS = len(PARTIES)

DEFAULT_TOL = 1e-9
DEFAULT_RANK_TOL = 1e-10
JACOBI_OFF_DIAGONAL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def asComplexMatrix(matrix, square: bool = True) -> ComplexMatrix:
    mat = np.array(matrix, dtype=np.complex128)
    if mat.ndim != 2:
        raise WrongDim("two-dimensional", mat.shape)
    if square and mat.shape[0] != mat.shape[1]:
        raise WrongDim("square", mat.shape)
    if not np.all(np.isfinite(mat)):
        raise NonFinite()
    return mat


def hermitianDeviation(mat: ComplexMatrix) -> float:
    return float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: Tuple[float, ...]

    def __post_init__(self):
        if any(a > b for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("eigenvalues must be sorted ascending")

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def minimum(self) -> float:
        return self.eigenvalues[0]

    @property
    def maximum(self) -> float:
        return self.eigenvalues[-1]


def jacobiEigenvalues(mat: ComplexMatrix, offDiagonalTol: float = JACOBI_OFF_DIAGONAL_TOL,
                      maxSweeps: int = JACOBI_MAX_SWEEPS) -> npt.NDArray[np.float64]:
    """
    Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    The rotations run on the real symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is the spectrum of
    ``mat`` with every eigenvalue doubled, so every second sorted value is returned.

    :param mat: Hermitian matrix (not checked here)
    :param offDiagonalTol: stop once the off-diagonal Frobenius norm falls below this value
    :param maxSweeps: upper bound on full sweeps over all index pairs
    :return: ascending eigenvalues
    :raises ArithmeticError: if the iteration does not converge within ``maxSweeps``
    """
    a = np.block([[mat.real, -mat.imag], [mat.imag, mat.real]]).astype(np.float64)
    size = a.shape[0]

    for _ in range(maxSweeps):
        if np.linalg.norm(a - np.diag(np.diag(a))) < offDiagonalTol:
            return np.sort(np.diag(a))[::2]

        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                theta = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rotation = np.array([[c, s], [-s, c]])
                a[:, [p, q]] = a[:, [p, q]] @ rotation
                a[[p, q], :] = rotation.T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0

    raise ArithmeticError(f"Jacobi iteration did not converge within {maxSweeps} sweeps")


def hermitianEigenvalues(matrix, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    mat = asComplexMatrix(matrix)
    deviation = hermitianDeviation(mat)
    if deviation > tol:
        raise NotHermitian(deviation, tol)

    mat = (mat + mat.conj().T) / 2
    if method == "lapack":
        values = np.linalg.eigvalsh(mat)
    elif method == "jacobi":
        values = jacobiEigenvalues(mat)
    else:
        raise ValueError(f"unknown eigensolver '{method}'")

    return Spectrum(tuple(float(v) for v in np.sort(values)))


def kron(a, b) -> ComplexMatrix:
    return np.kron(asComplexMatrix(a), asComplexMatrix(b))


def matrixRank(matrix, tol: float = DEFAULT_RANK_TOL) -> int:
    """
    Numerical rank: number of singular values above ``tol`` times the largest one. Works for rectangular input.
    """
    mat = asComplexMatrix(matrix, square=False)
    if mat.size == 0:
        return 0
    singular = np.linalg.svd(mat, compute_uv=False)
    if singular[0] == 0.0:
        return 0
    return int(np.sum(singular > tol * singular[0]))


@dataclass(frozen=True)
class DensityDiagnostics:
    hermiticity: float
    traceDeviation: float
    minEigenvalue: float


def measureDensity(matrix) -> DensityDiagnostics:
    mat = asComplexMatrix(matrix)
    hermitianPart = (mat + mat.conj().T) / 2
    return DensityDiagnostics(hermiticity=hermitianDeviation(mat),
                              traceDeviation=float(abs(np.trace(mat) - 1.0)),
                              minEigenvalue=float(np.linalg.eigvalsh(hermitianPart)[0]))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    nQubits: int
    mat: ComplexMatrix
    tol: float = DEFAULT_TOL
    validated: bool = True

    def __post_init__(self):
        self.mat.setflags(write=False)

    @classmethod
    def unchecked(cls, matrix, nQubits: int, tol: float = DEFAULT_TOL) -> "DensityMatrix":
        mat = asComplexMatrix(matrix)
        if mat.shape != (2 ** nQubits, 2 ** nQubits):
            raise WrongDim(f"{2 ** nQubits}x{2 ** nQubits}", mat.shape)
        return cls(nQubits, mat, tol, validated=False)

    def derive(self, matrix, nQubits: int) -> "DensityMatrix":
        """
        Wraps the image of this state under a reduction onto ``nQubits``, validating it iff this one was validated.

        Each output entry sums 2^(n - nQubits) input entries and the reduction maps I to 2^(n - nQubits) I, so
        Hermiticity and eigenvalue violations within ``tol`` grow by at most that factor. The result carries
        the scaled tolerance.
        """
        tol = self.tol * 2 ** max(self.nQubits - nQubits, 0)
        if self.validated:
            return validateDensity(matrix, nQubits, tol)
        return DensityMatrix.unchecked(matrix, nQubits, tol)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def parties(self) -> str:
        return PARTIES[:self.nQubits]

    @property
    def tensor(self) -> np.ndarray:
        return self.mat.reshape((2,) * (2 * self.nQubits))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        other = other.mat if isinstance(other, DensityMatrix) else np.asarray(other)
        return self.mat.shape == other.shape and np.allclose(self.mat, other, rtol=0.0, atol=atol)


def validateDensity(matrix, nQubits: int, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """
    Checks a matrix against the density matrix invariants, in the order finite, Hermitian, unit trace, PSD.

    :raises WrongDim: if the matrix is not 2^nQubits x 2^nQubits
    :raises NonFinite: on NaN/Inf entries
    :raises NotHermitian: carrying max |M - M^H|
    :raises TraceNotOne: carrying |tr M - 1|
    :raises NotPSD: carrying the smallest eigenvalue
    """
    if not 1 <= nQubits <= MAX_QUBITS:
        raise WrongDim(f"1 to {MAX_QUBITS} qubit", nQubits)
    mat = asComplexMatrix(matrix)
    dim = 2 ** nQubits
    if mat.shape != (dim, dim):
        raise WrongDim(f"{dim}x{dim}", mat.shape)

    diagnostics = measureDensity(mat)
    if diagnostics.hermiticity > tol:
        raise NotHermitian(diagnostics.hermiticity, tol)
    if diagnostics.traceDeviation > tol:
        raise TraceNotOne(diagnostics.traceDeviation, tol)
    if diagnostics.minEigenvalue < -tol:
        raise NotPSD(diagnostics.minEigenvalue, tol)

    return DensityMatrix(nQubits, mat, tol)


def partyIndices(parties: Union[str, Sequence[Union[str, int]]], nQubits: int) -> Tuple[int, ...]:
    """Maps party letters ("AC", ["A", "C"]) or positions to positions, keeping the given order."""
    indices = []
    for party in parties:
        if isinstance(party, str):
            party = party.upper()
            if len(party) != 1 or party not in PARTIES[:nQubits]:
                raise BadSubset(parties, nQubits)
            indices.append(PARTIES.index(party))
        elif isinstance(party, (int, np.integer)) and 0 <= party < nQubits:
            indices.append(int(party))
        else:
            raise BadSubset(parties, nQubits)
    return tuple(indices)


def partialTrace(rho: DensityMatrix, keep) -> DensityMatrix:
    """
    Traces out every party not in ``keep``. The kept factors appear in the order given by ``keep``.

    :raises BadSubset: if ``keep`` is empty, repeats a party, names an unknown party or keeps everything
    """
    n = rho.nQubits
    kept = partyIndices(keep, n)
    if not kept or len(set(kept)) != len(kept) or len(kept) >= n:
        raise BadSubset(keep, n)

    letters = string.ascii_lowercase
    ket = list(letters[:n])
    bra = list(letters[n:2 * n])
    for q in range(n):
        if q not in kept:
            bra[q] = ket[q]
    out = [ket[q] for q in kept] + [bra[q] for q in kept]

    reduced = np.einsum(f"{''.join(ket)}{''.join(bra)}->{''.join(out)}", rho.tensor)
    dim = 2 ** len(kept)
    return rho.derive(reduced.reshape(dim, dim), len(kept))


def permuteQubits(matrix, order: Sequence[int]) -> ComplexMatrix:
    """Reorders tensor factors: factor ``order[k]`` of the input becomes factor k of the output."""
    mat = asComplexMatrix(matrix)
    n = len(order)
    if mat.shape != (2 ** n, 2 ** n) or sorted(order) != list(range(n)):
        raise WrongDim(f"{2 ** n}x{2 ** n} with a permutation of {n} factors", mat.shape)
    axes = list(order) + [n + q for q in order]
    return mat.reshape((2,) * (2 * n)).transpose(axes).reshape(mat.shape)


@dataclass(frozen=True, eq=False)
class PureState:
    nQubits: int
    coeffs: npt.NDArray[np.complex128]

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @classmethod
    def fromCoefficients(cls, coeffs, tol: float = DEFAULT_TOL) -> "PureState":
        vector = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(vector)):
            raise NonFinite("coefficient vector")
        nQubits = int(vector.size).bit_length() - 1
        if vector.size < 2 or 2 ** nQubits != vector.size or nQubits > MAX_QUBITS:
            raise WrongDim(f"length 2^n (n <= {MAX_QUBITS})", vector.shape)
        deviation = abs(float(np.vdot(vector, vector).real) - 1.0)
        if deviation > tol:
            raise NotNormalized(deviation, tol)
        return cls(nQubits, vector)

    @property
    def tensor(self) -> np.ndarray:
        return self.coeffs.reshape((2,) * self.nQubits)

    def densityMatrix(self, tol: float = DEFAULT_TOL) -> DensityMatrix:
        return validateDensity(np.outer(self.coeffs, self.coeffs.conj()), self.nQubits, tol)
