from pathlib import Path
from typing import List

import numpy as np

from witness.linalg import DensityMatrix, PureState, validateDensity
from witness.matrix_io import MatrixFile
from witness.separability import pptSeparable

SEED = 20240611

# tolerances of the property suites
ENTRY_TOL = 1e-12
SPECTRUM_TOL = 1e-9


def randomUnitVector(rng: np.random.Generator, dim: int) -> np.ndarray:
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vector / np.linalg.norm(vector)


def randomPureState(rng: np.random.Generator, nQubits: int) -> PureState:
    return PureState.fromCoefficients(randomUnitVector(rng, 2 ** nQubits))


def randomDensityMatrix(rng: np.random.Generator, nQubits: int, components: int = 4) -> DensityMatrix:
    """Random convex mixture of ``components`` random pure states."""
    weights = rng.dirichlet(np.ones(components))
    vectors = [randomUnitVector(rng, 2 ** nQubits) for _ in range(components)]
    mat = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vectors))
    return validateDensity(mat, nQubits)


def randomProductFactors(rng: np.random.Generator, nQubits: int) -> List[np.ndarray]:
    return [randomUnitVector(rng, 2) for _ in range(nQubits)]


def randomProductPure(rng: np.random.Generator, nQubits: int) -> PureState:
    factors = randomProductFactors(rng, nQubits)
    vector = factors[0]
    for factor in factors[1:]:
        vector = np.kron(vector, factor)
    return PureState.fromCoefficients(vector)


def randomBiseparable(rng: np.random.Generator) -> PureState:
    """A random single-qubit state on one party times a random two-qubit state on the other two."""
    single = randomUnitVector(rng, 2)
    pair = randomUnitVector(rng, 4).reshape(2, 2)
    layout = rng.integers(3)
    if layout == 0:
        tensor = np.einsum("a,bc->abc", single, pair)
    elif layout == 1:
        tensor = np.einsum("b,ca->abc", single, pair)
    else:
        tensor = np.einsum("c,ab->abc", single, pair)
    return PureState.fromCoefficients(tensor.reshape(-1))


def randomProductMixed(rng: np.random.Generator, nQubits: int) -> DensityMatrix:
    mat = np.ones((1, 1))
    for _ in range(nQubits):
        mat = np.kron(mat, randomDensityMatrix(rng, 1, components=2).mat)
    return validateDensity(mat, nQubits)


def randomSeparableMixture(rng: np.random.Generator, nQubits: int, components: int = 5) -> DensityMatrix:
    weights = rng.dirichlet(np.ones(components))
    mat = sum(w * randomProductPure(rng, nQubits).densityMatrix().mat for w in weights)
    return validateDensity(mat, nQubits)


def randomEntangledTwoQubit(rng: np.random.Generator, margin: float = 1e-3) -> DensityMatrix:
    """Rejection sample of a two-qubit state whose partial transpose has an eigenvalue below -margin."""
    while True:
        rho = randomDensityMatrix(rng, 2, components=int(rng.integers(1, 4)))
        if pptSeparable(rho).minPtEigenvalue < -margin:
            return rho


def writeMatrixFile(rho, directory, name: str = "state.json") -> str:
    path = Path(directory) / name
    path.write_text(MatrixFile.fromDensity(rho).dumps())
    return str(path)
