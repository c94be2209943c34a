import numpy as np
from django.test import SimpleTestCase

from witness.errors import NonFinite, NotHermitian, TraceNotOne, NotPSD, WrongDim, NotNormalized, BadSubset
from witness.linalg import (hermitianEigenvalues, jacobiEigenvalues, kron, partialTrace, permuteQubits, matrixRank,
                            validateDensity, measureDensity, DensityMatrix, PureState, Spectrum)
from witness.states import ghz, bellState, maximallyMixed
from witness.test.utils import SEED, randomDensityMatrix, randomUnitVector


class HermitianEigenvaluesTests(SimpleTestCase):

    def test_diagonal(self):
        spectrum = hermitianEigenvalues(np.diag([0.5, -0.25, 1.0]))
        self.assertEqual((-0.25, 0.5, 1.0), spectrum.eigenvalues)
        self.assertEqual(-0.25, spectrum.minimum)

    def test_pauliY(self):
        spectrum = hermitianEigenvalues([[0, -1j], [1j, 0]])
        np.testing.assert_allclose([-1, 1], spectrum.eigenvalues, atol=1e-14)

    def test_notHermitian(self):
        with self.assertRaises(NotHermitian) as cm:
            hermitianEigenvalues([[0, 1], [0, 0]])
        self.assertEqual(1.0, cm.exception.magnitude)

    def test_nonFinite(self):
        with self.assertRaises(NonFinite):
            hermitianEigenvalues([[np.nan, 0], [0, 1]])

    def test_notSquare(self):
        with self.assertRaises(WrongDim):
            hermitianEigenvalues(np.zeros((2, 3)))

    def test_unknownMethod(self):
        with self.assertRaises(ValueError):
            hermitianEigenvalues(np.eye(2), method="qr")

    def test_unsortedSpectrum(self):
        with self.assertRaises(ValueError):
            Spectrum((1.0, 0.0))

    def test_jacobiMatchesLapack(self):
        rng = np.random.default_rng(SEED)
        for dim in (2, 4, 8, 16):
            for _ in range(3):
                g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
                h = g + g.conj().T
                lapack = hermitianEigenvalues(h).eigenvalues
                jacobi = hermitianEigenvalues(h, method="jacobi").eigenvalues
                np.testing.assert_allclose(lapack, jacobi, atol=1e-9)

    def test_traceIsEigenvalueSum(self):
        rng = np.random.default_rng(SEED)
        for dim in (2, 4, 8, 16):
            g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = g + g.conj().T
            self.assertAlmostEqual(np.trace(h).real, sum(hermitianEigenvalues(h).eigenvalues), delta=1e-9)

    def test_shiftByIdentity(self):
        rng = np.random.default_rng(SEED)
        g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = g + g.conj().T
        shifted = hermitianEigenvalues(h + 2.5 * np.eye(8)).eigenvalues
        np.testing.assert_allclose(np.array(hermitianEigenvalues(h).eigenvalues) + 2.5, shifted, atol=1e-9)

    def test_jacobiRealSymmetric(self):
        values = jacobiEigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
        np.testing.assert_allclose([1.0, 3.0], values, atol=1e-12)

    def test_jacobiAlreadyDiagonal(self):
        values = jacobiEigenvalues(np.diag([3.0, -1.0]).astype(complex))
        np.testing.assert_allclose([-1.0, 3.0], values)

    def test_jacobiBellPartialTranspose(self):
        from witness.separability import partialTranspose
        values = hermitianEigenvalues(partialTranspose(bellState()), method="jacobi").eigenvalues
        np.testing.assert_allclose([-0.5, 0.5, 0.5, 0.5], values, atol=1e-12)


class KronTests(SimpleTestCase):

    def test_identityFactors(self):
        np.testing.assert_array_equal(np.eye(4), kron(np.eye(2), np.eye(2)))

    def test_blockLayout(self):
        a = np.array([[1, 2], [3, 4]])
        b = np.array([[0, 1], [1, 0]])
        result = kron(a, b)
        self.assertEqual((4, 4), result.shape)
        self.assertEqual(2, result[0, 3])
        self.assertEqual(3, result[3, 0])
        self.assertEqual(4, result[2, 3])

    def test_traceMultiplies(self):
        rng = np.random.default_rng(SEED)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        self.assertAlmostEqual(0, abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)), delta=1e-12)

    def test_nonFinite(self):
        with self.assertRaises(NonFinite):
            kron([[np.inf]], np.eye(2))


class ValidateDensityTests(SimpleTestCase):

    def test_maximallyMixed(self):
        rho = validateDensity(np.eye(8) / 8, 3)
        self.assertEqual(3, rho.nQubits)
        self.assertEqual(8, rho.dim)
        self.assertTrue(rho.validated)

    def test_readOnly(self):
        rho = validateDensity(np.eye(4) / 4, 2)
        with self.assertRaises(ValueError):
            rho.mat[0, 0] = 1

    def test_traceNotOne(self):
        with self.assertRaises(TraceNotOne) as cm:
            validateDensity(np.diag([1, 0, 0, 0.1]), 2)
        self.assertAlmostEqual(0.1, cm.exception.magnitude, places=12)
        self.assertTrue(str(cm.exception).startswith("TraceNotOne(0.1)"))

    def test_notPsd(self):
        with self.assertRaises(NotPSD) as cm:
            validateDensity(np.diag([1.5, -0.5]), 1)
        self.assertAlmostEqual(-0.5, cm.exception.magnitude, places=12)

    def test_notHermitian(self):
        with self.assertRaises(NotHermitian):
            validateDensity([[0.5, 0.1], [0.0, 0.5]], 1)

    def test_nonFinite(self):
        with self.assertRaises(NonFinite):
            validateDensity([[np.nan, 0], [0, 1]], 1)

    def test_wrongDim(self):
        with self.assertRaises(WrongDim):
            validateDensity(np.eye(4) / 4, 3)

    def test_checksHermiticityBeforeTrace(self):
        with self.assertRaises(NotHermitian):
            validateDensity([[1.0, 1.0], [0.0, 1.0]], 1)

    def test_toleranceBoundary(self):
        rho = validateDensity(np.diag([1 + 5e-10, -5e-10]), 1)
        self.assertEqual(1, rho.nQubits)
        with self.assertRaises(NotPSD):
            validateDensity(np.diag([1 + 5e-10, -5e-10]), 1, tol=1e-10)

    def test_measureDensityDoesNotRaise(self):
        diagnostics = measureDensity(np.diag([1.5, -0.5]))
        self.assertAlmostEqual(0.0, diagnostics.traceDeviation)
        self.assertAlmostEqual(-0.5, diagnostics.minEigenvalue)
        self.assertEqual(0.0, diagnostics.hermiticity)

    def test_uncheckedKeepsInvalidInput(self):
        rho = DensityMatrix.unchecked(np.diag([0.9, 0, 0, 0]), 2)
        self.assertFalse(rho.validated)


class PartialTraceTests(SimpleTestCase):

    def test_ghzPair(self):
        reduced = partialTrace(ghz(), "AB")
        self.assertTrue(reduced.allclose(np.diag([0.5, 0, 0, 0.5])))

    def test_productFactor(self):
        rng = np.random.default_rng(SEED)
        a, b, c = (randomDensityMatrix(rng, 1, 2) for _ in range(3))
        rho = validateDensity(np.kron(np.kron(a.mat, b.mat), c.mat), 3)
        self.assertTrue(partialTrace(rho, "BC").allclose(np.kron(b.mat, c.mat)))
        self.assertTrue(partialTrace(rho, "CA").allclose(np.kron(c.mat, a.mat)))
        self.assertTrue(partialTrace(rho, ["B"]).allclose(b.mat))

    def test_maximallyMixed(self):
        self.assertTrue(partialTrace(maximallyMixed(4), "AD").allclose(np.eye(4) / 4))

    def test_positions(self):
        rho = ghz()
        self.assertTrue(partialTrace(rho, (0, 2)).allclose(partialTrace(rho, "AC")))

    def test_resultIsDensity(self):
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            reduced = partialTrace(randomDensityMatrix(rng, 4), "BD")
            self.assertTrue(reduced.validated)
            self.assertAlmostEqual(1.0, np.trace(reduced.mat).real, places=12)

    def test_successiveTraces(self):
        rng = np.random.default_rng(SEED)
        for _ in range(10):
            rho = randomDensityMatrix(rng, 3)
            stepwise = partialTrace(partialTrace(rho, "AB"), "A")
            np.testing.assert_allclose(partialTrace(rho, "A").mat, stepwise.mat, atol=1e-12)

    def test_emptySubset(self):
        with self.assertRaises(BadSubset):
            partialTrace(ghz(), "")

    def test_fullSubset(self):
        with self.assertRaises(BadSubset):
            partialTrace(ghz(), "ABC")

    def test_repeatedParty(self):
        with self.assertRaises(BadSubset):
            partialTrace(ghz(), "AA")

    def test_unknownParty(self):
        with self.assertRaises(BadSubset):
            partialTrace(ghz(), "AD")


class PermuteQubitsTests(SimpleTestCase):

    def test_swap(self):
        a = np.diag([1.0, 0.0])
        b = np.diag([0.25, 0.75])
        np.testing.assert_allclose(np.kron(b, a), permuteQubits(np.kron(a, b), (1, 0)))

    def test_threeFactors(self):
        a, b, c = np.diag([1.0, 0.0]), np.diag([0.5, 0.5]), np.array([[0.5, 0.5], [0.5, 0.5]])
        np.testing.assert_allclose(np.kron(np.kron(a, c), b), permuteQubits(np.kron(np.kron(a, b), c), (0, 2, 1)))

    def test_notAPermutation(self):
        with self.assertRaises(WrongDim):
            permuteQubits(np.eye(4), (0, 0))


class MatrixRankTests(SimpleTestCase):

    def test_rankOne(self):
        self.assertEqual(1, matrixRank([[1, 2, 3, 4], [2, 4, 6, 8]]))

    def test_rankTwo(self):
        self.assertEqual(2, matrixRank([[1, 0, 0, 0], [0, 0, 0, 1]]))

    def test_zero(self):
        self.assertEqual(0, matrixRank(np.zeros((2, 4))))

    def test_pureStateDensity(self):
        self.assertEqual(1, matrixRank(ghz().mat))


class PureStateTests(SimpleTestCase):

    def test_densityMatrix(self):
        rng = np.random.default_rng(SEED)
        psi = PureState.fromCoefficients(randomUnitVector(rng, 8))
        rho = psi.densityMatrix()
        self.assertEqual(3, rho.nQubits)
        self.assertEqual(1, matrixRank(rho.mat))

    def test_notNormalized(self):
        with self.assertRaises(NotNormalized):
            PureState.fromCoefficients([1, 1, 0, 0])

    def test_wrongLength(self):
        with self.assertRaises(WrongDim):
            PureState.fromCoefficients([1, 0, 0])
