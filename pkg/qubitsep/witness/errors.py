from typing import Iterable, Optional


class WitnessError(Exception):

    def __init__(self, userMessage: str, adminMessage: str = "", magnitude: Optional[float] = None):
        super().__init__(userMessage, adminMessage)
        self.userMessage = userMessage
        self.adminMessage = adminMessage or userMessage
        self.magnitude = magnitude

    def __str__(self):
        return self.userMessage


# density matrices and their validation

class DensityError(WitnessError):
    pass


class NonFinite(DensityError):

    def __init__(self, what: str = "matrix"):
        super().__init__(f"The {what} contains NaN or infinite entries.")


class NotHermitian(DensityError):

    def __init__(self, deviation: float, tol: float):
        super().__init__(f"NotHermitian({deviation:.3g}): matrix deviates from its conjugate transpose by "
                         f"{deviation:.3g} (tolerance {tol:.3g}).",
                         f"max |M - M^H| = {deviation!r}, tol = {tol!r}", deviation)


class TraceNotOne(DensityError):

    def __init__(self, deviation: float, tol: float):
        super().__init__(f"TraceNotOne({deviation:.3g}): trace differs from 1 by {deviation:.3g} "
                         f"(tolerance {tol:.3g}).",
                         f"|tr M - 1| = {deviation!r}, tol = {tol!r}", deviation)


class NotPSD(DensityError):

    def __init__(self, minEigenvalue: float, tol: float):
        super().__init__(f"NotPSD({minEigenvalue:.3g}): smallest eigenvalue {minEigenvalue:.3g} is below "
                         f"-{tol:.3g}.",
                         f"lambda_min = {minEigenvalue!r}, tol = {tol!r}", minEigenvalue)


class WrongDim(DensityError):

    def __init__(self, expected: str, actual):
        super().__init__(f"Expected a {expected} matrix, got shape {actual}.")


class NotNormalized(DensityError):

    def __init__(self, deviation: float, tol: float):
        super().__init__(f"NotNormalized({deviation:.3g}): squared norm differs from 1 by {deviation:.3g} "
                         f"(tolerance {tol:.3g}).",
                         f"|<psi|psi> - 1| = {deviation!r}, tol = {tol!r}", deviation)


# reductions

class ReductionError(WitnessError):
    pass


class BadSubset(ReductionError):

    def __init__(self, keep, nQubits: int):
        super().__init__(f"Cannot keep parties {keep!r} of a {nQubits}-qubit state: the kept parties must be a "
                         f"nonempty strict subset without repetitions.")


class WrongArity(ReductionError):

    def __init__(self, expected: Iterable[int], actual: int):
        expected = ", ".join(str(e) for e in expected)
        super().__init__(f"Expected a state of {expected} qubits, got {actual} qubits.")


class BadLabel(ReductionError):

    def __init__(self, label: str, validLabels: Iterable[str], nQubits: Optional[int] = None):
        validLabels = list(validLabels)
        arity = f" for {nQubits} qubits" if nQubits else ""
        super().__init__(f"Unknown reduction label '{label}'{arity}. Valid labels: {', '.join(validLabels)}")
        self.validLabels = validLabels


# state constructors

class StateError(WitnessError):
    pass


class OutOfRange(StateError):

    def __init__(self, name: str, value: float, low: float, high: float):
        super().__init__(f"Parameter {name}={value!r} is outside [{low}, {high}].", magnitude=value)


class BadWay(StateError):

    def __init__(self, way):
        super().__init__(f"Embedding way must be one of 1..6, got {way!r}.")


class BadParams(StateError):
    pass


class BadGamma(StateError):

    def __init__(self, gamma: float):
        super().__init__(f"Coherence factor gamma={gamma!r} must lie in [-1, 1].", magnitude=gamma)


# command line

class ParseError(WitnessError):

    def __init__(self, location: str, message: str, magnitude: Optional[float] = None):
        super().__init__(f"{location}: {message}", f"parse failure at {location}: {message}", magnitude)
        self.location = location


class BadRange(WitnessError):
    pass
