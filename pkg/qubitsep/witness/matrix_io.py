"""
Text formats: the MatrixFile holding one density matrix and the versioned report of an analysis.

Both are JSON documents. Floats are written with Python's shortest round-trip repr, so parsing an emitted
document reproduces every number bit for bit.
"""
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from Crypto.Hash import SHA256
from django.conf import settings

from witness import __version__
from witness.errors import ParseError
from witness.linalg import DensityMatrix, DensityDiagnostics, validateDensity, measureDensity, MAX_QUBITS, DEFAULT_TOL
from witness.separability import WitnessReport

SCHEMA = settings.REPORT_SCHEMA

STDIN_PATH = "-"


@dataclass(frozen=True, eq=False)
class MatrixFile:
    nQubits: int
    re: np.ndarray
    im: np.ndarray
    tol: Optional[float] = None

    @classmethod
    def fromDensity(cls, rho: Union[DensityMatrix, np.ndarray], nQubits: Optional[int] = None,
                    tol: Optional[float] = None) -> "MatrixFile":
        mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
        nQubits = rho.nQubits if isinstance(rho, DensityMatrix) else nQubits
        return cls(nQubits, np.array(mat.real, dtype=np.float64), np.array(mat.imag, dtype=np.float64), tol)

    @property
    def matrix(self) -> np.ndarray:
        return self.re + 1j * self.im

    def toDensity(self, tol: Optional[float] = None, validate: bool = True) -> DensityMatrix:
        """Explicit ``tol`` wins over the file's own, which wins over the library default."""
        tol = tol if tol is not None else (self.tol if self.tol is not None else DEFAULT_TOL)
        if validate:
            return validateDensity(self.matrix, self.nQubits, tol)
        return DensityMatrix.unchecked(self.matrix, self.nQubits, tol)

    def measure(self) -> DensityDiagnostics:
        return measureDensity(self.matrix)

    def toDict(self) -> dict:
        document = {"schema": SCHEMA, "n_qubits": self.nQubits, "re": self.re.tolist(), "im": self.im.tolist()}
        if self.tol is not None:
            document["tol"] = self.tol
        return document

    def dumps(self) -> str:
        return json.dumps(self.toDict(), indent=1)


def _parseSquare(document: dict, key: str, dim: int, location: str) -> np.ndarray:
    if key not in document:
        raise ParseError(location, f"missing key '{key}'")
    rows = document[key]
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"{location}: {key}", f"expected {dim} rows")
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{location}: {key}[{r}]", f"expected {dim} entries")
        for c, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"{location}: {key}[{r}][{c}]", f"expected a number, got {value!r}")
    return np.array(rows, dtype=np.float64)


def parseMatrixFile(text: str, location: str = "<input>") -> MatrixFile:
    """
    :raises ParseError: with the location of the offending key or entry
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{location}:{e.lineno}:{e.colno}", e.msg)
    if not isinstance(document, dict):
        raise ParseError(location, "expected a JSON object")

    schema = document.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"{location}: schema", f"unsupported schema {schema!r}, expected {SCHEMA}")

    nQubits = document.get("n_qubits")
    if isinstance(nQubits, bool) or not isinstance(nQubits, int) or not 1 <= nQubits <= MAX_QUBITS:
        raise ParseError(f"{location}: n_qubits", f"expected an integer in 1..{MAX_QUBITS}, got {nQubits!r}")

    dim = 2 ** nQubits
    re = _parseSquare(document, "re", dim, location)
    im = _parseSquare(document, "im", dim, location)

    tol = document.get("tol")
    if tol is not None and (isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol < 0):
        raise ParseError(f"{location}: tol", f"expected a non-negative number, got {tol!r}")
    return MatrixFile(nQubits, re, im, None if tol is None else float(tol))


def readInput(path: Union[str, Path]) -> Tuple[str, bytes]:
    """Raw bytes of a file, or of standard input for '-'. Returns (location, bytes)."""
    if str(path) == STDIN_PATH:
        return "<stdin>", sys.stdin.buffer.read()
    path = Path(path)
    try:
        return str(path), path.read_bytes()
    except OSError as e:
        raise ParseError(str(path), e.strerror or str(e))


def readMatrixFile(path: Union[str, Path]) -> Tuple[MatrixFile, str]:
    """Parses a MatrixFile and returns it with the SHA-256 digest of the bytes read."""
    location, raw = readInput(path)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(location, f"not UTF-8 text ({e.reason})")
    return parseMatrixFile(text, location), inputDigest(raw)


def inputDigest(raw: bytes) -> str:
    digest = SHA256.new()
    digest.update(raw)
    return digest.hexdigest()


# reports

@dataclass(frozen=True)
class ReductionRow:
    label: str
    kind: str
    minPtEigenvalue: float
    separable: bool


@dataclass(frozen=True)
class ReportDocument:
    digest: str
    nQubits: int
    validated: bool
    hermiticity: float
    traceDeviation: float
    minEigenvalue: float
    reductions: Tuple[ReductionRow, ...]
    conclusion: str
    culprit: Optional[str]
    tol: float
    pureSeparable: Optional[bool] = None
    version: str = __version__
    warnings: Tuple[str, ...] = field(default_factory=tuple)
    schema: int = SCHEMA

    @classmethod
    def fromWitness(cls, report: WitnessReport, digest: str, diagnostics: DensityDiagnostics, tol: float,
                    validated: bool = True, warnings: Tuple[str, ...] = (),
                    pureSeparable: Optional[bool] = None) -> "ReportDocument":
        rows = tuple(ReductionRow(str(v.label), v.label.kind.value, v.minPtEigenvalue, v.separable)
                     for v in report.verdicts)
        return cls(digest=digest, nQubits=report.nQubits, validated=validated,
                   hermiticity=diagnostics.hermiticity, traceDeviation=diagnostics.traceDeviation,
                   minEigenvalue=diagnostics.minEigenvalue, reductions=rows, conclusion=report.conclusion.value,
                   culprit=None if report.culprit is None else str(report.culprit), tol=tol,
                   pureSeparable=pureSeparable, warnings=tuple(warnings))

    def toDict(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "input_sha256": self.digest,
            "n_qubits": self.nQubits,
            "validation": {
                "validated": self.validated,
                "hermiticity": self.hermiticity,
                "trace_deviation": self.traceDeviation,
                "min_eigenvalue": self.minEigenvalue,
            },
            "tolerances": {"tol": self.tol},
            "reductions": [{"label": r.label, "kind": r.kind, "min_pt_eigenvalue": r.minPtEigenvalue,
                            "separable": r.separable} for r in self.reductions],
            "conclusion": self.conclusion,
            "culprit": self.culprit,
            "pure_separable": self.pureSeparable,
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.toDict(), indent=1)

    def table(self) -> pd.DataFrame:
        return pd.DataFrame.from_records([dataclasses.asdict(r) for r in self.reductions],
                                         columns=["label", "kind", "minPtEigenvalue", "separable"])

    def render(self) -> str:
        lines = []
        if self.warnings:
            lines.append("!" * 72)
            lines.extend(f"! WARNING: {w}" for w in self.warnings)
            lines.append("!" * 72)
        lines.append(f"input sha256: {self.digest}")
        lines.append(f"qubits: {self.nQubits}, tolerance: {self.tol:g}, validated: {'yes' if self.validated else 'no'}")
        lines.append(f"hermiticity {self.hermiticity:.3g}, trace deviation {self.traceDeviation:.3g}, "
                     f"min eigenvalue {self.minEigenvalue:.6g}")
        lines.append("")
        table = self.table().rename(columns={"minPtEigenvalue": "min PT eigenvalue"})
        table["separable"] = table["separable"].map({True: "PPT", False: "NPT"})
        lines.append(table.to_string(index=False, float_format=lambda v: f"{v: .9f}"))
        lines.append("")
        culprit = f" (culprit {self.culprit})" if self.culprit else ""
        lines.append(f"conclusion: {self.conclusion}{culprit}")
        if self.pureSeparable is not None:
            lines.append(f"pure state: {'fully separable' if self.pureSeparable else 'entangled'} (exact)")
        lines.append(f"qubitsep {self.version}, report schema {self.schema}")
        return "\n".join(lines)


def parseReport(text: str, location: str = "<report>") -> ReportDocument:
    try:
        document = json.loads(text)
        if document["schema"] != SCHEMA:
            raise ParseError(f"{location}: schema", f"unsupported schema {document['schema']!r}")
        validation = document["validation"]
        rows = tuple(ReductionRow(r["label"], r["kind"], float(r["min_pt_eigenvalue"]), bool(r["separable"]))
                     for r in document["reductions"])
        return ReportDocument(digest=document["input_sha256"], nQubits=int(document["n_qubits"]),
                              validated=bool(validation["validated"]),
                              hermiticity=float(validation["hermiticity"]),
                              traceDeviation=float(validation["trace_deviation"]),
                              minEigenvalue=float(validation["min_eigenvalue"]),
                              reductions=rows, conclusion=document["conclusion"], culprit=document["culprit"],
                              tol=float(document["tolerances"]["tol"]), pureSeparable=document.get("pure_separable"),
                              version=document["version"],
                              warnings=tuple(document["warnings"]), schema=document["schema"])
    except json.JSONDecodeError as e:
        raise ParseError(f"{location}:{e.lineno}:{e.colno}", e.msg)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(location, f"malformed report ({e!r})")
