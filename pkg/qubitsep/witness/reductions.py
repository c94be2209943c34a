"""
Bipartite qubit reductions of three- and four-qubit density matrices.

Every reduction maps onto a two-qubit system (X, Y). Each side is fed by a group of
parties: the first party of a group (its carrier) supplies the bit, every other party of
the group (a partner) is paired with the carrier through a pattern bit p, partner = carrier
XOR p, and each pattern contributes one term of the sum. Parties in neither group are traced.

    [rho_(A,BC)]_{ij,rs} = sum_p rho_{i j (j^p), r s (s^p)}

Pair traces are the groups of size one, the split reductions have one group of size two,
one-vs-three reductions a group of size three and two-vs-two reductions two groups of size two.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce as foldl
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from django.db import models

from witness.errors import BadLabel, WrongArity
from witness.linalg import DensityMatrix, PARTIES, partialTrace, permuteQubits, ComplexMatrix


class ReductionKind(models.TextChoices):
    PAIR_TRACE = "PAIR_TRACE", "pair trace"
    ONE_VS_TWO = "ONE_VS_TWO", "one vs two"
    ONE_VS_THREE = "ONE_VS_THREE", "one vs three"
    TWO_VS_TWO = "TWO_VS_TWO", "two vs two"


@dataclass(frozen=True)
class ReductionLabel:
    kind: ReductionKind
    groups: Tuple[str, str]

    def __str__(self):
        return ",".join(self.groups)

    @property
    def parties(self) -> str:
        return "".join(self.groups)

    @property
    def key(self) -> frozenset:
        return frozenset(frozenset(group) for group in self.groups)

    def traced(self, nQubits: int) -> str:
        return "".join(p for p in PARTIES[:nQubits] if p not in self.parties)

    @classmethod
    def parse(cls, text: Union[str, "ReductionLabel"], nQubits: int) -> "ReductionLabel":
        """
        Looks up a label of the given arity. Case and the order of parties inside a group or of the groups
        themselves do not matter: "a,cb", "BC,A" and "A,BC" are the same reduction.

        :raises BadLabel: listing the valid labels for ``nQubits``
        """
        valid = enumerateLabels(nQubits)
        if isinstance(text, ReductionLabel):
            if text in valid:
                return text
            raise BadLabel(str(text), [str(label) for label in valid], nQubits)

        groups = [group.strip().upper() for group in str(text).split(",")]
        key = frozenset(frozenset(group) for group in groups)
        for label in valid:
            if label.key == key and sum(len(g) for g in groups) == len(label.parties):
                return label
        raise BadLabel(str(text), [str(label) for label in valid], nQubits)


def _cyclicSplits(triple: str) -> List[Tuple[str, str]]:
    p, q, r = triple
    return [(p, q + r), (q, r + p), (r, p + q)]


@lru_cache(maxsize=None)
def enumerateLabels(nQubits: int) -> Tuple[ReductionLabel, ...]:
    """All reductions of an arity in report order: pair traces, one vs two, one vs three, two vs two."""
    if nQubits not in (3, 4):
        raise WrongArity((3, 4), nQubits)
    parties = PARTIES[:nQubits]

    pairs = [ReductionLabel(ReductionKind.PAIR_TRACE, (p, q)) for p, q in itertools.combinations(parties, 2)]

    splits = []
    for triple in itertools.combinations(parties, 3):
        splits.extend(ReductionLabel(ReductionKind.ONE_VS_TWO, groups) for groups in _cyclicSplits("".join(triple)))
    splits.sort(key=str)

    if nQubits == 3:
        return tuple(pairs + splits)

    oneVsThree = [ReductionLabel(ReductionKind.ONE_VS_THREE, (p, parties[i + 1:] + parties[:i]))
                  for i, p in enumerate(parties)]
    # canonical representative: the group holding A comes first
    twoVsTwo = [ReductionLabel(ReductionKind.TWO_VS_TWO, ("A" + q, "".join(sorted(set("BCD") - {q}))))
                for q in "BCD"]
    return tuple(pairs + splits + oneVsThree + twoVsTwo)


@dataclass(frozen=True, eq=False)
class ReductionSet:
    nQubits: int
    entries: Dict[ReductionLabel, DensityMatrix]

    def __post_init__(self):
        expected = enumerateLabels(self.nQubits)
        if tuple(self.entries) != expected:
            raise ValueError(f"a {self.nQubits}-qubit reduction set needs exactly the {len(expected)} canonical labels")

    def __getitem__(self, label) -> DensityMatrix:
        return self.entries[ReductionLabel.parse(label, self.nQubits)]

    def __iter__(self) -> Iterator[ReductionLabel]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()


def _resolve(rho: DensityMatrix, label, arities: Tuple[int, ...],
             kinds: Optional[Tuple[ReductionKind, ...]] = None) -> ReductionLabel:
    if rho.nQubits not in arities:
        raise WrongArity(arities, rho.nQubits)
    resolved = ReductionLabel.parse(label, rho.nQubits)
    if kinds and resolved.kind not in kinds:
        valid = [str(l) for l in enumerateLabels(rho.nQubits) if l.kind in kinds]
        raise BadLabel(str(label), valid, rho.nQubits)
    return resolved


@lru_cache(maxsize=None)
def patternIndices(label: ReductionLabel, nQubits: int) -> np.ndarray:
    """
    Row k holds, for each output basis state xy (x most significant), the composite index of the n-qubit
    basis state that pattern k pairs with it. Shape (patterns, 4).
    """
    positions = {party: i for i, party in enumerate(PARTIES[:nQubits])}
    xGroup, yGroup = ([positions[p] for p in group] for group in label.groups)
    partners = xGroup[1:] + yGroup[1:]
    traced = [positions[p] for p in label.traced(nQubits)]
    free = partners + traced

    rows = []
    for pattern in itertools.product((0, 1), repeat=len(free)):
        row = []
        for x, y in itertools.product((0, 1), repeat=2):
            bits = [0] * nQubits
            bits[xGroup[0]] = x
            bits[yGroup[0]] = y
            for party, bit in zip(free, pattern):
                if party in xGroup:
                    bits[party] = x ^ bit
                elif party in yGroup:
                    bits[party] = y ^ bit
                else:
                    bits[party] = bit
            row.append(int("".join(map(str, bits)), 2))
        rows.append(row)
    return np.array(rows, dtype=np.intp)


def _patternSum(rho: DensityMatrix, label: ReductionLabel) -> DensityMatrix:
    indices = patternIndices(label, rho.nQubits)
    reduced = rho.mat[indices[:, :, None], indices[:, None, :]].sum(axis=0)
    return rho.derive(reduced, 2)


def groupKraus(size: int) -> List[ComplexMatrix]:
    """Operators |j><j, j^p_1, ..., j^p_(size-1)| for every pattern p, mapping a party group onto one qubit."""
    basis = np.eye(2, dtype=np.complex128)
    operators = []
    for pattern in itertools.product((0, 1), repeat=size - 1):
        kraus = np.zeros((2, 2 ** size), dtype=np.complex128)
        for j in (0, 1):
            bra = foldl(np.kron, [basis[j]] + [basis[j ^ bit] for bit in pattern])
            kraus += np.outer(basis[j], bra)
        operators.append(kraus)
    return operators


@lru_cache(maxsize=None)
def krausOperators(label: ReductionLabel, nQubits: int) -> Tuple[ComplexMatrix, ...]:
    """
    Operator-sum form of a reduction, acting on the qubits reordered as (X group, Y group, traced parties),
    see :func:`channelOrder`. The operators satisfy sum K^H K = I.
    """
    basis = np.eye(2, dtype=np.complex128)
    traceRows = [foldl(np.kron, [basis[b] for b in bits], np.ones(1, dtype=np.complex128))[None, :]
                 for bits in itertools.product((0, 1), repeat=len(label.traced(nQubits)))]
    xSize, ySize = (len(group) for group in label.groups)
    operators = tuple(np.kron(np.kron(kx, ky), row)
                      for kx in groupKraus(xSize) for ky in groupKraus(ySize) for row in traceRows)
    for kraus in operators:
        kraus.setflags(write=False)
    return operators


def channelOrder(label: ReductionLabel, nQubits: int) -> Tuple[int, ...]:
    return tuple(PARTIES.index(p) for p in label.parties + label.traced(nQubits))


def _channel(rho: DensityMatrix, label: ReductionLabel) -> DensityMatrix:
    permuted = permuteQubits(rho.mat, channelOrder(label, rho.nQubits))
    reduced = sum(k @ permuted @ k.conj().T for k in krausOperators(label, rho.nQubits))
    return rho.derive(reduced, 2)


# tripartite

def reducePair(rho: DensityMatrix, label) -> DensityMatrix:
    label = _resolve(rho, label, (3,), (ReductionKind.PAIR_TRACE,))
    return partialTrace(rho, label.parties)


def reduceSplit(rho: DensityMatrix, label) -> DensityMatrix:
    return _patternSum(rho, _resolve(rho, label, (3,), (ReductionKind.ONE_VS_TWO,)))


def reduceSplitChannel(rho: DensityMatrix, label) -> DensityMatrix:
    return _channel(rho, _resolve(rho, label, (3,), (ReductionKind.ONE_VS_TWO,)))


def reduceAllTripartite(rho: DensityMatrix) -> ReductionSet:
    if rho.nQubits != 3:
        raise WrongArity((3,), rho.nQubits)
    return ReductionSet(3, {label: reduce(rho, label) for label in enumerateLabels(3)})


# quadripartite

def reduceOneVsThree(rho: DensityMatrix, label) -> DensityMatrix:
    return _patternSum(rho, _resolve(rho, label, (4,), (ReductionKind.ONE_VS_THREE,)))


def reduceTwoVsTwo(rho: DensityMatrix, label) -> DensityMatrix:
    return _patternSum(rho, _resolve(rho, label, (4,), (ReductionKind.TWO_VS_TWO,)))


def reduceTraceThenSplit(rho: DensityMatrix, tracedParty: str, label) -> DensityMatrix:
    """
    Traces out ``tracedParty`` and applies the split reduction to the remaining three parties, relabelled
    A, B, C in alphabetical order. ``label`` names the split with the original parties, e.g. "D,AB" after
    tracing C.
    """
    label = _resolve(rho, label, (4,), (ReductionKind.ONE_VS_TWO,))
    tracedParty = tracedParty.strip().upper()
    if label.traced(4) != tracedParty:
        valid = [str(l) for l in enumerateLabels(4)
                 if l.kind == ReductionKind.ONE_VS_TWO and l.traced(4) == tracedParty]
        raise BadLabel(str(label), valid, 4)

    remaining = "".join(sorted(label.parties))
    rename = str.maketrans(remaining, "ABC")
    tripartite = ReductionLabel.parse(str(label).translate(rename), 3)
    return reduceSplit(partialTrace(rho, remaining), tripartite)


def reduceAllQuadripartite(rho: DensityMatrix) -> ReductionSet:
    if rho.nQubits != 4:
        raise WrongArity((4,), rho.nQubits)
    return ReductionSet(4, {label: reduce(rho, label) for label in enumerateLabels(4)})


# any arity

def reduce(rho: DensityMatrix, label) -> DensityMatrix:
    label = _resolve(rho, label, (3, 4))
    if label.kind == ReductionKind.PAIR_TRACE:
        return partialTrace(rho, label.parties)
    return _patternSum(rho, label)


def reduceViaChannel(rho: DensityMatrix, label) -> DensityMatrix:
    return _channel(rho, _resolve(rho, label, (3, 4)))


def reduceAll(rho: DensityMatrix) -> ReductionSet:
    if rho.nQubits == 3:
        return reduceAllTripartite(rho)
    if rho.nQubits == 4:
        return reduceAllQuadripartite(rho)
    raise WrongArity((3, 4), rho.nQubits)
