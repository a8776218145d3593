"""ISO 9126 maintainability criteria scored from metric values.

Every metric is inversely related to every criterion; the relation matrix
only says how strongly. A criterion score is one minus the weighted mean of
capped, linearly normalized metric values, so 1.0 is best and 0.0 worst.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

CRITERIA = ("Analyzability", "Changeability", "Stability", "Testability")
MATRIX_COLUMNS = (
    "LOC", "CLOC", "Statements", "Methods", "MCC_traditional", "MCC_modified",
    "CBO", "DIT", "NOC", "LCOM", "RFC", "WMC",
)


class Relation(str, enum.Enum):
    INVERSE = "i"
    STRONG_INVERSE = "I"


class ConfigurationError(ValueError):
    pass


class UnassessableError(ValueError):
    pass


@dataclass(frozen=True)
class RelationMatrix:
    cells: Mapping[Tuple[str, str], Relation]

    @classmethod
    def from_rows(cls, rows: Mapping[str, str]) -> "RelationMatrix":
        """Build from one string of ``i``/``I`` letters per criterion, in column order."""
        cells = {}
        for criterion, letters in rows.items():
            letters = letters.split()
            if len(letters) != len(MATRIX_COLUMNS):
                raise ConfigurationError(f"{criterion}: expected {len(MATRIX_COLUMNS)} cells")
            for column, letter in zip(MATRIX_COLUMNS, letters):
                cells[(criterion, column)] = Relation(letter)
        return cls(cells)

    def row(self, criterion: str) -> Dict[str, Relation]:
        if criterion not in CRITERIA:
            raise KeyError(f"unknown criterion: {criterion}")
        return {col: self.cells[(criterion, col)] for col in MATRIX_COLUMNS if (criterion, col) in self.cells}

    def letters(self, criterion: str) -> str:
        return " ".join(rel.value for rel in self.row(criterion).values())


DEFAULT_MATRIX = RelationMatrix.from_rows({
    #                LOC CLOC Stm Mth MCCt MCCm CBO DIT NOC LCOM RFC WMC
    "Analyzability": "I   I    I   I   I    I    I   I   i   I    I   I",
    "Changeability": "I   I    I   I   I    I    I   I   I   I    I   I",
    "Stability":     "i   i    i   i   i    i    I   i   i   I    i   i",
    "Testability":   "I   I    I   I   I    I    I   I   i   I    I   I",
})

DEFAULT_CAPS: Dict[str, float] = {
    "LOC": 1000, "CLOC": 1000, "Statements": 500, "Methods": 50,
    "MCC_traditional": 50, "MCC_modified": 50,
    "CBO": 14, "DIT": 6, "NOC": 10, "LCOM": 50, "RFC": 50, "WMC": 50,
}
DEFAULT_WEIGHTS: Dict[str, float] = {"I": 2.0, "i": 1.0}


def normalize_metric(value: float, cap: float) -> float:
    if cap <= 0:
        raise ConfigurationError(f"cap must be positive, got {cap}")
    return min(value, cap) / cap


def _score(contributions: Mapping[str, float], criterion: str, matrix: RelationMatrix,
           weights: Mapping[str, float]) -> float:
    num = den = 0.0
    for column, relation in matrix.row(criterion).items():
        if column not in contributions:
            continue
        w = weights[relation.value]
        num += w * contributions[column]
        den += w
    if den <= 0:
        raise UnassessableError(f"criterion unassessable: {criterion}")
    return min(1.0, max(0.0, 1.0 - num / den))


def _normalized(metrics: Mapping[str, float], caps: Mapping[str, float]) -> Dict[str, float]:
    return {m: normalize_metric(metrics[m], caps[m]) for m in MATRIX_COLUMNS if m in metrics}


def criterion_score(metrics: Mapping[str, float], criterion: str,
                    matrix: RelationMatrix = DEFAULT_MATRIX,
                    caps: Mapping[str, float] = DEFAULT_CAPS,
                    weights: Mapping[str, float] = DEFAULT_WEIGHTS) -> float:
    """Score one criterion in [0, 1]; metrics absent from ``metrics`` carry no weight."""
    return _score(_normalized(metrics, caps), criterion, matrix, weights)


@dataclass
class MaintainabilityReport:
    criteria: Dict[str, float]
    overall: float
    contributions: Dict[str, float] = field(default_factory=dict)
    caps: Dict[str, float] = field(default_factory=dict)
    weights: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "criteria": dict(self.criteria),
            "overall": self.overall,
            "contributions": dict(self.contributions),
            "caps": dict(self.caps),
            "weights": dict(self.weights),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MaintainabilityReport":
        return cls(
            criteria=dict(data["criteria"]),
            overall=data["overall"],
            contributions=dict(data.get("contributions", {})),
            caps=dict(data.get("caps", {})),
            weights=dict(data.get("weights", {})),
        )


def _report(contributions: Dict[str, float], matrix: RelationMatrix,
            caps: Mapping[str, float], weights: Mapping[str, float]) -> MaintainabilityReport:
    scores = {c: _score(contributions, c, matrix, weights) for c in CRITERIA}
    return MaintainabilityReport(
        criteria=scores,
        overall=sum(scores.values()) / len(scores),
        contributions=contributions,
        caps={m: caps[m] for m in MATRIX_COLUMNS},
        weights=dict(weights),
    )


def maintainability_report(metrics: Mapping[str, float],
                           matrix: RelationMatrix = DEFAULT_MATRIX,
                           caps: Mapping[str, float] = DEFAULT_CAPS,
                           weights: Mapping[str, float] = DEFAULT_WEIGHTS) -> MaintainabilityReport:
    return _report(_normalized(metrics, caps), matrix, caps, weights)


def package_maintainability(entity_vectors: Iterable[Mapping[str, float]],
                            matrix: RelationMatrix = DEFAULT_MATRIX,
                            caps: Mapping[str, float] = DEFAULT_CAPS,
                            weights: Mapping[str, float] = DEFAULT_WEIGHTS) -> MaintainabilityReport:
    """Package-level report from per-entity vectors (files and classes).

    Each metric is normalized per entity and the normalized values are
    averaged over the entities that carry that metric.
    """
    sums: Dict[str, float] = {}
    counts: Dict[str, int] = {}
    for vec in entity_vectors:
        for m, v in _normalized(vec, caps).items():
            sums[m] = sums.get(m, 0.0) + v
            counts[m] = counts.get(m, 0) + 1
    contributions = {m: sums[m] / counts[m] for m in MATRIX_COLUMNS if m in sums}
    return _report(contributions, matrix, caps, weights)
