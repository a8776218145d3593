"""Metric vectors and the program-size / code-distribution metrics."""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence

from .complexity import file_mcc
from .model import SourceFileRecord

METRIC_NAMES = (
    "LOC", "BLOC", "CLOC", "Files", "Methods", "Statements",
    "MCC_traditional", "MCC_modified",
    "CBO", "DIT", "LCOM", "NOC", "RFC", "WMC",
)
OO_METRICS = frozenset({"CBO", "DIT", "LCOM", "NOC", "RFC", "WMC"})
SIZE_METRICS = ("LOC", "BLOC", "CLOC")
DISTRIBUTION_METRICS = ("Statements", "Methods")
COMPLEXITY_METRICS = ("MCC_traditional", "MCC_modified")


class EmptyCorpusError(ValueError):
    pass


class MetricVector(Mapping[str, float]):
    """Named non-negative metric values; metrics that do not apply are simply absent."""

    def __init__(self, values: Optional[Mapping[str, float]] = None, **kwargs: float):
        merged: Dict[str, float] = dict(values or {}, **kwargs)
        for name, value in merged.items():
            if name not in METRIC_NAMES:
                raise KeyError(f"unknown metric: {name}")
            if value < 0:
                raise ValueError(f"metric {name} must be non-negative, got {value}")
        self._values = {k: merged[k] for k in METRIC_NAMES if k in merged}

    def __getitem__(self, name: str) -> float:
        return self._values[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def replace(self, **changes: float) -> "MetricVector":
        return MetricVector({**self._values, **changes})

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self._values.items())
        return f"MetricVector({inner})"


def file_size_metrics(record: SourceFileRecord) -> MetricVector:
    return MetricVector(
        LOC=record.loc,
        BLOC=record.bloc,
        CLOC=record.cloc_comment,
        Statements=record.statements,
        Methods=len(record.functions),
    )


def file_complexity_metrics(record: SourceFileRecord) -> MetricVector:
    traditional, modified = file_mcc(record.functions)
    return MetricVector(MCC_traditional=traditional, MCC_modified=modified)


def snapshot_distribution(records: Sequence[SourceFileRecord]) -> MetricVector:
    """Snapshot totals; ``Files`` counts admitted files only."""
    if not records:
        raise EmptyCorpusError("empty corpus")
    totals = {name: 0 for name in ("LOC", "BLOC", "CLOC", "Statements", "Methods")}
    for rec in records:
        for name, value in file_size_metrics(rec).items():
            totals[name] += value
    return MetricVector(Files=len(records), **totals)


def per_file_vectors(records: Iterable[SourceFileRecord]) -> Iterator[MetricVector]:
    for rec in records:
        yield MetricVector({**file_size_metrics(rec), **file_complexity_metrics(rec)})
