"""Snapshot reports: aggregate statistics, release comparison, serialization."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Union

from . import __version__
from .config import Settings
from .graph import build_class_graph
from .metrics import (
    COMPLEXITY_METRICS,
    DISTRIBUTION_METRICS,
    SIZE_METRICS,
    EmptyCorpusError,
    MetricVector,
    file_complexity_metrics,
    file_size_metrics,
)
from .model import SourceFileRecord
from .oo import class_metrics
from .quality import CRITERIA, DEFAULT_MATRIX, MaintainabilityReport, RelationMatrix, package_maintainability

logger = logging.getLogger(__name__)

TOOL_VERSION = f"cxxmetrics {__version__}"
STATISTICS = ("min", "max", "mean", "total", "count")
OO_COLUMNS = ("CBO", "DIT", "LCOM", "NOC", "RFC", "WMC", "Methods")
# (block key, entity kind, metric names in display order)
BLOCKS = (
    ("size", "file", SIZE_METRICS),
    ("distribution", "file", DISTRIBUTION_METRICS),
    ("complexity_per_file", "file", COMPLEXITY_METRICS),
    ("complexity_per_function", "function", COMPLEXITY_METRICS),
    ("oo", "class", OO_COLUMNS),
)
FORMATS = ("json", "csv", "table")


class ReportFormatError(ValueError):
    pass


@dataclass
class AggregateStats:
    metric: str
    min: float
    max: float
    mean: float
    total: float
    count: int

    def to_dict(self) -> dict:
        return {"metric": self.metric, "min": self.min, "max": self.max,
                "mean": self.mean, "total": self.total, "count": self.count}


def aggregate(values: Sequence[float], metric: str) -> AggregateStats:
    if not values:
        raise ValueError(f"no entities for metric {metric}")
    total = sum(values)
    return AggregateStats(metric, min(values), max(values), total / len(values), total, len(values))


@dataclass
class SnapshotReport:
    label: str
    files: int
    size: Dict[str, AggregateStats]
    distribution: Dict[str, AggregateStats]
    complexity_per_file: Dict[str, AggregateStats]
    complexity_per_function: Dict[str, AggregateStats]
    oo: Dict[str, AggregateStats]
    maintainability: MaintainabilityReport
    config_fingerprint: str
    tool_version: str = TOOL_VERSION
    diagnostics: int = 0
    details: Optional[Dict[str, list]] = None

    def blocks(self) -> Dict[str, Dict[str, AggregateStats]]:
        return {key: getattr(self, key) for key, _, _ in BLOCKS}

    def to_dict(self) -> dict:
        data = {"label": self.label, "files": self.files}
        for key, block in self.blocks().items():
            data[key] = {m: s.to_dict() for m, s in block.items()}
        data["maintainability"] = self.maintainability.to_dict()
        data["config_fingerprint"] = self.config_fingerprint
        data["tool_version"] = self.tool_version
        data["diagnostics"] = self.diagnostics
        if self.details is not None:
            data["details"] = self.details
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SnapshotReport":
        try:
            blocks = {
                key: {m: AggregateStats(**s) for m, s in data[key].items()}
                for key, _, _ in BLOCKS
            }
            return cls(
                label=data["label"],
                files=data["files"],
                maintainability=MaintainabilityReport.from_dict(data["maintainability"]),
                config_fingerprint=data["config_fingerprint"],
                tool_version=data["tool_version"],
                diagnostics=data.get("diagnostics", 0),
                details=data.get("details"),
                **blocks,
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ReportFormatError(f"not a snapshot report: {exc!r}") from None


def _block(vectors: Sequence, names: Iterable[str]) -> Dict[str, AggregateStats]:
    if not vectors:
        return {}
    return {name: aggregate([v[name] for v in vectors], name) for name in names}


def build_snapshot_report(records: Sequence[SourceFileRecord], label: str,
                          settings: Optional[Settings] = None,
                          matrix: RelationMatrix = DEFAULT_MATRIX,
                          extra_diagnostics: int = 0,
                          details: Sequence[str] = ()) -> SnapshotReport:
    """Assemble the full report for one analyzed tree.

    ``details`` may name any of "file", "class", "function" to embed
    per-entity rows in addition to the aggregate blocks.
    """
    if not records:
        raise EmptyCorpusError("empty corpus")
    settings = settings or Settings()
    records = sorted(records, key=lambda r: r.path)
    graph = build_class_graph(r.classes for r in records)
    for message in graph.diagnostics:
        logger.info("%s", message)
    classes = class_metrics(graph, unit_weight=settings.wmc_unit)
    functions = [f for r in records for f in r.functions]

    file_vectors = [MetricVector({**file_size_metrics(r), **file_complexity_metrics(r)}) for r in records]
    function_vectors = [MetricVector(MCC_traditional=f.mcc_traditional, MCC_modified=f.mcc_modified) for f in functions]
    class_rows = [
        {"CBO": c.cbo, "DIT": c.dit, "LCOM": c.lcom, "NOC": c.noc, "RFC": c.rfc, "WMC": c.wmc, "Methods": c.methods}
        for c in classes
    ]
    class_vectors = [MetricVector({k: v for k, v in row.items() if k != "Methods"}) for row in class_rows]

    quality = package_maintainability(file_vectors + class_vectors, matrix, settings.caps, settings.weights)

    detail_blocks = None
    if details:
        detail_blocks = {}
        if "file" in details:
            detail_blocks["files"] = [{"path": r.path, **dict(v)} for r, v in zip(records, file_vectors)]
        if "class" in details:
            detail_blocks["classes"] = [c.to_dict() for c in classes]
        if "function" in details:
            detail_blocks["functions"] = [f.to_dict() for f in functions]

    return SnapshotReport(
        label=label,
        files=len(records),
        size=_block(file_vectors, SIZE_METRICS),
        distribution=_block(file_vectors, DISTRIBUTION_METRICS),
        complexity_per_file=_block(file_vectors, COMPLEXITY_METRICS),
        complexity_per_function=_block(function_vectors, COMPLEXITY_METRICS),
        oo=_block(class_rows, OO_COLUMNS),
        maintainability=quality,
        config_fingerprint=settings.fingerprint(),
        diagnostics=extra_diagnostics + sum(len(r.diagnostics) for r in records) + len(graph.diagnostics),
        details=detail_blocks,
    )


@dataclass
class ReleaseDelta:
    metric: str
    value_before: float
    value_after: float
    delta: float
    percent: Optional[float]
    trend: str

    def to_dict(self) -> dict:
        return {"metric": self.metric, "value_before": self.value_before, "value_after": self.value_after,
                "delta": self.delta, "percent": self.percent, "trend": self.trend}


def _flatten(report: SnapshotReport) -> Dict[str, float]:
    flat = {"files": report.files}
    for key, block in report.blocks().items():
        for metric, stats in block.items():
            for stat in STATISTICS:
                flat[f"{key}.{metric}.{stat}"] = getattr(stats, stat)
    for criterion, score in report.maintainability.criteria.items():
        flat[f"maintainability.{criterion}"] = score
    flat["maintainability.overall"] = report.maintainability.overall
    return flat


def trend_of(delta: float) -> str:
    if delta > 0:
        return "Increasing"
    if delta < 0:
        return "Decreasing"
    return "Flat"


def compare_snapshots(before: SnapshotReport, after: SnapshotReport) -> List[ReleaseDelta]:
    """One delta per metric/statistic present in both reports, in report order."""
    if before.config_fingerprint != after.config_fingerprint:
        logger.warning(
            "reports were produced with different settings (%s vs %s); deltas may not be comparable",
            before.config_fingerprint, after.config_fingerprint,
        )
    a, b = _flatten(before), _flatten(after)
    shared = [k for k in a if k in b]
    # The file count and overall score exist in every report; without any
    # other shared key there is nothing to compare.
    if not set(shared) - {"files", "maintainability.overall"}:
        raise ValueError("reports share no metrics")
    deltas = []
    for key in shared:
        delta = b[key] - a[key]
        percent = (delta / a[key] * 100.0) if a[key] else None
        deltas.append(ReleaseDelta(key, a[key], b[key], delta, percent, trend_of(delta)))
    return deltas


# -- serialization -----------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float) and not value.is_integer():
        return f"{value:.2f}"
    if isinstance(value, float):
        return str(int(value)) if abs(value) < 1e15 else f"{value:.2f}"
    return str(value)


def _report_csv(report: SnapshotReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["entity_kind", "metric", "statistic", "value"])
    writer.writerow(["snapshot", "Files", "count", report.files])
    for key, kind, _ in BLOCKS:
        for metric, stats in getattr(report, key).items():
            for stat in STATISTICS:
                writer.writerow([kind, metric, stat, getattr(stats, stat)])
    for criterion in CRITERIA:
        writer.writerow(["snapshot", criterion, "score", report.maintainability.criteria[criterion]])
    writer.writerow(["snapshot", "Maintainability", "overall", report.maintainability.overall])
    return buf.getvalue()


_TITLES = {
    "size": "Program size (per file)",
    "distribution": "Code distribution (per file)",
    "complexity_per_file": "Complexity (per-file MCC sums)",
    "complexity_per_function": "Complexity (per function)",
    "oo": "Object orientation (per class)",
}
_HEADINGS = {"MCC_traditional": "Trad.MCC", "MCC_modified": "Mod.MCC"}


def _grid(rows: List[List[str]]) -> List[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return lines


def _report_table(report: SnapshotReport) -> str:
    out = [f"Release {report.label} (#Files = {report.files})", ""]
    for key, _, _ in BLOCKS:
        block = getattr(report, key)
        if not block:
            continue
        out.append(_TITLES[key])
        metrics = list(block)
        rows = [["Values"] + [_HEADINGS.get(m, m) for m in metrics]]
        for stat in ("min", "max", "mean", "total"):
            rows.append([stat.capitalize()] + [_fmt(getattr(block[m], stat)) for m in metrics])
        rows.append(["Count"] + [str(block[m].count) for m in metrics])
        out.extend(_grid(rows))
        out.append("")
    out.append("Maintainability (ISO 9126)")
    m = report.maintainability
    rows = [["Criterion", "Score"]] + [[c, f"{m.criteria[c]:.2f}"] for c in CRITERIA]
    rows.append(["Overall", f"{m.overall:.2f}"])
    out.extend(_grid(rows))
    out.append("")
    if report.details:
        for name, entries in report.details.items():
            if not entries:
                continue
            out.append(f"Details: {name}")
            cols = list(entries[0])
            out.extend(_grid([cols] + [[_fmt(e[c]) for c in cols] for e in entries]))
            out.append("")
    out.append(f"config {report.config_fingerprint}  {report.tool_version}  diagnostics {report.diagnostics}")
    return "\n".join(out) + "\n"


def _deltas_csv(deltas: Sequence[ReleaseDelta]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "value_before", "value_after", "delta", "percent", "trend"])
    for d in deltas:
        writer.writerow([d.metric, d.value_before, d.value_after, d.delta,
                         "" if d.percent is None else d.percent, d.trend])
    return buf.getvalue()


def _deltas_table(deltas: Sequence[ReleaseDelta]) -> str:
    rows = [["Metric", "Before", "After", "Delta", "Delta %", "Trend"]]
    for d in deltas:
        pct = "-" if d.percent is None else f"{d.percent:+.2f}"
        rows.append([d.metric, _fmt(d.value_before), _fmt(d.value_after), _fmt(d.delta), pct, d.trend])
    return "\n".join(_grid(rows)) + "\n"


def serialize(obj: Union[SnapshotReport, Sequence[ReleaseDelta]], fmt: str) -> bytes:
    """Render a report or a delta list as json, csv or a fixed-width table."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(obj, SnapshotReport):
        if fmt == "json":
            text = json.dumps(obj.to_dict(), indent=2) + "\n"
        elif fmt == "csv":
            text = _report_csv(obj)
        else:
            text = _report_table(obj)
    else:
        deltas = list(obj)
        if fmt == "json":
            text = json.dumps([d.to_dict() for d in deltas], indent=2) + "\n"
        elif fmt == "csv":
            text = _deltas_csv(deltas)
        else:
            text = _deltas_table(deltas)
    return text.encode("utf-8")


def parse_report(data: Union[str, bytes]) -> SnapshotReport:
    try:
        payload = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ReportFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ReportFormatError("not a snapshot report: top level is not an object")
    return SnapshotReport.from_dict(payload)
