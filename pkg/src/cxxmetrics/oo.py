"""Chidamber-Kemerer class metrics over a merged class graph."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations
from typing import List

from .graph import ClassGraph
from .model import ClassRecord


@dataclass(frozen=True)
class ClassMetrics:
    name: str
    cbo: int
    dit: int
    lcom: int
    noc: int
    rfc: int
    wmc: int
    methods: int

    def to_dict(self) -> dict:
        return asdict(self)


def dit(graph: ClassGraph, name: str) -> int:
    """Edges on the longest base chain from ``name`` to a class without bases."""
    graph.require(name)

    @lru_cache(maxsize=None)
    def depth(cls: str) -> int:
        bases = graph.bases_of(cls)
        return 1 + max(depth(b) for b in bases) if bases else 0

    return depth(name)


def noc(graph: ClassGraph, name: str) -> int:
    return len(graph.children_of(name))


def cbo(graph: ClassGraph, name: str) -> int:
    return len(graph.coupled_with(name))


def lcom(record: ClassRecord) -> int:
    """LCOM1: method pairs sharing no attribute minus pairs sharing one, floored at 0."""
    uses = [record.attribute_uses_per_method.get(m, set()) for m in sorted(record.method_names)]
    disjoint = shared = 0
    for a, b in combinations(uses, 2):
        if a & b:
            shared += 1
        else:
            disjoint += 1
    return max(0, disjoint - shared)


def rfc(record: ClassRecord) -> int:
    """Own method names plus distinct names called from them, one level deep."""
    response = set(record.method_names)
    for callees in record.callee_names_per_method.values():
        response |= callees
    return len(response)


def wmc(record: ClassRecord, unit_weight: bool = False) -> int:
    """Sum of traditional MCC over method bodies, or the method count with ``unit_weight``."""
    if unit_weight:
        return len(record.method_names)
    return sum(m.mcc_traditional for m in record.methods)


def class_metrics(graph: ClassGraph, unit_weight: bool = False) -> List[ClassMetrics]:
    out = []
    for name in sorted(graph.classes):
        rec = graph.classes[name]
        out.append(
            ClassMetrics(
                name=name,
                cbo=cbo(graph, name),
                dit=dit(graph, name),
                lcom=lcom(rec),
                noc=noc(graph, name),
                rfc=rfc(rec),
                wmc=wmc(rec, unit_weight),
                methods=len(rec.method_names),
            )
        )
    return out
