"""Corpus-wide class graph: merged class records, inheritance and coupling."""

from __future__ import annotations

import copy
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from .model import ClassRecord

logger = logging.getLogger(__name__)


class InheritanceCycleError(ValueError):
    def __init__(self, cycle: List[str]):
        self.cycle = cycle
        super().__init__("inheritance cycle: " + " -> ".join(cycle))


@dataclass
class ClassGraph:
    classes: Dict[str, ClassRecord] = field(default_factory=dict)
    # (derived, base) pairs between corpus classes.
    inheritance_edges: Set[Tuple[str, str]] = field(default_factory=set)
    # Unordered pairs stored sorted, so {A, B} is always (min, max).
    coupling_edges: Set[Tuple[str, str]] = field(default_factory=set)
    diagnostics: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._index()

    def _index(self) -> None:
        self._bases: Dict[str, Set[str]] = defaultdict(set)
        self._children: Dict[str, Set[str]] = defaultdict(set)
        self._coupled: Dict[str, Set[str]] = defaultdict(set)
        for derived, base in self.inheritance_edges:
            self._bases[derived].add(base)
            self._children[base].add(derived)
        for a, b in self.coupling_edges:
            self._coupled[a].add(b)
            self._coupled[b].add(a)

    def require(self, name: str) -> ClassRecord:
        try:
            return self.classes[name]
        except KeyError:
            raise LookupError(f"unknown class: {name}") from None

    def bases_of(self, name: str) -> Set[str]:
        self.require(name)
        return set(self._bases.get(name, ()))

    def children_of(self, name: str) -> Set[str]:
        self.require(name)
        return set(self._children.get(name, ()))

    def coupled_with(self, name: str) -> Set[str]:
        self.require(name)
        return set(self._coupled.get(name, ()))


class _Resolver:
    """Map a name as written in source to a corpus class, if any."""

    def __init__(self, names: Iterable[str]):
        self.names = set(names)
        self.by_last: Dict[str, List[str]] = defaultdict(list)
        for n in sorted(self.names):
            self.by_last[n.rsplit("::", 1)[-1]].append(n)

    def __call__(self, name: str) -> Optional[str]:
        parts = name.lstrip(":").split("::")
        # Drop leading qualifiers one at a time: namespaces are not modelled.
        for k in range(len(parts)):
            candidate = "::".join(parts[k:])
            if candidate in self.names:
                return candidate
        matches = self.by_last.get(parts[-1], [])
        return matches[0] if len(matches) == 1 else None


def _record_key(rec: ClassRecord) -> Tuple[str, int]:
    return (rec.path, rec.line)


def _flatten(records) -> List[ClassRecord]:
    flat: List[ClassRecord] = []
    for item in records:
        if isinstance(item, ClassRecord):
            flat.append(item)
        else:
            flat.extend(item)
    return flat


def _find_cycle(classes: Iterable[str], bases: Dict[str, Set[str]]) -> Optional[List[str]]:
    state: Dict[str, int] = {}
    for root in sorted(classes):
        if root in state:
            continue
        path: List[str] = []
        stack = [(root, iter(sorted(bases.get(root, ()))))]
        state[root] = 1
        path.append(root)
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                path.pop()
                continue
            if state.get(nxt) == 1:
                return path[path.index(nxt):] + [nxt]
            if nxt not in state:
                state[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(bases.get(nxt, ())))))
    return None


def build_class_graph(records: Iterable[Union[ClassRecord, Iterable[ClassRecord]]]) -> ClassGraph:
    """Merge per-file class records into one graph.

    Accepts a flat iterable of records or an iterable of per-file lists.
    The result depends only on the set of records, never on their order.

    Raises InheritanceCycleError if the resolved base relation has a cycle.
    """
    flat = sorted(_flatten(records), key=lambda r: (_record_key(r), r.name, not r.has_body))
    diagnostics: List[str] = []

    classes: Dict[str, ClassRecord] = {}
    for rec in flat:
        if not rec.has_body:
            continue
        if rec.name in classes:
            kept = classes[rec.name]
            diagnostics.append(
                f"duplicate definition of class {rec.name} at {rec.path}:{rec.line}; "
                f"keeping {kept.path}:{kept.line}"
            )
            continue
        classes[rec.name] = copy.deepcopy(rec)

    resolve = _Resolver(classes)
    for rec in flat:
        if rec.has_body:
            continue
        target = resolve(rec.name)
        if target is None:
            # Usually a namespace-qualified free function, not a class member.
            logger.debug("out-of-line owner %s is not a corpus class", rec.name)
            continue
        merged = classes[target]
        merged.method_names |= rec.method_names
        merged.methods.extend(rec.methods)
        merged.referenced_type_names |= rec.referenced_type_names

    inheritance: Set[Tuple[str, str]] = set()
    coupling: Set[Tuple[str, str]] = set()
    for name in sorted(classes):
        rec = classes[name]
        rec.methods.sort(key=lambda f: (f.path, f.start_line, f.name))
        rec.refresh_method_views()
        for base in rec.base_names:
            target = resolve(base)
            if target == name:
                # ``X<A> : X<B>`` (a specialization) or ``X : ns::X`` (a
                # namesake elsewhere): distinct classes that collapse onto one
                # name here, since template arguments and namespaces are dropped.
                diagnostics.append(f"class {name}: base {base} collapses onto the class itself; ignored")
                continue
            if target is None:
                diagnostics.append(f"class {name}: base {base} is not defined in the corpus")
                continue
            inheritance.add((name, target))
        for ref in rec.referenced_type_names:
            target = resolve(ref)
            if target is not None and target != name:
                coupling.add((min(name, target), max(name, target)))
    for derived, base in inheritance:
        coupling.add((min(derived, base), max(derived, base)))

    bases: Dict[str, Set[str]] = defaultdict(set)
    for derived, base in inheritance:
        bases[derived].add(base)
    cycle = _find_cycle(classes, bases)
    if cycle is not None:
        raise InheritanceCycleError(cycle)

    return ClassGraph(classes, inheritance, coupling, diagnostics)
