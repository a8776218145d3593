"""Records produced by scanning one source file."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set


@dataclass
class FunctionRecord:
    """One function or method definition with a body."""

    name: str
    owner_class: Optional[str]
    start_line: int
    end_line: int
    loc: int
    mcc_traditional: int
    mcc_modified: int
    # Name-based views of the body used by the OO metrics.
    identifiers: FrozenSet[str] = frozenset()
    callees: FrozenSet[str] = frozenset()
    path: str = ""

    @property
    def qualified_name(self) -> str:
        return f"{self.owner_class}::{self.name}" if self.owner_class else self.name

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "name": self.qualified_name,
            "start_line": self.start_line,
            "end_line": self.end_line,
            "loc": self.loc,
            "mcc_traditional": self.mcc_traditional,
            "mcc_modified": self.mcc_modified,
        }


@dataclass
class ClassRecord:
    name: str
    base_names: List[str] = field(default_factory=list)
    attribute_names: Set[str] = field(default_factory=set)
    method_names: Set[str] = field(default_factory=set)
    methods: List[FunctionRecord] = field(default_factory=list)
    attribute_uses_per_method: Dict[str, Set[str]] = field(default_factory=dict)
    callee_names_per_method: Dict[str, Set[str]] = field(default_factory=dict)
    referenced_type_names: Set[str] = field(default_factory=set)
    path: str = ""
    line: int = 0
    # False for records synthesized from out-of-line ``C::m`` definitions,
    # which only contribute methods to a class defined elsewhere.
    has_body: bool = True

    def refresh_method_views(self) -> None:
        """Recompute per-method attribute uses and callees from the method bodies."""
        uses: Dict[str, Set[str]] = {}
        callees: Dict[str, Set[str]] = {}
        for m in self.methods:
            uses.setdefault(m.name, set()).update(m.identifiers & self.attribute_names)
            callees.setdefault(m.name, set()).update(m.callees)
        self.attribute_uses_per_method = uses
        self.callee_names_per_method = callees


@dataclass
class SourceFileRecord:
    path: str
    total_lines: int
    bloc: int
    cloc_comment: int
    loc: int
    statements: int
    functions: List[FunctionRecord] = field(default_factory=list)
    classes: List[ClassRecord] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
