"""Directory walking, file admission and (optionally parallel) per-file analysis."""

from __future__ import annotations

import logging
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .extract import analyze_file
from .model import SourceFileRecord

logger = logging.getLogger(__name__)


def glob_to_regex(pattern: str) -> "re.Pattern[str]":
    """Translate a path glob with ``**`` support into an anchored regex."""
    out = []
    i = 0
    n = len(pattern)
    while i < n:
        if pattern.startswith("**/", i):
            out.append("(?:.*/)?")
            i += 3
        elif pattern.startswith("/**", i) and i + 3 == n:
            out.append("(?:/.*)?")
            i += 3
        elif pattern.startswith("**", i):
            out.append(".*")
            i += 2
        elif pattern[i] == "*":
            out.append("[^/]*")
            i += 1
        elif pattern[i] == "?":
            out.append("[^/]")
            i += 1
        elif pattern[i] == "[":
            end = pattern.find("]", i + 1)
            if end < 0:
                out.append(re.escape("["))
                i += 1
            else:
                body = pattern[i + 1:end].replace("\\", "\\\\")
                if body.startswith("!"):
                    body = "^" + body[1:]
                out.append(f"[{body}]")
                i = end + 1
        else:
            out.append(re.escape(pattern[i]))
            i += 1
    return re.compile("".join(out) + r"\Z")


class Excluder:
    def __init__(self, patterns: Sequence[str]):
        self.rules = [(glob_to_regex(p), "/" not in p) for p in patterns]

    def __call__(self, rel_path: str) -> bool:
        base = rel_path.rsplit("/", 1)[-1]
        for rx, basename_only in self.rules:
            if rx.match(rel_path) or (basename_only and rx.match(base)):
                return True
        return False


class CorpusError(Exception):
    """The tree cannot be scanned at all (missing root, nothing admitted)."""


def walk_and_admit(roots: Sequence[str], extensions: Sequence[str],
                   excludes: Sequence[str] = ()) -> List[Tuple[str, str]]:
    """Admitted files as sorted ``(filesystem path, display path)`` pairs.

    Display paths are POSIX-style and relative to the root (or to the
    common parent of several roots). Symbolic links are never followed.
    Extension filtering happens before exclusion patterns are applied.
    """
    if not roots:
        raise CorpusError("no root path given")
    for root in roots:
        if not os.path.isdir(root) or not os.access(root, os.R_OK | os.X_OK):
            raise CorpusError(f"cannot read directory: {root}")
    roots = [os.path.abspath(r) for r in roots]
    anchor = roots[0] if len(roots) == 1 else os.path.commonpath(roots)
    exts = tuple(e.lower() for e in extensions)
    excluded = Excluder(excludes)
    admitted = {}
    for root in roots:
        for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
            dirnames.sort()
            for fname in filenames:
                full = os.path.join(dirpath, fname)
                if os.path.islink(full) or not fname.lower().endswith(exts):
                    continue
                rel = os.path.relpath(full, anchor).replace(os.sep, "/")
                if excluded(rel):
                    continue
                admitted[rel] = full
    return [(admitted[rel], rel) for rel in sorted(admitted)]


@dataclass
class ScanResult:
    files: List[SourceFileRecord] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def diagnostic_count(self) -> int:
        return len(self.skipped) + sum(len(f.diagnostics) for f in self.files)


def _analyze(item: Tuple[str, str]) -> Tuple[Optional[SourceFileRecord], Optional[str]]:
    path, rel = item
    try:
        return analyze_file(path, rel), None
    except OSError as exc:
        return None, f"{rel}: unreadable ({exc.strerror or exc})"


def resolve_jobs(jobs) -> int:
    if jobs in (None, "auto"):
        return max(1, os.cpu_count() or 1)
    jobs = int(jobs)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    return jobs


def analyze_files(items: Sequence[Tuple[str, str]], jobs=1) -> ScanResult:
    """Analyze files, in parallel when ``jobs`` > 1; output order follows ``items``."""
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        outcomes = [_analyze(it) for it in items]
    else:
        chunk = max(1, len(items) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_analyze, items, chunksize=chunk))
    result = ScanResult()
    for record, problem in outcomes:
        if record is not None:
            result.files.append(record)
        else:
            logger.warning("skipped %s", problem)
            result.skipped.append(problem)
    return result
