"""Command-line entry point.

    cxxmetrics analyze <dir>... [options]
    cxxmetrics compare <report-a.json> <report-b.json> [options]

Exit codes: 0 success, 1 corpus or I/O error, 2 usage error. Reports go to
stdout (or ``--out``); diagnostics only ever go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .config import Settings, load_config, parse_extensions
from .graph import InheritanceCycleError
from .metrics import EmptyCorpusError
from .quality import ConfigurationError
from .report import FORMATS, ReportFormatError, build_snapshot_report, compare_snapshots, parse_report, serialize
from .scan import CorpusError, analyze_files, resolve_jobs, walk_and_admit

logger = logging.getLogger("cxxmetrics")

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    roots: List[str] = field(default_factory=list)
    reports: List[str] = field(default_factory=list)
    settings: Settings = field(default_factory=Settings)
    format: str = "table"
    out: Optional[str] = None
    label: Optional[str] = None
    jobs: int = 1
    details: List[str] = field(default_factory=list)
    quiet: bool = False
    verbose: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jobs(value: str):
    if value == "auto":
        return value
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer or 'auto'") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer or 'auto'")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="only report errors on stderr")
    common.add_argument("--verbose", action="store_true", help="list every diagnostic on stderr")

    parser = _Parser(prog="cxxmetrics", description="Size, complexity and OO metrics for C++ source trees.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    analyze = sub.add_parser("analyze", parents=[common], help="analyze one source tree")
    analyze.add_argument("roots", nargs="+", metavar="DIR")
    analyze.add_argument("--label", help="release label (default: directory name)")
    analyze.add_argument("--ext", help="comma-separated extensions to admit")
    analyze.add_argument("--exclude", action="append", default=[], metavar="GLOB")
    analyze.add_argument("--wmc-unit", action="store_true", help="weight every method 1 in WMC")
    analyze.add_argument("--config", metavar="PATH")
    analyze.add_argument("--jobs", type=_jobs, default=1, metavar="N|auto")
    analyze.add_argument("--per-file", action="store_true")
    analyze.add_argument("--per-class", action="store_true")
    analyze.add_argument("--per-function", action="store_true")

    compare = sub.add_parser("compare", parents=[common], help="compare two json reports")
    compare.add_argument("reports", nargs=2, metavar="REPORT")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse the command line; usage errors exit with status 2."""
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, format=ns.format, out=ns.out, quiet=ns.quiet, verbose=ns.verbose)
    if ns.command == "compare":
        cfg.reports = list(ns.reports)
        return cfg
    cfg.roots = list(ns.roots)
    cfg.label = ns.label
    cfg.jobs = resolve_jobs(ns.jobs)
    settings = Settings()
    if ns.config:
        try:
            settings = load_config(ns.config, settings)
        except ConfigurationError as exc:
            build_parser().exit(EXIT_USAGE, f"cxxmetrics: error: {exc}\n")
    if ns.ext:
        settings.extensions = parse_extensions(ns.ext)
        if not settings.extensions:
            build_parser().exit(EXIT_USAGE, "cxxmetrics: error: --ext admits no extension\n")
    settings.excludes = settings.excludes + tuple(ns.exclude)
    settings.wmc_unit = settings.wmc_unit or ns.wmc_unit
    cfg.settings = settings
    cfg.details = [kind for kind, on in (("file", ns.per_file), ("class", ns.per_class),
                                         ("function", ns.per_function)) if on]
    return cfg


def _emit(data: bytes, out: Optional[str]) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _analyze(cfg: RunConfig) -> int:
    items = walk_and_admit(cfg.roots, cfg.settings.extensions, cfg.settings.excludes)
    if not items:
        raise EmptyCorpusError("empty corpus")
    scan = analyze_files(items, cfg.jobs)
    if not scan.files:
        raise EmptyCorpusError("empty corpus")
    for rec in scan.files:
        for message in rec.diagnostics:
            logger.info("%s: %s", rec.path, message)
    label = cfg.label or os.path.basename(os.path.abspath(cfg.roots[0]))
    report = build_snapshot_report(scan.files, label, cfg.settings,
                                   extra_diagnostics=len(scan.skipped), details=cfg.details)
    if report.diagnostics and not cfg.verbose:
        logger.warning("%d diagnostics (use --verbose to list them)", report.diagnostics)
    _emit(serialize(report, cfg.format), cfg.out)
    return EXIT_OK


def _compare(cfg: RunConfig) -> int:
    reports = []
    for path in cfg.reports:
        with open(path, "rb") as fh:
            reports.append(parse_report(fh.read()))
    deltas = compare_snapshots(*reports)
    _emit(serialize(deltas, cfg.format), cfg.out)
    return EXIT_OK


def _configure_logging(cfg: RunConfig) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("cxxmetrics: %(levelname)s: %(message)s"))
    root = logging.getLogger("cxxmetrics")
    root.handlers[:] = [handler]
    root.propagate = False
    root.setLevel(logging.ERROR if cfg.quiet else logging.INFO if cfg.verbose else logging.WARNING)


def run(cfg: RunConfig) -> int:
    _configure_logging(cfg)
    try:
        if cfg.command == "compare":
            return _compare(cfg)
        return _analyze(cfg)
    except (CorpusError, EmptyCorpusError, InheritanceCycleError, ReportFormatError, OSError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
