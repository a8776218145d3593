"""Analysis settings and the INI-style configuration file.

Recognised sections::

    [caps]        LOC = 1000, ..., MCC = 50 (sets both MCC variants)
    [weights]     I = 2, i = 1
    [admission]   extensions = .cc, .hh    exclude = **/test/**, **/bench/**
"""

from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .quality import DEFAULT_CAPS, DEFAULT_WEIGHTS, MATRIX_COLUMNS, ConfigurationError

DEFAULT_EXTENSIONS: Tuple[str, ...] = (".cc", ".cpp", ".cxx", ".hh", ".hpp", ".h", ".icc")


@dataclass
class Settings:
    extensions: Tuple[str, ...] = DEFAULT_EXTENSIONS
    excludes: Tuple[str, ...] = ()
    caps: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    weights: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    wmc_unit: bool = False

    def validate(self) -> None:
        if not self.extensions:
            raise ConfigurationError("no file extensions admitted")
        for name, cap in self.caps.items():
            if cap <= 0:
                raise ConfigurationError(f"cap for {name} must be positive, got {cap}")
        for letter in ("I", "i"):
            if self.weights.get(letter, -1) < 0:
                raise ConfigurationError(f"weight {letter} must be non-negative")

    def fingerprint(self) -> str:
        """Short hash of everything that changes metric values for the same tree."""
        payload = json.dumps(
            {
                "caps": self.caps,
                "weights": self.weights,
                "extensions": sorted(self.extensions),
                "wmc_unit": self.wmc_unit,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def parse_extensions(text: str) -> Tuple[str, ...]:
    exts = []
    for item in text.replace("\n", ",").split(","):
        item = item.strip()
        if item:
            exts.append(item if item.startswith(".") else "." + item)
    return tuple(exts)


def _split_list(text: str) -> Tuple[str, ...]:
    return tuple(p.strip() for p in text.replace("\n", ",").split(",") if p.strip())


def _number(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"[{section}] {key}: not a number: {raw!r}") from None


def load_config(path: str, base: Settings = None) -> Settings:
    """Read a config file on top of ``base`` (defaults when omitted)."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case-sensitive: "I" and "i" differ
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed config {path}: {exc}") from None

    settings = base or Settings()
    caps = dict(settings.caps)
    weights = dict(settings.weights)
    for section in parser.sections():
        items = parser.items(section)
        if section == "caps":
            for key, raw in items:
                targets = ("MCC_traditional", "MCC_modified") if key == "MCC" else (key,)
                for target in targets:
                    if target not in MATRIX_COLUMNS:
                        raise ConfigurationError(f"[caps] unknown metric {key}")
                    caps[target] = _number(section, key, raw)
        elif section == "weights":
            for key, raw in items:
                if key not in ("I", "i"):
                    raise ConfigurationError(f"[weights] expected I or i, got {key}")
                weights[key] = _number(section, key, raw)
        elif section == "admission":
            for key, raw in items:
                if key == "extensions":
                    settings.extensions = parse_extensions(raw)
                elif key == "exclude":
                    settings.excludes = settings.excludes + _split_list(raw)
                else:
                    raise ConfigurationError(f"[admission] unknown key {key}")
        else:
            raise ConfigurationError(f"unknown section [{section}]")
    settings.caps = caps
    settings.weights = weights
    settings.validate()
    return settings
