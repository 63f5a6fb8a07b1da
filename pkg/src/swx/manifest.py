"""Manifest documents and the built-in catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from .chambers import OnWall, PeriodPair, classify, sheet_of
from .errors import ManifestError, OnWallError
from .topology import ManifoldModel, build_model

FLAG_KEYS = {"psc_vanishing_side", "psc_omega", "notes"}
CATALOG_PREFIX = "catalog:"


@dataclass(frozen=True)
class CatalogFlags:
    psc_vanishing_side: str | None = None
    # period ray of a positive scalar curvature metric; paired with b = 0 it
    # fixes the vanishing side per class c
    psc_omega: tuple[int, ...] | None = None
    notes: str = ""

    @property
    def has_vanishing(self) -> bool:
        return self.psc_vanishing_side is not None or self.psc_omega is not None


@dataclass(frozen=True)
class Manifest:
    model: ManifoldModel
    flags: CatalogFlags = field(default_factory=CatalogFlags)
    source: str = ""

    def vanishing_side(self, c: Sequence[int]) -> str | None:
        """Side of the wall of type c holding the flagged PSC pair, or None."""
        if self.flags.psc_vanishing_side is not None:
            return self.flags.psc_vanishing_side
        if self.flags.psc_omega is None:
            return None
        omega = self.flags.psc_omega
        # the metric's self-dual generator is the representative lying in H0
        if sheet_of(self.model, omega) != "H0":
            omega = tuple(-v for v in omega)
        where = classify(self.model, c, PeriodPair(omega))
        if isinstance(where, OnWall):
            raise OnWallError(f"PSC pair (omega={self.flags.psc_omega}, b=0) lies on the wall of c={tuple(c)}")
        return where.side


def parse_flags(doc: Any, rank: int) -> CatalogFlags:
    if not isinstance(doc, Mapping):
        raise ManifestError("'catalog_flags' must be an object")
    unknown = sorted(set(doc) - FLAG_KEYS)
    if unknown:
        raise ManifestError(f"unknown catalog_flags key {unknown[0]!r}")
    side = doc.get("psc_vanishing_side")
    if side is not None and side not in ("+", "-"):
        raise ManifestError("'psc_vanishing_side' must be '+' or '-'")
    omega = doc.get("psc_omega")
    if omega is not None:
        if not isinstance(omega, list) or len(omega) != rank or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in omega
        ):
            raise ManifestError(f"'psc_omega' must be an integer array of length {rank}")
        omega = tuple(omega)
    if side is not None and omega is not None:
        raise ManifestError("give at most one of 'psc_vanishing_side' and 'psc_omega'")
    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise ManifestError("'notes' must be a string")
    return CatalogFlags(side, omega, notes)


def parse_manifest(doc: Any, source: str = "") -> Manifest:
    if not isinstance(doc, Mapping):
        raise ManifestError("manifest must be a JSON object")
    doc = dict(doc)
    raw_flags = doc.pop("catalog_flags", None)
    model = build_model(doc)
    flags = parse_flags(raw_flags, model.b2) if raw_flags is not None else CatalogFlags()
    if flags.psc_omega is not None:
        sheet_of(model, flags.psc_omega)  # rejects rays outside the positive cone
    return Manifest(model, flags, source)


def catalog_names() -> list[str]:
    root = resources.files("swx") / "catalog"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


@lru_cache(maxsize=None)
def load_catalog(name: str) -> Manifest:
    root = resources.files("swx") / "catalog"
    entry = root / f"{name}.json"
    if not entry.is_file():
        raise FileNotFoundError(f"no catalog entry {name!r}; available: {', '.join(catalog_names())}")
    return _parse_text(entry.read_text(encoding="utf-8"), CATALOG_PREFIX + name)


def load_manifest(path: str | Path) -> Manifest:
    """Load a manifest file, or a catalog entry given as ``catalog:NAME``."""
    path = str(path)
    if path.startswith(CATALOG_PREFIX):
        return load_catalog(path[len(CATALOG_PREFIX):])
    text = Path(path).read_text(encoding="utf-8")
    return _parse_text(text, path)


def _parse_text(text: str, source: str) -> Manifest:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{source}: invalid JSON: {exc}") from None
    return parse_manifest(doc, source)
