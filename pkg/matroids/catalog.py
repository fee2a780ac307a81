"""
Named fixture matroids with recorded properties
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from lib.config import config
from lib.errors import InvalidMatroid
from matroids.oracle import Matroid, direct_sum, matroid_from_document
from matroids.structure import axiom_check, is_connected_to_order

logger = logging.getLogger(__name__)

# Binary and ternary matroids are uniquely representable over GF(2) and GF(3)
UNIQUE_PRIMES = (2, 3)


@dataclass
class CatalogEntry:
    name: str
    description: str
    matroid: Matroid
    # prime -> number of inequivalent GF(p)-representations
    rep_counts: Dict[int, int] = field(default_factory=dict)
    clones: Optional[List[List[str]]] = None
    three_connected: Optional[bool] = None
    provenance: str = ""

    @property
    def representable(self) -> Dict[int, bool]:
        return {p: count > 0 for p, count in self.rep_counts.items()}

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "name": self.name,
            "description": self.description,
            "size": self.matroid.size,
            "rank": self.matroid.full_rank,
            "representable": {str(p): value for p, value in sorted(self.representable.items())},
            "rep_counts": {str(p): count for p, count in sorted(self.rep_counts.items())},
            "provenance": self.provenance,
        }
        if self.clones is not None:
            result["clones"] = self.clones
        if self.three_connected is not None:
            result["three_connected"] = self.three_connected
        return result


def _build(name: str, data: Dict[str, Any]) -> Matroid:
    if "matroid" in data:
        return matroid_from_document(data["matroid"])
    if "direct_sum" in data:
        parts = [matroid_from_document(part) for part in data["direct_sum"]]
        combined = parts[0]
        for part in parts[1:]:
            combined = direct_sum(combined, part)
        return combined
    raise InvalidMatroid(f"Catalog entry {name!r} has neither 'matroid' nor 'direct_sum'")


def load_catalog(path: Optional[str] = None) -> Dict[str, CatalogEntry]:
    """Load the YAML catalog into entries keyed by name"""
    catalog_path = Path(path or config.catalog_path)
    with open(catalog_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)

    entries = {}
    for name, item in (data.get("fixtures") or {}).items():
        entries[name] = CatalogEntry(
            name=name,
            description=item.get("description", ""),
            matroid=_build(name, item),
            rep_counts={int(p): int(v) for p, v in (item.get("rep_counts") or {}).items()},
            clones=item.get("clones"),
            three_connected=item.get("three_connected"),
            provenance=item.get("provenance", ""),
        )
    logger.debug(f"Loaded {len(entries)} catalog fixtures from {catalog_path}")
    return entries


def get_fixture(name: str, path: Optional[str] = None) -> CatalogEntry:
    entries = load_catalog(path)
    if name not in entries:
        raise InvalidMatroid(f"No catalog fixture named {name!r}", {"available": sorted(entries)})
    return entries[name]


def check_entry(entry: CatalogEntry) -> List[str]:
    """Re-derive an entry's recorded properties; returns the disagreements"""
    # Import here to avoid circular imports
    from matroids.freedom import clonal_classes
    from representation.service import create_representation_service

    problems = []
    report = axiom_check(entry.matroid)
    if not report.ok:
        problems.append(f"violates {report.rule}")
    service = create_representation_service()
    for p, expected in sorted(entry.rep_counts.items()):
        count = len(service.enumerate_reps(entry.matroid, p))
        if count != expected:
            problems.append(f"GF({p}) has {count} inequivalent representation(s), not {expected}")
        if p in UNIQUE_PRIMES and count > 1:
            problems.append(f"GF({p}) representation is not unique")
    if entry.clones is not None:
        found = sorted(sorted(cls) for cls in clonal_classes(entry.matroid))
        if found != sorted(sorted(cls) for cls in entry.clones):
            problems.append(f"clonal classes are {found}")
    if entry.three_connected is not None and is_connected_to_order(entry.matroid, 3) != entry.three_connected:
        problems.append(f"3-connectivity is not {entry.three_connected}")
    return problems
