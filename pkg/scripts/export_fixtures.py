#!/usr/bin/env python3
"""
Write catalog fixtures to fixtures/<name>.json as standalone matroid documents,
so they can be fed to the CLI without the catalog: prefix.
"""

import os
import sys

# Add parent directory to path to import lib modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lib.utils import save_json
from matroids.catalog import load_catalog
from matroids.oracle import matroid_to_document

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def export_fixtures(names, target):
    entries = load_catalog()
    chosen = names or sorted(entries)
    unknown = [name for name in chosen if name not in entries]
    if unknown:
        print(f"❌ Unknown fixtures: {', '.join(unknown)}")
        return 1

    for name in chosen:
        path = os.path.join(target, f"{name}.json")
        save_json(matroid_to_document(entries[name].matroid), path)
        print(f"📝 {name} -> {path}")
    print(f"✅ Exported {len(chosen)} fixture(s)")
    return 0


if __name__ == "__main__":
    sys.exit(export_fixtures(sys.argv[1:], os.path.join(ROOT, "fixtures")))
