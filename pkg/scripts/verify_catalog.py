#!/usr/bin/env python3
"""
Re-derive every recorded property of the bundled catalog: rank axioms,
GF(p) representability and 3-connectivity. Exits non-zero on any mismatch.
"""

import asyncio
import os
import sys
import time

# Add parent directory to path to import lib modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lib.utils import format_duration
from matroids.catalog import check_entry, load_catalog


async def verify_catalog(path=None) -> int:
    """Check each fixture in a worker thread"""

    print("🔍 Checking catalog fixtures...")
    print("=" * 60)

    entries = load_catalog(path)
    started = time.monotonic()
    results = await asyncio.gather(*(asyncio.to_thread(check_entry, entry) for entry in entries.values()))

    failures = 0
    for entry, problems in zip(entries.values(), results):
        if problems:
            failures += 1
            print(f"❌ {entry.name}: {'; '.join(problems)}")
        else:
            recorded = ", ".join(f"GF({p})={count}" for p, count in sorted(entry.rep_counts.items()))
            print(f"✅ {entry.name} ({entry.matroid.size} elements, rank {entry.matroid.full_rank}): {recorded}")

    print("=" * 60)
    print(f"📊 {len(entries) - failures}/{len(entries)} fixtures match ({format_duration(time.monotonic() - started)})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(asyncio.run(verify_catalog(sys.argv[1] if len(sys.argv) > 1 else None)))
