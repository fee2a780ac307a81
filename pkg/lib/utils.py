from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple
import itertools
import json
import sys
from pathlib import Path

Subset = FrozenSet[str]


def save_json(document: Dict[str, Any], filename: str) -> None:
    """Save a JSON document deterministically ('-' writes to stdout)"""
    text = dumps_document(document)
    if filename == "-":
        sys.stdout.write(text + "\n")
        return
    target = Path(filename)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w") as f:
        f.write(text + "\n")


def load_json(filename: str) -> Dict[str, Any]:
    """Load a JSON document from a file ('-' reads stdin)"""
    if filename == "-":
        return json.loads(sys.stdin.read())
    with open(Path(filename), "r") as f:
        return json.load(f)


def dumps_document(document: Dict[str, Any]) -> str:
    """Byte-stable JSON rendering used for every emitted document"""
    return json.dumps(document, indent=2, sort_keys=True)


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human readable format"""
    if seconds < 60:
        return f"{seconds:.1f} seconds"
    elif seconds < 3600:
        minutes = seconds / 60
        return f"{minutes:.1f} minutes"
    else:
        hours = seconds / 3600
        return f"{hours:.1f} hours"


def order_subset(subset: Iterable[str], groundset: Sequence[str]) -> List[str]:
    """List the members of a subset in ground-set order"""
    members = set(subset)
    return [label for label in groundset if label in members]


def subsets(groundset: Sequence[str], min_size: int = 0, max_size: int = -1) -> Iterator[Subset]:
    """All subsets by increasing size, lexicographic in ground-set order within a size"""
    top = len(groundset) if max_size < 0 else min(max_size, len(groundset))
    for size in range(min_size, top + 1):
        for combo in itertools.combinations(groundset, size):
            yield frozenset(combo)


def subset_key(subset: Iterable[str], groundset: Sequence[str]) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: size first, then positions in the ground set"""
    index = {label: i for i, label in enumerate(groundset)}
    positions = tuple(sorted(index[label] for label in subset))
    return len(positions), positions


def hamming_distance(a: int, b: int) -> int:
    return bin(a ^ b).count("1")
