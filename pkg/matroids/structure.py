"""
Derived structure of a matroid read through its rank oracle:
closure, coclosure, connectivity, circuits, flats, cyclic flats,
axiom checks and brute-force equality.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

from lib.data_models import AxiomReport
from lib.errors import ExhaustiveBoundExceeded, GroundSetMismatch
from lib.utils import Subset, order_subset, subset_key, subsets
from matroids.oracle import (
    DualRankView,
    Matroid,
    RankOracle,
    check_exhaustive_bound,
    check_rank_axioms,
)

logger = logging.getLogger(__name__)


def rank_table(o: RankOracle) -> Dict[Subset, int]:
    """Rank of every subset; 2^|E| oracle calls"""
    check_exhaustive_bound(o.groundset)
    return {s: o.rank(s) for s in subsets(o.groundset)}


def full_rank(o: RankOracle) -> int:
    return o.rank(o.groundset)


def closure(o: RankOracle, subset: Iterable[str]) -> Subset:
    """{e : r(X + e) = r(X)} using |E - X| + 1 calls"""
    members = frozenset(subset)
    base = o.rank(members)
    spanned = set(members)
    for e in o.groundset:
        if e not in members and o.rank(members | {e}) == base:
            spanned.add(e)
    return frozenset(spanned)


def coclosure(o: RankOracle, subset: Iterable[str]) -> Subset:
    return closure(DualRankView(o), subset)


def connectivity(o: RankOracle, subset: Iterable[str]) -> int:
    """lambda(X) = r(X) + r(E - X) - r(M)"""
    members = frozenset(subset)
    complement = [e for e in o.groundset if e not in members]
    return o.rank(members) + o.rank(complement) - o.rank(o.groundset)


def separations(o: RankOracle, k: int) -> List[Tuple[Subset, Subset]]:
    """Every k-separation (A, E - A) with A holding the first element of E"""
    check_exhaustive_bound(o.groundset)
    if not o.groundset:
        return []
    first = o.groundset[0]
    rest = o.groundset[1:]
    table = rank_table(o)
    total = table[frozenset(o.groundset)]
    everything = frozenset(o.groundset)
    found = []
    for tail in subsets(rest):
        side = tail | {first}
        other = everything - side
        if table[side] + table[other] - total < k:
            found.append((side, other))
    return found


def is_connected_to_order(o: RankOracle, n: int) -> bool:
    """No k-separation with |A|, |B| >= k for any k < n (Tutte n-connectivity)"""
    for k in range(1, n):
        for side, other in separations(o, k):
            if len(side) >= k and len(other) >= k:
                return False
    return True


def is_loop(o: RankOracle, e: str) -> bool:
    return o.rank([e]) == 0


def is_coloop(o: RankOracle, e: str) -> bool:
    rest = [x for x in o.groundset if x != e]
    return o.rank(rest) < o.rank(o.groundset)


def circuits(o: RankOracle) -> List[Subset]:
    """All minimal dependent sets, ordered by size then ground-set position"""
    table = rank_table(o)
    found: List[Subset] = []
    for s in subsets(o.groundset):
        if table[s] < len(s) and all(table[s - {e}] == len(s) - 1 for e in s):
            found.append(s)
    return found


def flats(o: RankOracle) -> List[Subset]:
    table = rank_table(o)
    return _flats_from_table(o.groundset, table)


def _flats_from_table(groundset, table: Dict[Subset, int]) -> List[Subset]:
    found = []
    for s in subsets(groundset):
        value = table[s]
        if all(table[s | {e}] > value for e in groundset if e not in s):
            found.append(s)
    return found


def hyperplanes(o: RankOracle) -> List[Subset]:
    table = rank_table(o)
    top = table[frozenset(o.groundset)]
    return [f for f in _flats_from_table(o.groundset, table) if table[f] == top - 1]


def cyclic_flats(o: RankOracle) -> List[Subset]:
    """Flats F with r(F - x) = r(F) for every x in F (unions of circuits)"""
    table = rank_table(o)
    return cyclic_flats_from_table(o.groundset, table)


def cyclic_flats_from_table(groundset, table: Dict[Subset, int]) -> List[Subset]:
    found = []
    for f in _flats_from_table(groundset, table):
        if all(table[f - {x}] == table[f] for x in f):
            found.append(f)
    return found


def axiom_check(o: RankOracle) -> AxiomReport:
    report = check_rank_axioms(o.groundset, rank_table(o))
    if not report.ok:
        logger.info(f"Rank function violates {report.rule} at {report.witness}")
    return report


def _check_same_labels(o1: RankOracle, o2: RankOracle) -> None:
    if tuple(o1.groundset) != tuple(o2.groundset):
        raise GroundSetMismatch(
            "Matroids are on different ground sets",
            {"left": list(o1.groundset), "right": list(o2.groundset)},
        )


def first_difference(o1: RankOracle, o2: RankOracle) -> Optional[Subset]:
    """Smallest subset (size, then position) on which the two rank functions differ"""
    _check_same_labels(o1, o2)
    check_exhaustive_bound(o1.groundset)
    for s in subsets(o1.groundset):
        if o1.rank(s) != o2.rank(s):
            return s
    return None


def matroid_equal(o1: RankOracle, o2: RankOracle) -> bool:
    return first_difference(o1, o2) is None


def summary(matroid: Matroid) -> Dict[str, object]:
    """The `info` view of a matroid"""
    groundset = matroid.groundset
    r = matroid.full_rank
    result: Dict[str, object] = {
        "size": len(groundset),
        "rank": r,
        "corank": len(groundset) - r,
        "labels": list(groundset),
    }
    try:
        check_exhaustive_bound(groundset)
    except ExhaustiveBoundExceeded:
        result["bounded"] = False
        return result
    key = lambda s: subset_key(s, groundset)  # noqa: E731
    result["bounded"] = True
    result["circuits"] = [order_subset(c, groundset) for c in sorted(circuits(matroid), key=key)]
    result["cyclic_flats"] = [order_subset(f, groundset) for f in sorted(cyclic_flats(matroid), key=key)]
    result["loops"] = [e for e in groundset if is_loop(matroid, e)]
    result["coloops"] = [e for e in groundset if is_coloop(matroid, e)]
    return result
