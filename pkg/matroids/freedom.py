"""
Freer-than order, clones, fixed elements and freedom
Freedom is found by depth-first search over single-element extensions in
which every added element is an independent clone of the growing set.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from lib.config import config
from lib.data_models import (
    BoundCorReport,
    FreedomReport,
    FreedomValue,
    Overflow,
    UniformMinorWitness,
    freedom_to_json,
)
from lib.errors import NotApplicable, UnknownElement
from lib.utils import Subset, order_subset
from matroids.extensions import ExtensionLattice, fresh_label, rank_vector
from matroids.oracle import (
    DualRankView,
    MinorMatroid,
    RankOracle,
    RankTableMatroid,
    check_exhaustive_bound,
)
from matroids.structure import cyclic_flats_from_table, rank_table, separations

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FreerRelation:
    """freer[i][j] holds when every cyclic flat containing element i contains element j"""

    groundset: Tuple[str, ...]
    freer: np.ndarray

    def _index(self, label: str) -> int:
        try:
            return self.groundset.index(label)
        except ValueError:
            raise UnknownElement(f"Unknown element {label!r}")

    def is_freer(self, e: str, f: str) -> bool:
        return bool(self.freer[self._index(e), self._index(f)])

    def are_clones(self, e: str, f: str) -> bool:
        return self.is_freer(e, f) and self.is_freer(f, e)

    def incomparable(self, e: str, f: str) -> bool:
        return not self.is_freer(e, f) and not self.is_freer(f, e)

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.groundset), "freer": self.freer.astype(int).tolist()}


def _freer_from_table(groundset, table: Dict[Subset, int]) -> FreerRelation:
    labels = tuple(groundset)
    freer = np.ones((len(labels), len(labels)), dtype=bool)
    for flat in cyclic_flats_from_table(labels, table):
        inside = np.array([label in flat for label in labels], dtype=bool)
        # rows inside the flat lose every column outside it
        freer[np.ix_(inside, ~inside)] = False
    freer.setflags(write=False)
    return FreerRelation(labels, freer)


def freer_relation(o: RankOracle) -> FreerRelation:
    return _freer_from_table(o.groundset, rank_table(o))


def clonal_classes(o: RankOracle) -> List[List[str]]:
    relation = freer_relation(o)
    classes: List[List[str]] = []
    for e in relation.groundset:
        for cls in classes:
            if relation.are_clones(cls[0], e):
                cls.append(e)
                break
        else:
            classes.append([e])
    return classes


def _clonal_set(groundset, table: Dict[Subset, int], members: FrozenSet[str]) -> bool:
    """All of `members` lie in exactly the same cyclic flats"""
    for flat in cyclic_flats_from_table(groundset, table):
        inside = len(members & flat)
        if inside and inside != len(members):
            return False
    return True


def _is_loop(table: Dict[Subset, int], e: str) -> bool:
    return table[frozenset([e])] == 0


def _is_coloop(groundset, table: Dict[Subset, int], e: str) -> bool:
    everything = frozenset(groundset)
    return table[everything - {e}] < table[everything]


class _FreedomSearch:
    """Iterated extension search for the largest independent clonal set through e"""

    def __init__(self, base: RankTableMatroid, e: str, cap: int):
        self.base = base
        self.e = e
        self.cap = cap
        self.rank = base.full_rank
        self.best = 1
        self.seen: Set[Tuple[Tuple[int, ...], FrozenSet[str]]] = set()
        self.bound = len(base.groundset) + self.rank

    def run(self) -> FreedomValue:
        table = self.base.table
        relation = _freer_from_table(self.base.groundset, table)
        clones = [x for x in self.base.groundset if x != self.e and relation.are_clones(self.e, x)]
        # Start from every independent clonal subset of e's existing clones
        for size in range(len(clones) + 1):
            for extra in itertools.combinations(clones, size):
                start = frozenset((self.e,) + extra)
                if table[start] != len(start):
                    continue
                if self._record(len(start)):
                    return Overflow(self.cap)
                if self._grow(self.base, start):
                    return Overflow(self.cap)
        return self.best

    def _record(self, size: int) -> bool:
        self.best = max(self.best, size)
        return self.best > self.cap

    def _grow(self, matroid: RankTableMatroid, clones: FrozenSet[str]) -> bool:
        """True once the cap is exceeded"""
        if len(clones) >= self.rank:
            return False
        lattice = ExtensionLattice(matroid, bound=self.bound)
        allowed = 0
        for i, h in enumerate(lattice.hyperplanes):
            if clones <= h:
                allowed |= 1 << i
        label = fresh_label(matroid.groundset)
        grown = clones | {label}
        for mask in lattice.linear_subclasses(allowed):
            if lattice.in_cut(mask, clones):
                continue
            extension = lattice.extend(mask, label)
            key = (rank_vector(extension), grown)
            if key in self.seen:
                continue
            self.seen.add(key)
            if not _clonal_set(extension.groundset, extension.table, grown):
                continue
            logger.debug(f"Clonal set {sorted(grown)} reached in a {len(extension.groundset)}-element extension")
            if self._record(len(grown)):
                return True
            if self._grow(extension, grown):
                return True
        return False


def freedom(o: RankOracle, e: str, cap: Optional[int] = None) -> FreedomValue:
    """Freedom of e: 0 for loops, infinity for coloops, Overflow(cap) past the cap"""
    check_exhaustive_bound(o.groundset, config.max_extension_ground_set)
    if e not in o.groundset:
        raise UnknownElement(f"Unknown element {e!r}")
    cap = len(o.groundset) if cap is None else cap
    if cap < 1:
        raise NotApplicable(f"Freedom cap must be at least 1, got {cap}")
    base = RankTableMatroid.from_oracle(o)
    if _is_loop(base.table, e):
        return 0
    if _is_coloop(base.groundset, base.table, e):
        return math.inf
    return _FreedomSearch(base, e, cap).run()


def cofreedom(o: RankOracle, e: str, cap: Optional[int] = None) -> FreedomValue:
    return freedom(DualRankView(o), e, cap)


def _at_most_one(value: FreedomValue) -> bool:
    return not isinstance(value, Overflow) and value <= 1


def is_fixed(o: RankOracle, e: str) -> bool:
    return _at_most_one(freedom(o, e, cap=1))


def is_cofixed(o: RankOracle, e: str) -> bool:
    return _at_most_one(cofreedom(o, e, cap=1))


def freedom_report(o: RankOracle, e: str, cap: int) -> FreedomReport:
    return FreedomReport(
        element=e,
        freedom=freedom(o, e, cap),
        cofreedom=cofreedom(o, e, cap),
        fixed=is_fixed(o, e),
        cofixed=is_cofixed(o, e),
        cap=cap,
    )


def _guts_separation(o: RankOracle, e: str, t: int, dual: bool) -> bool:
    check_exhaustive_bound(o.groundset)
    table = rank_table(o)
    everything = frozenset(o.groundset)
    total = table[everything]

    def rank_of(subset: Subset) -> int:
        if dual:
            return len(subset) + table[everything - subset] - total
        return table[subset]

    def spans_e(subset: Subset) -> bool:
        rest = subset - {e}
        return rank_of(rest | {e}) == rank_of(rest)

    # lambda is the same in M and its dual, so the separations agree
    for side, other in separations(o, t + 1):
        if spans_e(side) and spans_e(other):
            return True
    return False


def freedom_upper_from_separation(o: RankOracle, e: str, t: int) -> bool:
    """Some (t+1)-separation (A, B) has e in cl(A - e) and cl(B - e), so freedom(e) <= t"""
    return _guts_separation(o, e, t, dual=False)


def cofreedom_upper_from_separation(o: RankOracle, e: str, t: int) -> bool:
    return _guts_separation(o, e, t, dual=True)


def _is_uniform(table: Dict[Subset, int], groundset) -> bool:
    r = table[frozenset(groundset)]
    return all(value == min(len(s), r) for s, value in table.items())


def uniform_minor_witness(o: RankOracle, e: str) -> UniformMinorWitness:
    """Delete or contract non-clones of e until one clonal class remains"""
    check_exhaustive_bound(o.groundset)
    current = RankTableMatroid.from_oracle(o)
    if e not in current.groundset:
        raise UnknownElement(f"Unknown element {e!r}")
    if _is_loop(current.table, e) or _is_coloop(current.groundset, current.table, e):
        raise NotApplicable(f"{e} is a loop or a coloop", {"element": e})

    deleted: List[str] = []
    contracted: List[str] = []
    while True:
        relation = _freer_from_table(current.groundset, current.table)
        others = [b for b in current.groundset if b != e and not relation.are_clones(e, b)]
        if not others:
            break
        b = others[0]
        if relation.is_freer(e, b) or relation.incomparable(e, b):
            deleted.append(b)
            current = RankTableMatroid.from_oracle(MinorMatroid(current, delete=[b]))
        else:
            contracted.append(b)
            current = RankTableMatroid.from_oracle(MinorMatroid(current, contract=[b]))

    if not _is_uniform(current.table, current.groundset):
        raise NotApplicable("Reached a single clonal class that is not uniform")
    gamma = current.full_rank
    return UniformMinorWitness(
        delete=order_subset(deleted, o.groundset),
        contract=order_subset(contracted, o.groundset),
        gamma=gamma,
        delta=len(current.groundset) - gamma,
    )


def _representable_or_excluded(o: RankOracle, p: int) -> bool:
    # Import here to avoid circular imports
    from representation.service import create_representation_service

    service = create_representation_service()
    if service.enumerate_reps(o, p):
        return True
    base = RankTableMatroid.from_oracle(o)
    for x in base.groundset:
        for minor in (MinorMatroid(base, delete=[x]), MinorMatroid(base, contract=[x])):
            if not service.enumerate_reps(minor, p):
                return False
    return True


def bound_cor_check(o: RankOracle, p: int) -> BoundCorReport:
    """Not fixed implies cofreedom <= p, not cofixed implies freedom <= p, for every element"""
    if not _representable_or_excluded(o, p):
        raise NotApplicable(
            f"Matroid is neither GF({p})-representable nor an excluded minor for GF({p})",
            {"p": p},
        )
    rows = []
    ok = True
    for e in o.groundset:
        fixed = is_fixed(o, e)
        cofixed = is_cofixed(o, e)
        row: Dict[str, Any] = {"element": e, "fixed": fixed, "cofixed": cofixed, "ok": True}
        if not fixed:
            value = cofreedom(o, e, cap=p + 1)
            row["cofreedom"] = freedom_to_json(value)
            row["ok"] = not isinstance(value, Overflow) and value <= p
        if not cofixed:
            value = freedom(o, e, cap=p + 1)
            row["freedom"] = freedom_to_json(value)
            row["ok"] = row["ok"] and not isinstance(value, Overflow) and value <= p
        ok = ok and row["ok"]
        rows.append(row)
    logger.info(f"Freedom bound check over GF({p}): {'pass' if ok else 'fail'}")
    return BoundCorReport(p=p, ok=ok, rows=rows)
