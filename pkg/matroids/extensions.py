"""
Single-element extensions through modular cuts
A modular cut is described by its linear subclass of hyperplanes; the empty cut
(the coloop extension) is carried separately since it contains no flat at all.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from lib.config import config
from lib.errors import InvalidMatroid
from lib.utils import Subset, subsets
from matroids.oracle import RankOracle, RankTableMatroid, check_exhaustive_bound
from matroids.structure import _flats_from_table, rank_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModularCut:
    """Flats F whose every containing hyperplane lies in `hyperplanes`"""

    hyperplanes: FrozenSet[Subset]
    all_hyperplanes: Tuple[Subset, ...] = field(default=(), compare=False, repr=False)
    empty: bool = False

    def contains(self, flat: Subset, rank_of_flat: int, full_rank: int) -> bool:
        if self.empty:
            return False
        if rank_of_flat == full_rank:
            return True
        return all(h in self.hyperplanes for h in self.all_hyperplanes if flat <= h)


class ExtensionLattice:
    """Flats, hyperplanes and colines of one matroid, precomputed for cut enumeration"""

    def __init__(self, o: RankOracle, bound: Optional[int] = None):
        check_exhaustive_bound(o.groundset, config.max_extension_ground_set if bound is None else bound)
        self.groundset: Tuple[str, ...] = tuple(o.groundset)
        self.table: Dict[Subset, int] = rank_table(o)
        self.rank = self.table[frozenset(self.groundset)]
        self.flats: List[Subset] = _flats_from_table(self.groundset, self.table)
        self.hyperplanes: List[Subset] = [f for f in self.flats if self.table[f] == self.rank - 1]
        self._closure_cache: Dict[Subset, Subset] = {}

        # Each coline (rank r-2 flat) as a bitmask over the hyperplanes containing it
        self.colines: List[int] = []
        for f in self.flats:
            if self.table[f] == self.rank - 2:
                mask = 0
                for i, h in enumerate(self.hyperplanes):
                    if f <= h:
                        mask |= 1 << i
                self.colines.append(mask)

    def closure(self, subset: Subset) -> Subset:
        if subset not in self._closure_cache:
            value = self.table[subset]
            self._closure_cache[subset] = frozenset(
                e for e in self.groundset if self.table[subset | {e}] == value
            )
        return self._closure_cache[subset]

    def propagate(self, included: int) -> int:
        """Smallest linear subclass containing the given hyperplanes"""
        changed = True
        while changed:
            changed = False
            for mask in self.colines:
                inside = included & mask
                if inside and inside != mask and bin(inside).count("1") >= 2:
                    included |= mask
                    changed = True
        return included

    def linear_subclasses(self, allowed: Optional[int] = None) -> Iterator[int]:
        """Every linear subclass, as a bitmask, using only `allowed` hyperplanes"""
        count = len(self.hyperplanes)
        allowed = (1 << count) - 1 if allowed is None else allowed

        def search(index: int, included: int, excluded: int) -> Iterator[int]:
            if index == count:
                yield included
                return
            bit = 1 << index
            if included & bit:
                yield from search(index + 1, included, excluded)
                return
            yield from search(index + 1, included, excluded | bit)
            if allowed & bit:
                grown = self.propagate(included | bit)
                if not grown & (excluded | ~allowed):
                    yield from search(index + 1, grown, excluded)

        yield from search(0, 0, 0)

    def cut_from_mask(self, mask: int) -> ModularCut:
        members = frozenset(h for i, h in enumerate(self.hyperplanes) if mask >> i & 1)
        return ModularCut(members, tuple(self.hyperplanes))

    def in_cut(self, mask: Optional[int], subset: Subset) -> bool:
        """Whether cl(subset) lies in the cut (mask None is the empty cut)"""
        if mask is None:
            return False
        if self.table[subset] == self.rank:
            return True
        for i, h in enumerate(self.hyperplanes):
            if subset <= h and not mask >> i & 1:
                return False
        return True

    def extend(self, mask: Optional[int], label: str) -> RankTableMatroid:
        """The extension by `label` determined by the cut"""
        if label in self.groundset:
            raise InvalidMatroid(f"Label {label!r} already in the ground set")
        table: Dict[Subset, int] = dict(self.table)
        for s, value in self.table.items():
            table[s | {label}] = value if self.in_cut(mask, s) else value + 1
        return RankTableMatroid(list(self.groundset) + [label], table, validate=False)

    def modular_cuts(self) -> List[Optional[int]]:
        """All cuts: None for the empty cut, then every linear subclass"""
        return [None] + list(self.linear_subclasses())


def modular_cuts(o: RankOracle) -> List[ModularCut]:
    lattice = ExtensionLattice(o)
    cuts = [ModularCut(frozenset(), tuple(lattice.hyperplanes), empty=True)]
    cuts.extend(lattice.cut_from_mask(mask) for mask in lattice.linear_subclasses())
    return cuts


def cut_flats(o: RankOracle, cut: ModularCut) -> List[Subset]:
    """Flats of the matroid that belong to the cut"""
    lattice = ExtensionLattice(o)
    return [f for f in lattice.flats if cut.contains(f, lattice.table[f], lattice.rank)]


def single_element_extensions(o: RankOracle, label: str = "z") -> List[RankTableMatroid]:
    """One extension per modular cut, the coloop extension first"""
    lattice = ExtensionLattice(o)
    extensions = [lattice.extend(mask, label) for mask in lattice.modular_cuts()]
    logger.info(f"{len(extensions)} single-element extensions of a {len(lattice.groundset)}-element matroid")
    return extensions


def fresh_label(groundset: Sequence[str], stem: str = "z") -> str:
    taken = set(groundset)
    if stem not in taken:
        return stem
    index = 1
    while f"{stem}{index}" in taken:
        index += 1
    return f"{stem}{index}"


def rank_vector(matroid: RankTableMatroid) -> Tuple[int, ...]:
    """Ranks in subset order: a key identifying the matroid on its labelled ground set"""
    return tuple(matroid.table[s] for s in subsets(matroid.groundset))
