"""
Rank oracles for matroids
Descriptions (linear, uniform, rank table, minor, dual) answer rank queries
without cost; a CountedOracle wraps one description and charges every query
"""

import logging
import threading
from abc import ABC, abstractmethod
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Protocol, Sequence, Tuple

from lib.call_ledger import CallLedger
from lib.config import config
from lib.data_models import AxiomReport
from lib.errors import (
    ExhaustiveBoundExceeded,
    GroundSetMismatch,
    InvalidMatroid,
    InvalidMinorQuery,
    UnknownElement,
)
from lib.gf_linalg import FieldMatrix, column_rank
from lib.utils import Subset, order_subset, subsets

logger = logging.getLogger(__name__)


class RankOracle(Protocol):
    groundset: Tuple[str, ...]

    def rank(self, subset: Iterable[str]) -> int:
        ...


def default_labels(n: int) -> List[str]:
    return [f"e{i}" for i in range(1, n + 1)]


def check_exhaustive_bound(groundset: Sequence[str], bound: Optional[int] = None) -> None:
    limit = config.max_ground_set if bound is None else bound
    if len(groundset) > limit:
        raise ExhaustiveBoundExceeded(
            f"Ground set of size {len(groundset)} exceeds the exhaustive bound {limit}",
            {"size": len(groundset), "bound": limit},
        )


def check_rank_axioms(groundset: Sequence[str], table: Dict[Subset, int]) -> AxiomReport:
    """Normalization, unit increase, monotonicity and (local) submodularity"""
    empty = frozenset()
    if table.get(empty, 0) != 0:
        return AxiomReport(False, "normalization", ((),))
    for subset in subsets(groundset):
        value = table[subset]
        outside = [e for e in groundset if e not in subset]
        for i, e in enumerate(outside):
            grown = table[subset | {e}]
            if grown < value:
                return AxiomReport(False, "monotonicity", (_ordered(subset, groundset), _ordered(subset | {e}, groundset)))
            if grown > value + 1:
                return AxiomReport(False, "unit-increase", (_ordered(subset, groundset), _ordered(subset | {e}, groundset)))
            for f in outside[i + 1 :]:
                if table[subset | {e}] + table[subset | {f}] < table[subset | {e, f}] + value:
                    return AxiomReport(
                        False,
                        "submodularity",
                        (_ordered(subset | {e}, groundset), _ordered(subset | {f}, groundset)),
                    )
    return AxiomReport(True)


def _ordered(subset: Iterable[str], groundset: Sequence[str]) -> Tuple[str, ...]:
    return tuple(order_subset(subset, groundset))


class Matroid(ABC):
    """Immutable matroid description on an ordered ground set of string labels"""

    kind = "abstract"

    def __init__(self, groundset: Sequence[str]):
        labels = tuple(str(label) for label in groundset)
        if len(set(labels)) != len(labels):
            raise InvalidMatroid(f"Ground set labels must be distinct: {list(labels)}")
        self.groundset: Tuple[str, ...] = labels
        self._members: FrozenSet[str] = frozenset(labels)

    @property
    def size(self) -> int:
        return len(self.groundset)

    def check_subset(self, subset: Iterable[str]) -> Subset:
        members = frozenset(subset)
        unknown = members - self._members
        if unknown:
            raise UnknownElement(
                f"Unknown element(s) {sorted(unknown)}",
                {"unknown": sorted(unknown), "groundset": list(self.groundset)},
            )
        return members

    def rank(self, subset: Iterable[str]) -> int:
        return self._rank(self.check_subset(subset))

    @property
    def full_rank(self) -> int:
        return self._rank(self._members)

    @abstractmethod
    def _rank(self, subset: Subset) -> int:
        ...

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        ...

    def __repr__(self):
        return f"{type(self).__name__}({list(self.groundset)})"


class LinearMatroid(Matroid):
    """Column matroid of a matrix over GF(p)"""

    kind = "linear"

    def __init__(self, matrix: FieldMatrix, labels: Optional[Sequence[str]] = None):
        labels = list(labels) if labels is not None else default_labels(matrix.cols)
        if len(labels) != matrix.cols:
            raise InvalidMatroid(f"{len(labels)} labels for a matrix with {matrix.cols} columns")
        super().__init__(labels)
        self.matrix = matrix
        self._index = {label: i for i, label in enumerate(self.groundset)}
        self._cache: Dict[Subset, int] = {}

    def _rank(self, subset: Subset) -> int:
        if subset not in self._cache:
            self._cache[subset] = column_rank(self.matrix, sorted(self._index[e] for e in subset))
        return self._cache[subset]

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "linear", "labels": list(self.groundset), "matrix": self.matrix.to_dict()}


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, r: int, n: int, labels: Optional[Sequence[str]] = None):
        if r < 0 or r > n:
            raise InvalidMatroid(f"U_{{{r},{n}}} is not a matroid")
        super().__init__(labels if labels is not None else default_labels(n))
        if len(self.groundset) != n:
            raise InvalidMatroid(f"{len(self.groundset)} labels for U_{{{r},{n}}}")
        self.r = r
        self.n = n

    def _rank(self, subset: Subset) -> int:
        return min(len(subset), self.r)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "uniform", "r": self.r, "n": self.n, "labels": list(self.groundset)}


class RankTableMatroid(Matroid):
    """Explicit rank function on every subset, validated on construction"""

    kind = "rank-table"

    def __init__(self, groundset: Sequence[str], table: Dict[Subset, int], validate: bool = True):
        super().__init__(groundset)
        check_exhaustive_bound(self.groundset)
        self.table: Dict[Subset, int] = {frozenset(k): int(v) for k, v in table.items()}
        known = set(self.groundset)
        stray = sorted({e for s in self.table for e in s if e not in known})
        if stray:
            raise UnknownElement(f"Rank table mentions elements outside the ground set: {stray}", {"elements": stray})
        missing = [s for s in subsets(self.groundset) if s not in self.table]
        if missing:
            raise InvalidMatroid(
                f"Rank table is missing {len(missing)} subset(s), e.g. {order_subset(missing[0], self.groundset)}"
            )
        if validate:
            report = check_rank_axioms(self.groundset, self.table)
            if not report.ok:
                raise InvalidMatroid(f"Rank table violates {report.rule}", report.to_dict())

    @classmethod
    def from_oracle(cls, oracle: RankOracle, validate: bool = False) -> "RankTableMatroid":
        check_exhaustive_bound(oracle.groundset)
        table = {s: oracle.rank(s) for s in subsets(oracle.groundset)}
        return cls(oracle.groundset, table, validate=validate)

    def _rank(self, subset: Subset) -> int:
        return self.table[subset]

    def to_dict(self) -> Dict[str, Any]:
        entries = sorted(
            ((order_subset(s, self.groundset), r) for s, r in self.table.items()),
            key=lambda item: (len(item[0]), [self.groundset.index(e) for e in item[0]]),
        )
        return {
            "type": "rank-table",
            "labels": list(self.groundset),
            "ranks": [{"set": members, "rank": r} for members, r in entries],
        }


class MinorMatroid(Matroid):
    """M\\D/C with r(C) computed once"""

    kind = "minor"

    def __init__(self, base: Matroid, contract: Iterable[str] = (), delete: Iterable[str] = ()):
        contract_set = base.check_subset(contract)
        delete_set = base.check_subset(delete)
        if contract_set & delete_set:
            raise InvalidMinorQuery(f"Contract and delete sets overlap: {sorted(contract_set & delete_set)}")
        removed = contract_set | delete_set
        super().__init__([e for e in base.groundset if e not in removed])
        self.base = base
        self.contract = contract_set
        self.delete = delete_set
        self._contract_rank = base._rank(contract_set)

    def _rank(self, subset: Subset) -> int:
        return self.base._rank(subset | self.contract) - self._contract_rank

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": "minor",
            "base": self.base.to_dict(),
            "contract": order_subset(self.contract, self.base.groundset),
            "delete": order_subset(self.delete, self.base.groundset),
        }


class DualMatroid(Matroid):
    kind = "dual"

    def __init__(self, base: Matroid):
        super().__init__(base.groundset)
        self.base = base
        self._base_rank = base.full_rank

    def _rank(self, subset: Subset) -> int:
        return len(subset) + self.base._rank(self._members - subset) - self._base_rank

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "dual", "base": self.base.to_dict()}


def direct_sum(first: Matroid, second: Matroid) -> RankTableMatroid:
    """Direct sum as an explicit rank table (labels must be disjoint)"""
    overlap = set(first.groundset) & set(second.groundset)
    if overlap:
        raise GroundSetMismatch(f"Direct sum needs disjoint ground sets, shared: {sorted(overlap)}")
    groundset = list(first.groundset) + list(second.groundset)
    check_exhaustive_bound(groundset)
    left, right = set(first.groundset), set(second.groundset)
    table = {s: first._rank(s & left) + second._rank(s & right) for s in subsets(groundset)}
    return RankTableMatroid(groundset, table, validate=False)


def relabel(matroid: Matroid, mapping: Dict[str, str]) -> RankTableMatroid:
    """Copy of a matroid with labels renamed through `mapping`"""
    check_exhaustive_bound(matroid.groundset)
    groundset = [mapping.get(e, e) for e in matroid.groundset]
    table = {frozenset(mapping.get(e, e) for e in s): matroid._rank(s) for s in subsets(matroid.groundset)}
    return RankTableMatroid(groundset, table, validate=False)


class CountedOracle:
    """Rank oracle that charges one call per query, optionally logging every answer"""

    def __init__(self, matroid: Matroid, log: bool = False, ledger: Optional[CallLedger] = None):
        self.matroid = matroid
        self.ledger = ledger or CallLedger()
        self.log: Optional[List[Tuple[Subset, int]]] = [] if log else None
        self._log_lock = threading.Lock()

    @property
    def groundset(self) -> Tuple[str, ...]:
        return self.matroid.groundset

    @property
    def calls(self) -> int:
        return self.ledger.total

    def rank(self, subset: Iterable[str], tag: str = "default") -> int:
        members = self.matroid.check_subset(subset)
        value = self.matroid._rank(members)
        self.ledger.record(tag)
        if self.log is not None:
            with self._log_lock:
                self.log.append((members, value))
        return value


def rank(oracle: RankOracle, subset: Iterable[str]) -> int:
    return oracle.rank(subset)


class MinorRankView:
    """Rank queries on M\\D/C through a base oracle: r(X) = r(X u C) - r(C)

    r(C) is fetched once on first use, so each later query costs one base call.
    """

    def __init__(self, oracle: RankOracle, contract: Iterable[str] = (), delete: Iterable[str] = (), tag: str = "default"):
        self.oracle = oracle
        self.contract = frozenset(contract)
        self.delete = frozenset(delete)
        self.tag = tag
        if self.contract & self.delete:
            raise InvalidMinorQuery(f"Contract and delete sets overlap: {sorted(self.contract & self.delete)}")
        unknown = (self.contract | self.delete) - set(oracle.groundset)
        if unknown:
            raise UnknownElement(f"Unknown element(s) {sorted(unknown)}", {"unknown": sorted(unknown)})
        removed = self.contract | self.delete
        self.groundset: Tuple[str, ...] = tuple(e for e in oracle.groundset if e not in removed)
        self._contract_rank: Optional[int] = None

    def _base_rank(self, subset: Iterable[str]) -> int:
        if isinstance(self.oracle, CountedOracle):
            return self.oracle.rank(subset, tag=self.tag)
        return self.oracle.rank(subset)

    @property
    def contract_rank(self) -> int:
        if self._contract_rank is None:
            self._contract_rank = self._base_rank(self.contract) if self.contract else 0
        return self._contract_rank

    def rank(self, subset: Iterable[str]) -> int:
        members = frozenset(subset)
        blocked = members & (self.contract | self.delete)
        if blocked:
            raise InvalidMinorQuery(f"Query meets the removed elements {sorted(blocked)}")
        unknown = members - set(self.groundset)
        if unknown:
            raise UnknownElement(f"Unknown element(s) {sorted(unknown)}", {"unknown": sorted(unknown)})
        if not members:
            return 0
        return self._base_rank(members | self.contract) - self.contract_rank


class DualRankView:
    """Rank queries on M* through an oracle for M, with r(E) fetched once"""

    def __init__(self, oracle: RankOracle):
        self.oracle = oracle
        self.groundset: Tuple[str, ...] = tuple(oracle.groundset)
        self._full_rank: Optional[int] = None

    @property
    def full_rank(self) -> int:
        if self._full_rank is None:
            self._full_rank = self.oracle.rank(self.groundset)
        return self._full_rank

    def rank(self, subset: Iterable[str]) -> int:
        members = frozenset(subset)
        unknown = members - set(self.groundset)
        if unknown:
            raise UnknownElement(f"Unknown element(s) {sorted(unknown)}", {"unknown": sorted(unknown)})
        complement = [e for e in self.groundset if e not in members]
        return len(members) + self.oracle.rank(complement) - self.full_rank


def minor_rank(oracle: RankOracle, contract: Iterable[str], delete: Iterable[str], subset: Iterable[str]) -> int:
    """One-off minor query: at most two base calls"""
    return MinorRankView(oracle, contract, delete).rank(subset)


def dual_rank(oracle: RankOracle, subset: Iterable[str]) -> int:
    """|X| + r(E - X) - r(E), two base calls"""
    members = frozenset(subset)
    complement = [e for e in oracle.groundset if e not in members]
    return len(members) + oracle.rank(complement) - oracle.rank(oracle.groundset)


def matroid_from_spec(spec) -> Matroid:
    """Build a description from a validated schema model"""
    # Import here to avoid circular imports
    from matroids.spike import SpikeMatroid

    if spec.type == "linear":
        return LinearMatroid(FieldMatrix.from_dict(spec.matrix.model_dump()), spec.labels)
    if spec.type == "uniform":
        return UniformMatroid(spec.r, spec.n, spec.labels)
    if spec.type == "spike":
        return SpikeMatroid.from_bitstrings(spec.n, spec.dependent_transversals)
    if spec.type == "rank-table":
        table = {frozenset(entry.members): entry.rank for entry in spec.ranks}
        if len(table) != len(spec.ranks):
            raise InvalidMatroid("Rank table lists a subset more than once")
        return RankTableMatroid(spec.labels, table, validate=True)
    if spec.type == "minor":
        return MinorMatroid(matroid_from_spec(spec.base), spec.contract, spec.delete)
    if spec.type == "dual":
        return DualMatroid(matroid_from_spec(spec.base))
    raise InvalidMatroid(f"Unknown matroid type {spec.type!r}")


def matroid_from_document(document: Dict[str, Any]) -> Matroid:
    # Import here so the schema layer stays optional for pure library use
    from lib.schemas import parse_matroid_spec

    return matroid_from_spec(parse_matroid_spec(document))


def matroid_to_document(matroid: Matroid) -> Dict[str, Any]:
    document = matroid.to_dict()
    document["v"] = config.schema_version
    return document
