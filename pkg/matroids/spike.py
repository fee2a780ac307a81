"""
Tipless spikes
A rank-n spike on legs {a_i, b_i}; transversals are n-bit masks where bit i
set means the transversal uses b_{i+1}. The string form lists leg 1 first.
"""

import itertools
import logging
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from lib.config import config
from lib.data_models import CensusResult
from lib.errors import (
    AdjacentTransversal,
    ExhaustiveBoundExceeded,
    InvalidAlpha,
    InvalidMatroid,
    NotDependent,
)
from lib.gf_linalg import FieldMatrix, check_prime, column_rank, inv_mod
from lib.utils import Subset, hamming_distance
from matroids.oracle import LinearMatroid, Matroid

logger = logging.getLogger(__name__)

Transversal = Union[int, str]


def spike_labels(n: int) -> List[str]:
    return [f"a{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(1, n + 1)]


def transversal_to_string(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def transversal_from_string(text: str, n: int) -> int:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise InvalidMatroid(f"Transversal {text!r} is not a {n}-bit string")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def transversal_members(mask: int, n: int) -> FrozenSet[str]:
    return frozenset(f"b{i + 1}" if mask >> i & 1 else f"a{i + 1}" for i in range(n))


class SpikeMatroid(Matroid):
    """Spike on legs {a_i, b_i} with a family of dependent transversals"""

    kind = "spike"

    def __init__(self, n: int, dependent: Iterable[int] = ()):
        if n < 3:
            raise InvalidMatroid(f"A spike needs at least 3 legs, got {n}")
        super().__init__(spike_labels(n))
        self.n = n
        family = sorted(set(int(t) for t in dependent))
        if any(t < 0 or t >= 1 << n for t in family):
            raise InvalidMatroid(f"Transversal mask out of range for {n} legs")
        for t1, t2 in itertools.combinations(family, 2):
            if hamming_distance(t1, t2) == 1:
                raise AdjacentTransversal(
                    "Dependent transversals differ in exactly one leg",
                    {"first": transversal_to_string(t1, n), "second": transversal_to_string(t2, n)},
                )
        self.dependent: FrozenSet[int] = frozenset(family)
        self._leg = {}
        for i in range(n):
            self._leg[f"a{i + 1}"] = (i, 0)
            self._leg[f"b{i + 1}"] = (i, 1)

    @classmethod
    def from_bitstrings(cls, n: int, strings: Sequence[str]) -> "SpikeMatroid":
        return cls(n, [transversal_from_string(s, n) for s in strings])

    def _rank(self, subset: Subset) -> int:
        met: Dict[int, int] = {}
        mask = 0
        for label in subset:
            leg, side = self._leg[label]
            met[leg] = met.get(leg, 0) + 1
            if side:
                mask |= 1 << leg
        full = sum(1 for count in met.values() if count == 2)
        partial = len(met) - full
        if full:
            return min(self.n, full + partial + 1)
        if len(subset) == self.n and mask in self.dependent:
            return self.n - 1
        return len(subset)

    def transversal_strings(self) -> List[str]:
        return [transversal_to_string(t, self.n) for t in sorted(self.dependent)]

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "spike", "n": self.n, "dependent_transversals": self.transversal_strings()}

    def _normalize(self, transversal: Transversal) -> int:
        if isinstance(transversal, str):
            return transversal_from_string(transversal, self.n)
        mask = int(transversal)
        if mask < 0 or mask >= 1 << self.n:
            raise InvalidMatroid(f"Transversal mask {mask} out of range for {self.n} legs")
        return mask


def spike_rank(s: SpikeMatroid, subset: Iterable[str]) -> int:
    return s.rank(subset)


def relax(s: SpikeMatroid, transversal: Transversal) -> SpikeMatroid:
    """Turn a dependent transversal into a basis"""
    mask = s._normalize(transversal)
    if mask not in s.dependent:
        raise NotDependent(
            f"Transversal {transversal_to_string(mask, s.n)} is not dependent",
            {"transversal": transversal_to_string(mask, s.n)},
        )
    return SpikeMatroid(s.n, s.dependent - {mask})


def tighten(s: SpikeMatroid, transversal: Transversal) -> SpikeMatroid:
    """Declare a transversal a circuit; it must be at distance > 1 from every dependent one"""
    mask = s._normalize(transversal)
    for other in s.dependent:
        if hamming_distance(mask, other) <= 1:
            raise AdjacentTransversal(
                f"Transversal {transversal_to_string(mask, s.n)} is within one leg of "
                f"{transversal_to_string(other, s.n)}",
                {
                    "transversal": transversal_to_string(mask, s.n),
                    "conflict": transversal_to_string(other, s.n),
                },
            )
    return SpikeMatroid(s.n, s.dependent | {mask})


def representable_spike(p: int, n: int, alphas: Sequence[int]) -> Tuple[SpikeMatroid, FieldMatrix]:
    """Spike of the matrix [I | J + diag(alpha_i^-1)] over GF(p)

    T_S is dependent exactly when the alphas indexed by S sum to -1.
    """
    p = check_prime(p)
    if len(alphas) != n:
        raise InvalidAlpha(f"Expected {n} alphas, got {len(alphas)}")
    values = [int(a) % p for a in alphas]
    zeros = [i + 1 for i, a in enumerate(values) if a == 0]
    if zeros:
        raise InvalidAlpha(f"alpha must be nonzero, zero at legs {zeros}", {"legs": zeros})

    entries = np.zeros((n, 2 * n), dtype=np.int64)
    entries[:, :n] = np.eye(n, dtype=np.int64)
    entries[:, n:] = 1
    for i, a in enumerate(values):
        entries[i, n + i] = 1 + inv_mod(a, p)
    matrix = FieldMatrix(entries, p)

    dependent = [
        mask
        for mask in range(1 << n)
        if sum(values[i] for i in range(n) if mask >> i & 1) % p == (p - 1) % p
    ]
    logger.debug(f"GF({p}) spike with n={n}: {len(dependent)} dependent transversals")
    return SpikeMatroid(n, dependent), matrix


def projective_spike(
    p: int, n: int, shifts: Sequence[int], offsets: Sequence[int]
) -> Tuple[SpikeMatroid, FieldMatrix]:
    """Spike read off points of PG(n-1, p)

    The tip is the all-ones vector and leg i lies on the line through it and e_i:
    a_i = e_i + shifts[i] * 1, b_i = e_i + offsets[i] * 1.
    """
    p = check_prime(p)
    if len(shifts) != n or len(offsets) != n:
        raise InvalidAlpha(f"Expected {n} shifts and {n} offsets")
    if any((s - t) % p == 0 for s, t in zip(shifts, offsets)):
        raise InvalidAlpha("The two points of a leg must be distinct")
    ones = np.ones(n, dtype=np.int64)
    columns = [np.eye(n, dtype=np.int64)[i] + int(s) * ones for i, s in enumerate(shifts)]
    columns += [np.eye(n, dtype=np.int64)[i] + int(t) * ones for i, t in enumerate(offsets)]
    matrix = FieldMatrix(np.array(columns, dtype=np.int64).T, p)

    dependent = []
    for mask in range(1 << n):
        cols = [n + i if mask >> i & 1 else i for i in range(n)]
        if column_rank(matrix, cols) < n:
            dependent.append(mask)
    spike = SpikeMatroid(n, dependent)

    # Import here to avoid circular imports
    from matroids.structure import first_difference

    mismatch = first_difference(spike, LinearMatroid(matrix, spike_labels(n)))
    if mismatch is not None:
        raise InvalidMatroid(
            "Chosen points do not form a spike",
            {"subset": sorted(mismatch)},
        )
    return spike, matrix


def lower_bound_census(s: SpikeMatroid, q: Optional[int] = None) -> CensusResult:
    """|T|, |T'| (transversals more than one leg from every dependent one) and the counting bounds"""
    n = s.n
    if n > config.census_max_legs:
        raise ExhaustiveBoundExceeded(f"Census over 2^{n} transversals exceeds {config.census_max_legs} legs")
    if q is not None:
        q = check_prime(q)
    dependent = np.array(sorted(s.dependent), dtype=np.int64)
    near = np.zeros(1 << n, dtype=bool)
    if dependent.size:
        near[dependent] = True
        for i in range(n):
            near[dependent ^ (1 << i)] = True
    t_count = int(dependent.size)
    t_prime_count = int((~near).sum())
    total = t_count + t_prime_count
    result = CensusResult(
        n=n,
        t_count=t_count,
        t_prime_count=t_prime_count,
        linear_bound_ok=(n + 1) * total >= 1 << n,
        sqrt_bound_ok=total * total >= 1 << n,
        q=q,
    )
    logger.info(f"Census n={n}: |T|={t_count}, |T'|={t_prime_count}, bound_ok={result.bound_ok}")
    return result
