"""
Exact arithmetic over prime fields GF(p)
Row reduction, null spaces and the projective-geometry primitives (flats and
points of PG(r-1, p)) shared by every other package
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Type, Union

import galois
import numpy as np

from lib.config import config
from lib.errors import AmbientMismatch, FieldError, InversionOfZero, ShapeMismatch

Point = Tuple[int, ...]


@lru_cache(maxsize=None)
def field_class(p: int) -> Type[galois.FieldArray]:
    """galois array class for GF(p), built once per modulus"""
    return galois.GF(p)


def check_prime(p: int) -> int:
    """Validate a field modulus against the configured cap"""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise FieldError(f"Field modulus must be an integer, got {p!r}")
    p = int(p)
    if p > config.max_prime:
        raise FieldError(f"Field modulus {p} exceeds MATROID_MAX_PRIME={config.max_prime}")
    if not galois.is_prime(p):
        raise FieldError(f"Field modulus {p} is not prime", {"p": p})
    return p


def inv_mod(value: int, p: int) -> int:
    value %= p
    if value == 0:
        raise InversionOfZero(f"0 has no inverse in GF({p})", {"p": p})
    return int(field_class(p)(value) ** -1)


def to_field(entries: np.ndarray, p: int) -> galois.FieldArray:
    return field_class(p)(np.array(entries, dtype=np.int64))


def from_field(array: galois.FieldArray) -> np.ndarray:
    return array.view(np.ndarray).astype(np.int64)


@dataclass(frozen=True, eq=False)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldError(f"Cannot combine GF({self.p}) with GF({other.p})")
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElement(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * field_inv(other)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse in GF(p); zero raises InversionOfZero"""
    return FieldElement(inv_mod(a.value, a.p), a.p)


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """Immutable matrix over GF(p) backed by a read-only int64 numpy array"""

    entries: np.ndarray
    p: int

    def __post_init__(self):
        check_prime(self.p)
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ShapeMismatch(f"Expected a 2-dimensional matrix, got shape {arr.shape}")
        arr = np.mod(arr, self.p)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FieldMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int, p: int) -> "FieldMatrix":
        if not columns:
            return cls.zeros(rows, 0, p)
        return cls(np.array(columns, dtype=np.int64).reshape(len(columns), rows).T, p)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self.entries[i, j]), self.p)

    def column(self, j: int) -> Point:
        return tuple(int(x) for x in self.entries[:, j])

    def select_columns(self, cols: Iterable[int]) -> "FieldMatrix":
        index = np.array(list(cols), dtype=np.intp)
        return FieldMatrix(self.entries[:, index].reshape(self.rows, len(index)), self.p)

    def with_column(self, position: int, column: Sequence[int]) -> "FieldMatrix":
        """Insert a column before index `position`"""
        col = np.array(column, dtype=np.int64).reshape(self.rows, 1)
        return FieldMatrix(np.hstack([self.entries[:, :position], col, self.entries[:, position:]]), self.p)

    def with_zero_row(self) -> "FieldMatrix":
        return FieldMatrix(np.vstack([self.entries, np.zeros((1, self.cols), dtype=np.int64)]), self.p)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.entries.T, self.p)

    def scale_columns(self, scalars: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix(self.entries * np.array(scalars, dtype=np.int64)[np.newaxis, :], self.p)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.p != other.p:
            raise FieldError(f"Cannot multiply GF({self.p}) by GF({other.p})")
        if self.cols != other.rows:
            raise ShapeMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix(self.entries @ other.entries, self.p)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.shape, self.entries.tobytes()))

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.shape, tuple(int(x) for x in self.entries.flatten()))

    def to_rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": self.to_rows()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FieldMatrix":
        rows, cols = int(data["rows"]), int(data["cols"])
        flat = [int(x) for row in data["entries"] for x in row]
        if len(data["entries"]) != rows or len(flat) != rows * cols:
            raise ShapeMismatch(f"Matrix entries do not match the declared shape {rows}x{cols}")
        return cls(np.array(flat, dtype=np.int64).reshape(rows, cols), int(data["p"]))

    def __repr__(self):
        return f"FieldMatrix(p={self.p}, {self.to_rows()})"


@dataclass(frozen=True)
class RowReduceResult:
    matrix: FieldMatrix
    rank: int
    pivots: Tuple[int, ...]


def rref(m: FieldMatrix) -> RowReduceResult:
    """Reduced row-echelon form, its rank and the pivot columns"""
    if m.rows == 0 or m.cols == 0:
        return RowReduceResult(matrix=m, rank=0, pivots=())
    reduced = from_field(to_field(m.entries, m.p).row_reduce())
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in reduced if row.any())
    return RowReduceResult(matrix=FieldMatrix(reduced, m.p), rank=len(pivots), pivots=pivots)


def matrix_rank(m: FieldMatrix) -> int:
    return rref(m).rank


def column_rank(m: FieldMatrix, cols: Iterable[int]) -> int:
    cols = list(cols)
    if not cols:
        return 0
    return rref(m.select_columns(cols)).rank


def nullspace(m: FieldMatrix) -> FieldMatrix:
    """Rows form a basis of {x : m x = 0}"""
    if m.cols == 0:
        return FieldMatrix.zeros(0, 0, m.p)
    if m.rows == 0 or not m.entries.any():
        return FieldMatrix.identity(m.cols, m.p)
    basis = from_field(to_field(m.entries, m.p).null_space())
    if basis.size == 0:
        return FieldMatrix.zeros(0, m.cols, m.p)
    return FieldMatrix(basis.reshape(-1, m.cols), m.p)


@dataclass(frozen=True)
class Flat:
    """Subspace of GF(p)^r stored by its canonical reduced row-echelon basis"""

    ambient_rank: int
    basis: FieldMatrix

    @classmethod
    def from_vectors(cls, vectors: FieldMatrix, ambient_rank: int) -> "Flat":
        if vectors.cols != ambient_rank:
            raise AmbientMismatch(f"Vectors of length {vectors.cols} in ambient rank {ambient_rank}")
        reduced = rref(vectors)
        basis = FieldMatrix(reduced.matrix.entries[: reduced.rank], vectors.p)
        return cls(ambient_rank=ambient_rank, basis=basis)

    @classmethod
    def full(cls, ambient_rank: int, p: int) -> "Flat":
        return cls(ambient_rank=ambient_rank, basis=FieldMatrix.identity(ambient_rank, p))

    @classmethod
    def empty(cls, ambient_rank: int, p: int) -> "Flat":
        return cls(ambient_rank=ambient_rank, basis=FieldMatrix.zeros(0, ambient_rank, p))

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def p(self) -> int:
        return self.basis.p

    def contains_vector(self, vector: Sequence[int]) -> bool:
        stacked = np.vstack([self.basis.entries, np.array(vector, dtype=np.int64).reshape(1, -1)])
        return matrix_rank(FieldMatrix(stacked, self.p)) == self.rank

    def is_subflat_of(self, other: "Flat") -> bool:
        _check_ambient(self, other)
        stacked = np.vstack([other.basis.entries, self.basis.entries])
        return matrix_rank(FieldMatrix(stacked, self.p)) == other.rank

    def to_dict(self) -> Dict[str, Any]:
        return {"ambient_rank": self.ambient_rank, "basis": self.basis.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Flat":
        return cls.from_vectors(FieldMatrix.from_dict(data["basis"]), int(data["ambient_rank"]))


def _check_ambient(f1: Flat, f2: Flat) -> None:
    if f1.ambient_rank != f2.ambient_rank or f1.p != f2.p:
        raise AmbientMismatch(
            f"Flats live in different spaces: rank {f1.ambient_rank} over GF({f1.p}) "
            f"vs rank {f2.ambient_rank} over GF({f2.p})"
        )


def span_of_columns(m: FieldMatrix, cols: Iterable[int]) -> Flat:
    """Flat spanned by the chosen columns (columns become basis rows)"""
    return Flat.from_vectors(m.select_columns(cols).transpose(), m.rows)


def intersect_flats(f1: Flat, f2: Flat) -> Flat:
    """Subspace intersection as the annihilator of the sum of annihilators"""
    _check_ambient(f1, f2)
    if f1.ambient_rank == 0:
        return f1
    annihilators = np.vstack([nullspace(f1.basis).entries, nullspace(f2.basis).entries])
    annihilators = annihilators.reshape(-1, f1.ambient_rank)
    return Flat.from_vectors(nullspace(FieldMatrix(annihilators, f1.p)), f1.ambient_rank)


def normalize_point(vector: Sequence[int], p: int) -> Point:
    """Scale a nonzero vector so its first nonzero coordinate is 1"""
    values = [int(x) % p for x in vector]
    for value in values:
        if value:
            scale = inv_mod(value, p)
            return tuple((x * scale) % p for x in values)
    raise InversionOfZero("The zero vector is not a projective point")


def projective_points(f: Flat) -> List[Point]:
    """All (p^d - 1)/(p - 1) points of a rank-d flat in canonical sorted order"""
    p = f.p
    d = f.rank
    basis = f.basis.entries
    points = set()
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            coeffs = np.zeros(d, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1 :] = tail
            points.add(normalize_point((coeffs @ basis) % p, p))
    return sorted(points)
