"""
Representation Service for Matroids over GF(p)
Enumerates representations up to row operations and column scaling,
canonicalizes matrices and computes extension candidates
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from lib.config import config
from lib.errors import ExhaustiveBoundExceeded, NotStandardForm, ShapeMismatch, UnknownElement
from lib.gf_linalg import Flat, FieldMatrix, Point, check_prime, column_rank, inv_mod, projective_points, rref
from lib.utils import Subset, subsets
from matroids.oracle import RankOracle
from matroids.structure import rank_table

# (row, column, discovered from the row side)
ForestEdge = Tuple[int, int, bool]


def support_graph(support: np.ndarray, nonpivots: Sequence[int]) -> nx.Graph:
    """Bipartite graph with an edge (row i, column j) wherever the support is set

    Edges are inserted row by row so every adjacency list is in index order.
    """
    graph = nx.Graph()
    graph.add_nodes_from(("row", i) for i in range(support.shape[0]))
    graph.add_nodes_from(("col", j) for j in nonpivots)
    for i in range(support.shape[0]):
        for j in nonpivots:
            if support[i, j]:
                graph.add_edge(("row", i), ("col", j))
    return graph


def spanning_forest(support: np.ndarray, nonpivots: Sequence[int]) -> List[ForestEdge]:
    """Breadth-first spanning forest of the row/column support graph

    Components are rooted at rows first, then non-pivot columns, each in index
    order, and neighbours are taken in increasing index order.
    """
    graph = support_graph(support, nonpivots)
    roots = [("row", i) for i in range(support.shape[0])] + [("col", j) for j in nonpivots]
    seen = set()
    edges: List[ForestEdge] = []
    for root in roots:
        if root in seen:
            continue
        seen.add(root)
        for (kind, parent), (_, child) in nx.bfs_edges(graph, root):
            seen.add(("col" if kind == "row" else "row", child))
            if kind == "row":
                edges.append((parent, child, True))
            else:
                edges.append((child, parent, False))
    return edges


class RepresentationService:
    """Exhaustive GF(p) representation search at desk scale"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def check_bounds(self, size: int, rank: Optional[int], p: int) -> None:
        problems = []
        if size > config.rep_max_ground_set:
            problems.append(f"|E|={size} > {config.rep_max_ground_set}")
        if rank is not None and rank > config.rep_max_rank:
            problems.append(f"r={rank} > {config.rep_max_rank}")
        if p > config.rep_max_prime:
            problems.append(f"p={p} > {config.rep_max_prime}")
        if problems:
            raise ExhaustiveBoundExceeded(
                f"Representation search out of bounds: {', '.join(problems)}",
                {"size": size, "rank": rank, "p": p},
            )

    def enumerate_reps(self, o: RankOracle, p: int) -> List[FieldMatrix]:
        """One canonical matrix per equivalence class of GF(p)-representations

        Every matrix returned is in reduced row-echelon form with the
        lexicographically least basis as pivots and its support forest set to 1.
        """
        p = check_prime(p)
        groundset = tuple(o.groundset)
        n = len(groundset)
        self.check_bounds(n, None, p)
        table = rank_table(o)
        r = table[frozenset(groundset)]
        self.check_bounds(n, r, p)
        if r == 0:
            return [FieldMatrix.zeros(0, n, p)]

        pivots = self._least_basis(groundset, table)
        pivot_set = set(pivots)
        nonpivots = [j for j in range(n) if j not in pivot_set]
        basis = frozenset(groundset[b] for b in pivots)

        # A[i][j] != 0 exactly when B - b_i + j is a basis
        support = np.zeros((r, n), dtype=bool)
        for i, b in enumerate(pivots):
            for j in nonpivots:
                swapped = (basis - {groundset[b]}) | {groundset[j]}
                support[i, j] = table[swapped] == r
        forest = {(i, j) for i, j, _ in spanning_forest(support, nonpivots)}

        entries = np.zeros((r, n), dtype=np.int64)
        for i, b in enumerate(pivots):
            entries[i, b] = 1

        found: List[FieldMatrix] = []

        def search(k: int) -> None:
            if k == len(nonpivots):
                found.append(FieldMatrix(entries.copy(), p))
                return
            j = nonpivots[k]
            ones = [i for i in range(r) if (i, j) in forest]
            free = [i for i in range(r) if support[i, j] and (i, j) not in forest]
            known = list(pivots) + nonpivots[:k]
            for values in itertools.product(range(1, p), repeat=len(free)):
                entries[:, j] = 0
                entries[ones, j] = 1
                entries[free, j] = values
                if self._bases_agree(entries, p, j, known, r, groundset, table):
                    search(k + 1)
            entries[:, j] = 0

        search(0)
        found.sort(key=lambda m: m.sort_key())
        self.logger.info(f"{len(found)} inequivalent GF({p}) representation(s) of a rank-{r} matroid on {n} elements")
        return found

    def is_representable(self, o: RankOracle, p: int) -> bool:
        return bool(self.enumerate_reps(o, p))

    def _least_basis(self, groundset: Tuple[str, ...], table: Dict[Subset, int]) -> Tuple[int, ...]:
        chosen: List[int] = []
        current: Subset = frozenset()
        for index, label in enumerate(groundset):
            grown = current | {label}
            if table[grown] > table[current]:
                chosen.append(index)
                current = grown
        return tuple(chosen)

    def _bases_agree(self, entries, p, j, known, r, groundset, table) -> bool:
        """r-subsets through column j are bases of the matrix iff they are bases of the target"""
        matrix = FieldMatrix(entries, p)
        for combo in itertools.combinations(known, r - 1):
            cols = sorted(combo + (j,))
            expected = table[frozenset(groundset[c] for c in cols)] == r
            if (column_rank(matrix, cols) == r) != expected:
                return False
        return True

    def canonical_form(self, m: FieldMatrix) -> FieldMatrix:
        """RREF with zero rows dropped and the support forest scaled to 1"""
        p = m.p
        reduced = rref(m)
        r = reduced.rank
        a = reduced.matrix.entries[:r].copy()
        pivot_set = set(reduced.pivots)
        nonpivots = [j for j in range(m.cols) if j not in pivot_set]
        support = a != 0

        row_scale = np.ones(r, dtype=np.int64)
        col_scale = np.ones(m.cols, dtype=np.int64)
        for i, j, from_row in spanning_forest(support, nonpivots):
            if from_row:
                col_scale[j] = inv_mod(int(row_scale[i] * a[i, j]), p)
            else:
                row_scale[i] = inv_mod(int(a[i, j] * col_scale[j]), p)

        for j in nonpivots:
            a[:, j] = (row_scale * a[:, j] % p) * col_scale[j] % p
        return FieldMatrix(a.reshape(r, m.cols), p)

    def are_equivalent(self, m1: FieldMatrix, m2: FieldMatrix) -> bool:
        if m1.p != m2.p or m1.cols != m2.cols:
            raise ShapeMismatch(
                f"Cannot compare a {m1.shape} matrix over GF({m1.p}) with a {m2.shape} matrix over GF({m2.p})"
            )
        return self.canonical_form(m1) == self.canonical_form(m2)

    def dual_representation(self, m: FieldMatrix) -> FieldMatrix:
        """[-A^T | I] for m = [I | A], column order preserved"""
        p = m.p
        r, n = m.shape
        if r == 0:
            return FieldMatrix.identity(n, p)
        basis_cols: List[int] = []
        for k in range(r):
            unit = np.zeros(r, dtype=np.int64)
            unit[k] = 1
            matches = [j for j in range(n) if np.array_equal(m.entries[:, j], unit)]
            if not matches:
                raise NotStandardForm(f"No identity column for row {k}", {"row": k})
            basis_cols.append(matches[0])
        cobasis = [j for j in range(n) if j not in set(basis_cols)]
        dual = np.zeros((len(cobasis), n), dtype=np.int64)
        a = m.entries[:, cobasis]
        for k, b in enumerate(basis_cols):
            dual[:, b] = -a[k]
        for t, j in enumerate(cobasis):
            dual[t, j] = 1
        return FieldMatrix(dual.reshape(len(cobasis), n), p)

    def extension_candidates(self, m: FieldMatrix, o: RankOracle, e: str) -> List[Point]:
        """Projective points x with M[m + x] = M, x inserted at e's position"""
        groundset = tuple(o.groundset)
        if e not in groundset:
            raise UnknownElement(f"Unknown element {e!r}")
        table = rank_table(o)
        rest = frozenset(groundset) - {e}
        if table[frozenset([e])] == 0:
            return [tuple([0] * m.rows)]
        padded = self._padded(m, table, groundset, e)
        position = groundset.index(e)
        through_e = [s for s in subsets(groundset) if e in s]
        candidates = []
        for point in projective_points(Flat.full(padded.rows, m.p)):
            matrix = padded.with_column(position, point)
            if all(
                column_rank(matrix, [groundset.index(x) for x in s]) == table[s] for s in through_e
            ):
                candidates.append(point)
        self.logger.debug(
            f"{len(candidates)} extension candidate(s) for {e} over GF({m.p}) (r(E - e)={table[rest]})"
        )
        return candidates

    def _padded(self, m: FieldMatrix, table: Dict[Subset, int], groundset, e: str) -> FieldMatrix:
        everything = frozenset(groundset)
        if table[everything - {e}] < table[everything]:
            return m.with_zero_row()
        return m

    def extend_representation(self, m: FieldMatrix, o: RankOracle, e: str, point: Point) -> FieldMatrix:
        """m with the candidate column for e inserted (and a zero row when e is a coloop)"""
        groundset = tuple(o.groundset)
        table = {frozenset(groundset): o.rank(groundset), frozenset(groundset) - {e}: o.rank(set(groundset) - {e})}
        padded = self._padded(m, table, groundset, e)
        return padded.with_column(groundset.index(e), point)


def create_representation_service() -> RepresentationService:
    """Create a configured representation service"""
    return RepresentationService()
