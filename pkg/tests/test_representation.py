import itertools

import networkx as nx
import numpy as np
import pytest

from lib.errors import ExhaustiveBoundExceeded, NotStandardForm, ShapeMismatch, UnknownElement
from lib.gf_linalg import FieldMatrix
from matroids.oracle import DualMatroid, LinearMatroid, MinorMatroid, UniformMatroid
from matroids.spike import relax, representable_spike
from matroids.structure import first_difference, matroid_equal
from representation.service import spanning_forest, support_graph

U24_TERNARY = [[1, 0, 1, 1], [0, 1, 1, 2]]


@pytest.mark.parametrize("p, expected", [(2, 0), (3, 1), (5, 3)])
def test_u24_rep_counts(service, u24, p, expected):
    assert len(service.enumerate_reps(u24, p)) == expected


def test_u25_over_gf5(service):
    assert len(service.enumerate_reps(UniformMatroid(2, 5, list("abcde")), 5)) == 6


def test_fano_is_binary_only(service, fano, non_fano):
    reps = service.enumerate_reps(fano, 2)
    assert len(reps) == 1
    assert matroid_equal(LinearMatroid(reps[0], fano.groundset), fano)
    assert not service.is_representable(fano, 3)
    assert len(service.enumerate_reps(non_fano, 3)) == 1
    assert not service.is_representable(non_fano, 2)


def test_rank_zero(service):
    reps = service.enumerate_reps(UniformMatroid(0, 2, ["a", "b"]), 3)
    assert len(reps) == 1
    assert reps[0].shape == (0, 2)


def test_reps_are_canonical_and_distinct(service):
    reps = service.enumerate_reps(UniformMatroid(2, 4, list("abcd")), 5)
    for m in reps:
        assert service.canonical_form(m) == m
    assert not service.are_equivalent(reps[0], reps[1])


def test_search_bounds(service, u24):
    with pytest.raises(ExhaustiveBoundExceeded):
        service.enumerate_reps(u24, 11)
    with pytest.raises(ExhaustiveBoundExceeded):
        service.enumerate_reps(UniformMatroid(1, 13), 2)


def test_equivalence_up_to_scaling(service):
    m = FieldMatrix(U24_TERNARY, 3)
    assert service.are_equivalent(m, m.scale_columns([1, 1, 2, 1]))
    assert service.are_equivalent(m, FieldMatrix([[1, 0, 1, 1], [0, 1, 2, 1]], 3))
    row_mixed = FieldMatrix([[1, 1], [0, 1]], 3) @ m
    assert service.are_equivalent(m, row_mixed)
    with pytest.raises(ShapeMismatch):
        service.are_equivalent(m, FieldMatrix(U24_TERNARY, 5))


def test_dual_representation(service, u24):
    m = FieldMatrix(U24_TERNARY, 3)
    dual = service.dual_representation(m)
    assert dual.to_rows() == [[2, 2, 1, 0], [2, 1, 0, 1]]
    assert matroid_equal(LinearMatroid(dual, u24.groundset), DualMatroid(LinearMatroid(m, u24.groundset)))
    with pytest.raises(NotStandardForm):
        service.dual_representation(FieldMatrix([[1, 1], [1, 2]], 3))


@pytest.mark.parametrize("p, expected", [(2, 0), (3, 1), (5, 3)])
def test_extension_candidates(service, u24, p, expected):
    triangle = FieldMatrix([[1, 0, 1], [0, 1, 1]], p)
    assert len(service.extension_candidates(triangle, u24, "d")) == expected


def test_extend_representation(service, u24):
    triangle = FieldMatrix([[1, 0, 1], [0, 1, 1]], 3)
    (point,) = service.extension_candidates(triangle, u24, "d")
    extended = service.extend_representation(triangle, u24, "d", point)
    assert matroid_equal(LinearMatroid(extended, u24.groundset), u24)
    with pytest.raises(UnknownElement):
        service.extension_candidates(triangle, u24, "z")


def test_coloop_extension_adds_a_row(service, fixture_matroid):
    u24_coloop = fixture_matroid("u24_coloop")
    base = FieldMatrix(U24_TERNARY, 3)
    candidates = service.extension_candidates(base, u24_coloop, "f")
    # every point off the plane of the other columns
    assert len(candidates) == 9
    assert (0, 0, 1) in candidates
    extended = service.extend_representation(base, u24_coloop, "f", (0, 0, 1))
    assert extended.shape == (3, 5)


def test_spanning_forest_visits_rows_first():
    support = np.array([[True, True, True, True], [False, False, True, True]])
    assert spanning_forest(support, [2, 3]) == [(0, 2, True), (0, 3, True), (1, 2, False)]


@pytest.mark.parametrize("e", ["a", "b", "c", "d"])
def test_single_element_minors_of_u24_are_binary(service, u24, e):
    assert len(service.enumerate_reps(MinorMatroid(u24, delete=[e]), 2)) == 1
    assert len(service.enumerate_reps(MinorMatroid(u24, contract=[e]), 2)) == 1


@pytest.mark.parametrize("transversal", ["1000", "0100", "0010", "0001", "1110", "1101", "1011", "0111"])
def test_relaxed_binary_spikes_are_not_binary(service, transversal):
    spike, _ = representable_spike(2, 4, [1] * 4)
    assert not service.is_representable(relax(spike, transversal), 2)


def test_spanning_forest_covers_each_component_once():
    support = np.array([[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]], dtype=bool)
    nonpivots = [0, 1, 2, 3]
    edges = spanning_forest(support, nonpivots)
    forest = nx.Graph((("row", i), ("col", j)) for i, j, _ in edges)
    assert nx.is_forest(forest)
    components = nx.number_connected_components(support_graph(support, nonpivots))
    assert components == 2
    assert len(edges) == support.shape[0] + len(nonpivots) - components


def _realizations(matroid, p):
    """Every r x n matrix over GF(p) whose column matroid is `matroid`"""
    r, n = matroid.full_rank, matroid.size
    for values in itertools.product(range(p), repeat=r * n):
        matrix = FieldMatrix(np.array(values, dtype=np.int64).reshape(r, n), p)
        if first_difference(LinearMatroid(matrix, matroid.groundset), matroid) is None:
            yield matrix


@pytest.mark.parametrize(
    "name, p",
    [
        ("u12", 3),
        ("u13", 3),
        ("u23", 2),
        ("u23", 3),
        ("u24", 2),
        pytest.param("u24", 3, marks=pytest.mark.slow),
        pytest.param("u12_u12", 3, marks=pytest.mark.slow),
    ],
)
def test_enumeration_matches_brute_force(service, fixture_matroid, name, p):
    matroid = fixture_matroid(name)
    reps = service.enumerate_reps(matroid, p)
    for first, second in itertools.combinations(reps, 2):
        assert not service.are_equivalent(first, second)
    for rep in reps:
        assert first_difference(LinearMatroid(rep, matroid.groundset), matroid) is None
    for matrix in _realizations(matroid, p):
        assert sum(service.are_equivalent(matrix, rep) for rep in reps) == 1
