import itertools

import numpy as np
import pytest

from lib.errors import AmbientMismatch, FieldError, InversionOfZero, ShapeMismatch
from lib.gf_linalg import (
    FieldElement,
    FieldMatrix,
    Flat,
    check_prime,
    field_inv,
    intersect_flats,
    matrix_rank,
    normalize_point,
    nullspace,
    projective_points,
    rref,
    span_of_columns,
)


@pytest.mark.parametrize("p, a, expected", [(5, 3, 2), (2, 1, 1), (7, 4, 2)])
def test_field_inverse(p, a, expected):
    assert field_inv(FieldElement(a, p)) == expected


def test_zero_has_no_inverse():
    with pytest.raises(InversionOfZero):
        field_inv(FieldElement(0, 5))


@pytest.mark.parametrize("p", [0, 1, 4, 9, 65537 * 3])
def test_bad_moduli_are_rejected(p):
    with pytest.raises(FieldError):
        check_prime(p)


def test_mixed_fields_do_not_combine():
    with pytest.raises(FieldError):
        FieldElement(1, 3) + FieldElement(1, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms(p):
    values = [FieldElement(v, p) for v in range(p)]
    for a, b, c in itertools.product(values, repeat=3):
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
    for a in values[1:]:
        assert a * field_inv(a) == 1


def test_rref_examples():
    assert rref(FieldMatrix.identity(3, 2)).rank == 3
    assert rref(FieldMatrix.zeros(2, 4, 3)).rank == 0
    assert rref(FieldMatrix([[2, 1, 1], [1, 2, 1], [1, 1, 2]], 5)).rank == 3


def test_rref_pivots_and_form():
    result = rref(FieldMatrix([[1, 1, 0], [1, 1, 1]], 2))
    assert result.pivots == (0, 2)
    assert result.matrix.to_rows() == [[1, 1, 0], [0, 0, 1]]


def test_rref_is_canonical_for_row_equivalent_inputs():
    m = FieldMatrix([[1, 2, 3, 0], [0, 1, 4, 1], [1, 3, 2, 1]], 5)
    transform = FieldMatrix([[2, 0, 0], [1, 1, 0], [0, 3, 1]], 5)
    reduced = rref(m)
    assert reduced.rank == 2
    assert rref(transform @ m).matrix == reduced.matrix
    assert rref(reduced.matrix).matrix == reduced.matrix


def test_nullspace_annihilates():
    m = FieldMatrix([[1, 2, 3, 0], [0, 1, 4, 1]], 5)
    kernel = nullspace(m)
    assert kernel.rows == 2
    assert not np.any((m.entries @ kernel.entries.T) % 5)


def test_from_dict_checks_shape():
    with pytest.raises(ShapeMismatch):
        FieldMatrix.from_dict({"p": 2, "rows": 2, "cols": 2, "entries": [[1, 0]]})


def test_span_of_columns():
    a1 = FieldMatrix([[1, 0, 0, 2, 1, 1], [0, 1, 0, 1, 2, 1], [0, 0, 1, 1, 1, 2]], 5)
    assert span_of_columns(a1, []).rank == 0
    single = span_of_columns(a1, [3])
    assert single.rank == 1
    assert len(projective_points(single)) == 1
    assert span_of_columns(a1, [0, 3]).rank == 2


def test_intersections():
    p = 3
    plane_12 = Flat.from_vectors(FieldMatrix([[1, 0, 0], [0, 1, 0]], p), 3)
    plane_23 = Flat.from_vectors(FieldMatrix([[0, 1, 0], [0, 0, 1]], p), 3)
    full = Flat.full(3, p)

    assert intersect_flats(plane_12, full) == plane_12
    meet = intersect_flats(plane_12, plane_23)
    assert meet.rank == 1
    assert meet.basis.to_rows() == [[0, 1, 0]]
    assert intersect_flats(plane_12, plane_23) == intersect_flats(plane_23, plane_12)

    point_1 = Flat.from_vectors(FieldMatrix([[1, 0, 0]], p), 3)
    point_2 = Flat.from_vectors(FieldMatrix([[0, 1, 0]], p), 3)
    assert intersect_flats(point_1, point_2).rank == 0


def test_intersection_dimension_bound():
    p = 5
    f1 = Flat.from_vectors(FieldMatrix([[1, 2, 0, 1], [0, 1, 1, 3]], p), 4)
    f2 = Flat.from_vectors(FieldMatrix([[1, 0, 0, 0], [0, 0, 1, 4], [0, 1, 1, 1]], p), 4)
    meet = intersect_flats(f1, f2)
    assert meet.rank >= f1.rank + f2.rank - 4
    assert meet.is_subflat_of(f1) and meet.is_subflat_of(f2)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        intersect_flats(Flat.full(2, 3), Flat.full(3, 3))


def test_flat_equality_is_basis_independent():
    f1 = Flat.from_vectors(FieldMatrix([[1, 1, 0], [0, 1, 1]], 3), 3)
    f2 = Flat.from_vectors(FieldMatrix([[1, 2, 1], [2, 2, 0]], 3), 3)
    assert f1 == f2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_projective_point_counts(p, d):
    points = projective_points(Flat.full(d, p))
    assert len(points) == (p ** d - 1) // (p - 1)
    assert len(set(points)) == len(points)
    for point in points:
        assert next(x for x in point if x) == 1


def test_normalize_point():
    assert normalize_point((0, 2, 4), 5) == (0, 1, 2)
    with pytest.raises(InversionOfZero):
        normalize_point((0, 0), 3)


def test_matrix_rank_depends_on_the_field():
    lines = FieldMatrix([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 2)
    assert matrix_rank(lines) == 2
    assert matrix_rank(FieldMatrix(lines.entries, 3)) == 3
