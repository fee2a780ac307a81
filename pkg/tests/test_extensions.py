import pytest

from lib.errors import ExhaustiveBoundExceeded, InvalidMatroid
from matroids.extensions import (
    ExtensionLattice,
    cut_flats,
    fresh_label,
    modular_cuts,
    rank_vector,
    single_element_extensions,
)
from matroids.oracle import UniformMatroid
from matroids.structure import axiom_check


def test_extensions_of_a_single_coloop():
    extensions = single_element_extensions(UniformMatroid(1, 1, ["a"]))
    assert len(extensions) == 3
    # coloop, parallel element, loop
    assert [m.full_rank for m in extensions] == [2, 1, 1]
    assert sorted(m.rank(["z"]) for m in extensions) == [0, 1, 1]


def test_extensions_of_a_triangle():
    triangle = UniformMatroid(2, 3, ["a", "b", "c"])
    extensions = single_element_extensions(triangle)
    assert len(extensions) == 6
    assert extensions[0].full_rank == 3
    assert sum(1 for m in extensions if m.rank(["z"]) == 0) == 1
    for label in "abc":
        assert sum(1 for m in extensions if m.rank([label, "z"]) == 1 and m.rank(["z"]) == 1) == 1
    assert len({rank_vector(m) for m in extensions}) == 6
    assert all(axiom_check(m).ok for m in extensions)


def test_modular_cuts_of_a_triangle():
    triangle = UniformMatroid(2, 3, ["a", "b", "c"])
    cuts = modular_cuts(triangle)
    assert len(cuts) == 6
    assert cuts[0].empty
    assert cut_flats(triangle, cuts[0]) == []
    free = next(cut for cut in cuts if not cut.empty and not cut.hyperplanes)
    assert cut_flats(triangle, free) == [frozenset("abc")]
    everything = next(cut for cut in cuts if len(cut.hyperplanes) == 3)
    assert len(cut_flats(triangle, everything)) == 5


def test_linear_subclasses_are_closed_under_colines():
    lattice = ExtensionLattice(UniformMatroid(2, 3, ["a", "b", "c"]))
    assert lattice.propagate(0b011) == 0b111
    assert lattice.propagate(0b001) == 0b001
    assert sorted(lattice.linear_subclasses()) == [0, 1, 2, 4, 7]


def test_extend_rejects_a_taken_label():
    lattice = ExtensionLattice(UniformMatroid(1, 1, ["a"]))
    with pytest.raises(InvalidMatroid):
        lattice.extend(None, "a")


def test_extension_bound():
    with pytest.raises(ExhaustiveBoundExceeded):
        ExtensionLattice(UniformMatroid(2, 10))


def test_fresh_label():
    assert fresh_label(["a", "b"]) == "z"
    assert fresh_label(["z", "z1"]) == "z2"
