import pytest

from lib.call_ledger import CallLedger
from lib.errors import ExhaustiveBoundExceeded, GroundSetMismatch, InvalidMatroid, InvalidMinorQuery, UnknownElement
from lib.utils import subsets
from matroids.oracle import (
    CountedOracle,
    DualMatroid,
    DualRankView,
    LinearMatroid,
    MinorMatroid,
    MinorRankView,
    RankTableMatroid,
    UniformMatroid,
    check_exhaustive_bound,
    direct_sum,
    dual_rank,
    matroid_from_document,
    matroid_to_document,
    minor_rank,
)
from matroids.spike import SpikeMatroid, representable_spike
from matroids.structure import (
    axiom_check,
    circuits,
    closure,
    coclosure,
    connectivity,
    cyclic_flats,
    first_difference,
    flats,
    hyperplanes,
    is_connected_to_order,
    matroid_equal,
    summary,
)


def test_counted_oracle_charges_every_query(u24):
    oracle = CountedOracle(u24, log=True)
    assert oracle.rank([]) == 0
    assert oracle.rank(["a", "b", "c"]) == 2
    assert oracle.rank(["a"], tag="level-1") == 1
    assert oracle.calls == 3
    assert oracle.ledger.snapshot() == {"default": 2, "level-1": 1}
    assert len(oracle.log) == oracle.calls


def test_unknown_element(u24):
    with pytest.raises(UnknownElement):
        CountedOracle(u24).rank(["z"])


def test_linear_rank_on_a_spike_matrix():
    spike, matrix = representable_spike(5, 3, [1, 1, 1])
    linear = LinearMatroid(matrix, spike.groundset)
    assert linear.rank(["a1", "b1", "a2", "b2"]) == 3


def test_minor_rank_memoizes_contract_rank(u24):
    oracle = CountedOracle(u24)
    view = MinorRankView(oracle, contract=["a"])
    assert view.rank(["b"]) == 1
    assert oracle.calls == 2
    assert view.rank(["c", "d"]) == 1
    assert oracle.calls == 3
    assert minor_rank(u24, [], ["a"], ["b", "c"]) == 2


def test_minor_queries_must_avoid_removed_elements(u24):
    view = MinorRankView(u24, contract=["a"], delete=["b"])
    with pytest.raises(InvalidMinorQuery):
        view.rank(["a", "c"])
    with pytest.raises(InvalidMinorQuery):
        MinorRankView(u24, contract=["a"], delete=["a"])


def test_fano_contraction_drops_line_rank(fano):
    # a, b, d form a line of the Fano plane
    assert fano.rank(["b", "d"]) == 2
    assert minor_rank(fano, ["a"], [], ["b", "d"]) == 1


def test_dual_rank(u24):
    assert dual_rank(u24, []) == 0
    assert dual_rank(u24, ["a", "b", "c"]) == 2
    with_coloop = direct_sum(u24, UniformMatroid(1, 1, ["f"]))
    assert dual_rank(with_coloop, ["f"]) == 0
    view = DualRankView(CountedOracle(u24))
    assert view.rank(["a"]) == 1
    assert view.rank(["b"]) == 1
    assert view.oracle.calls == 3


def test_closure_and_coclosure(u24, fano):
    assert closure(u24, ["a", "b"]) == frozenset("abcd")
    assert closure(fano, []) == frozenset()
    assert closure(SpikeMatroid(3), ["a1", "b1", "a2"]) >= {"b2"}
    assert coclosure(u24, ["a", "b"]) == frozenset("abcd")


def test_connectivity(u24):
    assert connectivity(u24, []) == 0
    assert connectivity(u24, "abcd") == 0
    assert connectivity(u24, ["a", "b"]) == 2


def test_circuits(u24):
    assert sorted(sorted(c) for c in circuits(u24)) == [
        ["a", "b", "c"],
        ["a", "b", "d"],
        ["a", "c", "d"],
        ["b", "c", "d"],
    ]
    assert circuits(UniformMatroid(3, 3)) == []


def test_free_spike_circuits():
    found = circuits(SpikeMatroid(3))
    # every 3-set of a free 3-spike is independent, so the circuits are all 15 four-sets
    assert len(found) == 15
    assert all(len(c) == 4 for c in found)
    legs = [c for c in found if len({label[1:] for label in c}) == 2]
    assert len(legs) == 3


def test_flats_and_cyclic_flats(u24, fano):
    assert cyclic_flats(u24) == [frozenset(), frozenset("abcd")]
    assert len(hyperplanes(fano)) == 7
    assert len(flats(fano)) == 1 + 7 + 7 + 1
    assert len(cyclic_flats(fano)) == 1 + 7 + 1


def test_axiom_check_reports_the_broken_rule():
    groundset = ["a", "b"]
    table = {frozenset(s): len(s) for s in subsets(groundset)}
    table[frozenset(["a"])] = 2
    report = axiom_check(RankTableMatroid(groundset, table, validate=False))
    assert not report.ok
    assert report.rule == "unit-increase"
    with pytest.raises(InvalidMatroid):
        RankTableMatroid(groundset, table)


def test_rank_table_rejects_elements_outside_the_ground_set():
    groundset = ["a", "b"]
    table = {frozenset(s): len(s) for s in subsets(groundset)}
    table[frozenset(["a", "zz"])] = 2
    with pytest.raises(UnknownElement):
        RankTableMatroid(groundset, table)


def test_every_description_passes_axiom_check(u24, fano):
    for matroid in (u24, fano, DualMatroid(fano), MinorMatroid(fano, ["a"], ["b"]), SpikeMatroid(4)):
        assert axiom_check(matroid).ok


def test_equality(u24):
    assert matroid_equal(u24, DualMatroid(u24))
    other = UniformMatroid(3, 4, ["a", "b", "c", "d"])
    assert first_difference(u24, other) == frozenset(["a", "b", "c"])
    with pytest.raises(GroundSetMismatch):
        matroid_equal(u24, UniformMatroid(2, 4))


def test_exhaustive_bound():
    with pytest.raises(ExhaustiveBoundExceeded):
        check_exhaustive_bound(["x"] * 17)
    check_exhaustive_bound(["x"] * 3, bound=3)


def test_connectivity_order(u24, fixture_matroid):
    assert is_connected_to_order(u24, 3)
    assert not is_connected_to_order(fixture_matroid("u12_u12"), 2)


def test_document_round_trip(fano):
    document = matroid_to_document(MinorMatroid(fano, ["a"], ["b"]))
    assert document["v"] == 1
    rebuilt = matroid_from_document(document)
    assert matroid_equal(rebuilt, MinorMatroid(fano, ["a"], ["b"]))


def test_rank_table_document(u24):
    document = RankTableMatroid.from_oracle(u24).to_dict()
    assert document["ranks"][0] == {"set": [], "rank": 0}
    assert matroid_equal(matroid_from_document(document), u24)


def test_summary(fano):
    info = summary(fano)
    assert info["rank"] == 3
    assert info["size"] == 7
    assert info["loops"] == [] and info["coloops"] == []
    assert len(info["circuits"]) == 7 + 7


def test_ledger_merge():
    first, second = CallLedger(), CallLedger()
    first.record("level-1", 2)
    second.record("level-1")
    second.record("level-2", 4)
    first.merge(second)
    assert first.snapshot() == {"level-1": 3, "level-2": 4}
    assert first.total == 7
