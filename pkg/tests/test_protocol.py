import pytest

from lib.errors import MalformedCertificate, NothingToCertify
from matroids.catalog import get_fixture, load_catalog
from matroids.oracle import CountedOracle, UniformMatroid
from protocol.adjudicator import Adjudicator, load_certificate, verify
from protocol.claimant import (
    Claimant,
    build_certificate,
    certificate_document,
    level_minor,
    minimize_to_excluded_minor,
    vital_bound_check,
)

U25 = UniformMatroid(2, 5, ["a", "b", "c", "d", "e"])

NON_REPRESENTABLE = [
    (name, p)
    for name, entry in sorted(load_catalog().items())
    for p, count in sorted(entry.rep_counts.items())
    if count == 0
]


@pytest.fixture
def u24_certificate(u24):
    return build_certificate(u24, 2)


def test_minimize(u24, fano):
    assert minimize_to_excluded_minor(u24, 2) == ([], [])
    assert minimize_to_excluded_minor(U25, 2) == ([], ["a"])
    with pytest.raises(NothingToCertify):
        minimize_to_excluded_minor(fano, 2)


def test_minimize_strips_coloops(fixture_matroid):
    assert minimize_to_excluded_minor(fixture_matroid("u24_coloop"), 2) == (["f"], [])


def test_removal_chain(u24):
    assert Claimant(2).removal_chain(u24) == [
        ("d", "contract"),
        ("c", "contract"),
        ("b", "delete"),
        ("a", "delete"),
    ]


def test_level_minor():
    steps = [("d", "contract"), ("c", "contract"), ("b", "delete"), ("a", "delete")]
    assert level_minor([], [], steps, 1) == (["c"], ["b", "a"])
    assert level_minor(["f"], [], steps, 4) == (["f"], [])


def test_u24_certificate_shape(u24_certificate):
    cert = u24_certificate
    assert cert.p == 2
    assert [(step.element, step.kind) for step in cert.chain] == [
        ("d", "contract"),
        ("c", "contract"),
        ("b", "delete"),
        ("a", "delete"),
    ]
    assert [len(level.guard) for level in cert.levels] == [1, 1, 3, 3]
    assert cert.levels[0].evidence[0].kind == "loop"
    assert cert.levels[2].labels == ["b", "c", "d"]

    level_3 = cert.levels[2]
    assert level_3.evidence[0].kind == "point-faults"
    assert [m.entries for m in level_3.reps] == [[[1, 0, 1], [0, 1, 1]]]
    points = level_3.evidence[0].points
    assert [p.point for p in points] == [[0, 1], [1, 0], [1, 1]]
    assert points[0].fault.subset == ["b", "d"]
    assert points[1].fault.subset == ["b", "c"]
    assert points[2].accepted_as == 0

    assert cert.levels[3].reps == []
    assert all(p.fault is not None for p in cert.levels[3].evidence[0].points)


def test_u24_certificate_is_accepted(u24, u24_certificate):
    oracle = CountedOracle(u24)
    report = verify(oracle, u24_certificate)
    assert report.accepted, report.reason
    assert report.levels == 4
    assert report.oracle_calls == oracle.calls
    assert set(report.per_level) <= {"level-1", "level-2", "level-3", "level-4"}
    assert sum(report.per_level.values()) == report.oracle_calls
    assert report.candidate_budget == 3


def test_documents_verify_like_models(u24, u24_certificate):
    document = certificate_document(u24_certificate)
    assert document["kind"] == "excluded-minor-chain"
    assert verify(CountedOracle(u24), document).accepted


def test_certificate_is_rejected_for_another_matroid(fixture_matroid, u24_certificate):
    report = verify(CountedOracle(fixture_matroid("u23_u11")), u24_certificate)
    assert not report.accepted
    assert report.reason


def test_tampered_guard_names_its_level(u24, u24_certificate):
    document = certificate_document(u24_certificate)
    document["levels"][2]["guard"][0]["rank"] += 1
    report = verify(CountedOracle(u24), document)
    assert not report.accepted
    assert "Level 3" in report.reason


def test_top_level_must_be_empty(u24, u24_certificate):
    document = certificate_document(u24_certificate)
    document["levels"][3]["reps"].append(document["levels"][2]["reps"][0])
    assert not verify(CountedOracle(u24), document).accepted


def test_malformed_documents():
    with pytest.raises(MalformedCertificate):
        load_certificate({})
    with pytest.raises(MalformedCertificate):
        load_certificate({"kind": "excluded-minor-chain", "p": 2})


def test_certificate_through_a_coloop(fixture_matroid):
    matroid = fixture_matroid("u24_coloop")
    cert = build_certificate(matroid, 2)
    assert cert.minor.contract == ["f"]
    assert Adjudicator(CountedOracle(matroid)).verify(cert).accepted


def test_u25_over_gf3():
    cert = build_certificate(U25, 3)
    assert verify(CountedOracle(U25), cert).accepted


@pytest.mark.slow
def test_fano_over_gf3(fano):
    cert = build_certificate(fano, 3)
    assert verify(CountedOracle(fano), cert).accepted


def test_vital_bound_check(u24, u24_certificate):
    rows = vital_bound_check(u24, u24_certificate)
    assert [(row.level, row.element) for row in rows] == [(3, "b"), (4, "a")]
    assert all(row.holds for row in rows)
    assert rows[0].to_dict()["k_rank"] == 2


def test_relaxed_binary_spike_over_gf2(fixture_matroid):
    matroid = fixture_matroid("relaxed_binary_spike4")
    cert = build_certificate(matroid, 2)
    assert len(cert.chain) == 4
    report = verify(CountedOracle(matroid), cert)
    assert report.accepted, report.reason


@pytest.mark.slow
@pytest.mark.parametrize("name, p", NON_REPRESENTABLE)
def test_every_non_representable_fixture_certifies(name, p):
    matroid = get_fixture(name).matroid
    report = verify(CountedOracle(matroid), build_certificate(matroid, p))
    assert report.accepted, report.reason
