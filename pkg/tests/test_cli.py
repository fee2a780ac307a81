import json

import pytest

from main_orchestrator import EXIT_MALFORMED, EXIT_NEGATIVE, EXIT_OK, run


def output(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def u24_certificate_path(tmp_path):
    path = tmp_path / "u24.cert.json"
    assert run(["certify", "catalog:u24", "--p", "2", "-o", str(path)]) == EXIT_OK
    return path


@pytest.mark.parametrize("p, count", [(2, 0), (3, 1), (5, 3)])
def test_reps(capsys, p, count):
    assert run(["reps", "catalog:u24", "--p", str(p)]) == EXIT_OK
    document = output(capsys)
    assert document["count"] == count
    assert document["labels"] == ["a", "b", "c", "d"]


def test_certify_then_verify(capsys, u24_certificate_path):
    assert run(["verify", "catalog:u24", str(u24_certificate_path)]) == EXIT_OK
    report = output(capsys)
    assert report["accepted"] is True
    assert report["oracle_calls"] > 0


def test_verify_against_the_wrong_matroid(capsys, u24_certificate_path):
    assert run(["verify", "catalog:u23_u11", str(u24_certificate_path)]) == EXIT_NEGATIVE
    assert output(capsys)["accepted"] is False


def test_malformed_certificate(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    assert run(["verify", "catalog:u24", str(path)]) == EXIT_MALFORMED


def test_unreadable_inputs(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(["info", str(path)]) == EXIT_MALFORMED
    assert run(["info", str(tmp_path / "missing.json")]) == EXIT_MALFORMED
    assert run(["info", "catalog:no-such-matroid"]) == EXIT_MALFORMED


def test_representable_matroid_has_nothing_to_certify():
    assert run(["certify", "catalog:fano", "--p", "2"]) == EXIT_NEGATIVE


def test_u24_witness_round_trip(capsys, tmp_path):
    path = tmp_path / "witness.json"
    assert run(["certify", "catalog:u24_coloop", "--u24", "-o", str(path)]) == EXIT_OK
    assert run(["verify", "catalog:u24_coloop", str(path)]) == EXIT_OK
    report = output(capsys)
    assert report["kind"] == "u24-minor"
    assert report["oracle_calls"] == 8
    assert run(["certify", "catalog:fano", "--u24"]) == EXIT_NEGATIVE


def test_vital_report_wraps_the_certificate(capsys, tmp_path):
    path = tmp_path / "vital.json"
    assert run(["certify", "catalog:u24", "--p", "2", "--report-vital", "-o", str(path)]) == EXIT_OK
    document = json.loads(path.read_text())
    assert set(document) == {"certificate", "vital"}
    assert all(row["holds"] for row in document["vital"])
    assert run(["verify", "catalog:u24", str(path)]) == EXIT_OK


def test_fuzz(capsys, u24_certificate_path):
    assert run(["fuzz", "catalog:u24", str(u24_certificate_path), "--rounds", "10", "--seed", "3"]) == EXIT_OK
    result = output(capsys)
    assert result["rejected"] == 10


def test_spike_commands(capsys, tmp_path):
    path = tmp_path / "whirl.json"
    assert run(["spike", "gen", "--p", "3", "--n", "3", "-o", str(path)]) == EXIT_OK
    assert json.loads(path.read_text())["dependent_transversals"] == ["110", "101", "011"]

    assert run(["spike", "relax", str(path), "--transversal", "110"]) == EXIT_OK
    assert output(capsys)["dependent_transversals"] == ["101", "011"]
    assert run(["spike", "tighten", str(path), "--transversal", "111"]) == EXIT_MALFORMED
    assert run(["spike", "relax", str(path), "--t", "011"]) == EXIT_OK
    assert output(capsys)["dependent_transversals"] == ["110", "101"]

    assert run(["census", str(path), "--q", "3"]) == EXIT_OK
    census = output(capsys)
    assert census["t_count"] == 3
    assert census["q"] == 3


def test_census_needs_a_spike():
    assert run(["census", "catalog:u24"]) == EXIT_MALFORMED


def test_freedom(capsys):
    assert run(["freedom", "catalog:u24", "--element", "a", "--separation", "2", "--uniform-minor"]) == EXIT_OK
    document = output(capsys)
    assert document["freedom"] == 2
    assert document["separation_bound"]["holds"] is False
    assert document["uniform_minor"]["gamma"] == 2
    assert run(["freedom", "catalog:u24", "--bound-check", "2"]) == EXIT_OK


def test_clones_and_info(capsys):
    assert run(["clones", "catalog:u24"]) == EXIT_OK
    assert output(capsys)["classes"] == [["a", "b", "c", "d"]]
    assert run(["info", "catalog:fano"]) == EXIT_OK
    info = output(capsys)
    assert info["rank"] == 3 and info["bounded"] is True


def test_catalog_commands(capsys):
    assert run(["catalog", "export", "u24"]) == EXIT_OK
    assert output(capsys)["type"] == "uniform"
    assert run(["catalog", "list"]) == EXIT_OK
    names = [entry["name"] for entry in output(capsys)["fixtures"]]
    assert "fano" in names


def test_budget_scan(capsys):
    assert run(["budget-scan", "--family", "u24-free", "--n", "0", "1"]) == EXIT_OK
    scan = output(capsys)
    assert [row["n"] for row in scan["rows"]] == [0, 1]


def test_validate_config():
    assert run(["--validate-config"]) == EXIT_OK


def test_no_command():
    assert run([]) == EXIT_MALFORMED


def test_rank_table_with_stray_label(capsys, tmp_path):
    ranks = [{"set": [], "rank": 0}]
    ranks += [{"set": [e], "rank": 1} for e in "abc"]
    ranks += [{"set": list(pair), "rank": 2} for pair in ["ab", "ac", "bc"]]
    ranks += [{"set": ["a", "b", "c"], "rank": 2}, {"set": ["zz"], "rank": 1}]
    path = tmp_path / "stray.json"
    path.write_text(json.dumps({"type": "rank-table", "labels": ["a", "b", "c"], "ranks": ranks}))
    assert run(["info", str(path)]) == EXIT_MALFORMED
    assert "unknown_element" in capsys.readouterr().err
