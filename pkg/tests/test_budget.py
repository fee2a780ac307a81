import pytest

from lib.call_ledger import CallLedger
from lib.data_models import BudgetRow
from lib.errors import NotApplicable
from protocol.budget import call_budget_scan, family_member, fit_quadratic


async def test_u24_free_scan():
    ledger = CallLedger()
    scan = await call_budget_scan("u24-free", 2, [2, 0, 1], ledger)
    assert [row.n for row in scan.rows] == [0, 1, 2]
    assert all(row.accepted for row in scan.rows)
    assert scan.within_margin
    assert ledger.total == sum(row.oracle_calls for row in scan.rows)
    assert scan.to_dict()["fit"]["margin"] == 2.0


async def test_unknown_family():
    with pytest.raises(NotApplicable):
        await call_budget_scan("nope", 2, [1])


def test_family_members():
    assert family_member("u24-free", 2).groundset == ("a", "b", "c", "d", "f1", "f2")
    assert family_member("uniform-rank2", 5).full_rank == 2
    assert len(family_member("relaxed-spike", 4).groundset) == 8


def test_fit_quadratic():
    rows = [BudgetRow("f", n, 3 * n * n + 5, True) for n in (1, 2, 3)]
    c, c_prime = fit_quadratic(rows)
    assert c == pytest.approx(3.0)
    assert c_prime == pytest.approx(5.0)
    assert fit_quadratic(rows[:1]) == (0.0, 8.0)


@pytest.mark.slow
@pytest.mark.parametrize("family, ns", [("u24-free", [0, 1, 2, 3, 4, 5]), ("relaxed-spike", [3, 4, 5])])
async def test_larger_scans_stay_within_the_fitted_budget(family, ns):
    scan = await call_budget_scan(family, 2, ns)
    assert [row.n for row in scan.rows] == ns
    assert all(row.accepted for row in scan.rows)
    assert scan.within_margin
