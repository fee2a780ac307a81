"""
Oracle-call budget scans over scaling families of non-representable matroids
"""

import asyncio
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from lib.call_ledger import CallLedger
from lib.data_models import BudgetRow, BudgetScan
from lib.errors import NotApplicable
from lib.utils import format_duration
from matroids.oracle import CountedOracle, Matroid, UniformMatroid, default_labels, direct_sum
from matroids.spike import relax, representable_spike
from protocol.adjudicator import verify
from protocol.claimant import build_certificate

logger = logging.getLogger(__name__)

MARGIN = 2.0


def u24_plus_free(k: int) -> Matroid:
    """U_{2,4} on a..d plus k coloops f1..fk"""
    u24 = UniformMatroid(2, 4, ["a", "b", "c", "d"])
    return direct_sum(u24, UniformMatroid(k, k, [f"f{i}" for i in range(1, k + 1)]))


def relaxed_binary_spike(n: int) -> Matroid:
    """The GF(2) spike on n legs with its first dependent transversal relaxed"""
    spike, _ = representable_spike(2, n, [1] * n)
    return relax(spike, min(spike.dependent))


def rank_two_uniform(n: int) -> Matroid:
    return UniformMatroid(2, n, default_labels(n))


FAMILIES: Dict[str, Callable[[int], Matroid]] = {
    "u24-free": u24_plus_free,
    "relaxed-spike": relaxed_binary_spike,
    "uniform-rank2": rank_two_uniform,
}


def family_member(family: str, n: int) -> Matroid:
    if family not in FAMILIES:
        raise NotApplicable(f"Unknown family {family!r}", {"families": sorted(FAMILIES)})
    return FAMILIES[family](n)


def measure(family: str, n: int, p: int, ledger: CallLedger) -> BudgetRow:
    """Build a certificate, then verify it with a fresh counted oracle"""
    matroid = family_member(family, n)
    certificate = build_certificate(matroid, p)
    oracle = CountedOracle(matroid)
    report = verify(oracle, certificate)
    ledger.merge(oracle.ledger)
    logger.debug(f"{family} n={n}: {report.oracle_calls} calls, accepted={report.accepted}")
    return BudgetRow(family=family, n=n, oracle_calls=report.oracle_calls, accepted=report.accepted)


def fit_quadratic(rows: Sequence[BudgetRow]):
    """Least-squares calls ~ c * n^2 + c'"""
    if len({row.n for row in rows}) < 2:
        return 0.0, float(max((row.oracle_calls for row in rows), default=0))
    x = np.array([row.n ** 2 for row in rows], dtype=float)
    y = np.array([row.oracle_calls for row in rows], dtype=float)
    c, c_prime = np.polyfit(x, y, 1)
    return float(c), float(c_prime)


async def call_budget_scan(
    family: str, p: int, ns: Sequence[int], ledger: Optional[CallLedger] = None
) -> BudgetScan:
    """Measure every member concurrently, each on its own counted oracle"""
    ledger = ledger or CallLedger()
    started = time.monotonic()
    if family not in FAMILIES:
        raise NotApplicable(f"Unknown family {family!r}", {"families": sorted(FAMILIES)})
    rows: List[BudgetRow] = list(
        await asyncio.gather(*(asyncio.to_thread(measure, family, n, p, ledger) for n in ns))
    )
    rows.sort(key=lambda row: row.n)
    c, c_prime = fit_quadratic(rows)
    within = all(row.oracle_calls <= MARGIN * (c * row.n ** 2 + c_prime) + 1e-9 for row in rows)
    scan = BudgetScan(family=family, p=p, rows=rows, c=round(c, 6), c_prime=round(c_prime, 6), within_margin=within)
    logger.info(f"Budget scan {family} over GF({p}): c={scan.c}, c'={scan.c_prime}, within margin: {within} ({format_duration(time.monotonic() - started)})")
    return scan
