"""
Eight-call proofs of a U_{2,4}-minor (and so of non-binarity)
"""

import itertools
import logging
from typing import Dict, FrozenSet, List, Optional

from lib.config import config
from lib.data_models import VerificationReport
from lib.schemas import Attestation, U24Witness
from lib.utils import order_subset
from matroids.oracle import CountedOracle, RankOracle, check_exhaustive_bound

logger = logging.getLogger(__name__)

TAG = "u24"


def _queries(contract: List[str], quad: List[str]) -> List[FrozenSet[str]]:
    """r(C), r(C + pair) for the six pairs of Q, r(C + Q)"""
    base = frozenset(contract)
    pairs = [base | set(pair) for pair in itertools.combinations(quad, 2)]
    return [base] + pairs + [base | set(quad)]


def u24_minor_witness(o: RankOracle) -> Optional[U24Witness]:
    """Independent C and a 4-set Q with (M / C)|Q = U_{2,4}, smallest C first"""
    groundset = list(o.groundset)
    check_exhaustive_bound(groundset)
    full = o.rank(groundset)
    for size in range(full + 1):
        for contract in itertools.combinations(groundset, size):
            if o.rank(contract) != size:
                continue
            rest = [e for e in groundset if e not in contract]
            for quad in itertools.combinations(rest, 4):
                if all(o.rank(set(contract) | set(pair)) == size + 2 for pair in itertools.combinations(quad, 2)) and (
                    o.rank(set(contract) | set(quad)) == size + 2
                ):
                    delete = [e for e in rest if e not in quad]
                    attestations = [
                        Attestation(subset=order_subset(s, groundset), rank=o.rank(s))
                        for s in _queries(list(contract), list(quad))
                    ]
                    logger.info(f"U_{{2,4}}-minor on {list(quad)} after contracting {list(contract)}")
                    return U24Witness(
                        v=config.schema_version,
                        labels=groundset,
                        contract=list(contract),
                        delete=delete,
                        quad=list(quad),
                        attestations=attestations,
                    )
    return None


def verify_u24_witness(oracle: CountedOracle, witness: U24Witness) -> VerificationReport:
    """Exactly eight rank calls; any attested value must agree with the oracle"""
    start = oracle.calls
    reason = None
    labels = list(oracle.groundset)
    parts = list(witness.contract) + list(witness.delete) + list(witness.quad)
    if witness.labels != labels:
        reason = "Witness labels do not match the matroid"
    elif sorted(parts) != sorted(labels):
        reason = "contract, delete and quad do not partition the ground set"
    elif len(set(witness.quad)) != 4:
        reason = "quad must hold four elements"
    else:
        claimed: Dict[FrozenSet[str], int] = {frozenset(a.subset): a.rank for a in witness.attestations}
        values = []
        for subset in _queries(witness.contract, witness.quad):
            value = oracle.rank(subset, tag=TAG)
            values.append(value)
            if subset in claimed and claimed[subset] != value:
                reason = f"attested r({order_subset(subset, labels)})={claimed[subset]} but the oracle answers {value}"
        base = values[0]
        if reason is None and any(value - base != 2 for value in values[1:]):
            reason = "(M / C)|Q is not U_{2,4}"
    report = VerificationReport(
        accepted=reason is None,
        oracle_calls=oracle.calls - start,
        kind="u24-minor",
        per_level={TAG: oracle.calls - start} if oracle.calls > start else {},
        reason=reason,
    )
    logger.info(f"U_{{2,4}} witness {'accepted' if report.accepted else 'rejected'} after {report.oracle_calls} calls")
    return report
