"""
Claimant: builds excluded-minor chain certificates of non-representability
Each level extends every representation of the level below by the next
element, recording the flat chain, the Case-1 witness or the per-point faults
that account for every candidate column.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from lib.config import config
from lib.data_models import VitalRow
from lib.errors import ExhaustiveBoundExceeded, NothingToCertify
from lib.gf_linalg import (
    FieldMatrix,
    Flat,
    check_prime,
    column_rank,
    intersect_flats,
    projective_points,
    span_of_columns,
)
from lib.schemas import (
    Attestation,
    Certificate,
    ChainLink,
    EvidenceBlock,
    FlatModel,
    Level,
    MatrixModel,
    MinorSelection,
    PointDecision,
    Step,
)
from lib.utils import Subset, order_subset, subsets
from matroids.oracle import DualMatroid, Matroid, MinorMatroid, RankOracle, RankTableMatroid
from matroids.structure import is_coloop
from representation.service import RepresentationService, create_representation_service

logger = logging.getLogger(__name__)


def level_minor(
    contract: Sequence[str], delete: Sequence[str], steps: Sequence[Tuple[str, str]], i: int
) -> Tuple[List[str], List[str]]:
    """(C_i, D_i) with M_i = M \\ D_i / C_i: the minor plus every step above level i"""
    above = steps[i:]
    return (
        list(contract) + [e for e, kind in above if kind == "contract"],
        list(delete) + [e for e, kind in above if kind == "delete"],
    )


@dataclass
class _Draft:
    """One evidence block before ℛ_i indices are known"""

    source: int
    kind: str
    dual_matrix: Optional[FieldMatrix] = None
    chain: List[ChainLink] = field(default_factory=list)
    witness: Optional[List[str]] = None
    witness_attestations: List[Attestation] = field(default_factory=list)
    faults: List[Tuple[Tuple[int, ...], Attestation]] = field(default_factory=list)
    accepted: List[Tuple[Tuple[int, ...], FieldMatrix]] = field(default_factory=list)
    loop_rep: Optional[FieldMatrix] = None


class Claimant:
    """Finds an excluded minor and proves every level's representation set complete"""

    def __init__(self, p: int, service: Optional[RepresentationService] = None):
        self.p = check_prime(p)
        self.service = service or create_representation_service()
        self.logger = logging.getLogger(__name__)

    def _representable(self, base: Matroid, contract, delete) -> bool:
        return bool(self.service.enumerate_reps(MinorMatroid(base, contract, delete), self.p))

    def minimize(self, o: RankOracle) -> Tuple[List[str], List[str]]:
        """(C, D) such that M \\ D / C is an excluded minor for GF(p)"""
        base = _as_matroid(o)
        groundset = base.groundset
        delete = {e for e in groundset if base.rank([e]) == 0}
        contract = {e for e in groundset if e not in delete and is_coloop(base, e)}

        if self._representable(base, contract, delete):
            raise NothingToCertify(
                f"Matroid is GF({self.p})-representable",
                {"p": self.p, "labels": list(groundset)},
            )

        changed = True
        while changed:
            changed = False
            for e in groundset:
                if e in contract or e in delete:
                    continue
                if not self._representable(base, contract, delete | {e}):
                    delete.add(e)
                    changed = True
                elif not self._representable(base, contract | {e}, delete):
                    contract.add(e)
                    changed = True

        self.logger.info(
            f"Excluded minor for GF({self.p}) on {len(groundset) - len(contract) - len(delete)} elements "
            f"(contract {len(contract)}, delete {len(delete)})"
        )
        return order_subset(contract, groundset), order_subset(delete, groundset)

    def removal_chain(self, minor: Matroid) -> List[Tuple[str, str]]:
        """Steps (e_1, kind), ..., (e_k, kind) picked top-down to keep |ℛ_{i-1}| small

        Ties go to the earliest element, deletion before contraction; loops are
        always deleted and coloops always contracted.
        """
        current = RankTableMatroid.from_oracle(minor)
        steps: List[Tuple[str, str]] = []
        while current.groundset:
            best = None
            for e in current.groundset:
                if current.table[frozenset([e])] == 0:
                    kinds = ["delete"]
                elif is_coloop(current, e):
                    kinds = ["contract"]
                else:
                    kinds = ["delete", "contract"]
                for kind in kinds:
                    if kind == "delete":
                        reduced = MinorMatroid(current, delete=[e])
                    else:
                        reduced = MinorMatroid(current, contract=[e])
                    count = len(self.service.enumerate_reps(reduced, self.p))
                    if best is None or count < best[0]:
                        best = (count, e, kind, reduced)
            _, e, kind, reduced = best
            steps.append((e, kind))
            current = RankTableMatroid.from_oracle(reduced)
        steps.reverse()
        return steps

    def build(self, o: RankOracle) -> Certificate:
        base = _as_matroid(o)
        contract, delete = self.minimize(base)
        steps = self.removal_chain(MinorMatroid(base, contract, delete))

        previous = [FieldMatrix.zeros(0, 0, self.p)]
        levels: List[Level] = []
        for i, (e, kind) in enumerate(steps, start=1):
            c_i, d_i = level_minor(contract, delete, steps, i)
            level_matroid = RankTableMatroid.from_oracle(MinorMatroid(base, c_i, d_i))
            level, previous = self._level(level_matroid, e, kind, previous)
            levels.append(level)
            self.logger.debug(f"Level {i}: {kind} {e}, |ℛ_{i}| = {len(previous)}")

        self.logger.info(f"Certificate over GF({self.p}) with {len(levels)} levels")
        return Certificate(
            v=config.schema_version,
            p=self.p,
            labels=list(base.groundset),
            minor=MinorSelection(contract=contract, delete=delete),
            chain=[Step(element=e, kind=kind) for e, kind in steps],
            levels=levels,
        )

    def _level(
        self, level_matroid: RankTableMatroid, e: str, kind: str, previous: List[FieldMatrix]
    ) -> Tuple[Level, List[FieldMatrix]]:
        side = "primal" if kind == "delete" else "dual"
        working = level_matroid if kind == "delete" else RankTableMatroid.from_oracle(DualMatroid(level_matroid))
        table = working.table
        labels = list(level_matroid.groundset)
        rest = [x for x in labels if x != e]
        position = labels.index(e)

        def attest(subset) -> Attestation:
            members = frozenset(subset)
            return Attestation(subset=order_subset(members, labels), rank=table[members], side=side)

        loop = table[frozenset([e])] == 0
        guard = [attest([e])] if loop else [attest([e]), attest(rest), attest(labels)]

        drafts: List[_Draft] = []
        for source, rep in enumerate(previous):
            work_rep = rep if kind == "delete" else self.service.dual_representation(rep)
            draft = _Draft(source=source, kind="loop", dual_matrix=work_rep if kind == "contract" else None)
            if loop:
                zero = work_rep.with_column(position, [0] * work_rep.rows)
                draft.loop_rep = self._canonical_primal(zero, kind)
            else:
                self._extend(draft, work_rep, table, labels, rest, e, position, kind, attest)
            drafts.append(draft)

        # Second pass: ℛ_i is the sorted set of canonical forms reached
        found = {}
        for draft in drafts:
            for matrix in [m for _, m in draft.accepted] + ([draft.loop_rep] if draft.loop_rep is not None else []):
                found[matrix] = matrix
        reps = sorted(found.values(), key=lambda m: m.sort_key())
        index = {matrix: j for j, matrix in enumerate(reps)}

        evidence = [self._block(draft, index) for draft in drafts]
        level = Level(
            labels=labels,
            guard=guard,
            reps=[MatrixModel(**m.to_dict()) for m in reps],
            evidence=evidence,
        )
        return level, reps

    def _extend(self, draft, rep, table, labels, rest, e, position, kind, attest) -> None:
        columns = {x: j for j, x in enumerate(rest)}
        full = {x: j for j, x in enumerate(labels)}

        def span(subset: Subset) -> Flat:
            return span_of_columns(rep, sorted(columns[x] for x in subset))

        # K-chain: cut K with the smallest spanning sets until none cuts it
        k_flat = Flat.full(rep.rows, self.p)
        spanning = [s for s in subsets(rest) if table[s | {e}] == table[s]]
        while k_flat.rank > 0:
            cutting = next((s for s in spanning if not k_flat.is_subflat_of(span(s))), None)
            if cutting is None:
                break
            k_flat = intersect_flats(k_flat, span(cutting))
            draft.chain.append(
                ChainLink(
                    subset=order_subset(cutting, labels),
                    attestations=[attest(cutting), attest(cutting | {e})],
                    flat=FlatModel(**k_flat.to_dict()),
                )
            )

        if k_flat.rank == 0:
            draft.kind = "flat-chain"
            return

        for s in subsets(rest):
            if table[s | {e}] == table[s] + 1 and k_flat.is_subflat_of(span(s)):
                draft.kind = "case1"
                draft.witness = order_subset(s, labels)
                draft.witness_attestations = [attest(s), attest(s | {e})]
                return

        draft.kind = "point-faults"
        through_e = [s for s in subsets(labels, min_size=1) if e in s]
        for point in projective_points(k_flat):
            extended = rep.with_column(position, point)
            fault = next(
                (s for s in through_e if column_rank(extended, sorted(full[x] for x in s)) != table[s]),
                None,
            )
            if fault is not None:
                draft.faults.append((point, attest(fault)))
            else:
                draft.accepted.append((point, self._canonical_primal(extended, kind)))

    def _canonical_primal(self, matrix: FieldMatrix, kind: str) -> FieldMatrix:
        primal = matrix if kind == "delete" else self.service.dual_representation(matrix)
        return self.service.canonical_form(primal)

    def _block(self, draft: _Draft, index: Dict[FieldMatrix, int]) -> EvidenceBlock:
        points = [PointDecision(point=list(point), fault=fault) for point, fault in draft.faults]
        points += [PointDecision(point=list(point), accepted_as=index[m]) for point, m in draft.accepted]
        points.sort(key=lambda decision: decision.point)
        return EvidenceBlock(
            source=draft.source,
            kind=draft.kind,
            dual_matrix=MatrixModel(**draft.dual_matrix.to_dict()) if draft.dual_matrix is not None else None,
            chain=draft.chain,
            witness=draft.witness,
            witness_attestations=draft.witness_attestations,
            points=points,
            loop_accepted_as=index[draft.loop_rep] if draft.loop_rep is not None else None,
        )


def _as_matroid(o: RankOracle) -> Matroid:
    if isinstance(o, Matroid):
        return o
    return RankTableMatroid.from_oracle(o)


def minimize_to_excluded_minor(o: RankOracle, p: int) -> Tuple[List[str], List[str]]:
    return Claimant(p).minimize(o)


def build_certificate(o: RankOracle, p: int) -> Certificate:
    return Claimant(p).build(o)


def certificate_document(certificate: Certificate) -> Dict:
    return certificate.model_dump(mode="json", exclude_none=True)


def vital_bound_check(o: RankOracle, certificate: Certificate) -> List[VitalRow]:
    """rank(K_m) against the freedom of e_i wherever no Case-1 witness exists"""
    # Import here to avoid circular imports
    from matroids.freedom import freedom

    base = _as_matroid(o)
    steps = [(step.element, step.kind) for step in certificate.chain]
    rows: List[VitalRow] = []
    for i, (level, (e, kind)) in enumerate(zip(certificate.levels, steps), start=1):
        if len(level.guard) != 3:
            continue
        c_i, d_i = level_minor(certificate.minor.contract, certificate.minor.delete, steps, i)
        level_matroid = MinorMatroid(base, c_i, d_i)
        working = level_matroid if kind == "delete" else DualMatroid(level_matroid)
        side = "primal" if kind == "delete" else "dual"
        full_rank = level.guard[2].rank
        for block in level.evidence:
            if block.kind not in ("flat-chain", "point-faults"):
                continue
            k_rank = block.chain[-1].flat.basis.rows if block.chain else full_rank
            if block.kind == "flat-chain":
                k_rank = 0
            try:
                value = freedom(working, e, cap=max(k_rank, 1))
            except ExhaustiveBoundExceeded:
                logger.debug(f"Level {i}: freedom of {e} out of bounds, skipped")
                continue
            rows.append(VitalRow(level=i, element=e, side=side, k_rank=k_rank, freedom=value))
    return rows
