"""
Adjudicator: replays a certificate against a counted rank oracle
Only attested rank values cost oracle calls; flats, candidate points and
representation equivalence are checked with linear algebra alone.
"""

import logging
from typing import Dict, List, Optional, Sequence, Union

from pydantic import ValidationError

from lib.data_models import VerificationReport
from lib.errors import MalformedCertificate, MatroidError
from lib.gf_linalg import (
    FieldMatrix,
    Flat,
    check_prime,
    column_rank,
    intersect_flats,
    matrix_rank,
    projective_points,
    span_of_columns,
)
from lib.schemas import Attestation, Certificate, EvidenceBlock, Level, U24Witness, parse_certificate
from matroids.oracle import CountedOracle, DualRankView, MinorRankView
from protocol.claimant import level_minor
from representation.service import RepresentationService, create_representation_service

logger = logging.getLogger(__name__)


class Rejected(Exception):
    """A check failed; the message becomes the report's reason"""


def load_certificate(document: Dict) -> Union[Certificate, U24Witness]:
    try:
        return parse_certificate(document)
    except ValidationError as e:
        problems = [f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise MalformedCertificate(
            f"Certificate does not match the schema: {e.error_count()} error(s)", {"errors": problems}
        )


class _LevelViews:
    """Rank access to M_i and its dual, every call tagged with the level"""

    def __init__(self, oracle: CountedOracle, contract, delete, tag: str):
        self.primal = MinorRankView(oracle, contract, delete, tag=tag)
        self.dual = DualRankView(self.primal)

    def rank(self, side: str, subset: Sequence[str]) -> int:
        view = self.primal if side == "primal" else self.dual
        return view.rank(subset)


class Adjudicator:
    """Verifier for excluded-minor chain certificates"""

    def __init__(self, oracle: CountedOracle, service: Optional[RepresentationService] = None):
        self.oracle = oracle
        self.service = service or create_representation_service()
        self.logger = logging.getLogger(__name__)
        self.candidate_budget = 0

    def verify(self, certificate: Certificate) -> VerificationReport:
        start = self.oracle.calls
        before = self.oracle.ledger.snapshot()
        reason = None
        try:
            self._verify(certificate)
        except Rejected as e:
            reason = str(e)
        except MatroidError as e:
            reason = e.message
        after = self.oracle.ledger.snapshot()
        per_level = {key: after[key] - before.get(key, 0) for key in after if after[key] != before.get(key, 0)}
        report = VerificationReport(
            accepted=reason is None,
            oracle_calls=self.oracle.calls - start,
            per_level=per_level,
            reason=reason,
            candidate_budget=self.candidate_budget,
            levels=len(certificate.levels),
        )
        if report.accepted:
            self.logger.info(f"Certificate accepted with {report.oracle_calls} oracle calls")
        else:
            self.logger.info(f"Certificate rejected: {reason}")
        return report

    def _verify(self, cert: Certificate) -> None:
        labels = list(self.oracle.groundset)
        if cert.labels != labels:
            raise Rejected(f"Certificate labels {cert.labels} do not match the matroid's {labels}")
        self.p = check_prime(cert.p)

        contract, delete = list(cert.minor.contract), list(cert.minor.delete)
        steps = [(step.element, step.kind) for step in cert.chain]
        removed = contract + delete + [e for e, _ in steps]
        if sorted(removed) != sorted(labels):
            raise Rejected("Minor selection and removal chain do not partition the ground set")
        if not steps:
            raise Rejected("Empty removal chain")
        if len(cert.levels) != len(steps):
            raise Rejected(f"{len(cert.levels)} levels for a chain of {len(steps)} steps")

        previous = [FieldMatrix.zeros(0, 0, self.p)]
        for i, (level, (e, kind)) in enumerate(zip(cert.levels, steps), start=1):
            c_i, d_i = level_minor(contract, delete, steps, i)
            members = {x for x, _ in steps[:i]}
            expected = [x for x in labels if x in members]
            if level.labels != expected:
                raise Rejected(f"Level {i}: labels {level.labels}, expected {expected}")
            views = _LevelViews(self.oracle, c_i, d_i, tag=f"level-{i}")
            reps = self._reps(i, level)
            self._level(i, level, e, kind, views, previous, reps)
            previous = reps

        if previous:
            raise Rejected(f"Top level declares {len(previous)} representation(s); it must declare none")

    def _reps(self, i: int, level: Level) -> List[FieldMatrix]:
        reps = []
        for model in level.reps:
            matrix = FieldMatrix.from_dict(model.model_dump())
            if matrix.p != self.p:
                raise Rejected(f"Level {i}: representation over GF({matrix.p}), certificate is over GF({self.p})")
            if matrix.cols != len(level.labels):
                raise Rejected(f"Level {i}: representation with {matrix.cols} columns for {len(level.labels)} elements")
            reps.append(matrix)
        canonical = [self.service.canonical_form(m) for m in reps]
        if len(set(canonical)) != len(canonical):
            raise Rejected(f"Level {i}: declared representations are not pairwise inequivalent")
        return reps

    def _replay(self, i: int, views: _LevelViews, attestation: Attestation, side: str) -> int:
        if attestation.side != side:
            raise Rejected(f"Level {i}: attestation on the {attestation.side} side, expected {side}")
        actual = views.rank(side, attestation.subset)
        if actual != attestation.rank:
            raise Rejected(
                f"Level {i}: attested r({{{','.join(attestation.subset)}}})={attestation.rank} "
                f"but the oracle answers {actual}"
            )
        return actual

    def _level(self, i, level: Level, e, kind, views, previous, reps) -> None:
        side = "primal" if kind == "delete" else "dual"
        labels = level.labels
        rest = [x for x in labels if x != e]

        # Guard: e is a loop, or a non-loop that keeps the working rank
        guard = level.guard
        if len(guard) == 1:
            loop = True
            if set(guard[0].subset) != {e} or guard[0].rank != 0:
                raise Rejected(f"Level {i}: loop guard must attest r({{{e}}})=0")
        elif len(guard) == 3:
            loop = False
            for attestation, subset in zip(guard, [{e}, set(rest), set(labels)]):
                if set(attestation.subset) != subset or len(attestation.subset) != len(subset):
                    raise Rejected(f"Level {i}: guard attestations must cover {{{e}}}, E_i - {e} and E_i")
            if guard[0].rank != 1 or guard[1].rank != guard[2].rank:
                raise Rejected(f"Level {i}: guard does not show {e} as a non-loop that keeps the rank")
        else:
            raise Rejected(f"Level {i}: guard needs 1 or 3 attestations, got {len(guard)}")
        for attestation in guard:
            self._replay(i, views, attestation, side)

        sources = sorted(block.source for block in level.evidence)
        if sources != list(range(len(previous))):
            raise Rejected(f"Level {i}: evidence must cover each of the {len(previous)} lower representations once")

        for block in level.evidence:
            rep = previous[block.source]
            work_rep = rep
            if kind == "contract":
                work_rep = self.service.dual_representation(rep)
                if block.dual_matrix is None or FieldMatrix.from_dict(block.dual_matrix.model_dump()) != work_rep:
                    raise Rejected(f"Level {i}, source {block.source}: recorded dual matrix does not match")
            elif block.dual_matrix is not None:
                raise Rejected(f"Level {i}, source {block.source}: dual matrix on a deletion step")

            if loop:
                self._loop_block(i, block, e, kind, labels, work_rep, reps)
            else:
                self._flat_block(i, block, e, kind, side, labels, rest, guard[2].rank, work_rep, views, reps)

    def _to_primal(self, matrix: FieldMatrix, kind: str) -> FieldMatrix:
        return matrix if kind == "delete" else self.service.dual_representation(matrix)

    def _check_accepted(self, i: int, matrix: FieldMatrix, kind: str, reps, index: Optional[int]) -> None:
        if index is None or not 0 <= index < len(reps):
            raise Rejected(f"Level {i}: accepted representation index {index} out of range")
        if not self.service.are_equivalent(self._to_primal(matrix, kind), reps[index]):
            raise Rejected(f"Level {i}: extension is not equivalent to declared representation {index}")

    def _loop_block(self, i, block: EvidenceBlock, e, kind, labels, work_rep, reps) -> None:
        if block.kind != "loop":
            raise Rejected(f"Level {i}: {e} is a loop on the working side, evidence must be a loop block")
        extended = work_rep.with_column(labels.index(e), [0] * work_rep.rows)
        self._check_accepted(i, extended, kind, reps, block.loop_accepted_as)

    def _flat_block(self, i, block: EvidenceBlock, e, kind, side, labels, rest, rank, work_rep, views, reps) -> None:
        if block.kind == "loop":
            raise Rejected(f"Level {i}: loop evidence for a non-loop {e}")
        if work_rep.rows != rank or matrix_rank(work_rep) != rank:
            raise Rejected(f"Level {i}: lower representation does not have full rank {rank}")
        columns = {x: j for j, x in enumerate(rest)}

        def span(subset: Sequence[str]) -> Flat:
            unknown = set(subset) - set(rest)
            if unknown or len(set(subset)) != len(subset):
                raise Rejected(f"Level {i}: set {list(subset)} is not a subset of E_i - {e}")
            return span_of_columns(work_rep, sorted(columns[x] for x in subset))

        def check_pair(attestations: List[Attestation], subset: Sequence[str], increase: int) -> None:
            if len(attestations) != 2:
                raise Rejected(f"Level {i}: expected two attestations for {list(subset)}")
            first, second = attestations
            if set(first.subset) != set(subset) or set(second.subset) != set(subset) | {e}:
                raise Rejected(f"Level {i}: attestations must cover S and S + {e}")
            low = self._replay(i, views, first, side)
            high = self._replay(i, views, second, side)
            if high - low != increase:
                relation = "in" if increase == 0 else "outside"
                raise Rejected(f"Level {i}: {e} is not {relation} the closure of {list(subset)}")

        k_flat = Flat.full(rank, self.p)
        for link in block.chain:
            check_pair(link.attestations, link.subset, 0)
            cut = intersect_flats(k_flat, span(link.subset))
            if Flat.from_dict(link.flat.model_dump()) != cut:
                raise Rejected(f"Level {i}: recorded flat for {link.subset} does not match")
            if cut.rank >= k_flat.rank:
                raise Rejected(f"Level {i}: {link.subset} does not cut the flat")
            k_flat = cut

        if block.kind == "flat-chain":
            if k_flat.rank != 0:
                raise Rejected(f"Level {i}: flat chain ends at rank {k_flat.rank}, not 0")
            return

        if block.kind == "case1":
            if block.witness is None:
                raise Rejected(f"Level {i}: Case-1 block without a witness")
            check_pair(block.witness_attestations, block.witness, 1)
            if not k_flat.is_subflat_of(span(block.witness)):
                raise Rejected(f"Level {i}: witness {block.witness} does not span the final flat")
            return

        points = projective_points(k_flat)
        self.candidate_budget = max(self.candidate_budget, len(points))
        declared = [tuple(decision.point) for decision in block.points]
        if sorted(declared) != points:
            raise Rejected(f"Level {i}: point decisions do not list the {len(points)} points of the final flat")
        position = labels.index(e)
        full = {x: j for j, x in enumerate(labels)}
        for decision in block.points:
            extended = work_rep.with_column(position, decision.point)
            if decision.fault is not None:
                subset = decision.fault.subset
                if e not in subset or not set(subset) <= set(labels):
                    raise Rejected(f"Level {i}: fault set {subset} must contain {e}")
                attested = self._replay(i, views, decision.fault, side)
                if column_rank(extended, sorted(full[x] for x in set(subset))) == attested:
                    raise Rejected(f"Level {i}: point {decision.point} shows no fault on {subset}")
            else:
                self._check_accepted(i, extended, kind, reps, decision.accepted_as)


def verify(oracle: CountedOracle, certificate: Union[Certificate, Dict]) -> VerificationReport:
    if isinstance(certificate, dict):
        certificate = load_certificate(certificate)
    if isinstance(certificate, U24Witness):
        # Import here to avoid circular imports
        from protocol.witness import verify_u24_witness

        return verify_u24_witness(oracle, certificate)
    return Adjudicator(oracle).verify(certificate)
