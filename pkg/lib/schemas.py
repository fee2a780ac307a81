"""
Wire formats for matroid and certificate documents
Every document emitted by the CLI is one of these models dumped with a "v" field
"""

from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class MatrixModel(_Document):
    p: int
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    entries: List[List[int]]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        if any(x < 0 or x >= self.p for row in self.entries for x in row):
            raise ValueError(f"entries must be reduced modulo {self.p}")
        return self


class FlatModel(_Document):
    ambient_rank: int = Field(ge=0)
    basis: MatrixModel


# Matroid descriptions


class _MatroidSpec(_Document):
    v: Optional[int] = None


class LinearSpec(_MatroidSpec):
    type: Literal["linear"]
    labels: Optional[List[str]] = None
    matrix: MatrixModel


class UniformSpec(_MatroidSpec):
    type: Literal["uniform"]
    r: int = Field(ge=0)
    n: int = Field(ge=0)
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def _check_rank(self):
        if self.r > self.n:
            raise ValueError(f"uniform rank {self.r} exceeds size {self.n}")
        return self


class SpikeSpec(_MatroidSpec):
    type: Literal["spike"]
    n: int = Field(ge=3)
    dependent_transversals: List[str] = Field(default_factory=list)


class RankEntry(_Document):
    members: List[str] = Field(alias="set")
    rank: int = Field(ge=0)


class RankTableSpec(_MatroidSpec):
    type: Literal["rank-table"]
    labels: List[str]
    ranks: List[RankEntry]


class MinorSpec(_MatroidSpec):
    type: Literal["minor"]
    base: "MatroidSpec"
    contract: List[str] = Field(default_factory=list)
    delete: List[str] = Field(default_factory=list)


class DualSpec(_MatroidSpec):
    type: Literal["dual"]
    base: "MatroidSpec"


MatroidSpec = Annotated[
    Union[LinearSpec, UniformSpec, SpikeSpec, RankTableSpec, MinorSpec, DualSpec],
    Field(discriminator="type"),
]

MinorSpec.model_rebuild()
DualSpec.model_rebuild()

matroid_spec_adapter = TypeAdapter(MatroidSpec)


def parse_matroid_spec(document: Dict[str, Any]):
    """Validate a matroid document, raising pydantic.ValidationError on bad input"""
    return matroid_spec_adapter.validate_python(document)


# Certificates


class Attestation(_Document):
    """A claimed rank value the Adjudicator replays against the oracle"""

    subset: List[str]
    rank: int = Field(ge=0)
    side: Literal["primal", "dual"] = "primal"


class ChainLink(_Document):
    subset: List[str]
    attestations: List[Attestation]
    flat: FlatModel


class PointDecision(_Document):
    point: List[int]
    accepted_as: Optional[int] = None
    fault: Optional[Attestation] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.accepted_as is None) == (self.fault is None):
            raise ValueError("a point is either accepted into the next level or faulted")
        return self


class EvidenceBlock(_Document):
    source: int = Field(ge=0)
    kind: Literal["flat-chain", "case1", "point-faults", "loop"]
    dual_matrix: Optional[MatrixModel] = None
    chain: List[ChainLink] = Field(default_factory=list)
    witness: Optional[List[str]] = None
    witness_attestations: List[Attestation] = Field(default_factory=list)
    points: List[PointDecision] = Field(default_factory=list)
    loop_accepted_as: Optional[int] = None


class Level(_Document):
    labels: List[str]
    # r({e}), and unless e is a loop r(E_i - e) and r(E_i), on the working side
    guard: List[Attestation] = Field(default_factory=list)
    reps: List[MatrixModel]
    evidence: List[EvidenceBlock]


class Step(_Document):
    element: str
    kind: Literal["delete", "contract"]


class MinorSelection(_Document):
    contract: List[str] = Field(default_factory=list)
    delete: List[str] = Field(default_factory=list)


class Certificate(_Document):
    v: int = 1
    kind: Literal["excluded-minor-chain"] = "excluded-minor-chain"
    p: int
    labels: List[str]
    minor: MinorSelection
    chain: List[Step]
    levels: List[Level]


class U24Witness(_Document):
    v: int = 1
    kind: Literal["u24-minor"] = "u24-minor"
    labels: List[str]
    contract: List[str]
    delete: List[str]
    quad: List[str]
    attestations: List[Attestation] = Field(default_factory=list)


CertificateDocument = Annotated[Union[Certificate, U24Witness], Field(discriminator="kind")]

certificate_adapter = TypeAdapter(CertificateDocument)


def parse_certificate(document: Dict[str, Any]):
    """Validate either certificate kind, raising pydantic.ValidationError on bad input"""
    return certificate_adapter.validate_python(document)
