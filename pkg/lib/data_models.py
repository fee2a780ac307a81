from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from lib.config import config


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    rule: Optional[str] = None
    witness: Tuple[Tuple[str, ...], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "rule": self.rule, "witness": [list(w) for w in self.witness]}


@dataclass
class VerificationReport:
    """Outcome of replaying a certificate against a counted oracle"""

    accepted: bool
    oracle_calls: int
    kind: str = "excluded-minor-chain"
    per_level: Dict[str, int] = field(default_factory=dict)
    reason: Optional[str] = None
    candidate_budget: int = 0  # largest |points(K_m)| the verifier had to account for
    levels: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "v": config.schema_version,
            "kind": self.kind,
            "accepted": self.accepted,
            "oracle_calls": self.oracle_calls,
            "per_level": dict(self.per_level),
            "reason": self.reason,
            "candidate_budget": self.candidate_budget,
            "levels": self.levels,
        }


@dataclass
class CensusResult:
    n: int
    t_count: int
    t_prime_count: int
    linear_bound_ok: bool  # (n+1)(|T|+|T'|) >= 2^n
    sqrt_bound_ok: bool  # (|T|+|T'|)^2 >= 2^n
    q: Optional[int] = None

    @property
    def bound_ok(self) -> bool:
        return self.linear_bound_ok and self.sqrt_bound_ok

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "v": config.schema_version,
            "n": self.n,
            "t_count": self.t_count,
            "t_prime_count": self.t_prime_count,
            "bound_ok": self.bound_ok,
            "linear_bound_ok": self.linear_bound_ok,
            "sqrt_bound_ok": self.sqrt_bound_ok,
        }
        if self.q is not None:
            result["q"] = self.q
            result["lower_bound_rank_threshold"] = self.q ** 3
            result["relaxation_threshold"] = (self.q - 1) ** 3 + 1
            result["above_lower_bound_threshold"] = self.n > self.q ** 3
            result["above_relaxation_threshold"] = self.n > (self.q - 1) ** 3 + 1
        return result


@dataclass(frozen=True)
class Overflow:
    """Freedom search exceeded its cap"""

    cap: int


FreedomValue = Union[int, float, Overflow]


def freedom_to_json(value: FreedomValue) -> Union[int, str]:
    if isinstance(value, Overflow):
        return "overflow"
    if value == float("inf"):
        return "infinity"
    return int(value)


@dataclass
class FreedomReport:
    element: str
    freedom: FreedomValue
    cofreedom: FreedomValue
    fixed: bool
    cofixed: bool
    cap: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "v": config.schema_version,
            "element": self.element,
            "freedom": freedom_to_json(self.freedom),
            "cofreedom": freedom_to_json(self.cofreedom),
            "fixed": self.fixed,
            "cofixed": self.cofixed,
            "cap": self.cap,
        }


@dataclass
class BoundCorReport:
    p: int
    ok: bool
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"v": config.schema_version, "p": self.p, "ok": self.ok, "rows": list(self.rows)}


@dataclass
class UniformMinorWitness:
    delete: List[str]
    contract: List[str]
    gamma: int
    delta: int

    def to_dict(self) -> Dict[str, Any]:
        return {"delete": self.delete, "contract": self.contract, "gamma": self.gamma, "delta": self.delta}


@dataclass
class BudgetRow:
    family: str
    n: int
    oracle_calls: int
    accepted: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, "n": self.n, "oracle_calls": self.oracle_calls, "accepted": self.accepted}


@dataclass
class BudgetScan:
    family: str
    p: int
    rows: List[BudgetRow]
    c: float = 0.0
    c_prime: float = 0.0
    within_margin: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "v": config.schema_version,
            "family": self.family,
            "p": self.p,
            "rows": [row.to_dict() for row in self.rows],
            "fit": {"c": self.c, "c_prime": self.c_prime, "margin": 2.0},
            "within_margin": self.within_margin,
        }


@dataclass
class VitalRow:
    level: int
    element: str
    side: str
    k_rank: int
    freedom: FreedomValue

    @property
    def holds(self) -> bool:
        if isinstance(self.freedom, Overflow):
            return True
        return self.k_rank <= self.freedom

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "element": self.element,
            "side": self.side,
            "k_rank": self.k_rank,
            "freedom": freedom_to_json(self.freedom),
            "holds": self.holds,
        }
