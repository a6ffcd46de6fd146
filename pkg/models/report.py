from typing import Literal, Optional

from pydantic import BaseModel

BoundName = Literal[
    "relation1",
    "relation2",
    "uncoupled",
    "state_independent_pair",
    "state_independent_single",
    "norm_ordering",
    "single_dominance",
]


class EntropyValue(BaseModel):
    order: float
    bits: float


class Violation(BaseModel):
    """A bound whose slack fell below -VIOLATION_TOL"""

    bound: BoundName
    slack: float
    measurement: Optional[str] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None


class MeasurementReport(BaseModel):
    """Single-measurement quantities: Relation 2 and the max-norm bound"""

    name: str
    probabilities: list[float]
    phi: float
    entropies: list[EntropyValue]
    relation2_bound: float
    relation2_slack: float
    state_independent_single_bound: float
    state_independent_single_slack: float

    def entropy(self, order: float) -> float:
        for value in self.entropies:
            if value.order == order:
                return value.bits
        raise KeyError(f"entropy of order {order} was not computed for {self.name}")


class PairCheck(BaseModel):
    """H_alpha(M) + H_beta(N) against the pair bounds for one conjugate pair"""

    alpha: float
    beta: float
    lhs_entropy_sum: float
    relation1_slack: float
    state_independent_pair_slack: float


class BoundReport(BaseModel):
    """Entropies, lower bounds and slacks for one (state, measurements) instance"""

    dim: int
    measurements: list[MeasurementReport]

    # Величины пары, есть только при втором измерении
    f_value: Optional[float] = None
    f_value_swapped: Optional[float] = None
    norm_max: Optional[float] = None
    relation1_bound: Optional[float] = None
    uncoupled_bound: Optional[float] = None
    uncoupled_slack: Optional[float] = None
    state_independent_pair_bound: Optional[float] = None
    pair_checks: list[PairCheck] = []

    violations: list[Violation] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def lhs_entropy_sum(self) -> Optional[float]:
        return self.pair_checks[0].lhs_entropy_sum if self.pair_checks else None

    @property
    def min_slack(self) -> float:
        slacks = []
        for m in self.measurements:
            slacks += [m.relation2_slack, m.state_independent_single_slack]
        if self.uncoupled_slack is not None:
            slacks.append(self.uncoupled_slack)
        for pc in self.pair_checks:
            slacks += [pc.relation1_slack, pc.state_independent_pair_slack]
        return min(slacks)

    def slacks(self) -> dict[str, float]:
        """Minimum slack per bound name"""
        out: dict[str, float] = {}

        def put(name: str, value: Optional[float]) -> None:
            if value is not None:
                out[name] = min(value, out.get(name, value))

        for m in self.measurements:
            put("relation2", m.relation2_slack)
            put("state_independent_single", m.state_independent_single_slack)
        put("uncoupled", self.uncoupled_slack)
        for pc in self.pair_checks:
            put("relation1", pc.relation1_slack)
            put("state_independent_pair", pc.state_independent_pair_slack)
        return out
