from pydantic import BaseModel, ConfigDict

from models.quantum import Ket, Povm
from models.report import BoundReport


class DiscriminationScenario(BaseModel):
    """Two known non-orthogonal qubit states and Bob's two strategies"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    psi1: Ket
    psi2: Ket
    helstrom: Povm
    unambiguous: Povm
    overlap: float


class ExampleRow(BaseModel):
    name: str
    computed: float
    expected: float
    passed: bool


class ExampleReport(BaseModel):
    alpha: float
    beta: float
    tolerance: float
    rows: list[ExampleRow]
    report: BoundReport

    @property
    def ok(self) -> bool:
        return self.report.ok and all(row.passed for row in self.rows)

    def row(self, name: str) -> ExampleRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)
