# core/reports.py
"""
Result records returned by the verification operations. A failed check is
report content, never an exception; `passed` is the single verdict and
`witness` names the first offending basis tuple.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field

Witness = Optional[Tuple[int, ...]]


class _Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class ModuleMapReport(_Report):
    table: str
    degree: int
    element: int
    checked: int
    passed: bool
    witness: Witness = None


class HomotopyReport(_Report):
    """One (k, n) record of the free-case homotopy check."""

    k: int
    n: int
    checked: int
    identity_verified: bool
    exact_norm: str
    bound: str
    within_bound: bool
    diagonal_sum: str
    witness: Witness = None


class DegreeCheck(_Report):
    degree: int
    checked: int
    passed: bool
    witness: Witness = None


class SplittingReport(_Report):
    table: str
    degrees: List[DegreeCheck] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.degrees)


class NaturalityReport(_Report):
    source: str
    target: str
    map: Tuple[int, ...]
    degrees: List[DegreeCheck] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.degrees)


class NormReport(_Report):
    table: str
    degree: int
    exact_norm: str
    w_norm: str
    within_bound: bool


class DegreeDims(_Report):
    """
    Per-degree bookkeeping. For homology: dim C_n, rank of the incoming d_n,
    dim ker d_{n-1} and dim H_n. For cohomology rank_in is rank delta_{n-1}
    and dim_ker is dim ker delta_n.
    """

    n: int
    dim_c: int
    rank_in: int
    dim_ker: int
    dim_h: int


class HomologyReport(_Report):
    table: str
    kind: str
    coefficients: str
    unit_linked: bool
    symmetric: bool
    degrees: List[DegreeDims] = Field(default_factory=list)

    def dims(self) -> List[int]:
        return [d.dim_h for d in self.degrees]

    @computed_field
    @property
    def vanishing(self) -> bool:
        return all(d.dim_h == 0 for d in self.degrees)


class ComparisonReport(_Report):
    """Two dimension sequences that must agree degree by degree."""

    table: str
    check: str
    left_label: str
    right_label: str
    left: List[int]
    right: List[int]
    passed: bool
    detail: str = ""


class InstanceResult(_Report):
    name: str
    kind: str
    passed: bool
    control: bool = False
    detail: dict = Field(default_factory=dict)


class SuiteReport(_Report):
    seed: int
    sizes: List[int]
    jmax: int
    nmax: int
    instances: List[InstanceResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.instances)

    def summary(self) -> dict:
        controls = [i for i in self.instances if i.control]
        return {
            "instances": len(self.instances),
            "passed": sum(1 for i in self.instances if i.passed),
            "failed": sum(1 for i in self.instances if not i.passed),
            "controls": [f"{i.name}: {i.detail.get('note', '')}" for i in controls],
            "status": "pass" if self.passed else "fail",
        }


class CrossCheckReport(_Report):
    """Vanishing homology and an explicit splitting, checked on the same table."""

    table: str
    homology: HomologyReport
    splitting: SplittingReport
    passed: bool
