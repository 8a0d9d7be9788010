from __future__ import annotations

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ebt.core.settings import settings


class Report(BaseModel):
    """Base of every JSON payload; ``schema`` is always the first key."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=settings.SCHEMA, serialization_alias="schema")


class ErrorReport(Report):
    error: str
    exit_code: int


class StructureReport(Report):
    group: str
    n: int
    variant: str
    rank: int
    torsion: List[int]
    generators: int
    relations: int
    generator_labels: Optional[List[str]] = None


class ClassReport(Report):
    group: str
    n: int
    variant: str
    expression: str
    order: Union[int, Literal["infinite"]]
    coords: List[int]
    reduced_coords: List[int]
    torsion_coords: List[int]
    free_coords: List[int]
    bound: Optional[int] = None


class HeckeReport(ClassReport):
    ell: int
    r: int
    overlattices: int


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    witnesses: List[str] = Field(default_factory=list)
    # Reported but not part of the suite verdict.
    informational: bool = False


class RankComparison(BaseModel):
    group: str
    n: int
    map: Literal["mu", "mu-"]
    rank_B: int
    rank_M: int
    mu_rank: int
    iso_over_Q: bool


class SuiteReport(Report):
    suite: str
    passed: bool
    parameters: dict[str, int] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    comparisons: List[RankComparison] = Field(default_factory=list)


class TripleIn(BaseModel):
    """CLI triple literal ``{basis, denominator, chi, cone}``, all in lattice coordinates."""

    basis: Optional[List[List[int]]] = None
    denominator: int = Field(default=1, ge=1)
    chi: List[Union[int, List[int]]]
    cone: List[List[int]]

    @field_validator("basis")
    @classmethod
    def _square_basis(cls, basis: Optional[List[List[int]]]) -> Optional[List[List[int]]]:
        if basis is not None and any(len(row) != len(basis) for row in basis):
            raise ValueError("basis must be a square matrix")
        return basis

    @field_validator("cone")
    @classmethod
    def _nonempty_cone(cls, cone: List[List[int]]) -> List[List[int]]:
        if not cone:
            raise ValueError("cone needs at least one generator")
        return cone


class PsiReport(ClassReport):
    contributions: List[str]
