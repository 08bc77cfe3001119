"""Pydantic request/response models for the HTTP service.

The CLI builds these same shapes, so the JSON wire format is the single
contract between the thin client and the compute endpoints.
"""

from __future__ import annotations

import math
from typing import Literal, Union

from pydantic import BaseModel, Field, model_validator

QValue = Union[int, Literal["inf"]]


def q_to_level(q: QValue) -> int | float:
    return math.inf if q == "inf" else q


def level_to_q(level: int | float) -> QValue:
    return "inf" if level == math.inf else int(level)


class GroupFile(BaseModel):
    """Inline group file: either a full table or permutation generators."""

    name: str = "G"
    order: int | None = None
    mul: list[list[int]] | None = None
    perm_gens: list[list[list[int]]] | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "GroupFile":
        if (self.mul is None) == (self.perm_gens is None):
            raise ValueError("provide exactly one of 'mul' or 'perm_gens'")
        return self


class GroupSource(BaseModel):
    """A group, either by catalog/builtin spec string or as an inline file."""

    spec: str | None = None
    file: GroupFile | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "GroupSource":
        if (self.spec is None) == (self.file is None):
            raise ValueError("provide exactly one of 'spec' or 'file'")
        return self


class AbelianGroupModel(BaseModel):
    rank: int = 0
    torsion: list[int] = Field(default_factory=list)
    pretty: str = "0"


class SubgroupModel(BaseModel):
    order: int
    elements: list[int]


# -- requests ---------------------------------------------------------------


class GroupRequest(BaseModel):
    group: GroupSource


class CountRequest(BaseModel):
    group: GroupSource
    q: QValue = 2
    p: int | None = None
    n: int = 1
    jobs: int = 1


class ScountRequest(CountRequest):
    j: int = 0


class ReportRequest(BaseModel):
    group: GroupSource
    q: QValue = 2
    p: int | None = None
    nmax: int = 4
    jobs: int = 1


class OrbitRequest(BaseModel):
    group: GroupSource
    q: QValue = 2
    p: int | None = None
    n: int = 1


class LevelRequest(BaseModel):
    group: GroupSource
    q: QValue = 2


class HomologyRequest(BaseModel):
    group: GroupSource
    q: QValue = 2
    space: Literal["B", "E"] = "B"
    i: int = 1
    dmax: int | None = None  # defaults to i + 1


class VerifyRequest(BaseModel):
    suite: Literal["counts", "homology", "tc", "all"] = "all"
    slow: bool = False
    jobs: int = 1
    seed: int = 0


# -- responses ----------------------------------------------------------------


class GroupInfoResponse(BaseModel):
    name: str
    order: int
    abelian: bool
    center_order: int
    nilpotency_class: int | str
    stabilization_exponent: int
    conjugacy_classes: int


class ValueResponse(BaseModel):
    group: str
    q: QValue
    variant: str
    kind: str  # "lambda" | "mu" | "S<j>" | "rep-orbits"
    n: int
    value: int


class ReportResponse(BaseModel):
    group: str
    q: QValue
    variant: str
    stabilization: int
    lambdas: dict[int, int]
    mus: dict[int, int]
    s_counts: list[tuple[int, int, int]]  # (n, j, value)


class StabResponse(BaseModel):
    group: str
    exponent: int


class FamilyResponse(BaseModel):
    group: str
    q: QValue
    member_count: int
    members: list[SubgroupModel]
    maximal: list[SubgroupModel]


class PosetResponse(BaseModel):
    group: str
    q: QValue
    vertices: list[SubgroupModel]
    edges: list[tuple[int, int]]
    is_tree: bool


class CoverModel(BaseModel):
    representative: int
    order: int
    elements: list[int]
    invariants: AbelianGroupModel


class WedgeModel(BaseModel):
    invariants: AbelianGroupModel
    multiplicity: int


class TCResponse(BaseModel):
    group: str
    is_tc: bool
    witness: int | None = None
    witness_label: str | None = None
    k: int | None = None
    cover: list[CoverModel] = Field(default_factory=list)
    free_rank: int | None = None
    chi: str | None = None
    wedge: list[WedgeModel] = Field(default_factory=list)


class ColimResponse(BaseModel):
    group: str
    q: QValue
    generators: list[str]
    relators: list[list[int]]
    abelianization: AbelianGroupModel
    surjects: bool
    text: str


class CharacterResponse(BaseModel):
    group: str
    classes: list[list[int]]
    representatives: list[int]
    values: list[int]
    kernel: list[int]
    center: list[int]


class HomologyResponse(BaseModel):
    group: str
    q: QValue
    space: Literal["B", "E"]
    i: int
    rank: int
    torsion: list[int]
    method: str


class H1MapResponse(BaseModel):
    group: str
    q: QValue
    cokernel: AbelianGroupModel
    feit_thompson_flag: bool
    cycle_generators: int


class CheckModel(BaseModel):
    name: str
    expected: str
    computed: str
    passed: bool


class VerifyResponse(BaseModel):
    suite: str
    slow: bool
    checks: list[CheckModel]
    ok: bool


class GroupFileResponse(BaseModel):
    name: str
    order: int
    mul: list[list[int]]
