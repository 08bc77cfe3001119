"""FastAPI service exposing the library as stateless compute endpoints.

Every endpoint resolves its group, runs the corresponding library call, and
returns a typed response; nothing is cached between requests beyond the
process-level builtin-group cache.  Known failure modes map onto status
codes the CLI understands: 400 for invalid input, 422 for exceeded size
guards.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..catalog import parse_group_spec
from ..errors import GroupValidationError, GuardExceeded, NotTransitivelyCommutative
from ..groups import (
    FiniteGroup,
    central_series,
    center,
    conjugacy_classes,
    dump_group,
    full_subgroup,
    load_group,
)
from ..homology import (
    build_chain_complex,
    h1_via_Iq,
    homology,
    induced_h1_map,
    tc_h1_via_sequence_III,
)
from ..homspace import (
    count_hom,
    count_report,
    filtration_count,
    mu_count,
    rep_orbit_count,
    stabilization_exponent,
)
from ..intlinalg import AbelianGroup
from ..nilposet import (
    centralizer_cover,
    character_M2,
    colimit_presentation,
    is_tc,
    nil_family,
    poset_graph,
    tc_invariants,
)
from ..verify import run_suite
from .models import (
    AbelianGroupModel,
    CharacterResponse,
    CheckModel,
    ColimResponse,
    CountRequest,
    CoverModel,
    FamilyResponse,
    GroupFileResponse,
    GroupInfoResponse,
    GroupRequest,
    GroupSource,
    H1MapResponse,
    HomologyRequest,
    HomologyResponse,
    LevelRequest,
    OrbitRequest,
    PosetResponse,
    ReportRequest,
    ReportResponse,
    ScountRequest,
    StabResponse,
    SubgroupModel,
    TCResponse,
    ValueResponse,
    VerifyRequest,
    VerifyResponse,
    WedgeModel,
    q_to_level,
)

app = FastAPI(
    title="nilfilt",
    version=__version__,
    description="Invariants of the nilpotent filtration of classifying spaces",
)


@app.exception_handler(GuardExceeded)
async def _guard_handler(_: Request, exc: GuardExceeded) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": {"code": "guard-exceeded", "message": str(exc)}},
    )


@app.exception_handler(GroupValidationError)
async def _validation_handler(_: Request, exc: GroupValidationError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"code": "validation", "message": str(exc)}},
    )


@app.exception_handler(NotTransitivelyCommutative)
async def _tc_handler(_: Request, exc: NotTransitivelyCommutative) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"code": "not-tc", "message": str(exc)}},
    )


def _resolve(source: GroupSource) -> FiniteGroup:
    if source.spec is not None:
        return parse_group_spec(source.spec)
    return load_group(source.file.model_dump(exclude_none=True))


def _abelian_model(group: AbelianGroup) -> AbelianGroupModel:
    return AbelianGroupModel(
        rank=group.rank, torsion=list(group.torsion), pretty=str(group)
    )


def _subgroup_model(H) -> SubgroupModel:
    return SubgroupModel(order=H.order, elements=list(H.elements))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/group", response_model=GroupInfoResponse)
def group_info(req: GroupRequest) -> GroupInfoResponse:
    G = _resolve(req.group)
    series = central_series(G, full_subgroup(G))
    return GroupInfoResponse(
        name=G.name,
        order=G.order,
        abelian=G.is_abelian,
        center_order=center(G).order,
        nilpotency_class=series.class_label,
        stabilization_exponent=stabilization_exponent(G),
        conjugacy_classes=len(conjugacy_classes(G)[0]),
    )


def _variant(p: int | None) -> str:
    return "ordinary" if p is None else f"{p}-local"


@app.post("/v1/lambda", response_model=ValueResponse)
def lambda_count(req: CountRequest) -> ValueResponse:
    G = _resolve(req.group)
    value = count_hom(G, req.n, q_to_level(req.q), req.p, jobs=req.jobs)
    return ValueResponse(
        group=G.name, q=req.q, variant=_variant(req.p), kind="lambda", n=req.n, value=value
    )


@app.post("/v1/mu", response_model=ValueResponse)
def mu(req: CountRequest) -> ValueResponse:
    G = _resolve(req.group)
    value = mu_count(G, req.n, q_to_level(req.q), req.p, jobs=req.jobs)
    return ValueResponse(
        group=G.name, q=req.q, variant=_variant(req.p), kind="mu", n=req.n, value=value
    )


@app.post("/v1/scount", response_model=ValueResponse)
def scount(req: ScountRequest) -> ValueResponse:
    G = _resolve(req.group)
    value = filtration_count(G, req.n, req.j, q_to_level(req.q), req.p, jobs=req.jobs)
    return ValueResponse(
        group=G.name,
        q=req.q,
        variant=_variant(req.p),
        kind=f"S{req.j}",
        n=req.n,
        value=value,
    )


@app.post("/v1/report", response_model=ReportResponse)
def report(req: ReportRequest) -> ReportResponse:
    G = _resolve(req.group)
    rep = count_report(G, q_to_level(req.q), req.p, nmax=req.nmax, jobs=req.jobs)
    return ReportResponse(
        group=G.name,
        q=req.q,
        variant=rep.variant,
        stabilization=rep.stabilization,
        lambdas=rep.lambdas,
        mus=rep.mus,
        s_counts=sorted((n, j, v) for (n, j), v in rep.s_counts.items()),
    )


@app.post("/v1/stab", response_model=StabResponse)
def stab(req: GroupRequest) -> StabResponse:
    G = _resolve(req.group)
    return StabResponse(group=G.name, exponent=stabilization_exponent(G))


@app.post("/v1/reporbits", response_model=ValueResponse)
def reporbits(req: OrbitRequest) -> ValueResponse:
    G = _resolve(req.group)
    value = rep_orbit_count(G, req.n, q_to_level(req.q), req.p)
    return ValueResponse(
        group=G.name,
        q=req.q,
        variant=_variant(req.p),
        kind="rep-orbits",
        n=req.n,
        value=value,
    )


@app.post("/v1/family", response_model=FamilyResponse)
def family(req: LevelRequest) -> FamilyResponse:
    G = _resolve(req.group)
    fam = nil_family(G, q_to_level(req.q))
    return FamilyResponse(
        group=G.name,
        q=req.q,
        member_count=len(fam.members),
        members=[_subgroup_model(H) for H in fam.members],
        maximal=[_subgroup_model(H) for H in fam.maximal],
    )


@app.post("/v1/poset", response_model=PosetResponse)
def poset(req: LevelRequest) -> PosetResponse:
    G = _resolve(req.group)
    graph = poset_graph(G, q_to_level(req.q))
    return PosetResponse(
        group=G.name,
        q=req.q,
        vertices=[_subgroup_model(v) for v in graph.vertices],
        edges=graph.edges,
        is_tree=graph.is_tree,
    )


@app.post("/v1/tc", response_model=TCResponse)
def tc(req: GroupRequest) -> TCResponse:
    G = _resolve(req.group)
    verdict, witness = is_tc(G)
    if not verdict:
        return TCResponse(
            group=G.name,
            is_tc=False,
            witness=witness,
            witness_label=G.label(witness),
        )
    from ..groups import abelian_decomposition

    report_ = tc_invariants(G)
    return TCResponse(
        group=G.name,
        is_tc=True,
        k=report_.k,
        cover=[
            CoverModel(
                representative=rep,
                order=C.order,
                elements=list(C.elements),
                invariants=_abelian_model(abelian_decomposition(C)),
            )
            for rep, C in report_.cover
        ],
        free_rank=report_.free_rank,
        chi=str(report_.chi),
        wedge=[
            WedgeModel(invariants=_abelian_model(inv), multiplicity=m)
            for inv, m in report_.wedge
        ],
    )


@app.post("/v1/colim", response_model=ColimResponse)
def colim(req: LevelRequest) -> ColimResponse:
    G = _resolve(req.group)
    pres = colimit_presentation(G, q_to_level(req.q))
    return ColimResponse(
        group=G.name,
        q=req.q,
        generators=pres.generators,
        relators=[list(w) for w in pres.relators],
        abelianization=_abelian_model(pres.abelianization),
        surjects=pres.surjects,
        text=pres.text(),
    )


@app.post("/v1/character", response_model=CharacterResponse)
def character(req: GroupRequest) -> CharacterResponse:
    G = _resolve(req.group)
    cf = character_M2(G)
    return CharacterResponse(
        group=G.name,
        classes=[list(c) for c in cf.classes],
        representatives=cf.representatives,
        values=cf.values,
        kernel=list(cf.kernel_elements()),
        center=list(center(G).elements),
    )


@app.post("/v1/homology", response_model=HomologyResponse)
def homology_endpoint(req: HomologyRequest) -> HomologyResponse:
    G = _resolve(req.group)
    level = q_to_level(req.q)
    dmax = req.dmax if req.dmax is not None else req.i + 1
    if dmax <= req.i:
        raise GroupValidationError("dmax must exceed the requested degree")
    complex_ = build_chain_complex(G, level, req.space, dmax)
    result = homology(complex_, req.i)
    return HomologyResponse(
        group=G.name,
        q=req.q,
        space=req.space,
        i=req.i,
        rank=result.homology.rank,
        torsion=list(result.homology.torsion),
        method=result.method,
    )


@app.post("/v1/h1-iq", response_model=HomologyResponse)
def h1_iq(req: LevelRequest) -> HomologyResponse:
    G = _resolve(req.group)
    result = h1_via_Iq(G, q_to_level(req.q))
    return HomologyResponse(
        group=G.name,
        q=req.q,
        space="B",
        i=1,
        rank=result.homology.rank,
        torsion=list(result.homology.torsion),
        method=result.method,
    )


@app.post("/v1/h1-seq3", response_model=HomologyResponse)
def h1_seq3(req: GroupRequest) -> HomologyResponse:
    G = _resolve(req.group)
    result = tc_h1_via_sequence_III(G)
    return HomologyResponse(
        group=G.name,
        q=2,
        space="B",
        i=1,
        rank=result.homology.rank,
        torsion=list(result.homology.torsion),
        method=result.method,
    )


@app.post("/v1/h1-map", response_model=H1MapResponse)
def h1_map(req: LevelRequest) -> H1MapResponse:
    G = _resolve(req.group)
    result = induced_h1_map(G, q_to_level(req.q))
    return H1MapResponse(
        group=G.name,
        q=req.q,
        cokernel=_abelian_model(result.cokernel),
        feit_thompson_flag=result.feit_thompson_flag,
        cycle_generators=result.matrix.cols,
    )


@app.post("/v1/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    checks = run_suite(req.suite, slow=req.slow, jobs=req.jobs, seed=req.seed)
    models = [
        CheckModel(
            name=c.name, expected=c.expected, computed=c.computed, passed=c.passed
        )
        for c in checks
    ]
    return VerifyResponse(
        suite=req.suite, slow=req.slow, checks=models, ok=all(c.passed for c in checks)
    )


@app.post("/v1/export", response_model=GroupFileResponse)
def export(req: GroupRequest) -> GroupFileResponse:
    G = _resolve(req.group)
    data = dump_group(G)
    return GroupFileResponse(name=data["name"], order=data["order"], mul=data["mul"])
