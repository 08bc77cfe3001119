"""Normalized integer chain complexes of the tuple spaces and their homology.

Space "B" has, in degree d, one basis element per identity-free admissible
d-tuple; space "E" prepends an unconstrained leading coordinate.  Boundaries
are the alternating face sums, with faces that produce an identity
coordinate dropped (normalization); d(d(x)) = 0 is asserted on every
constructed complex.

Homology is read off exactly: the free rank of H_i is
nullity(boundary_i) - rank(boundary_{i+1}) and the torsion is the nonunit
part of the Smith diagonal of boundary_{i+1}.  Degree-one homology of the
"B" space has three further, independent routes: the pair-relation
presentation of the group ring quotient, the centralizer-cover mapping cone
for TC groups, and the wedge formula for TC groups with trivial center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GroupValidationError, GuardExceeded
from .groups import FiniteGroup, abelian_invariants, center, full_subgroup
from .homspace import TupleEnumerator
from .intlinalg import (
    AbelianGroup,
    IntegerMatrix,
    cokernel_invariants,
    matrix_rank,
    snf_diagonal,
)
from .nilposet import centralizer_cover, tc_invariants

INF = math.inf

BASIS_GUARD = 500_000


@dataclass
class ChainComplex:
    group: FiniteGroup
    q: int | float
    space: str  # "B" | "E"
    dmax: int
    bases: list[list[tuple[int, ...]]]
    boundaries: list[IntegerMatrix]  # boundaries[d] : C_d -> C_{d-1}

    def basis_sizes(self) -> list[int]:
        return [len(b) for b in self.bases]


def _admissible_tuples(en: TupleEnumerator, d: int) -> list[tuple[int, ...]]:
    """Identity-free admissible d-tuples in lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], sid: int, rem: int) -> None:
        if rem == 0:
            out.append(prefix)
            return
        gs, joins = en.extensions(sid)
        for g, j in zip(gs[1:], joins[1:]):  # skip the identity slot
            rec(prefix + (g,), j, rem - 1)

    rec((), 0, d)
    return out


def build_chain_complex(
    G: FiniteGroup, q, space: str = "B", dmax: int = 2
) -> ChainComplex:
    """Construct the normalized chain complex up to degree dmax.

    Raises GuardExceeded when the total basis size would pass 5*10^5.
    """
    if space not in ("B", "E"):
        raise GroupValidationError("space must be 'B' or 'E'")
    if dmax < 0:
        raise GroupValidationError("dmax must be >= 0")
    en = TupleEnumerator(G, q)
    mul = G.mul

    # size the bases via the counting DP before materializing anything
    factor = G.order if space == "E" else 1
    total = sum(
        factor * (en.count(d, identity_free=True) if d else 1)
        for d in range(dmax + 1)
    )
    if total > BASIS_GUARD:
        raise GuardExceeded(
            f"chain complex basis would need {total} > {BASIS_GUARD} elements"
        )
    tuple_bases = [_admissible_tuples(en, d) for d in range(dmax + 1)]

    if space == "B":
        bases = tuple_bases
    else:
        bases = [
            [(a,) + t for a in range(G.order) for t in tuple_bases[d]]
            for d in range(dmax + 1)
        ]

    indexes = [{t: i for i, t in enumerate(basis)} for basis in bases]
    boundaries: list[IntegerMatrix] = [IntegerMatrix(0, len(bases[0]))]
    for d in range(1, dmax + 1):
        entries: dict[tuple[int, int], int] = {}
        lower = indexes[d - 1]
        for col, t in enumerate(bases[d]):
            faces = _faces_E(mul, t) if space == "E" else _faces_B(mul, t)
            for sign, face in faces:
                if face is None:
                    continue
                row = lower[face]
                val = entries.get((row, col), 0) + sign
                if val:
                    entries[(row, col)] = val
                elif (row, col) in entries:
                    del entries[(row, col)]
        boundaries.append(IntegerMatrix(len(bases[d - 1]), len(bases[d]), entries))

    complex_ = ChainComplex(G, q, space, dmax, bases, boundaries)
    for d in range(2, dmax + 1):
        if not (boundaries[d - 1] @ boundaries[d]).is_zero():
            raise AssertionError(f"boundary composition nonzero in degree {d}")
    return complex_


def _faces_B(mul, t: tuple[int, ...]):
    d = len(t)
    sign = 1
    yield sign, t[1:] if d > 1 else ()
    for i in range(1, d):
        sign = -sign
        merged = mul[t[i - 1]][t[i]]
        face = None if merged == 0 else t[: i - 1] + (merged,) + t[i + 1 :]
        yield sign, face
    yield -sign, t[:-1] if d > 1 else ()


def _faces_E(mul, t: tuple[int, ...]):
    d = len(t) - 1  # simplicial degree; t has a leading free coordinate
    sign = 1
    yield sign, (mul[t[0]][t[1]],) + t[2:]
    for i in range(2, d + 1):
        sign = -sign
        merged = mul[t[i - 1]][t[i]]
        face = None if merged == 0 else t[: i - 1] + (merged,) + t[i + 1 :]
        yield sign, face
    yield -sign, t[:-1]


@dataclass
class HomologyResult:
    group: str
    q: int | float
    space: str
    degree: int
    homology: AbelianGroup
    method: str

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "q": "inf" if self.q == INF else self.q,
            "space": self.space,
            "i": self.degree,
            "rank": self.homology.rank,
            "torsion": list(self.homology.torsion),
            "method": self.method,
        }


def homology(C: ChainComplex, i: int) -> HomologyResult:
    """H_i of the complex by exact Smith normal form.

    Needs boundary_{i+1}, so i must be strictly below dmax.
    """
    if not 0 <= i < C.dmax:
        raise GroupValidationError(f"need 0 <= i < dmax = {C.dmax}")
    rank_i = matrix_rank(C.boundaries[i]) if i > 0 else 0
    nullity = len(C.bases[i]) - rank_i
    diag = snf_diagonal(C.boundaries[i + 1])
    group = AbelianGroup(
        nullity - len(diag), tuple(d for d in diag if d != 1)
    )
    return HomologyResult(C.group.name, C.q, C.space, i, group, "direct-snf")


# --------------------------------------------------------------------------
# degree-one homology via the pair-relation ideal


def _admissible_pairs(G: FiniteGroup, q) -> list[tuple[int, int]]:
    en = TupleEnumerator(G, q)
    pairs = []
    for x in range(G.order):
        sx = en.join(0, x)
        for y in range(G.order):
            sxy = en.join(sx, y)
            if en.admissible(sxy):
                pairs.append((x, y))
    return pairs


def h1_via_Iq(G: FiniteGroup, q) -> HomologyResult:
    """H_1 of space B as the group ring modulo pair relations y - xy + x.

    Rows run over all admissible ordered pairs; columns over all of G.  The
    relations force the identity column to zero, so this matches the
    normalized chain computation.
    """
    rows: list[dict[int, int]] = []
    for x, y in _admissible_pairs(G, q):
        row: dict[int, int] = {}
        for col, coeff in ((y, 1), (G.mul[x][y], -1), (x, 1)):
            row[col] = row.get(col, 0) + coeff
        rows.append({c: v for c, v in row.items() if v})
    invariants = cokernel_invariants(IntegerMatrix.from_rows(rows, G.order))
    return HomologyResult(G.name, q, "B", 1, invariants, "Iq-presentation")


# --------------------------------------------------------------------------
# the induced degree-one map from space E to space B


@dataclass
class InducedH1Map:
    """Pushforward of a cycle basis of E into the degree-one chains of B.

    ``matrix`` columns are the fundamental cycles of the degree-one edge
    graph of E (one per non-tree edge), written in the identity-free
    degree-one basis of B.  ``cokernel`` is H_1(B) modulo the image; for the
    five-term exact sequence it must equal the abelianization of G, and
    ``feit_thompson_flag`` records a group of odd order with nonzero
    cokernel (such a group witnesses non-surjectivity).
    """

    matrix: IntegerMatrix
    cokernel: AbelianGroup
    feit_thompson_flag: bool


def induced_h1_map(G: FiniteGroup, q) -> InducedH1Map:
    en = TupleEnumerator(G, q)
    singles = _admissible_tuples(en, 1)
    mu1 = len(singles)
    order = G.order
    if order * (1 + mu1 + en.count(2, identity_free=True)) > BASIS_GUARD:
        raise GuardExceeded("degree-two chain data would exceed the basis guard")

    # spanning tree of the edge graph (a, x) : a -> a*x over all vertices
    tree_path: list[dict[int, int] | None] = [None] * order
    tree_path[0] = {}
    frontier = [0]
    tree_edges: set[int] = set()
    while frontier:
        nxt = []
        for a in frontier:
            row = G.mul[a]
            for xi, (x,) in enumerate(singles):
                b = row[x]
                if tree_path[b] is None:
                    eid = a * mu1 + xi
                    tree_edges.add(eid)
                    path = dict(tree_path[a])
                    path[eid] = path.get(eid, 0) + 1
                    tree_path[b] = path
                    nxt.append(b)
        frontier = nxt
    if any(p is None for p in tree_path):
        raise AssertionError("degree-one edge graph of E is not connected")

    entries: dict[tuple[int, int], int] = {}
    col = 0
    for a in range(order):
        row = G.mul[a]
        for xi, (x,) in enumerate(singles):
            eid = a * mu1 + xi
            if eid in tree_edges:
                continue
            b = row[x]
            cycle: dict[int, int] = {eid: 1}
            for e2, c in tree_path[a].items():
                cycle[e2] = cycle.get(e2, 0) + c
            for e2, c in tree_path[b].items():
                cycle[e2] = cycle.get(e2, 0) - c
            for e2, c in cycle.items():
                if c:
                    r = e2 % mu1  # the edge label is its degree-one basis element
                    val = entries.get((r, col), 0) + c
                    if val:
                        entries[(r, col)] = val
                    elif (r, col) in entries:
                        del entries[(r, col)]
            col += 1
    pushforward = IntegerMatrix(mu1, col, entries)

    # cokernel of H_1(E) -> H_1(B): quotient the degree-one chains of B by
    # both the degree-two boundaries and the pushed-forward cycles
    complex_b = build_chain_complex(G, q, "B", 2)
    boundary2 = complex_b.boundaries[2]
    rows: list[dict[int, int]] = []
    by_col: dict[int, dict[int, int]] = {}
    for (r, c), v in boundary2.entries.items():
        by_col.setdefault(c, {})[r] = v
    rows.extend(by_col.values())
    push_cols: dict[int, dict[int, int]] = {}
    for (r, c), v in pushforward.entries.items():
        push_cols.setdefault(c, {})[r] = v
    rows.extend(push_cols.values())
    cokernel = cokernel_invariants(IntegerMatrix.from_rows(rows, mu1))

    expected = abelian_invariants(G, full_subgroup(G))
    if cokernel != expected:
        raise AssertionError(
            f"five-term cokernel {cokernel} differs from abelianization {expected}"
        )
    flag = G.order % 2 == 1 and not cokernel.is_trivial
    return InducedH1Map(pushforward, cokernel, flag)


# --------------------------------------------------------------------------
# TC-group routes to H_1


def tc_h1_via_sequence_III(G: FiniteGroup) -> HomologyResult:
    """H_1(B) of a TC group from its centralizer cover.

    Presents Z(G) and each covering centralizer on their nonidentity
    elements and quotients by the diagonal-minus-inclusion relations of the
    cover, all as one integer cokernel.
    """
    cover = centralizer_cover(G)
    Z = center(G)
    blocks = [tuple(e for e in Z.elements if e)] + [
        tuple(e for e in C.elements if e) for _, C in cover
    ]
    offsets = []
    pos = 0
    for block in blocks:
        offsets.append(pos)
        pos += len(block)
    cols = pos
    col_of = [
        {e: offsets[b] + i for i, e in enumerate(block)}
        for b, block in enumerate(blocks)
    ]
    rows: list[dict[int, int]] = []
    for b, block in enumerate(blocks):
        cmap = col_of[b]
        for i, x in enumerate(block):
            for y in block[i:]:
                row: dict[int, int] = {}
                for col, coeff in ((cmap[x], 1), (cmap[y], 1)):
                    row[col] = row.get(col, 0) + coeff
                z = G.mul[x][y]
                if z:
                    row[cmap[z]] = row.get(cmap[z], 0) - 1
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    for b in range(1, len(blocks)):
        for z in blocks[0]:
            rows.append({col_of[0][z]: 1, col_of[b][z]: -1})
    invariants = cokernel_invariants(IntegerMatrix.from_rows(rows, cols))
    return HomologyResult(G.name, 2, "B", 1, invariants, "sequence-III")


def tc_h1_wedge(G: FiniteGroup) -> HomologyResult:
    """H_1(B) of a TC group with trivial center: sum of Sylow abelianizations."""
    report = tc_invariants(G)
    if center(G).order != 1:
        raise GroupValidationError("wedge formula needs a trivial center")
    total = AbelianGroup()
    for summand, multiplicity in report.wedge:
        for _ in range(multiplicity):
            total = total.direct_sum(summand)
    return HomologyResult(G.name, 2, "B", 1, total, "wedge-formula")
