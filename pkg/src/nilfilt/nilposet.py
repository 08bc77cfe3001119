"""Families of low-class subgroups and the invariants built on them.

``maximal_nil_subgroups`` finds the inclusion-maximal subgroups of
nilpotency class < q; ``nil_family`` closes them downward into the full
family.  On top of that sit the intersection poset (a graph of groups with a
tree test), colimit presentations of the fundamental group, transitively
commutative (TC) group detection with its centralizer covers, the free-rank
and Euler-characteristic invariants, and the character of the degree-one
homology representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GroupValidationError, GuardExceeded, NotTransitivelyCommutative
from .groups import (
    FiniteGroup,
    Subgroup,
    centralizer,
    center,
    closure,
    conjugacy_classes,
    full_subgroup,
    mask_elements,
    nilpotency_class_of,
    sylow_subgroups,
    trivial_subgroup,
)
from .intlinalg import AbelianGroup, IntegerMatrix, cokernel_invariants

INF = math.inf

NIL_FAMILY_MAX_ORDER = 256


def _subgroup_sort_key(H: Subgroup):
    return (-H.order, H.elements)


# --------------------------------------------------------------------------
# maximal members and the full family


def maximal_nil_subgroups(G: FiniteGroup, q) -> list[Subgroup]:
    """Inclusion-maximal subgroups of class < q (p-class is not considered).

    q = infinity means no constraint, so the unique maximal member is G.
    For q = 2 the search grows abelian subgroups; once the centralizer of a
    candidate is itself abelian it is the unique maximal abelian subgroup
    containing the candidate, which prunes the branch immediately.
    """
    if q == INF:
        return [full_subgroup(G)]
    if not isinstance(q, int) or q < 2:
        raise GroupValidationError("q must be an integer >= 2 or infinity")
    if q == 2 and G.is_abelian:
        return [full_subgroup(G)]
    if q > 2 and nilpotency_class_of(G, tuple(range(G.order))) < q:
        return [full_subgroup(G)]

    maximal: dict[tuple[int, ...], Subgroup] = {}
    if q == 2:
        visited: set[tuple[int, ...]] = set()
        stack: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        for x in range(1, G.order):
            elems = closure(G, (x,))
            if elems not in visited:
                visited.add(elems)
                stack.append((elems, (x,)))
        while stack:
            elems, gens = stack.pop()
            cent = centralizer(G, elems)
            if cent.elements == elems:
                maximal[elems] = Subgroup(G, elems, gens)
            elif cent.is_abelian:
                # the unique maximal abelian subgroup containing this one
                maximal.setdefault(cent.elements, cent)
            else:
                member_set = set(elems)
                for y in cent.elements:
                    if y not in member_set:
                        child_gens = gens + (y,)
                        child = closure(G, child_gens)
                        if child not in visited:
                            visited.add(child)
                            stack.append((child, child_gens))
    else:
        class_memo: dict[tuple[int, ...], bool] = {(0,): True}

        def ok(elems: tuple[int, ...]) -> bool:
            good = class_memo.get(elems)
            if good is None:
                good = nilpotency_class_of(G, elems) < q
                class_memo[elems] = good
            return good

        visited = set()
        stack = []
        for x in range(1, G.order):
            elems = closure(G, (x,))
            if elems not in visited and ok(elems):
                visited.add(elems)
                stack.append((elems, (x,)))
        while stack:
            elems, gens = stack.pop()
            extended = False
            member_set = set(elems)
            for y in range(1, G.order):
                if y in member_set:
                    continue
                child_gens = gens + (y,)
                child = closure(G, child_gens)
                if ok(child):
                    extended = True
                    if child not in visited:
                        visited.add(child)
                        stack.append((child, child_gens))
            if not extended:
                maximal[elems] = Subgroup(G, elems, gens)

    out = [maximal[e] for e in maximal]
    # drop anything contained in a bigger member (q=2 shortcut can add both)
    out = [
        H
        for H in out
        if not any(K is not H and H.mask & ~K.mask == 0 for K in out)
    ]
    out.sort(key=_subgroup_sort_key)
    return out


@dataclass
class NilFamily:
    """All subgroups of class < q, with the inclusion-maximal ones singled out."""

    q: int | float
    members: list[Subgroup]
    maximal: list[Subgroup]


def _subgroups_within(G: FiniteGroup, top: Subgroup) -> list[tuple[int, ...]]:
    visited = {(0,): ()}
    stack: list[tuple[int, ...]] = [(0,)]
    while stack:
        elems = stack.pop()
        gens = visited[elems]
        for y in top.elements:
            if y == 0 or y in elems:
                continue
            child = closure(G, gens + (y,))
            if child not in visited:
                visited[child] = gens + (y,)
                stack.append(child)
    return list(visited)


def nil_family(G: FiniteGroup, q) -> NilFamily:
    """The full subgroup family of class < q (downward-closed, conjugation-closed).

    Guarded to |G| <= 256; larger groups should use maximal_nil_subgroups.
    """
    if G.order > NIL_FAMILY_MAX_ORDER:
        raise GuardExceeded(
            f"nil_family enumerates all subgroups; |G| = {G.order} > {NIL_FAMILY_MAX_ORDER}"
        )
    maximal = maximal_nil_subgroups(G, q)
    seen: dict[tuple[int, ...], Subgroup] = {}
    for M in maximal:
        for elems in _subgroups_within(G, M):
            if elems not in seen:
                seen[elems] = Subgroup(G, elems)
    members = sorted(seen.values(), key=_subgroup_sort_key)
    return NilFamily(q, members, maximal)


# --------------------------------------------------------------------------
# intersection poset as a graph of groups


@dataclass
class GroupGraph:
    """Maximal members plus their pairwise intersections, with Hasse edges.

    Vertices are the distinct subgroups among the maximal members and all
    pairwise intersections; edges are the covering inclusions of that object
    poset (each verified subgroup inclusions).  ``is_tree`` asks whether the
    underlying undirected simple graph is connected and acyclic.
    """

    vertices: list[Subgroup]
    edges: list[tuple[int, int]]  # (smaller, larger) vertex indices
    is_tree: bool


def poset_graph(G: FiniteGroup, q) -> GroupGraph:
    maximal = maximal_nil_subgroups(G, q)
    objects: dict[tuple[int, ...], Subgroup] = {M.elements: M for M in maximal}
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            inter = tuple(
                sorted(set(maximal[i].elements) & set(maximal[j].elements))
            )
            if inter not in objects:
                objects[inter] = Subgroup(G, inter)
    vertices = sorted(objects.values(), key=_subgroup_sort_key)
    index = {v.elements: i for i, v in enumerate(vertices)}
    # covering relations of the inclusion order on the object set
    edges: list[tuple[int, int]] = []
    for a in vertices:
        for b in vertices:
            if a.order >= b.order or a.mask & ~b.mask != 0:
                continue
            covered = any(
                c is not a
                and c is not b
                and a.mask & ~c.mask == 0
                and c.mask & ~b.mask == 0
                for c in vertices
                if a.order < c.order < b.order
            )
            if not covered:
                edges.append((index[a.elements], index[b.elements]))
    edges.sort()
    # connected + acyclic via union-find
    parent = list(range(len(vertices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
        else:
            parent[ru] = rv
    connected = len({find(i) for i in range(len(vertices))}) <= 1
    return GroupGraph(vertices, edges, connected and acyclic)


# --------------------------------------------------------------------------
# transitively commutative groups


def is_tc(G: FiniteGroup) -> tuple[bool, int | None]:
    """TC test: every noncentral element has an abelian centralizer.

    Returns (verdict, witness); the witness is a noncentral element whose
    centralizer is nonabelian, when one exists.  Abelian groups are TC
    trivially (witness None).
    """
    zmask = G.center_mask
    for x in range(1, G.order):
        if (zmask >> x) & 1:
            continue
        if not centralizer(G, [x]).is_abelian:
            return False, x
    return True, None


def tc_conditions(G: FiniteGroup) -> dict[str, bool]:
    """The four equivalent TC characterizations, each checked independently.

    (a) noncentral centralizers are abelian; (b) commuting noncentral
    elements have equal centralizers; (c) commuting is transitive off the
    center; (d) no proper nesting of centralizer subgroups strictly between
    the center and the whole group.
    """
    zmask = G.center_mask
    full = (1 << G.order) - 1
    masks = G.centralizer_masks
    noncentral = [x for x in range(G.order) if not (zmask >> x) & 1]

    cond_a = all(centralizer(G, [x]).is_abelian for x in noncentral)

    cond_b = True
    for g in noncentral:
        cg = masks[g]
        for h in noncentral:
            if h > g and (cg >> h) & 1 and masks[h] != cg:
                cond_b = False
                break
        if not cond_b:
            break

    cond_c = True
    for h in noncentral:
        members = mask_elements(masks[h])
        for i, g in enumerate(members):
            row = G.mul[g]
            for k in members[i + 1 :]:
                if row[k] != G.mul[k][g]:
                    cond_c = False
                    break
            if not cond_c:
                break
        if not cond_c:
            break

    family = {full}
    frontier = {masks[x] for x in range(G.order)}
    family |= frontier
    while frontier:
        new = set()
        for m in frontier:
            for other in list(family):
                inter = m & other
                if inter not in family:
                    new.add(inter)
        family |= new
        frontier = new
    cond_d = True
    proper = [m for m in family if m != full and m != zmask and (m & ~zmask)]
    for x in proper:
        for y in proper:
            if x != y and x & ~y == 0 and zmask & ~x == 0 and zmask != x:
                cond_d = False
                break
        if not cond_d:
            break

    return {"a": cond_a, "b": cond_b, "c": cond_c, "d": cond_d}


def centralizer_cover(G: FiniteGroup) -> list[tuple[int, Subgroup]]:
    """Minimal centralizer cover of a TC group.

    The distinct centralizers of noncentral elements are exactly the maximal
    abelian subgroups and form the unique minimal cover; each is returned
    with its smallest representative.  Abelian groups give the empty cover
    (the center already covers everything).
    """
    verdict, witness = is_tc(G)
    if not verdict:
        raise NotTransitivelyCommutative(
            f"element {witness} has a nonabelian centralizer"
        )
    zmask = G.center_mask
    cover: dict[tuple[int, ...], int] = {}
    for x in range(1, G.order):
        if (zmask >> x) & 1:
            continue
        C = centralizer(G, [x])
        cover.setdefault(C.elements, x)
    items = [(rep, Subgroup(G, elems)) for elems, rep in cover.items()]
    items.sort(key=lambda t: _subgroup_sort_key(t[1]))
    union = 0
    for _, C in items:
        union |= C.mask
    if items and union | zmask != (1 << G.order) - 1:
        raise AssertionError("centralizer cover does not cover the group")
    return items


@dataclass
class TCReport:
    """TC verdict plus the invariants derived from the centralizer cover."""

    is_tc: bool
    witness: int | None
    cover: list[tuple[int, Subgroup]]
    k: int
    free_rank: int  # rank of the fundamental group of the total space
    chi: Fraction  # Euler characteristic of the colimit group
    wedge: list[tuple[AbelianGroup, int]] = field(default_factory=list)


def tc_invariants(G: FiniteGroup) -> TCReport:
    """Free rank, Euler characteristic, and (trivial center) wedge summands.

    rank = 1 - [G:Z] + sum_i ([G:Z] - [G:C_i]) over the centralizer cover,
    cross-checked exactly against rank = 1 - chi * |G| with
    chi = 1/|Z| + sum_i (1/|C_i| - 1/|Z|).
    """
    verdict, witness = is_tc(G)
    if not verdict:
        raise NotTransitivelyCommutative(
            f"element {witness} has a nonabelian centralizer"
        )
    cover = centralizer_cover(G)
    Z = center(G)
    index_z = G.order // Z.order
    rank = 1 - index_z + sum(index_z - G.order // C.order for _, C in cover)
    chi = Fraction(1, Z.order) + sum(
        (Fraction(1, C.order) - Fraction(1, Z.order) for _, C in cover),
        start=Fraction(0),
    )
    if rank != 1 - chi * G.order:
        raise AssertionError("rank and Euler characteristic disagree")
    wedge: list[tuple[AbelianGroup, int]] = []
    if Z.order == 1:
        n = G.order
        p = 2
        primes = []
        while p * p <= n:
            if n % p == 0:
                primes.append(p)
                while n % p == 0:
                    n //= p
            p += 1
        if n > 1:
            primes.append(n)
        for p in primes:
            syl = sylow_subgroups(G, p)
            from .groups import abelian_decomposition

            wedge.append((abelian_decomposition(syl[0]), len(syl)))
    return TCReport(True, None, cover, len(cover), rank, chi, wedge)


# --------------------------------------------------------------------------
# colimit presentations


@dataclass
class Presentation:
    """Generators and relators for the colimit of the class-< q family.

    One generator per nonidentity element of each maximal member; relators
    are the members' multiplication tables plus identifications of shared
    intersection elements.  Words are sequences of nonzero signed 1-based
    generator ids (negative = inverse).
    """

    generators: list[str]
    gen_element: list[tuple[int, int]]  # (maximal member index, element id)
    relators: list[tuple[int, ...]]
    abelianization: AbelianGroup
    surjects: bool

    def text(self) -> str:
        gens = " ".join(self.generators)
        rels = ", ".join(" ".join(str(s) for s in w) for w in self.relators)
        return f"gens: {gens} ; rels: {rels}"


def colimit_presentation(G: FiniteGroup, q) -> Presentation:
    maximal = maximal_nil_subgroups(G, q)
    gen_ids: dict[tuple[int, int], int] = {}
    names: list[str] = []
    gen_element: list[tuple[int, int]] = []
    for m, M in enumerate(maximal):
        for x in M.elements:
            if x == 0:
                continue
            gen_ids[(m, x)] = len(names) + 1  # 1-based
            names.append(f"g{m}_{x}")
            gen_element.append((m, x))

    relators: list[tuple[int, ...]] = []
    for m, M in enumerate(maximal):
        for x in M.elements:
            if x == 0:
                continue
            for y in M.elements:
                if y == 0:
                    continue
                z = G.mul[x][y]
                word = [gen_ids[(m, x)], gen_ids[(m, y)]]
                if z != 0:
                    word.append(-gen_ids[(m, z)])
                relators.append(tuple(word))
    for m1 in range(len(maximal)):
        for m2 in range(m1 + 1, len(maximal)):
            shared = set(maximal[m1].elements) & set(maximal[m2].elements)
            for x in sorted(shared):
                if x == 0:
                    continue
                relators.append((gen_ids[(m1, x)], -gen_ids[(m2, x)]))

    rows: list[dict[int, int]] = []
    for word in relators:
        row: dict[int, int] = {}
        for s in word:
            col = abs(s) - 1
            row[col] = row.get(col, 0) + (1 if s > 0 else -1)
        rows.append({c: v for c, v in row.items() if v})
    ab = cokernel_invariants(IntegerMatrix.from_rows(rows, len(names)))

    # the generator -> element map must kill every relator and generate G
    surjects = True
    for word in relators:
        acc = 0
        for s in word:
            m, x = gen_element[abs(s) - 1]
            acc = G.mul[acc][x if s > 0 else G.inv[x]]
        if acc != 0:
            surjects = False
            break
    if surjects:
        image = closure(G, [x for _, x in gen_element])
        surjects = len(image) == G.order
    return Presentation(names, gen_element, relators, ab, surjects)


# --------------------------------------------------------------------------
# the character of the degree-one homology representation


@dataclass
class ClassFunction:
    """Integer class function on G, ordered like conjugacy_classes(G)."""

    classes: list[tuple[int, ...]]
    representatives: list[int]
    values: list[int]

    def value_at(self, g: int) -> int:
        for cls, val in zip(self.classes, self.values):
            if g in cls:
                return val
        raise GroupValidationError(f"element {g} out of range")

    def kernel_elements(self) -> tuple[int, ...]:
        """Elements where the character equals its value at the identity."""
        top = self.values[0]
        out: list[int] = []
        for cls, val in zip(self.classes, self.values):
            if val == top:
                out.extend(cls)
        return tuple(sorted(out))


def _fixed_cosets(G: FiniteGroup, g: int, H: Subgroup) -> int:
    """Number of cosets xH with g.xH = xH, i.e. #{x : x^-1 g x in H} / |H|."""
    mask = H.mask
    count = 0
    for x in range(G.order):
        if (mask >> G.conjugate(g, G.inv[x])) & 1:
            count += 1
    assert count % H.order == 0
    return count // H.order


def character_M2(G: FiniteGroup) -> ClassFunction:
    """Character of G acting on the rationalized degree-one homology module.

    From the four-term permutation-module resolution:
    value(g) = (k-1)*fix(g, G/Z) - sum_i fix(g, G/C_i) + 1.
    The value at the identity is the free rank; the kernel is the center.
    """
    verdict, witness = is_tc(G)
    if not verdict:
        raise NotTransitivelyCommutative(
            f"element {witness} has a nonabelian centralizer"
        )
    cover = centralizer_cover(G)
    Z = center(G)
    classes, reps = conjugacy_classes(G)
    k = len(cover)
    values = []
    for rep in reps:
        val = (k - 1) * _fixed_cosets(G, rep, Z)
        val -= sum(_fixed_cosets(G, rep, C) for _, C in cover)
        val += 1
        values.append(val)
    return ClassFunction(list(classes), list(reps), values)
