"""Exact finite-group arithmetic on dense Cayley tables.

Elements are ids 0..order-1 with the identity fixed at 0; the full
multiplication and inverse tables are precomputed, so all arithmetic is a
table lookup.  Groups are immutable after construction and every operation
here is a pure function of its inputs, which makes them safe to share across
worker processes.

Subgroups are represented by their full (sorted) element list plus a bitmask
over element ids; closures, commutators, central series, centralizers,
conjugacy classes and Sylow subgroups are all computed by direct enumeration,
which is entirely adequate below the order-1024 cap enforced at construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GroupValidationError
from .intlinalg import AbelianGroup, IntegerMatrix, cokernel_invariants

MAX_ORDER = 1024

INFINITE = math.inf  # nilpotency class of a non-nilpotent subgroup


class FiniteGroup:
    """A finite group given by its complete multiplication table."""

    def __init__(
        self,
        mul: list[list[int]],
        name: str = "G",
        labels: list[str] | None = None,
        validated: bool = False,
    ):
        self.order = len(mul)
        self.mul = [list(row) for row in mul]
        self.name = name
        self.labels = list(labels) if labels is not None else None
        if not validated:
            validate_table(self.mul)
        self.inv = [row.index(0) for row in self.mul]
        self.identity = 0

    # -- basic arithmetic ---------------------------------------------------

    def mult(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, x: int, g: int) -> int:
        """g * x * g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        m = self.mul
        return m[m[m[self.inv[a]][self.inv[b]]][a]][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        while k:
            if k & 1:
                result = self.mul[result][a]
            a = self.mul[a][a]
            k >>= 1
        return result

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        # equality is table equality; name and labels are presentation only
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self) -> int:
        return hash(self.order)

    # -- cached element data --------------------------------------------------

    @cached_property
    def element_orders(self) -> list[int]:
        orders = [1] * self.order
        for x in range(1, self.order):
            y, k = x, 1
            while y != 0:
                y = self.mul[y][x]
                k += 1
            orders[x] = k
        return orders

    @cached_property
    def centralizer_masks(self) -> list[int]:
        """Bitmask of the centralizer of each single element."""
        masks = []
        for x in range(self.order):
            row = self.mul[x]
            mask = 0
            for g in range(self.order):
                if row[g] == self.mul[g][x]:
                    mask |= 1 << g
            masks.append(mask)
        return masks

    @cached_property
    def center_mask(self) -> int:
        mask = (1 << self.order) - 1
        for x in range(self.order):
            mask &= self.centralizer_masks[x]
        return mask

    @cached_property
    def is_abelian(self) -> bool:
        return self.center_mask == (1 << self.order) - 1


def validate_table(mul: list[list[int]]) -> None:
    """Check the full FiniteGroup invariants; raises GroupValidationError.

    Associativity is verified in full (vectorized; fine up to order 1024).
    """
    n = len(mul)
    if n == 0:
        raise GroupValidationError("empty multiplication table")
    if n > MAX_ORDER:
        raise GroupValidationError(f"order {n} exceeds the cap of {MAX_ORDER}")
    if any(len(row) != n for row in mul):
        raise GroupValidationError("multiplication table is not square")
    arr = np.asarray(mul, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise GroupValidationError("table entry out of range")
    idx = np.arange(n)
    if not (np.array_equal(arr[0], idx) and np.array_equal(arr[:, 0], idx)):
        raise GroupValidationError("element 0 is not a two-sided identity")
    if not np.array_equal(np.sort(arr, axis=1), np.tile(idx, (n, 1))):
        raise GroupValidationError("a row is not a permutation of element ids")
    if not np.array_equal(np.sort(arr, axis=0), np.tile(idx[:, None], (1, n))):
        raise GroupValidationError("a column is not a permutation of element ids")
    for a in range(n):
        if not np.array_equal(arr[arr[a]], arr[a][arr]):
            raise GroupValidationError(f"associativity fails at element {a}")


def group_from_elements(elements, multiply, name="G", labeler=None) -> FiniteGroup:
    """Build a FiniteGroup from hashable concrete elements and a product map.

    The identity is detected and assigned id 0; the remaining elements are
    sorted by their repr to make construction deterministic.
    """
    elements = list(elements)
    if len(elements) > MAX_ORDER:
        raise GroupValidationError(f"order {len(elements)} exceeds {MAX_ORDER}")
    identity = None
    probe = elements[0]
    for e in elements:
        if multiply(e, probe) == probe and multiply(probe, e) == probe:
            if all(multiply(e, x) == x for x in elements):
                identity = e
                break
    if identity is None:
        raise GroupValidationError("no identity element found")
    rest = sorted((e for e in elements if e != identity), key=repr)
    ordered = [identity] + rest
    index = {e: i for i, e in enumerate(ordered)}
    mul = [[index[multiply(a, b)] for b in ordered] for a in ordered]
    labels = [labeler(e) for e in ordered] if labeler else [repr(e) for e in ordered]
    return FiniteGroup(mul, name=name, labels=labels)


def group_from_permutations(gens: list[tuple[int, ...]], name="G") -> FiniteGroup:
    """Closure of permutation generators (acting on at most 16 points)."""
    if not gens:
        return FiniteGroup([[0]], name=name, labels=["()"])
    npts = len(gens[0])
    if npts > 16:
        raise GroupValidationError("permutation generators act on more than 16 points")
    for g in gens:
        if sorted(g) != list(range(npts)):
            raise GroupValidationError(f"not a permutation of 0..{npts - 1}: {g}")
    identity = tuple(range(npts))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(npts))
                if q not in seen:
                    if len(seen) >= MAX_ORDER:
                        raise GroupValidationError(
                            f"generator closure exceeds the order cap {MAX_ORDER}"
                        )
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt

    def compose(p, q):
        return tuple(p[q[i]] for i in range(npts))

    return group_from_elements(seen, compose, name=name, labeler=_cycle_label)


def _cycle_label(perm: tuple[int, ...]) -> str:
    cycles = []
    seen = set()
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + " ".join(str(i) for i in cyc) + ")")
    return "".join(cycles) if cycles else "()"


# --------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a fixed parent, stored as its sorted element ids.

    ``generators`` always generates ``elements``; when a subgroup is found
    as a set (centralizers, intersections) the whole element list stands in
    as the generating witness.
    """

    parent: FiniteGroup
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.elements or 0 not in self.elements:
            raise GroupValidationError("subgroup does not contain the identity")
        if not self.generators and len(self.elements) > 1:
            object.__setattr__(self, "generators", self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    def contains(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.parent.mul
        els = self.elements
        return all(mul[a][b] == mul[b][a] for i, a in enumerate(els) for b in els[i + 1 :])

    def as_group(self) -> FiniteGroup:
        """Relabel this subgroup as a standalone FiniteGroup."""
        index = {e: i for i, e in enumerate(self.elements)}
        mul = [
            [index[self.parent.mul[a][b]] for b in self.elements]
            for a in self.elements
        ]
        labels = [self.parent.label(e) for e in self.elements]
        return FiniteGroup(
            mul, name=f"{self.parent.name}|{self.order}", labels=labels, validated=True
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"


def closure(G: FiniteGroup, gens) -> tuple[int, ...]:
    """Sorted element ids of the subgroup generated by ``gens``."""
    mul = G.mul
    seen = {0}
    gens = [g for g in gens if g != 0]
    for g in gens:
        seen.add(g)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            row = mul[a]
            for g in gens:
                b = row[g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                c = mul[g][a]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen))


def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    gens = tuple(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise GroupValidationError(f"element id {g} out of range")
    return Subgroup(G, closure(G, gens), gens)


def subgroup_from_elements(G: FiniteGroup, elements) -> Subgroup:
    """Wrap an already-closed element set (verified) as a Subgroup."""
    elements = tuple(sorted(set(elements)))
    sub = Subgroup(G, elements, elements)
    mul = G.mul
    mask = sub.mask
    for a in elements:
        row = mul[a]
        for b in elements:
            if not (mask >> row[b]) & 1:
                raise GroupValidationError("element set is not closed")
    return sub


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,), ())


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), tuple(range(G.order)))


def mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """The subgroup generated by all commutators [h, k], h in H, k in K."""
    if H.parent is not K.parent or H.parent is not G:
        raise GroupValidationError("commutator of subgroups of different parents")
    comms = {G.commutator(h, k) for h in H.elements for k in K.elements}
    comms.discard(0)
    return Subgroup(G, closure(G, comms), tuple(sorted(comms)))


# --------------------------------------------------------------------------
# central series


@dataclass(frozen=True)
class SeriesRecord:
    """A descending central series, ordinary or p-local.

    ``terms[0]`` is the input subgroup and ``terms[i+1]`` is the next stage;
    the series stops as soon as two consecutive terms agree.
    ``nilpotency_class`` is None when the series stabilizes above the trivial
    subgroup ("infinite" class).
    """

    kind: str  # "lower-central" | "p-lower-central"
    p: int | None
    terms: tuple[Subgroup, ...]
    nilpotency_class: int | None

    @property
    def class_label(self) -> int | str:
        return "infinite" if self.nilpotency_class is None else self.nilpotency_class

    def class_value(self) -> int | float:
        return INFINITE if self.nilpotency_class is None else self.nilpotency_class


def _series_step(G: FiniteGroup, term: tuple[int, ...], base: tuple[int, ...], p: int | None):
    gens = {G.commutator(a, h) for a in term for h in base}
    if p is not None:
        gens.update(G.power(a, p) for a in term)
    gens.discard(0)
    return closure(G, gens)


def central_series(
    G: FiniteGroup, H: Subgroup, kind: str = "lower-central", p: int | None = None
) -> SeriesRecord:
    """Lower central series of H (p-variant when ``p`` is given).

    kind may be "lower-central" or "p-lower-central"; the latter requires a
    prime p and interleaves p-th powers with commutators.
    """
    if kind == "p-lower-central":
        if p is None or not is_prime(p):
            raise GroupValidationError("p-lower-central series needs a prime p")
    elif kind != "lower-central":
        raise GroupValidationError(f"unknown series kind {kind!r}")
    else:
        p = None
    terms = [H.elements]
    while True:
        nxt = _series_step(G, terms[-1], H.elements, p)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    subs = tuple(Subgroup(G, t) for t in terms)
    if terms[-1] == (0,):
        cls = len(terms) - 1
    else:
        cls = None
    return SeriesRecord(kind, p, subs, cls)


def nilpotency_class_of(
    G: FiniteGroup, elements: tuple[int, ...], p: int | None = None
) -> int | float:
    """Class of the subgroup with the given elements; INFINITE if not nilpotent.

    Bare-tuple variant of central_series used by the tuple enumerator, where
    building Subgroup objects per candidate would dominate the cost.
    """
    term = elements
    steps = 0
    while True:
        nxt = _series_step(G, term, elements, p)
        if nxt == term:
            return INFINITE if term != (0,) else steps
        term = nxt
        steps += 1
        if term == (0,):
            return steps


# --------------------------------------------------------------------------
# centralizers, conjugacy, Sylow theory


def centralizer(G: FiniteGroup, S) -> Subgroup:
    """All elements commuting with every member of S (S may be empty)."""
    mask = (1 << G.order) - 1
    for s in S:
        if not 0 <= s < G.order:
            raise GroupValidationError(f"element id {s} out of range")
        mask &= G.centralizer_masks[s]
    return Subgroup(G, mask_elements(mask))


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, mask_elements(G.center_mask))


def conjugacy_classes(G: FiniteGroup) -> tuple[list[tuple[int, ...]], list[int]]:
    """Partition of element ids into conjugacy classes, plus representatives.

    Classes are sorted by their minimal element, so the identity class comes
    first and the output is deterministic.
    """
    seen = [False] * G.order
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {G.conjugate(x, g) for g in range(G.order)}
        for y in orbit:
            seen[y] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: c[0])
    reps = [c[0] for c in classes]
    return classes, reps


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    mask = H.mask
    els = []
    for g in range(G.order):
        if all((mask >> G.conjugate(h, g)) & 1 for h in H.elements):
            els.append(g)
    return Subgroup(G, tuple(els))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    return Subgroup(G, tuple(sorted(G.conjugate(h, g) for h in H.elements)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sylow_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups of G.

    One Sylow subgroup is grown greedily: start from a cyclic subgroup of
    maximal p-power order and repeatedly adjoin a p-power-order element of
    the normalizer (such an element exists while the order is short of the
    full p-part).  The rest are its conjugates.
    """
    if not is_prime(p):
        raise GroupValidationError(f"{p} is not prime")
    vp = 0
    n = G.order
    while n % p == 0:
        vp += 1
        n //= p
    if vp == 0:
        return [trivial_subgroup(G)]
    target = p**vp

    def p_part(x: int) -> int:
        # order of the p-component of <x>
        o = G.element_orders[x]
        pe = 1
        while o % p == 0:
            o //= p
            pe *= p
        return pe

    best = max(range(G.order), key=lambda x: (p_part(x), -x))
    o = G.element_orders[best]
    seed = G.power(best, o // p_part(best))  # pure p-element of maximal order
    P = generated_subgroup(G, [seed])
    while P.order < target:
        N = normalizer(G, P)
        candidate = None
        for y in N.elements:
            if not P.contains(y) and p_part(y) == G.element_orders[y]:
                candidate = y
                break
        if candidate is None:  # adjoin the p-part of some normalizer element
            for y in N.elements:
                pp = p_part(y)
                if pp > 1:
                    z = G.power(y, G.element_orders[y] // pp)
                    if not P.contains(z):
                        candidate = z
                        break
        if candidate is None:
            raise AssertionError("Sylow growth stalled; group tables corrupt")
        P = generated_subgroup(G, list(P.generators) + [candidate])
    seen = {P.elements}
    out = [P]
    for g in range(G.order):
        Q = conjugate_subgroup(G, P, g)
        if Q.elements not in seen:
            seen.add(Q.elements)
            out.append(Q)
    out.sort(key=lambda s: s.elements)
    return out


# --------------------------------------------------------------------------
# quotients and abelian invariants


def quotient_group(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """The factor group G/N for a normal subgroup N."""
    if normalizer(G, N).order != G.order:
        raise GroupValidationError("quotient by a non-normal subgroup")
    coset_of = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        members = sorted(G.mul[x][n] for n in N.elements)
        rep_index = len(reps)
        for y in members:
            coset_of[y] = rep_index
        reps.append(members[0])
    # identity coset contains 0, and 0 is scanned first, so it has index 0
    k = len(reps)
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    labels = [G.label(r) for r in reps]
    return FiniteGroup(mul, name=f"{G.name}/N", labels=labels, validated=True)


def _generating_set(G: FiniteGroup, H: Subgroup) -> list[int]:
    gens: list[int] = []
    span = (0,)
    for x in sorted(H.elements, key=lambda e: (-G.element_orders[e], e)):
        if x not in span:
            gens.append(x)
            span = closure(G, gens)
            if len(span) == H.order:
                break
    return gens


def abelian_decomposition(H: Subgroup) -> AbelianGroup:
    """Invariant factors of an abelian subgroup.

    Presents H on a small generating set; the relation lattice is spanned by
    the rows  u_i + expr(h) - expr(g_i * h)  over all generators g_i and
    elements h, where expr(h) is any fixed expression of h as a word in the
    generators (built by BFS).  SNF of that matrix gives the decomposition.
    """
    G = H.parent
    if not H.is_abelian:
        raise GroupValidationError("abelian_decomposition of a nonabelian subgroup")
    if H.order == 1:
        return AbelianGroup()
    gens = _generating_set(G, H)
    m = len(gens)
    expr: dict[int, tuple[int, ...]] = {0: (0,) * m}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for i, g in enumerate(gens):
                t = G.mul[g][h]
                if t not in expr:
                    v = list(expr[h])
                    v[i] += 1
                    expr[t] = tuple(v)
                    nxt.append(t)
        frontier = nxt
    rows: list[dict[int, int]] = []
    for i, g in enumerate(gens):
        for h in H.elements:
            target = expr[G.mul[g][h]]
            source = expr[h]
            row = {j: source[j] - target[j] for j in range(m) if source[j] != target[j]}
            row[i] = row.get(i, 0) + 1
            if any(row.values()):
                rows.append({j: v for j, v in row.items() if v})
    return cokernel_invariants(IntegerMatrix.from_rows(rows, m))


def abelian_invariants(G: FiniteGroup, H: Subgroup) -> AbelianGroup:
    """Invariant factors of H, or of its abelianization when H is nonabelian."""
    if H.is_abelian:
        return abelian_decomposition(H)
    derived = commutator_subgroup(G, H, H)
    Hgrp = H.as_group()
    index = {e: i for i, e in enumerate(H.elements)}
    dsub = Subgroup(Hgrp, tuple(sorted(index[d] for d in derived.elements)))
    quotient = quotient_group(Hgrp, dsub)
    return abelian_decomposition(full_subgroup(quotient))


# --------------------------------------------------------------------------
# brute-force isomorphism (group orders <= 60)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> dict[int, int] | None:
    """Search for an isomorphism G -> H; None if there is none.

    Backtracking over generator images, filtered by element-order profiles.
    Deliberately restricted to order <= 60 (this is a test oracle, not an
    isomorphism engine).
    """
    if G.order != H.order:
        return None
    if G.order > 60:
        raise GroupValidationError("brute-force isomorphism limited to order <= 60")
    if sorted(G.element_orders) != sorted(H.element_orders):
        return None
    gens = _generating_set(G, full_subgroup(G))
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                t = G.mul[g][x]
                if t not in words:
                    words[t] = (i,) + words[x]
                    nxt.append(t)
        frontier = nxt

    by_order: dict[int, list[int]] = {}
    for y in range(H.order):
        by_order.setdefault(H.element_orders[y], []).append(y)

    def evaluate(images: list[int]) -> dict[int, int] | None:
        phi = {}
        for x, word in words.items():
            y = 0
            for i in reversed(word):  # word lists the outermost factor first
                y = H.mul[images[i]][y]
            phi[x] = y
        if len(set(phi.values())) != G.order:
            return None
        for a in range(G.order):
            fa = phi[a]
            ra, rfa = G.mul[a], H.mul[fa]
            for b in range(G.order):
                if phi[ra[b]] != rfa[phi[b]]:
                    return None
        return phi

    def backtrack(pos: int, images: list[int]) -> dict[int, int] | None:
        if pos == len(gens):
            return evaluate(images)
        for y in by_order.get(G.element_orders[gens[pos]], []):
            images.append(y)
            result = backtrack(pos + 1, images)
            if result is not None:
                return result
            images.pop()
        return None

    return backtrack(0, [])


# --------------------------------------------------------------------------
# group file format


def dump_group(G: FiniteGroup) -> dict:
    """JSON-ready form; reloading gives a bit-identical multiplication table."""
    return {"name": G.name, "order": G.order, "mul": [list(row) for row in G.mul]}


def load_group(data: dict) -> FiniteGroup:
    if "mul" in data:
        mul = data["mul"]
        declared = data.get("order")
        if declared is not None and declared != len(mul):
            raise GroupValidationError("declared order does not match the table")
        return FiniteGroup(mul, name=data.get("name", "G"))
    if "perm_gens" in data:
        gens = []
        points: set[int] = set()
        for cycles in data["perm_gens"]:
            for cyc in cycles:
                points.update(cyc)
        npts = max(points) + 1 if points else 1
        if npts > 16:
            raise GroupValidationError("permutations act on more than 16 points")
        for cycles in data["perm_gens"]:
            perm = list(range(npts))
            for cyc in cycles:
                for i, pt in enumerate(cyc):
                    perm[pt] = cyc[(i + 1) % len(cyc)]
            if sorted(perm) != list(range(npts)):
                raise GroupValidationError(f"overlapping cycles in {cycles}")
            gens.append(tuple(perm))
        return group_from_permutations(gens, name=data.get("name", "G"))
    raise GroupValidationError("group file needs either 'mul' or 'perm_gens'")


def dumps_group(G: FiniteGroup) -> str:
    return json.dumps(dump_group(G), separators=(",", ":"), sort_keys=True)


def loads_group(text: str) -> FiniteGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupValidationError(f"invalid JSON: {exc}") from exc
    return load_group(data)
