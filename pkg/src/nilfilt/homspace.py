"""Counting admissible tuples: the finite sets underlying the filtration.

An n-tuple of group elements is *admissible at level q* when the subgroup it
generates has nilpotency class < q (for the p-local variant, p-class < q).
The counts exposed here are

* ``count_hom``        -- all admissible n-tuples,
* ``mu_count``         -- admissible tuples with no identity coordinate,
* ``filtration_count`` -- admissible tuples with at least j identity
                          coordinates,
* ``rep_orbit_count``  -- orbits of admissible tuples under simultaneous
                          conjugation (Burnside average over centralizers).

Enumeration is depth-first over tuple positions carrying the generated
subgroup along; a prefix is extended only if the extended subgroup is still
admissible (admissibility is antitone in prefix extension, so this prunes
exactly).  Both the admissibility test and the whole suffix counts are
memoized on the generated subgroup, which collapses the search to dynamic
programming over the join-reachable part of the subgroup lattice.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import GroupValidationError, GuardExceeded
from .groups import (
    FiniteGroup,
    Subgroup,
    closure,
    full_subgroup,
    is_prime,
    nilpotency_class_of,
    sylow_subgroups,
    conjugacy_classes,
    centralizer,
)

INF = math.inf


def _check_level(q, p: int | None) -> None:
    if q != INF and (not isinstance(q, int) or q < 2):
        raise GroupValidationError("q must be an integer >= 2 or infinity")
    if p is not None and not is_prime(p):
        raise GroupValidationError(f"p-local variant needs a prime, got {p}")


def _check_size_guard(G: FiniteGroup, n: int) -> None:
    if n < 0:
        raise GroupValidationError("tuple length must be >= 0")
    if n * math.log2(max(G.order, 2)) > 64:
        raise GuardExceeded(
            f"tuple space {G.order}^{n} exceeds the n*log2|G| <= 64 guard"
        )


class TupleEnumerator:
    """Memoized admissible-tuple DFS for a fixed (G, q, variant).

    Subgroups are interned by element tuple; ``extensions`` lists, join
    results, admissibility, and suffix counts are all cached, so repeated
    queries against the same enumerator are cheap.
    """

    def __init__(self, G: FiniteGroup, q, p: int | None = None):
        _check_level(q, p)
        self.G = G
        self.q = q
        self.p = p
        self._elems: list[tuple[int, ...]] = [(0,)]
        self._gens: list[tuple[int, ...]] = [()]
        self._index: dict[tuple[int, ...], int] = {(0,): 0}
        self._join: dict[tuple[int, int], int] = {}
        self._admissible: dict[int, bool] = {0: True}
        self._ext: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
        self._count_all: dict[tuple[int, int], int] = {}
        self._count_free: dict[tuple[int, int], int] = {}

    def _intern(self, elems: tuple[int, ...], gens: tuple[int, ...]) -> int:
        sid = self._index.get(elems)
        if sid is None:
            sid = len(self._elems)
            self._index[elems] = sid
            self._elems.append(elems)
            self._gens.append(gens)
        return sid

    def join(self, sid: int, g: int) -> int:
        key = (sid, g)
        result = self._join.get(key)
        if result is None:
            if (g == 0) or g in self._elems[sid]:
                result = sid
            else:
                gens = self._gens[sid] + (g,)
                result = self._intern(closure(self.G, gens), gens)
            self._join[key] = result
        return result

    def admissible(self, sid: int) -> bool:
        known = self._admissible.get(sid)
        if known is None:
            if self.q == INF and self.p is None:
                known = True
            else:
                cls = nilpotency_class_of(self.G, self._elems[sid], self.p)
                known = cls < self.q
            self._admissible[sid] = known
        return known

    def extensions(self, sid: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Elements g (with their join ids) keeping the subgroup admissible.

        The identity is always first: joining it never changes the subgroup.
        """
        cached = self._ext.get(sid)
        if cached is None:
            gs, joins = [0], [sid]
            for g in range(1, self.G.order):
                j = self.join(sid, g)
                if self.admissible(j):
                    gs.append(g)
                    joins.append(j)
            cached = (tuple(gs), tuple(joins))
            self._ext[sid] = cached
        return cached

    def is_admissible_tuple(self, entries) -> bool:
        sid = 0
        for g in entries:
            sid = self.join(sid, g)
        return self.admissible(sid)

    def count(self, n: int, identity_free: bool = False, start: int = 0) -> int:
        """Number of admissible n-tuples extending the subgroup ``start``."""
        memo = self._count_free if identity_free else self._count_all
        skip = 1 if identity_free else 0

        def rec(rem: int, sid: int) -> int:
            if rem == 0:
                return 1
            key = (rem, sid)
            got = memo.get(key)
            if got is None:
                gs, joins = self.extensions(sid)
                if rem == 1:
                    got = len(gs) - skip
                else:
                    got = sum(rec(rem - 1, j) for j in joins[skip:])
                memo[key] = got
            return got

        return rec(n, start)

    def count_min_identities(self, n: int, j: int) -> int:
        """Admissible n-tuples with at least j identity coordinates."""
        if not 0 <= j <= n:
            raise GroupValidationError("need 0 <= j <= n")
        return self._count_min_identities_from(n, 0, 0, j)

    def _count_min_identities_from(self, n: int, sid: int, have: int, j: int) -> int:
        memo: dict[tuple[int, int, int], int] = {}

        def rec(rem: int, sid: int, have: int) -> int:
            if have + rem < j:
                return 0
            if rem == 0:
                return 1
            key = (rem, sid, have)
            got = memo.get(key)
            if got is None:
                gs, joins = self.extensions(sid)
                got = rec(rem - 1, sid, min(have + 1, j))  # identity extension
                if have >= j and rem == 1:
                    got += len(gs) - 1
                else:
                    got += sum(rec(rem - 1, jj, have) for jj in joins[1:])
                memo[key] = got
            return got

        return rec(n, sid, min(have, j))

    def count_with_first(
        self, n: int, firsts, identity_free: bool, min_identities: int | None = None
    ) -> int:
        """Count admissible n-tuples whose first coordinate lies in ``firsts``.

        Used to partition work across processes; the grand total over a
        partition of first coordinates is independent of the partition.
        """
        total = 0
        for g in firsts:
            sid = self.join(0, g)
            if not self.admissible(sid):
                continue
            if min_identities is None:
                total += self.count(n - 1, identity_free, start=sid)
            else:
                total += self._count_min_identities_from(
                    n - 1, sid, 1 if g == 0 else 0, min_identities
                )
        return total


def is_hom_tuple(G: FiniteGroup, entries, q, p: int | None = None) -> bool:
    """Admissibility of a single tuple at level q (p-local when p is given).

    For the ordinary variant q = infinity imposes no constraint at all; for
    the p-local variant it asks for a finite p-class, i.e. a p-subgroup.
    """
    _check_level(q, p)
    for g in entries:
        if not 0 <= g < G.order:
            raise GroupValidationError(f"element id {g} out of range")
    if q == INF and p is None:
        return True
    cls = nilpotency_class_of(G, closure(G, entries), p)
    return cls < q


def _count_chunk(args) -> int:
    mul, q_key, p, n, identity_free, min_identities, firsts = args
    G = FiniteGroup(mul, validated=True)
    q = INF if q_key is None else q_key
    en = TupleEnumerator(G, q, p)
    return en.count_with_first(n, firsts, identity_free, min_identities)


def _parallel_count(
    G: FiniteGroup,
    n: int,
    q,
    p,
    identity_free: bool,
    jobs: int,
    min_identities: int | None = None,
) -> int:
    skip = 1 if identity_free else 0
    firsts = list(range(skip, G.order))
    chunks = [firsts[w::jobs] for w in range(jobs)]
    q_key = None if q == INF else q
    args = [
        (G.mul, q_key, p, n, identity_free, min_identities, chunk)
        for chunk in chunks
        if chunk
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        partial = list(pool.map(_count_chunk, args))
    return sum(partial)


def count_hom(G: FiniteGroup, n: int, q, p: int | None = None, jobs: int = 1) -> int:
    """Number of admissible n-tuples (all of G^n when q is infinite)."""
    _check_level(q, p)
    _check_size_guard(G, n)
    if n == 0:
        return 1
    if jobs > 1:
        return _parallel_count(G, n, q, p, identity_free=False, jobs=jobs)
    return TupleEnumerator(G, q, p).count(n)


def mu_count(G: FiniteGroup, k: int, q, p: int | None = None, jobs: int = 1) -> int:
    """Number of identity-free admissible k-tuples."""
    _check_level(q, p)
    if k < 1:
        raise GroupValidationError("mu is defined for k >= 1")
    _check_size_guard(G, k)
    if jobs > 1:
        return _parallel_count(G, k, q, p, identity_free=True, jobs=jobs)
    return TupleEnumerator(G, q, p).count(k, identity_free=True)


def filtration_count(
    G: FiniteGroup, n: int, j: int, q, p: int | None = None, jobs: int = 1
) -> int:
    """Number of admissible n-tuples with at least j identity coordinates."""
    _check_level(q, p)
    _check_size_guard(G, n)
    if not 0 <= j <= n:
        raise GroupValidationError("need 0 <= j <= n")
    if n == 0:
        return 1
    if jobs > 1:
        return _parallel_count(
            G, n, q, p, identity_free=False, jobs=jobs, min_identities=j
        )
    return TupleEnumerator(G, q, p).count_min_identities(n, j)


def stabilization_exponent(G: FiniteGroup) -> int:
    """Smallest N with the level-N tuple sets equal to all higher levels.

    Equals 1 + the maximal nilpotency class among nilpotent subgroups; the
    maximum is attained on a Sylow subgroup, so only those are inspected.
    """
    best = 0
    n = G.order
    d = 2
    primes = []
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    for p in primes:
        P = sylow_subgroups(G, p)[0]
        cls = nilpotency_class_of(G, P.elements)
        best = max(best, int(cls))
    return max(2, 1 + best)


def rep_orbit_count(G: FiniteGroup, n: int, q, p: int | None = None) -> int:
    """Orbits of admissible n-tuples under simultaneous conjugation.

    Burnside count: the tuples fixed by conjugation by g are exactly the
    admissible tuples inside the centralizer of g, and admissibility only
    depends on the generated subgroup, so each class representative
    contributes |class| * count_hom(C_G(rep), n, q).
    """
    _check_level(q, p)
    _check_size_guard(G, n)
    classes, reps = conjugacy_classes(G)
    total = 0
    for cls, rep in zip(classes, reps):
        sub = centralizer(G, [rep]).as_group()
        total += len(cls) * count_hom(sub, n, q, p)
    orbits, remainder = divmod(total, G.order)
    if remainder:
        raise AssertionError("Burnside sum not divisible by |G|; tables corrupt")
    return orbits


# --------------------------------------------------------------------------
# aggregated report


@dataclass
class CountReport:
    """All counts for one (group, q, variant) at tuple lengths 1..nmax."""

    group: str
    q: int | float
    variant: str
    lambdas: dict[int, int] = field(default_factory=dict)
    mus: dict[int, int] = field(default_factory=dict)
    s_counts: dict[tuple[int, int], int] = field(default_factory=dict)
    stabilization: int = 2

    def check_identities(self) -> None:
        """Internal consistency: binomial identity and mu = lambda - S(1)."""
        for n, lam in self.lambdas.items():
            rhs = 1 + sum(
                math.comb(n, k) * self.mus[k] for k in range(1, n + 1) if k in self.mus
            )
            if set(range(1, n + 1)) <= set(self.mus) and lam != rhs:
                raise AssertionError(f"binomial identity fails at n={n}: {lam} != {rhs}")
        for k, mu in self.mus.items():
            s1 = self.s_counts.get((k, 1))
            if s1 is not None and mu != self.lambdas[k] - s1:
                raise AssertionError(f"mu/S mismatch at k={k}")


def count_report(
    G: FiniteGroup, q, p: int | None = None, nmax: int = 4, jobs: int = 1
) -> CountReport:
    _check_level(q, p)
    _check_size_guard(G, nmax)
    en = TupleEnumerator(G, q, p)
    report = CountReport(
        group=G.name,
        q=q,
        variant="ordinary" if p is None else f"{p}-local",
        stabilization=stabilization_exponent(G),
    )
    report.lambdas[0] = 1
    for n in range(1, nmax + 1):
        report.lambdas[n] = en.count(n)
        report.mus[n] = en.count(n, identity_free=True)
        for j in range(0, n + 1):
            report.s_counts[(n, j)] = en.count_min_identities(n, j)
    report.check_identities()
    return report
