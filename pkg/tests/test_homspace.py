import math
from itertools import permutations, product

import pytest

from nilfilt.catalog import catalog_groups, parse_group_spec
from nilfilt.errors import GroupValidationError, GuardExceeded
from nilfilt.groups import centralizer, closure
from nilfilt.homspace import (
    count_hom,
    count_report,
    filtration_count,
    is_hom_tuple,
    mu_count,
    rep_orbit_count,
    stabilization_exponent,
)

INF = math.inf


def _quaternion_units(Q8):
    """(i, j, -1) style elements: two order-4 generators and the involution."""
    i = next(x for x in range(8) if Q8.element_orders[x] == 4)
    j = next(x for x in range(8) if x not in closure(Q8, [i]))
    minus_one = next(x for x in range(8) if Q8.element_orders[x] == 2)
    return i, j, minus_one


def test_is_hom_tuple_examples(groups):
    S3 = groups("S3")
    t, t2 = [x for x in range(6) if S3.element_orders[x] == 2][:2]
    assert not is_hom_tuple(S3, [t, t2], 2)
    assert is_hom_tuple(S3, [t, t2], INF)
    Q8 = groups("Q8")
    i, j, minus_one = _quaternion_units(Q8)
    assert is_hom_tuple(Q8, [i, j], 3)
    assert not is_hom_tuple(Q8, [i, j], 2)
    assert is_hom_tuple(Q8, [i, minus_one], 2)
    assert is_hom_tuple(Q8, [], 2)
    with pytest.raises(GroupValidationError):
        is_hom_tuple(Q8, [9], 2)
    with pytest.raises(GroupValidationError):
        is_hom_tuple(Q8, [1], 1)


def test_q2_matches_pairwise_commutation(groups):
    """Brute-force cross-check of the class-based test at q = 2."""
    for name in ("S3", "D8", "Q8", "A4", "D12", "S4"):
        G = groups(name)
        for tup in product(range(G.order), repeat=2):
            commuting = G.mul[tup[0]][tup[1]] == G.mul[tup[1]][tup[0]]
            assert is_hom_tuple(G, tup, 2) == commuting
    S4 = groups("S4")
    for tup in product(range(0, 24, 5), repeat=3):
        commuting = all(
            S4.mul[a][b] == S4.mul[b][a] for a in tup for b in tup
        )
        assert is_hom_tuple(S4, tup, 2) == commuting


def test_tuple_symmetries(groups):
    S4 = groups("S4")
    for tup in [(1, 2, 3), (4, 8, 15), (7, 7, 9), (0, 5, 20)]:
        value = is_hom_tuple(S4, tup, 2)
        for perm in permutations(tup):
            assert is_hom_tuple(S4, perm, 2) == value
        for g in (1, 5, 17):
            conj = [S4.conjugate(x, g) for x in tup]
            assert is_hom_tuple(S4, conj, 2) == value


def test_count_hom_examples(groups):
    assert count_hom(groups("C2xC2"), 3, 2) == 64
    assert count_hom(groups("Q8"), 2, 2) == 40
    for name in ("Q8", "A5", "S4"):
        G = groups(name)
        assert count_hom(G, 1, 2) == G.order
        assert count_hom(G, 0, 2) == 1


def test_count_guard():
    with pytest.raises(GuardExceeded):
        count_hom(parse_group_spec("C2"), 100, 2)


def test_mu_examples(groups):
    A5 = groups("A5")
    for k in (1, 2, 3, 4):
        assert mu_count(A5, k, 2) == 5 * 3**k + 10 * 2**k + 6 * 4**k
    assert mu_count(groups("Q8"), 2, 2) == 25
    for k in (1, 2, 3):
        assert mu_count(groups("C12"), k, 2) == 11**k


def test_filtration_counts(groups):
    Q8 = groups("Q8")
    assert filtration_count(Q8, 2, 2, 2) == 1
    assert filtration_count(Q8, 2, 1, 2) == 15
    A5 = groups("A5")
    assert filtration_count(A5, 2, 1, 2) == 119
    assert filtration_count(A5, 2, 0, 2) == count_hom(A5, 2, 2)
    # cross-check against the binomial expansion over exact identity counts
    for name in ("Q8", "S4", "D12"):
        G = groups(name)
        mus = {k: mu_count(G, k, 2) for k in range(1, 4)}
        mus[0] = 1
        for n in (2, 3):
            for j in range(n + 1):
                expected = sum(
                    math.comb(n, t) * mus[n - t] for t in range(j, n + 1)
                )
                assert filtration_count(G, n, j, 2) == expected, (name, n, j)


def test_binomial_identity_small(groups):
    for name in ("Q8", "S4", "A5", "Heis3", "F21"):
        G = groups(name)
        for q in (2, 3):
            mus = {k: mu_count(G, k, q) for k in range(1, 5)}
            for n in range(5):
                expected = 1 + sum(
                    math.comb(n, k) * mus[k] for k in range(1, n + 1)
                )
                assert count_hom(G, n, q) == expected


def test_monotonicity_and_stabilization(groups):
    for name in ("S4", "Q8", "D12", "A4"):
        G = groups(name)
        N = stabilization_exponent(G)
        for n in (1, 2, 3):
            values = [count_hom(G, n, q) for q in (2, 3, 4, 5)]
            assert values == sorted(values)
            stable = [count_hom(G, n, q) for q in range(N, N + 3)]
            assert len(set(stable)) == 1


def test_stabilization_exponent(groups):
    assert stabilization_exponent(groups("C2xC2")) == 2
    assert stabilization_exponent(groups("C12")) == 2
    assert stabilization_exponent(groups("S4")) == 3
    assert stabilization_exponent(groups("Q8")) == 3
    assert stabilization_exponent(groups("A5")) == 2
    assert stabilization_exponent(groups("C1")) == 2
    assert stabilization_exponent(groups("D16")) == 4  # D16 has class 3


def test_p_local_variant(groups):
    Q8 = groups("Q8")
    assert count_hom(Q8, 1, 2, p=2) == 2  # identity and the involution
    assert mu_count(Q8, 1, 2, p=2) == 1
    S3 = groups("S3")
    assert count_hom(S3, 1, 2, p=3) == 3
    # q=2 p-local admissibility = generates an elementary abelian p-group
    S4 = groups("S4")
    for tup in product(range(24), repeat=2):
        sub = closure(S4, tup)
        elem_ab = all(
            S4.mul[x][y] == S4.mul[y][x] for x in sub for y in sub
        ) and all(S4.element_orders[x] in (1, 2) for x in sub)
        assert is_hom_tuple(S4, tup, 2, p=2) == elem_ab
    # p-local q=inf admissibility = generates a p-group
    cnt = sum(
        1 for a in range(6) for b in range(6) if is_hom_tuple(S3, [a, b], INF, p=2)
    )
    assert count_hom(S3, 2, INF, p=2) == cnt == 10


def test_tc_cover_count_identity(groups):
    """lambda_n(2,G) = 1 + sum over the cover of (lambda_n(2,C) - 1).

    Holds for TC groups with trivial center, where the covering centralizers
    pairwise intersect trivially (with a nontrivial center the identity
    overcounts the shared central tuples).
    """
    for name in ("A5", "D6", "D10", "F21"):
        G = groups(name)
        cents = {}
        zmask = G.center_mask
        for x in range(1, G.order):
            if not (zmask >> x) & 1:
                C = centralizer(G, [x])
                cents[C.elements] = C
        for n in (1, 2, 3):
            total = 1 + sum(
                count_hom(C.as_group(), n, 2) - 1 for C in cents.values()
            )
            assert total == count_hom(G, n, 2)


def test_rep_orbit_count(groups):
    assert rep_orbit_count(groups("S3"), 1, 2) == 3
    assert rep_orbit_count(groups("C2xC2"), 3, 2) == 64
    Q8 = groups("Q8")
    computed = rep_orbit_count(Q8, 2, 2)
    seen, orbits = set(), 0
    for a in range(8):
        for b in range(8):
            if not is_hom_tuple(Q8, [a, b], 2) or (a, b) in seen:
                continue
            orbits += 1
            for g in range(8):
                seen.add((Q8.conjugate(a, g), Q8.conjugate(b, g)))
    assert computed == orbits == 22


def test_jobs_are_deterministic(groups):
    A5 = groups("A5")
    assert count_hom(A5, 3, 2, jobs=3) == count_hom(A5, 3, 2, jobs=1)
    assert mu_count(A5, 3, 2, jobs=2) == mu_count(A5, 3, 2)
    assert filtration_count(A5, 3, 1, 2, jobs=2) == filtration_count(A5, 3, 1, 2)


def test_count_report(groups):
    rep = count_report(groups("A5"), 2, nmax=4)
    assert rep.lambdas[0] == 1 and rep.lambdas[1] == 60
    assert rep.mus[2] == 181
    assert rep.s_counts[(2, 1)] == 119
    assert rep.stabilization == 2
    rep.check_identities()
