import math
from collections import Counter
from fractions import Fraction

import pytest

from nilfilt.catalog import catalog_groups, parse_group_spec
from nilfilt.errors import GuardExceeded, NotTransitivelyCommutative
from nilfilt.groups import (
    abelian_decomposition,
    center,
    central_series,
    conjugate_subgroup,
    find_isomorphism,
    generated_subgroup,
)
from nilfilt.intlinalg import AbelianGroup
from nilfilt.nilposet import (
    centralizer_cover,
    character_M2,
    colimit_presentation,
    is_tc,
    maximal_nil_subgroups,
    nil_family,
    poset_graph,
    tc_conditions,
    tc_invariants,
)

INF = math.inf


def test_nil_family_q8(groups):
    fam = nil_family(groups("Q8"), 2)
    assert [m.order for m in fam.members] == [4, 4, 4, 2, 1]
    assert len(fam.maximal) == 3 and all(m.order == 4 for m in fam.maximal)


def test_nil_family_closure_properties(groups):
    """Conjugation-closed and subgroup-closed, with the trivial subgroup."""
    for name, q in (("S4", 2), ("S4", 3), ("Q8", 2), ("A4", 2)):
        G = groups(name)
        fam = nil_family(G, q)
        members = {m.elements for m in fam.members}
        assert (0,) in members
        for m in fam.members:
            for g in range(0, G.order, 3):
                assert conjugate_subgroup(G, m, g).elements in members
            for a in m.elements:
                for b in m.elements:
                    assert generated_subgroup(G, [a, b]).elements in members


def test_nil_family_abelian_is_all_subgroups(groups):
    fam = nil_family(groups("C12"), 2)
    assert sorted(m.order for m in fam.members) == [1, 2, 3, 4, 6, 12]


def test_nil_family_guard():
    with pytest.raises(GuardExceeded):
        nil_family(parse_group_spec("SL2_8"), 2)


def test_maximal_members(groups):
    assert sorted(m.order for m in maximal_nil_subgroups(groups("S4"), 3)) == [
        3, 3, 3, 3, 8, 8, 8,
    ]
    counts = Counter(m.order for m in maximal_nil_subgroups(groups("A5"), 2))
    assert counts == Counter({3: 10, 4: 5, 5: 6})
    counts = Counter(m.order for m in maximal_nil_subgroups(groups("SL2_8"), 2))
    assert counts == Counter({7: 36, 8: 9, 9: 28})
    assert maximal_nil_subgroups(groups("C12"), 2) == [
        generated_subgroup(groups("C12"), list(range(12)))
    ]
    # q = inf puts the whole group at the top
    assert [m.order for m in maximal_nil_subgroups(groups("S4"), INF)] == [24]


def test_maximal_members_have_maximal_class(groups):
    for name, q in (("S4", 3), ("D16", 3), ("SL2_3", 2)):
        G = groups(name)
        for M in maximal_nil_subgroups(G, q):
            record = central_series(G, M)
            assert record.nilpotency_class is not None
            assert record.nilpotency_class < q


def test_poset_graph_shapes(groups):
    g = poset_graph(groups("Q8"), 2)
    assert g.is_tree and len(g.vertices) == 4 and len(g.edges) == 3
    g = poset_graph(groups("S4"), 3)
    assert g.is_tree and len(g.vertices) == 9 and len(g.edges) == 8
    inter_orders = sorted(v.order for v in g.vertices)
    assert inter_orders == [1, 3, 3, 3, 3, 4, 8, 8, 8]
    assert poset_graph(groups("C12"), 2).is_tree
    assert not poset_graph(groups("S4"), 2).is_tree
    # TC groups always give a star at q=2
    for name in ("D6", "D8", "Q16", "F21", "Heis3", "A5"):
        assert poset_graph(groups(name), 2).is_tree, name


def test_is_tc(groups):
    verdict, witness = is_tc(groups("S4"))
    assert not verdict
    from nilfilt.groups import centralizer

    assert not centralizer(groups("S4"), [witness]).is_abelian
    for name in ("D6", "D8", "D10", "D12", "D14", "D16", "Q8", "Q16",
                 "SL2_4", "SL2_8", "Heis3", "F21", "C12"):
        assert is_tc(groups(name))[0], name


def test_tc_conditions_agree(groups):
    for name, G in catalog_groups(60):
        conds = tc_conditions(G)
        assert len(set(conds.values())) == 1, (name, conds)
        if not G.is_abelian:
            assert conds["a"] == is_tc(G)[0]


def test_tc_maximal_abelians_meet_in_center(groups):
    for name in ("Q8", "D8", "Q16", "A5", "F21", "Heis3"):
        G = groups(name)
        zset = set(center(G).elements)
        cover = centralizer_cover(G)
        for i, (_, A) in enumerate(cover):
            for _, B in cover[i + 1 :]:
                assert set(A.elements) & set(B.elements) == zset, name


def test_centralizer_cover(groups):
    assert len(centralizer_cover(groups("A5"))) == 21
    assert len(centralizer_cover(groups("D6"))) == 4
    assert len(centralizer_cover(groups("Q8"))) == 3
    assert len(centralizer_cover(groups("SL2_8"))) == 73
    with pytest.raises(NotTransitivelyCommutative):
        centralizer_cover(groups("S4"))


def test_tc_trivial_center_sylow_structure(groups):
    """Maximal abelians of a trivial-center TC group are products of Sylows."""
    from nilfilt.groups import sylow_subgroups

    for name in ("A5", "SL2_8", "D6"):
        G = groups(name)
        assert center(G).order == 1
        for _, C in centralizer_cover(G):
            order = C.order
            for p in set(_prime_factors(order)):
                pe = 1
                while order % (pe * p) == 0:
                    pe *= p
                assert any(
                    set(s.elements) <= set(C.elements) and s.order == pe
                    for s in sylow_subgroups(G, p)
                ), (name, C.order, p)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def test_tc_invariants(groups):
    assert tc_invariants(groups("D6")).free_rank == 8
    assert tc_invariants(groups("Q8")).free_rank == 3
    report = tc_invariants(groups("A5"))
    assert report.free_rank == 854
    assert sorted((str(inv), m) for inv, m in report.wedge) == sorted(
        [("C2 x C2", 5), ("C3", 10), ("C5", 6)]
    )
    for n, expected in ((3, 8), (5, 24), (7, 48)):
        assert tc_invariants(groups(f"D{2*n}")).free_rank == expected
    for n, expected in ((4, 3), (6, 8)):
        assert tc_invariants(groups(f"D{2*n}")).free_rank == expected
    rep = tc_invariants(groups("Q8"))
    assert rep.chi == Fraction(-1, 4)
    assert rep.free_rank == 1 - rep.chi * 8
    with pytest.raises(NotTransitivelyCommutative):
        tc_invariants(groups("S4"))


def test_colimit_presentations(groups):
    pres = colimit_presentation(groups("Q8"), 2)
    assert pres.abelianization == AbelianGroup(0, (2, 2, 4))
    assert pres.surjects
    assert len(pres.generators) == 9
    pres = colimit_presentation(groups("C12"), 2)
    assert pres.abelianization == AbelianGroup(0, (12,))
    pres = colimit_presentation(groups("S4"), 3)
    assert pres.surjects
    assert len(pres.generators) == 3 * 7 + 4 * 2
    text = pres.text()
    assert text.startswith("gens: ") and " ; rels: " in text


def test_character_values(groups):
    D6 = groups("D6")
    cf = character_M2(D6)
    assert cf.values[0] == 8
    by_order = {D6.element_orders[rep]: val
                for rep, val in zip(cf.representatives, cf.values)}
    assert by_order == {1: 8, 2: -2, 3: -1}
    assert cf.kernel_elements() == center(D6).elements
    cfq = character_M2(groups("Q8"))
    assert cfq.values[0] == 3
    assert cfq.kernel_elements() == center(groups("Q8")).elements
    cfa = character_M2(groups("A5"))
    assert cfa.values[0] == 854 and cfa.kernel_elements() == (0,)
    with pytest.raises(NotTransitivelyCommutative):
        character_M2(groups("S4"))


def test_s4_d8_members_isomorphism(groups):
    S4 = groups("S4")
    eights = [M for M in maximal_nil_subgroups(S4, 3) if M.order == 8]
    D8 = groups("D8")
    assert all(find_isomorphism(M.as_group(), D8) is not None for M in eights)
    inters = {
        tuple(sorted(set(a.elements) & set(b.elements)))
        for a in eights
        for b in eights
        if a is not b
    }
    assert len(inters) == 1
    from nilfilt.groups import Subgroup

    K = Subgroup(S4, next(iter(inters)))
    assert abelian_decomposition(K) == AbelianGroup(0, (2, 2))
