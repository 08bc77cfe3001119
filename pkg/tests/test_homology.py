import math

import pytest

from nilfilt.catalog import catalog_groups, parse_group_spec
from nilfilt.errors import GroupValidationError, GuardExceeded
from nilfilt.groups import abelian_invariants, full_subgroup
from nilfilt.homology import (
    _admissible_pairs,
    build_chain_complex,
    h1_via_Iq,
    homology,
    induced_h1_map,
    tc_h1_via_sequence_III,
    tc_h1_wedge,
)
from nilfilt.intlinalg import AbelianGroup
from nilfilt.nilposet import colimit_presentation, poset_graph

INF = math.inf


def _ab(*torsion):
    return AbelianGroup(0, tuple(torsion))


def test_basis_sizes(groups):
    C = build_chain_complex(groups("Q8"), 2, "B", 4)
    assert C.basis_sizes() == [1, 7, 25, 79, 241]
    C = build_chain_complex(groups("C2"), INF, "B", 4)
    assert C.basis_sizes() == [1, 1, 1, 1, 1]
    C = build_chain_complex(groups("A5"), 2, "B", 3)
    assert C.basis_sizes() == [1, 59, 181, 599]
    CE = build_chain_complex(groups("Q8"), 2, "E", 2)
    assert CE.basis_sizes() == [8, 56, 200]


def test_z2_boundary_alternates(groups):
    C = build_chain_complex(groups("C2"), INF, "B", 4)
    assert C.boundaries[1].is_zero()
    assert C.boundaries[2].to_dense() == [[2]]
    assert C.boundaries[3].is_zero()
    assert C.boundaries[4].to_dense() == [[2]]


def test_boundary_guard():
    # mu_5(2, C3xC9) = 26^5 is already past the basis guard; the guard must
    # trip before any tuples are materialized (this returns fast)
    with pytest.raises(GuardExceeded):
        build_chain_complex(parse_group_spec("C3xC9"), 2, "B", 5)
    with pytest.raises(GuardExceeded):
        build_chain_complex(parse_group_spec("A5"), 2, "E", 5)


def test_boundary_squares_to_zero(groups):
    for name, q, space, dmax in (
        ("Q8", 2, "B", 4), ("S4", 3, "B", 3), ("S4", 2, "E", 2),
        ("C12", INF, "B", 3), ("F21", 2, "E", 2),
    ):
        C = build_chain_complex(groups(name), q, space, dmax)
        for d in range(2, dmax + 1):
            assert (C.boundaries[d - 1] @ C.boundaries[d]).is_zero()
        for d in range(1, dmax + 1):
            # accumulated face coefficients stay within the face count
            assert all(abs(v) <= d + 1 for v in C.boundaries[d].entries.values())


def test_h0_is_z(groups):
    for name in ("Q8", "S4", "C12"):
        for space in ("B", "E"):
            C = build_chain_complex(groups(name), 2, space, 1)
            assert homology(C, 0).homology == AbelianGroup(1)


def test_q8_homology_all_methods(groups):
    Q8 = groups("Q8")
    C = build_chain_complex(Q8, 2, "B", 4)
    expected = _ab(2, 2, 4)
    assert homology(C, 1).homology == expected
    assert homology(C, 2).homology == AbelianGroup()
    assert homology(C, 3).homology == expected
    assert h1_via_Iq(Q8, 2).homology == expected
    assert tc_h1_via_sequence_III(Q8).homology == expected


def test_h1_via_iq_examples(groups):
    assert h1_via_Iq(groups("C12"), 2).homology == _ab(12)
    assert h1_via_Iq(groups("S3"), INF).homology == _ab(2)
    assert h1_via_Iq(groups("S4"), INF).homology == _ab(2)


def test_homology_degree_range(groups):
    C = build_chain_complex(groups("Q8"), 2, "B", 2)
    with pytest.raises(GroupValidationError):
        homology(C, 2)  # needs boundary 3


def test_sequence_iii_matches_direct(groups):
    for name in ("Q8", "D6", "D8", "Q16", "F21", "Heis3", "A5"):
        G = groups(name)
        assert tc_h1_via_sequence_III(G).homology == h1_via_Iq(G, 2).homology, name


def test_wedge_formula_trivial_center(groups):
    for name in ("A5", "D6", "F21"):
        G = groups(name)
        assert tc_h1_wedge(G).homology == h1_via_Iq(G, 2).homology, name
    with pytest.raises(GroupValidationError):
        tc_h1_wedge(groups("Q8"))  # nontrivial center


def test_e_space_h1_is_free_of_cover_rank(groups):
    """H_1 of space E is free of the rank given by the cover invariants."""
    from nilfilt.nilposet import tc_invariants

    for name in ("Q8", "D6"):
        G = groups(name)
        CE = build_chain_complex(G, 2, "E", 2)
        expected_rank = tc_invariants(G).free_rank
        assert homology(CE, 1).homology == AbelianGroup(expected_rank), name


def test_induced_h1_map(groups):
    result = induced_h1_map(groups("A5"), 2)
    assert result.cokernel.is_trivial and not result.feit_thompson_flag
    result = induced_h1_map(groups("F21"), 2)
    assert result.cokernel == _ab(3) and result.feit_thompson_flag
    result = induced_h1_map(groups("Heis3"), 2)
    assert result.cokernel == _ab(3, 3) and result.feit_thompson_flag
    # even-order group with nontrivial abelianization: flag stays off
    result = induced_h1_map(groups("S4"), 2)
    assert result.cokernel == _ab(2) and not result.feit_thompson_flag


def test_q_infinity_sanity(groups):
    for name in ("S3", "Q8", "A4"):
        G = groups(name)
        assert h1_via_Iq(G, INF).homology == abelian_invariants(
            G, full_subgroup(G)
        )
    C = build_chain_complex(groups("C4"), INF, "B", 3)
    assert homology(C, 2).homology == AbelianGroup()
    C = build_chain_complex(groups("C2xC2"), INF, "B", 3)
    assert homology(C, 2).homology == _ab(2)  # Schur multiplier


def test_h1_surjectivity_chain(groups):
    """Relations only grow with q, so successive H1 orders divide down."""
    for name in ("S4", "SL2_3", "A4", "D16"):
        G = groups(name)
        levels = [2, 3, 4, INF]
        pair_sets = [set(_admissible_pairs(G, q)) for q in levels]
        for small, large in zip(pair_sets, pair_sets[1:]):
            assert small <= large
        orders = [h1_via_Iq(G, q).homology.order for q in levels]
        for big, small in zip(orders, orders[1:]):
            assert big % small == 0, (name, orders)


def test_tree_case_h1_matches_colimit_abelianization(groups):
    for name, q in (("Q8", 2), ("D6", 2), ("D12", 2), ("S4", 3)):
        G = groups(name)
        assert poset_graph(G, q).is_tree
        pres = colimit_presentation(G, q)
        assert pres.abelianization == h1_via_Iq(G, q).homology, name


def test_torsion_divides_group_order(groups):
    for name, G in catalog_groups(30):
        if G.order == 1:
            continue
        C = build_chain_complex(G, 2, "B", 3)
        for i in (1, 2):
            h = homology(C, i).homology
            assert h.rank == 0
            for d in h.torsion:
                for p in _prime_factors(d):
                    assert G.order % p == 0, (name, i, d)


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


def test_json_shape(groups):
    result = h1_via_Iq(groups("Q8"), 2)
    data = result.to_json_dict()
    assert data == {
        "group": "Q8", "q": 2, "space": "B", "i": 1,
        "rank": 0, "torsion": [2, 2, 4], "method": "Iq-presentation",
    }
    C = build_chain_complex(groups("S3"), INF, "B", 2)
    assert homology(C, 1).to_json_dict()["q"] == "inf"
