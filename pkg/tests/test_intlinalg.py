import random

import pytest

from nilfilt.groups import Subgroup, sylow_subgroups, abelian_decomposition
from nilfilt.catalog import parse_group_spec
from nilfilt.intlinalg import (
    AbelianGroup,
    IntegerMatrix,
    canonical_chain,
    cokernel_invariants,
    determinant,
    matrix_rank,
    smith_normal_form,
    snf_diagonal,
)
from nilfilt.verify import _oracle_snf_diagonal


def test_snf_gcd_forcing():
    S, U, V = smith_normal_form(IntegerMatrix.from_dense([[2, 0], [0, 3]]))
    assert S.diagonal() == [1, 6]


def test_snf_zero_matrix():
    A = IntegerMatrix(3, 2)
    S, U, V = smith_normal_form(A)
    assert S.is_zero()
    assert U.entries == IntegerMatrix.identity(3).entries
    assert V.entries == IntegerMatrix.identity(2).entries


def test_snf_empty_shapes():
    assert snf_diagonal(IntegerMatrix(0, 5)) == []
    assert snf_diagonal(IntegerMatrix(5, 0)) == []
    assert cokernel_invariants(IntegerMatrix(0, 3)) == AbelianGroup(3)


@pytest.mark.parametrize("seed", [1, 2])
def test_snf_random_oracle(seed):
    rng = random.Random(seed)
    for _ in range(120):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        dense = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        A = IntegerMatrix.from_dense(dense)
        S, U, V = smith_normal_form(A)
        # transforms are unimodular and reproduce S exactly
        assert (U @ A @ V).entries == S.entries
        assert abs(determinant(U)) == 1
        assert abs(determinant(V)) == 1
        d_dense = [v for v in S.diagonal() if v]
        for a, b in zip(d_dense, d_dense[1:]):
            assert b % a == 0
        assert d_dense == snf_diagonal(A)
        assert d_dense == _oracle_snf_diagonal(dense)


def test_canonical_chain_keeps_rank():
    assert canonical_chain([2, 3]) == [1, 6]
    assert canonical_chain([4, 6]) == [2, 12]
    assert canonical_chain([1, 1, 5]) == [1, 1, 5]
    assert canonical_chain([0, 7]) == [7]


def test_cokernel_examples():
    assert cokernel_invariants(IntegerMatrix.from_dense([[2]])) == AbelianGroup(0, (2,))
    # relations 2v=0, 4e_i=0, v+2e_i=0 on basis (v,e1,e2,e3)
    rows = [{0: 2}, {1: 4}, {2: 4}, {3: 4}, {0: 1, 1: 2}, {0: 1, 2: 2}, {0: 1, 3: 2}]
    assert cokernel_invariants(IntegerMatrix.from_rows(rows, 4)) == AbelianGroup(
        0, (2, 2, 4)
    )


def test_abelian_group_canonicality():
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))  # not a divisibility chain
    with pytest.raises(ValueError):
        AbelianGroup(0, (1, 2))
    g = AbelianGroup.from_diagonal([6, 4])
    assert g == AbelianGroup(0, (2, 12))
    assert g.order == 24
    assert str(AbelianGroup(1, (2,))) == "Z x C2"


def test_abelian_decomposition_examples():
    assert abelian_decomposition(
        _full(parse_group_spec("C2xC2"))
    ) == AbelianGroup(0, (2, 2))
    assert abelian_decomposition(_full(parse_group_spec("C12"))) == AbelianGroup(
        0, (12,)
    )
    G = parse_group_spec("SL2_8")
    syl3 = sylow_subgroups(G, 3)[0]
    assert abelian_decomposition(syl3) == AbelianGroup(0, (9,))


def test_matrix_rank_and_matmul():
    A = IntegerMatrix.from_dense([[1, 2], [2, 4], [0, 0]])
    assert matrix_rank(A) == 1
    B = IntegerMatrix.from_dense([[1], [1]])
    assert (A @ B).to_dense() == [[3], [6], [0]]


def test_snf_transforms_at_dimension_50():
    """Unimodularity of the transforms is verified up to dimension 50."""
    rng = random.Random(5)
    dense = [
        [rng.randint(-3, 3) if rng.random() < 0.2 else 0 for _ in range(50)]
        for _ in range(40)
    ]
    A = IntegerMatrix.from_dense(dense)
    S, U, V = smith_normal_form(A)
    assert (U @ A @ V).entries == S.entries
    assert abs(determinant(U)) == 1
    assert abs(determinant(V)) == 1
    d = [v for v in S.diagonal() if v]
    for a, b in zip(d, d[1:]):
        assert b % a == 0


def _full(G):
    return Subgroup(G, tuple(range(G.order)))
