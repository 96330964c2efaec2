import math

import pytest

from fuscat.grp import (GroupError, Subgroup, cyclic, dihedral, direct_product, from_table,
                        parse_group, symmetric)

GROUPS = ["Z1", "Z2", "Z6", "Z2xZ2", "Z2xZ4", "S3", "D4", "S4", "Z3xZ3"]


def test_trivial_and_klein():
    assert cyclic(1).order == 1
    V = direct_product(cyclic(2), cyclic(2))
    assert V.order == 4 and V.exponent() == 2
    assert [S.order for S in V.maximal_cyclic_subgroups()] == [2, 2, 2]


def test_symmetric_three():
    S3 = symmetric(3)
    assert S3.order == 6
    assert len(S3.conjugacy_classes()) == 3
    assert S3.exponent() == 6
    assert sorted(S.order for S in S3.maximal_cyclic_subgroups()) == [2, 2, 2, 3]


def test_element_orders():
    Z6 = cyclic(6)
    assert Z6.element_order(1) == 6
    assert Z6.element_order(0) == 1
    assert Z6.maximal_cyclic_subgroups()[0].elements == tuple(range(6))


def test_centralizers():
    S3 = symmetric(3)
    transposition = 1  # permutation (1 3 2) in one-line notation
    assert S3.element_order(transposition) == 2
    assert S3.centralizer(transposition).order == 2
    Z6 = cyclic(6)
    assert all(Z6.centralizer(g).order == 6 for g in range(6))


@pytest.mark.parametrize("name", GROUPS)
def test_commuting_pairs_brute_force(name):
    G = parse_group(name)
    brute = [(a, b) for a in range(G.order) for b in range(G.order)
             if G.mul(a, b) == G.mul(b, a)]
    assert G.commuting_pairs() == brute
    assert len(brute) == sum(G.centralizer(g).order for g in range(G.order))


def test_commuting_pairs_of_s3_count():
    # |G| times the number of conjugacy classes
    assert len(symmetric(3).commuting_pairs()) == 18


@pytest.mark.parametrize("name", GROUPS)
def test_group_invariants(name):
    G = parse_group(name)
    assert G.order % G.exponent() == 0
    primes = lambda n: {p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))}
    assert primes(G.exponent()) == primes(G.order)
    maximal = G.maximal_cyclic_subgroups()
    for g in range(G.order):
        cyc = set(G.cyclic_subgroup(g).elements)
        assert any(cyc <= set(S.elements) for S in maximal)


def test_dihedral_and_symmetric_orders():
    assert dihedral(4).order == 8
    assert not dihedral(3).is_abelian()
    assert symmetric(4).exponent() == 12
    assert parse_group("D3") == dihedral(3)


def test_from_table_reports_offending_triple():
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(GroupError):
        from_table(bad)
    # a Latin square with identity that is not associative
    latin = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associativity fails at"):
        from_table(latin)


def test_subgroup_closure_checked():
    with pytest.raises(GroupError):
        Subgroup(cyclic(4), (0, 1))
    assert Subgroup(cyclic(4), (2, 0)).elements == (0, 2)


def test_parse_group_rejects_unknown():
    with pytest.raises(GroupError):
        parse_group("A5")


def test_direct_product_indexing():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and G.is_abelian()
    assert G.mul(1 * 3 + 2, 0 * 3 + 2) == 1 * 3 + 1
    assert math.lcm(2, 3) == G.exponent()
