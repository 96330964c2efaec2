import math

import numpy as np
import pytest

from fuscat import cocycle as cc
from fuscat.cyclo import one, root_of_unity
from fuscat.grp import GroupError, Subgroup, cyclic, parse_group, symmetric


def test_omega_t_on_z2():
    w = cc.omega_t(2, 1)
    x = 1
    for a in range(2):
        for b in range(2):
            for c in range(2):
                expected = -1 if (a, b, c) == (x, x, x) else 1
                assert w(a, b, c) == expected


def test_omega_t_values():
    assert cc.omega_t(3, 1)(1, 2, 1) == root_of_unity(9, 3)
    assert cc.omega_t(3, 1)(1, 2, 1) == root_of_unity(3, 1)
    assert not cc.omega_t(5, 0).exponents.any()


def test_omega_t_direct_formula():
    # evaluate the defining formula with explicit bracket arithmetic
    for N in (2, 3, 4, 6):
        for t in range(N):
            w = cc.omega_t(N, t)
            for l in range(N):
                for m in range(N):
                    for n in range(N):
                        k = t * l * (m + n - (m + n) % N)
                        assert w(l, m, n) == root_of_unity(N * N, k)


@pytest.mark.parametrize("N", range(1, 13))
def test_omega_t_is_cocycle(N):
    for t in range(N):
        assert cc.check_cocycle(cc.omega_t(N, t))


def test_perturbed_table_fails():
    G = cyclic(2)
    e = np.zeros((2, 2, 2), dtype=np.int64)
    e[1, 1, 1] = 1
    assert not cc.check_cocycle(cc.Cocycle3(G, 4, e))
    with pytest.raises(cc.CocycleError, match="cocycle condition fails"):
        cc.Cocycle3(G, 4, e).validated()


def test_unnormalized_table_rejected():
    e = np.zeros((2, 2, 2), dtype=np.int64)
    e[0, 1, 1] = 1
    assert not cc.check_cocycle(cc.Cocycle3(cyclic(2), 2, e))


@pytest.mark.parametrize("name", ["Z3", "Z4", "Z2xZ2", "S3", "D4"])
def test_coboundaries_are_cocycles(name):
    G = parse_group(name)
    rng = np.random.default_rng(1)
    zero_beta = cc.Cochain2(G, 5, np.zeros((G.order,) * 2, dtype=np.int64))
    assert not cc.coboundary(zero_beta).exponents.any()
    for _ in range(5):
        beta = cc.random_cochain2(G, 12, rng)
        assert cc.check_cocycle(cc.coboundary(beta))
        assert cc.is_coboundary(cc.coboundary(beta)) is not None
        assert cc.class_order(cc.coboundary(beta)) == 1


@pytest.mark.parametrize("name", ["Z4", "Z2xZ2", "S3"])
def test_d_of_1_cochain_is_2_cocycle(name):
    G = parse_group(name)
    rng = np.random.default_rng(2)
    alpha = rng.integers(0, 7, G.order)
    alpha[0] = 0
    d = cc.coboundary1(G, alpha, 7)
    T = G.array
    n = G.order
    a, b, c = np.arange(n)[:, None, None], np.arange(n)[None, :, None], np.arange(n)[None, None, :]
    assert not ((d[b, c] - d[T[a, b], c] + d[a, T[b, c]] - d[a, b]) % 7).any()


def test_is_coboundary_witness():
    G = cyclic(3)
    triv = cc.trivial(G, 9)
    assert cc.is_coboundary(triv) is not None
    assert cc.is_coboundary(cc.omega_t(2, 1)) is None
    rng = np.random.default_rng(0)
    w = cc.coboundary(cc.random_cochain2(symmetric(3), 6, rng))
    beta = cc.is_coboundary(w)
    assert cc.coboundary(beta) == w


@pytest.mark.parametrize("N", range(1, 9))
def test_class_order_of_generator(N):
    assert cc.class_order(cc.omega_t(N, 1)) == N


@pytest.mark.parametrize("N", range(1, 11))
def test_class_order_of_omega_t(N):
    for t in range(N):
        assert cc.class_order(cc.omega_t(N, t)) == N // math.gcd(N, t)


def test_class_order_examples():
    assert cc.class_order(cc.omega_t(6, 2)) == 3
    assert cc.class_order(cc.trivial(symmetric(3))) == 1


def test_class_order_independent_of_modulus():
    w = cc.omega_t(2, 1)
    assert cc.class_order(w.lift(16)) == 2
    assert cc.class_order(w ** 2) == 1


def test_class_order_uses_finer_cochains():
    # beta(a, b) = zeta_4^(a1 b2) on Z2 x Z2 has a mu_2-valued coboundary that is not the
    # coboundary of any mu_2-valued cochain; it must still count as trivial
    G = parse_group("Z2xZ2")
    n = G.order
    bit1 = [g // 2 for g in range(n)]
    bit2 = [g % 2 for g in range(n)]
    beta = cc.Cochain2(G, 4, [[bit1[a] * bit2[b] for b in range(n)] for a in range(n)])
    d = cc.coboundary(beta)
    assert not (d.exponents % 2).any()
    w = cc.Cocycle3(G, 2, d.exponents // 2).validated()
    assert cc._solve_d2(G, cc._coords(w.exponents), 2) is None
    assert cc.class_order(w) == 1
    witness = cc.is_coboundary(w)
    assert witness.modulus == 8 and cc.coboundary(witness) == w


def test_class_order_gauge_invariant():
    rng = np.random.default_rng(5)
    for name, m in [("Z6", 36), ("S3", 6), ("Z2xZ2", 4)]:
        G = parse_group(name)
        for w in cc.cohomology_basis(G, G.order).representatives:
            k = cc.class_order(w)
            for _ in range(10):
                beta = cc.random_cochain2(G, m, rng)
                assert cc.class_order(w * cc.coboundary(beta)) == k


def test_restrict_examples():
    G = cyclic(4)
    assert not cc.restrict(cc.omega_t(4, 1), Subgroup(G, (0,))).exponents.any()
    res = cc.restrict(cc.omega_t(4, 1), Subgroup(G, (0, 2)))
    assert res.modulus == 16
    # on {0, 2} the only nontrivial value is omega(2, 2, 2) = zeta_16^8 = -1, which is
    # the generator of H^3(Z/2) transported; both routes give order 2
    assert res(1, 1, 1) == -1
    assert cc.class_order(res) == 2
    assert cc.eps_invariant(cc.omega_t(4, 1), 2) == -1
    assert cc.cohomologous(cc.transport(res, [0, 1], cyclic(2)), cc.omega_t(2, 1))


def test_transport():
    w = cc.omega_t(5, 2)
    G = w.group
    assert cc.transport(w, range(5), G) == w
    # multiplication by 2 is an automorphism of Z/5
    moved = cc.transport(w, [2 * g % 5 for g in range(5)], G)
    assert cc.check_cocycle(moved)
    assert cc.class_order(moved) == cc.class_order(w)
    with pytest.raises(GroupError):
        cc.transport(w, [0, 1, 1, 3, 4], G)
    with pytest.raises(GroupError):
        cc.transport(cc.omega_t(4, 1), [0, 2, 1, 3], cyclic(4))


def test_transport_preserves_class_order_on_s3():
    S3 = symmetric(3)
    w = cc.cohomology_basis(S3, 6).representatives[0]
    # conjugation by the element at index 1 is an automorphism
    inv = S3.inverse
    conj = [S3.mul(S3.mul(1, g), inv[1]) for g in range(6)]
    assert cc.class_order(cc.transport(w, conj, S3)) == cc.class_order(w) == 6


def test_eps_invariant_examples():
    for N in range(1, 9):
        for t in range(N):
            assert cc.eps_invariant(cc.omega_t(N, t), 1 % N) == root_of_unity(N, t)
    G = symmetric(3)
    assert all(cc.eps_invariant(cc.trivial(G), g) == 1 for g in range(6))
    e = cc.eps_invariant(cc.omega_t(6, 4), 2)
    assert e.order_as_root_of_unity() == cc.class_order(
        cc.restrict(cc.omega_t(6, 4), cyclic(6).cyclic_subgroup(2)))


@pytest.mark.parametrize("N", range(1, 13))
def test_eps_matches_class_order_cyclic(N):
    for t in range(N):
        w = cc.omega_t(N, t)
        for g in range(N):
            S = w.group.cyclic_subgroup(g)
            assert cc.eps_invariant(w, g).order_as_root_of_unity() == cc.class_order(cc.restrict(w, S))


@pytest.mark.parametrize("name", ["Z2xZ2", "Z2xZ4", "S3", "D4"])
def test_eps_matches_class_order_noncyclic(name):
    G = parse_group(name)
    for w in cc.cohomology_basis(G, G.order).representatives:
        for g in range(G.order):
            S = G.cyclic_subgroup(g)
            assert cc.eps_invariant(w, g).order_as_root_of_unity() == cc.class_order(cc.restrict(w, S))


def test_dpr_theta():
    G = symmetric(3)
    triv = cc.dpr_theta(cc.trivial(G), 3)
    assert set(triv.values()) == {0}
    w = cc.omega_t(2, 1)
    theta = cc.dpr_theta(w, 1)
    assert root_of_unity(w.modulus, theta[(1, 1)]) == -1
    B = cc.cohomology_basis(G, 6).representatives[0]
    for g in range(6):
        th = cc.dpr_theta(B, g)
        assert all(th[(0, y)] == 0 and th[(y, 0)] == 0 for y in G.centralizer(g).elements)
    with pytest.raises(GroupError):
        cc.theta_value(B, 1, 3, 0)


def test_dpr_theta_is_2_cocycle_on_centralizer():
    # associativity of the tube product in exponent form
    for name in ["Z4", "S3", "Z2xZ2"]:
        G = parse_group(name)
        for w in cc.cohomology_basis(G, G.order).representatives:
            for g in range(G.order):
                th = cc.dpr_theta(w, g)
                C = G.centralizer(g).elements
                for x in C:
                    for y in C:
                        for z in C:
                            lhs = th[(x, y)] + th[(G.mul(x, y), z)]
                            rhs = th[(y, z)] + th[(x, G.mul(y, z))]
                            assert (lhs - rhs) % w.modulus == 0


def test_cohomology_basis_cyclic():
    for N in range(2, 8):
        B = cc.cohomology_basis(cyclic(N), N * N)
        assert B.invariant_factors == (N,)
        rep = B.representatives[0]
        # cohomologous to some generator omega_u with u a unit mod N
        units = [u for u in range(1, N) if math.gcd(u, N) == 1]
        assert any(cc.cohomologous(rep, cc.omega_t(N, u)) for u in units)


def test_cohomology_basis_small_cases():
    assert cc.cohomology_basis(cyclic(1), 5).invariant_factors == ()
    S3 = cc.cohomology_basis(symmetric(3), 6)
    assert S3.invariant_factors == (6,)
    assert cc.class_order(S3.representatives[0]) == 6


@pytest.mark.parametrize("name,factors", [
    ("Z2xZ2", (2, 2, 2)), ("Z2xZ4", (2, 2, 4)), ("D4", (2, 2, 4)), ("Z6", (6,)),
])
def test_cohomology_basis_known_groups(name, factors):
    G = parse_group(name)
    B = cc.cohomology_basis(G, G.order)
    assert B.invariant_factors == factors
    assert [cc.class_order(r) for r in B.representatives] == list(factors)


def test_cohomology_basis_representatives_independent():
    G = parse_group("Z2xZ2")
    reps = cc.cohomology_basis(G, 4).representatives
    seen = set()
    for coeffs in np.ndindex(2, 2, 2):
        w = cc.trivial(G, 4)
        for c, r in zip(coeffs, reps):
            w = w * r ** int(c)
        assert (cc.class_order(w) == 1) == (coeffs == (0, 0, 0))
        seen.add(coeffs)
    assert len(seen) == 8


def test_cohomology_basis_canonical_representative():
    G = symmetric(3)
    rep = cc.cohomology_basis(G, 6).representatives[0]
    rng = np.random.default_rng(3)
    # the representative is the lexicographic minimum of its coset mod coboundaries
    for _ in range(20):
        other = rep * cc.coboundary(cc.random_cochain2(G, 6, rng))
        assert tuple(other.exponents.ravel()) >= tuple(rep.exponents.ravel())


def test_cohomology_basis_guard():
    with pytest.raises(cc.CocycleError, match="limited"):
        cc.cohomology_basis(parse_group("Z12"), 12)


def test_cocycle_json_round_trip(tmp_path):
    w = cc.cohomology_basis(symmetric(3), 6).representatives[0]
    data = w.to_json()
    assert cc.Cocycle3.from_json(data) == w
    data["exponents"][-1] += 1
    with pytest.raises(cc.CocycleError):
        cc.Cocycle3.from_json(data)
    named = {"group": "Z2", "modulus": 4, "exponents": [0] * 7 + [2]}
    assert cc.Cocycle3.from_json(named) == cc.omega_t(2, 1)


def test_external_product():
    w = cc.external_product(cc.omega_t(2, 1), cc.omega_t(3, 1))
    assert cc.check_cocycle(w)
    assert cc.class_order(w) == 6
