import random

import pytest

from modsurf.psl2 import INF, IDENTITY, S, T, Mat, is_parabolic, mobius_act, parabolic_normal_form, s_involution
from modsurf.subgroup import (
    BUDGET_ENV, IndexBoundExceeded, NotGenusZeroTorsionFree, RelationViolation,
    coset_matrices, coset_words, cusp_stabilizer, cusps, from_generators, from_permutations,
    full_group, invariants, is_s_stable, membership, parabolic_generator_system,
    pointed_isomorphism, same_subgroup, spanning_polygon, validate,
)

from oracles import GAMMA2_PERM_S, GAMMA2_PERM_T, random_level2_subgroup

GAMMA2_GENS = [Mat(1, 2, 0, 1), Mat(1, 0, 2, 1)]


@pytest.fixture(scope="module")
def g2():
    return from_generators(GAMMA2_GENS)


def test_validate_examples(g2):
    assert validate((0,), (0,)) == []
    assert validate((1, 0), (0, 1))  # (st)^3 fails
    assert validate(g2.perm_s, g2.perm_t) == []


def test_validate_messages():
    assert "not a permutation" in validate((0, 0), (0, 1))[0]
    assert "points" in validate((0,), (0, 1))[0]
    with pytest.raises(RelationViolation):
        from_permutations((1, 0), (0, 1))


def test_from_generators_examples(g2):
    assert from_generators([S, T]).size == 1
    assert g2.size == 6
    assert (g2.perm_s, g2.perm_t) == (GAMMA2_PERM_S, GAMMA2_PERM_T)


def test_coset_representatives_are_distinct(g2):
    mats = coset_matrices(g2)
    for i, A in enumerate(mats):
        for j, B in enumerate(mats):
            assert membership(g2, A @ B.inv()) == (i == j)
    for w, A in zip(coset_words(g2), mats):
        assert w.evaluate().psl_eq(A)


def test_membership_examples(g2):
    assert membership(g2, T ** 2)
    assert not membership(g2, T)
    assert membership(g2, -Mat(1, 0, 2, 1))
    rng = random.Random(5)
    for _ in range(300):
        A = IDENTITY
        for _ in range(rng.randint(0, 15)):
            A = A @ rng.choice((S, T, T.inv()))
        expect = A.b % 2 == 0 and A.c % 2 == 0
        assert membership(g2, A) == expect


def test_budget_exhaustion(monkeypatch):
    with pytest.raises(IndexBoundExceeded):
        from_generators([T ** 2], budget=100)
    monkeypatch.setenv(BUDGET_ENV, "50")
    with pytest.raises(IndexBoundExceeded):
        from_generators([T ** 3])


def test_cusps_examples(g2):
    full = cusps(full_group())
    assert [(c.representative, c.width) for c in full] == [(INF, 1)]
    cl = cusps(g2)
    assert [c.width for c in cl] == [2, 2, 2]
    assert [c.representative for c in cl] == [INF, 0, 1]
    assert all(c.is_real for c in cl)


def test_invariants_examples(g2):
    inv = invariants(full_group())
    assert (inv.index, inv.cusp_count, inv.e2, inv.e3, inv.genus) == (1, 1, 1, 1, 0)
    inv = invariants(g2)
    assert (inv.index, inv.cusp_count, inv.e2, inv.e3, inv.genus) == (6, 3, 0, 0, 0)
    assert inv.torsion_free and inv.s_stable


def test_gamma0_small_levels():
    # Gamma_0(N) as subgroups: known index, cusps, elliptic points
    def gamma0(N):
        gens = [T, Mat(1, 0, N, 1)]
        for a in range(-N, N + 1):
            for c in range(N, 3 * N + 1, N):
                for d in range(1, 3 * N):
                    if (a * d - 1) % c == 0:
                        gens.append(Mat(a, (a * d - 1) // c, c, d))
        return from_generators(gens)
    expected = {2: (3, 2, 1, 0), 3: (4, 2, 0, 1), 4: (6, 3, 0, 0), 5: (6, 2, 2, 0), 7: (8, 2, 0, 2)}
    for N, (mu, t, e2, e3) in expected.items():
        inv = invariants(gamma0(N))
        assert (inv.index, inv.cusp_count, inv.e2, inv.e3, inv.genus) == (mu, t, e2, e3, 0)
    assert invariants(gamma0(11)).genus == 1


def test_s_stability(g2):
    assert is_s_stable(full_group())
    assert is_s_stable(g2)


def test_pointed_isomorphism(g2):
    R = from_permutations(GAMMA2_PERM_S, GAMMA2_PERM_T)
    assert same_subgroup(R, g2)
    # relabel cosets 1..5
    perm = [0, 3, 5, 1, 2, 4]
    inv = [perm.index(i) for i in range(6)]
    ps = tuple(perm[GAMMA2_PERM_S[inv[i]]] for i in range(6))
    pt = tuple(perm[GAMMA2_PERM_T[inv[i]]] for i in range(6))
    assert pointed_isomorphism(ps, pt, GAMMA2_PERM_S, GAMMA2_PERM_T) is not None
    assert not same_subgroup(g2, full_group())


def test_cusp_stabilizer(g2):
    assert cusp_stabilizer(full_group(), cusps(full_group())[0]).psl_eq(T)
    cl = cusps(g2)
    assert cusp_stabilizer(g2, cl[0]).psl_eq(T ** 2)
    P0 = cusp_stabilizer(g2, cl[1])
    assert P0.psl_eq(Mat(1, 0, 2, 1)) or P0.psl_eq(Mat(1, 0, -2, 1))
    for c in cl:
        P = cusp_stabilizer(g2, c)
        assert is_parabolic(P) and membership(g2, P)
        assert abs(parabolic_normal_form(P)[1]) == c.width


def test_generator_system_gamma2(g2):
    gens = parabolic_generator_system(g2)
    assert len(gens) == 3
    prod = IDENTITY
    for g in gens:
        assert abs(parabolic_normal_form(g.matrix)[1]) == 2
        assert membership(g2, g.matrix)
        prod = prod @ g.matrix
    assert prod.psl_eq(IDENTITY)
    assert sorted(g.cusp for g in gens) == [0, 1, 2]


def test_generator_system_rejects_torsion():
    with pytest.raises(NotGenusZeroTorsionFree):
        parabolic_generator_system(full_group())


def test_spanning_polygon_side_maps(g2):
    poly = spanning_polygon(g2)
    n = len(poly.vertices)
    assert len(poly.pairing) == n and sorted(poly.pairing) == list(range(n))
    for i, j in enumerate(poly.pairing):
        assert poly.pairing[j] == i and i != j
        g = poly.side_maps[i]
        assert membership(g2, g)
        # g carries the partner side onto side i, reversing orientation
        assert mobius_act(g, poly.vertices[j]) == poly.vertices[(i + 1) % n]
        assert mobius_act(g, poly.vertices[(j + 1) % n]) == poly.vertices[i]


def test_random_genus0_level2_subgroups():
    rng = random.Random(11)
    seen = unstable = 0
    for _ in range(60):
        R = random_level2_subgroup(rng.randint(1, 6), rng)
        inv = invariants(R)
        assert sum(c.width for c in cusps(R)) == inv.index
        assert inv.torsion_free
        assert 6 * (2 * inv.genus - 2 + inv.cusp_count) == inv.index
        if inv.genus == 0:
            seen += 1
            gens = parabolic_generator_system(R)
            for g in gens:
                assert membership(R, g.matrix)
            # the loops generate R, so S-stability is visible on them
            assert inv.s_stable == all(membership(R, s_involution(g.matrix)) for g in gens)
            unstable += not inv.s_stable
        else:
            with pytest.raises(NotGenusZeroTorsionFree):
                parabolic_generator_system(R)
    assert seen > 20 and unstable > 0
