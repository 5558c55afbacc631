import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from modsurf.psl2 import (
    INF, IDENTITY, S, T, T_INV, GeneratorWord, Mat, ProjectiveClass, complete_to_sl2,
    canonical_reduced_point, is_parabolic, matrix_to_word, mobius_act, parabolic_fixed_point,
    parabolic_normal_form, reduce_to_fundamental_domain, s_involution, semilinear_identity_check,
)

from oracles import random_word

words = st.lists(st.sampled_from([S, T, T_INV]), max_size=25)


def product(ms):
    out = IDENTITY
    for m in ms:
        out = out @ m
    return out


def test_determinant_enforced():
    with pytest.raises(ValueError):
        Mat(1, 1, 1, 1)


def test_composition_examples():
    assert T @ T == Mat(1, 2, 0, 1)
    A = Mat(3, 4, 2, 3)
    assert A @ A.inv() == IDENTITY
    assert S @ T ** -2 @ S.inv() == Mat(1, 0, 2, 1)


def test_s_involution_examples():
    assert s_involution(T) == Mat(1, -1, 0, 1)
    assert s_involution(S) == Mat(0, 1, -1, 0)
    A = Mat(3, 4, 2, 3)
    assert s_involution(A) == Mat(3, -4, -2, 3) == A.inv()


@given(words, words)
def test_s_involution_is_an_automorphism(w1, w2):
    A, B = product(w1), product(w2)
    assert s_involution(s_involution(A)) == A
    assert s_involution(A @ B) == s_involution(A) @ s_involution(B)


def test_canonical_representative():
    assert (-T).canonical() == T
    assert Mat(0, 1, -1, 0).canonical() == S.inv().canonical() == Mat(0, 1, -1, 0)
    assert ProjectiveClass.of(-S) == ProjectiveClass.of(S)
    assert (-S).psl_eq(S)


def test_mobius_examples():
    with mpmath.workdps(40):
        assert abs(mobius_act(S, mpmath.mpc(0, 1)) - mpmath.mpc(0, 1)) < 1e-30
    assert mobius_act(T, INF) is INF
    assert mobius_act(Mat(1, 0, 2, 1), Fraction(-1)) == 1
    assert mobius_act(S, Fraction(0)) is INF


def test_semilinear_identity():
    assert semilinear_identity_check(IDENTITY, 0.3 + 2j)
    assert semilinear_identity_check(T, 1j)
    rng = random.Random(7)
    for _ in range(100):
        A = random_word(rng, rng.randint(1, 12))
        z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
        assert semilinear_identity_check(A, z)


def test_words_examples():
    assert str(matrix_to_word(T ** 3)) == "T T T"
    assert str(matrix_to_word(S)) == "S"
    w = matrix_to_word(Mat(1, 0, 2, 1))
    assert str(w) == "S T⁻¹ T⁻¹ S"
    assert w.evaluate().psl_eq(Mat(1, 0, 2, 1))
    assert matrix_to_word(IDENTITY) == GeneratorWord()


def test_word_round_trip_1000():
    rng = random.Random(2024)
    for _ in range(1000):
        A = random_word(rng, rng.randint(0, 30))
        w = matrix_to_word(A)
        assert w.evaluate().psl_eq(A)
        assert w.inverse().evaluate().psl_eq(A.inv())


def test_word_rejects_unknown_letter():
    with pytest.raises(ValueError):
        GeneratorWord(["U"])


def test_parabolic_predicate():
    assert is_parabolic(Mat(1, 5, 0, 1))
    assert not is_parabolic(S)
    assert is_parabolic(Mat(1, 0, 2, 1))
    assert not is_parabolic(IDENTITY)
    assert not is_parabolic(-IDENTITY)


def test_normal_form_examples():
    assert parabolic_normal_form(Mat(1, 5, 0, 1)) == (1, 5)
    assert parabolic_normal_form(Mat(-1, -3, 0, -1)) == (-1, 3)
    assert parabolic_normal_form(Mat(1, 0, 2, 1)) == (1, -2)
    with pytest.raises(ValueError):
        parabolic_normal_form(S)


def test_fixed_points():
    assert parabolic_fixed_point(Mat(1, 0, 2, 1)) == 0
    assert parabolic_fixed_point(T) is INF
    P = Mat(3, 2, -2, -1)
    assert parabolic_fixed_point(P) == -1
    assert mobius_act(P, Fraction(-1)) == -1


@settings(max_examples=200)
@given(st.integers(-40, 40).filter(lambda n: n != 0), st.sampled_from([1, -1]), words)
def test_normal_form_conjugation_invariant(m, sign, w):
    base = T ** m if sign > 0 else -(T ** m)
    U = product(w)
    assert parabolic_normal_form(U @ base @ U.inv()) == (sign, m)


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_complete_to_sl2(p, q):
    from math import gcd
    if gcd(p, q) != 1:
        with pytest.raises(ValueError):
            complete_to_sl2(p, q)
        return
    U = complete_to_sl2(p, q)
    assert (U.a, U.c) == (p, q)


def test_reduction_examples():
    with mpmath.workdps(40):
        z, A = reduce_to_fundamental_domain(1j)
        assert abs(z - 1j) < 1e-30 and A == IDENTITY
        z, A = reduce_to_fundamental_domain(2 + 1j)
        assert abs(z - 1j) < 1e-30 and A == T ** -2
        tau = mpmath.mpc(0.5, 0.5)
        z, A = reduce_to_fundamental_domain(tau)
        assert abs(z - 1j) < 1e-30
        assert abs(mobius_act(A, tau) - z) < 1e-30


def test_reduction_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        reduce_to_fundamental_domain(0.5 - 1j)


def test_reduced_point_lands_in_domain():
    rng = random.Random(3)
    with mpmath.workdps(40):
        for _ in range(200):
            tau = mpmath.mpc(rng.uniform(-5, 5), rng.uniform(0.01, 2))
            z, A = canonical_reduced_point(tau)
            assert -0.5 - 1e-20 < z.real <= 0.5 + 1e-20
            assert abs(z) >= 1 - 1e-20
            assert abs(mobius_act(A, tau) - z) < 1e-20 * max(1, abs(z))
