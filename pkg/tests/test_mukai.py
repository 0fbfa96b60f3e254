from math import gcd

import numpy as np
import pytest

from sklab import mukai
from sklab.mukai import (Bundle, GroupWord, KVector, Torsion,
                         TransporterError, act_word, hom_dims,
                         orbit_invariants, signed_kvector, sl2_to_word,
                         solve_T_r, solve_U_r, solve_transporter,
                         word_matrix, words_equal)


def random_object(rng):
    if rng.random() < 0.25:
        return Torsion(int(rng.integers(-4, 5)))
    while True:
        r = int(rng.integers(1, 7))
        d = int(rng.integers(-9, 10))
        if gcd(r, d) == 1 and (d != 0 or r == 1):
            return Bundle(r, d, int(rng.integers(-4, 5)))


def random_word(rng, max_len=10):
    letters = ["S", "S-", "R", "R-"]
    n = int(rng.integers(0, max_len + 1))
    return GroupWord.parse(" ".join(letters[int(rng.integers(0, 4))]
                                    for _ in range(n)))


def test_parse_str_roundtrip():
    word = GroupWord.parse("S R R S- R-")
    assert GroupWord.parse(str(word)) == word


def test_free_reduction():
    assert GroupWord.parse("S S-") == GroupWord.parse("")
    assert GroupWord.parse("R S S- R-") == GroupWord.parse("")
    w = GroupWord.parse("S R")
    assert w * w.inverse() == GroupWord.parse("")


def test_braid_relation():
    assert words_equal(GroupWord.parse("R S R S R S"), GroupWord.parse("S S"))


def test_s_squared_is_central_not_trivial():
    s2 = GroupWord.parse("S S")
    assert not words_equal(s2, GroupWord.parse(""))
    obj = Bundle(2, 7, 0)
    assert act_word(obj, s2) == Bundle(2, 7, -1)


def test_s_fourth_is_double_shift(rng):
    s4 = GroupWord.parse("S S S S")
    for _ in range(50):
        obj = random_object(rng)
        moved = act_word(obj, s4)
        assert moved == mukai.DerivedObject(obj.kind, obj.rank, obj.degree,
                                            obj.shift - 2)


def test_letter_actions():
    assert act_word(Torsion(0), GroupWord.parse("S")) == Bundle(1, 0, 0)
    assert act_word(Bundle(2, 7, 0), GroupWord.parse("S")) == Bundle(7, -2, 0)
    assert act_word(Bundle(7, -2, 0), GroupWord.parse("S")) == Bundle(2, 7, -1)
    assert act_word(Bundle(1, 0, 0), GroupWord.parse("S")) == Torsion(-1)
    assert act_word(Bundle(2, 7, 0), GroupWord.parse("R")) == Bundle(2, 9, 0)
    assert act_word(Torsion(3), GroupWord.parse("R")) == Torsion(3)


def test_s_inverse_undoes_s(rng):
    s, s_inv = GroupWord.parse("S"), GroupWord.parse("S-")
    for _ in range(30):
        obj = random_object(rng)
        assert act_word(act_word(obj, s), s_inv) == obj
        assert act_word(act_word(obj, s_inv), s) == obj


def test_word_matrix_is_homomorphism(rng):
    for _ in range(30):
        w1, w2 = random_word(rng), random_word(rng)
        m12 = word_matrix(w1 * w2)
        m1, m2 = word_matrix(w1), word_matrix(w2)
        prod = tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(2))
                           for j in range(2)) for i in range(2))
        assert m12 == prod


def test_action_tracks_matrix_on_signed_k(rng):
    for _ in range(200):
        obj = random_object(rng)
        word = random_word(rng)
        m = word_matrix(word)
        r, d = signed_kvector(obj)
        want = (m[0][0] * r + m[0][1] * d, m[1][0] * r + m[1][1] * d)
        assert signed_kvector(act_word(obj, word)) == want


def test_orbit_invariant_examples():
    inv = orbit_invariants(KVector(1, 0), KVector(2, 7))
    assert (inv.det, inv.alpha) == (7, 4)
    inv = orbit_invariants(KVector(0, 1), KVector(1, 0))
    assert (inv.det, inv.alpha) == (-1, 0)


def test_orbit_invariants_reject_degenerate():
    with pytest.raises(ValueError):
        orbit_invariants(KVector(1, 0), KVector(2, 0))
    with pytest.raises(ValueError):
        orbit_invariants(KVector(2, 2), KVector(0, 1))


def test_invariants_stable_under_word_action(rng):
    for _ in range(40):
        w = random_word(rng)
        m = word_matrix(w)
        v1, v2 = KVector(1, 0), KVector(2, 7)
        mv1 = KVector(m[0][0] * v1.r + m[0][1] * v1.d,
                      m[1][0] * v1.r + m[1][1] * v1.d)
        mv2 = KVector(m[0][0] * v2.r + m[0][1] * v2.d,
                      m[1][0] * v2.r + m[1][1] * v2.d)
        assert orbit_invariants(mv1, mv2) == orbit_invariants(v1, v2)


def test_sl2_to_word_reproduces_matrix(rng):
    for _ in range(60):
        w = random_word(rng, max_len=14)
        m = word_matrix(w)
        rebuilt = sl2_to_word(m)
        assert word_matrix(rebuilt) == m
    assert sl2_to_word(((1, 0), (0, 1))) == GroupWord.parse("")


def test_solve_transporter_roundtrip():
    src = (KVector(1, 0), KVector(2, 7))
    dst = (KVector(1, 2), KVector(2, 11))
    word = solve_transporter(src, dst)
    m = word_matrix(word)
    for v, target in zip(src, dst):
        assert (m[0][0] * v.r + m[0][1] * v.d,
                m[1][0] * v.r + m[1][1] * v.d) == (target.r, target.d)


def test_solve_transporter_rejects_mismatched_invariants():
    with pytest.raises(TransporterError):
        solve_transporter((KVector(1, 0), KVector(2, 7)),
                          (KVector(1, 0), KVector(2, 5)))


def test_solve_T_r_instance():
    word, companion = solve_T_r(Bundle(2, 7, 0))
    assert companion == Bundle(3, 7, -1)
    assert act_word(Bundle(2, 7, 0), word) == Bundle(1, 0, 0)
    assert act_word(Bundle(1, 0, 0), word) == companion


@pytest.mark.parametrize("d", [2, 3, 5, 8, 13])
def test_solver_congruences(d):
    for r in range(1, d):
        if gcd(r, d) != 1:
            continue
        _, companion = solve_T_r(Bundle(r, d, 0))
        assert (r * companion.rank) % d == (-1) % d
        _, r_dp = solve_U_r(Bundle(r, d, 0))
        assert (r * r_dp) % d == 1 % d


def test_solve_U_r_companion_class():
    word, r_dp = solve_U_r(Bundle(2, 7, 0))
    assert r_dp == 4
    companion = act_word(Bundle(1, 0, 0), word)
    assert signed_kvector(companion) == (4, -7)


def test_hom_dims():
    assert hom_dims(KVector(3, 5)) == (5, 0)
    assert hom_dims(KVector(3, -5)) == (0, 5)
    assert hom_dims(KVector(1, 0)) == (1, 1)
    assert hom_dims(KVector(1, 0), assume_trivial=False) == (0, 0)
    with pytest.raises(ValueError):
        hom_dims(KVector(-2, 5))
    with pytest.raises(ValueError):
        hom_dims(KVector(2, 4))
