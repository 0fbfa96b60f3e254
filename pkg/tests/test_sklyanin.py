import numpy as np
import pytest

from sklab import sklyanin
from sklab.sklyanin import (AlgebraParams, AmbiguousRank, DenominatorNearZero,
                            RelationSystem, build_relations, relation_space,
                            relation_terms, sample_generic_x,
                            singular_values, subspace_distance,
                            substitution_distance,
                            check_substitution_isomorphism)

X_GENERIC = 0.11 + 0.17j


def test_params_reject_non_coprime(modulus):
    with pytest.raises(ValueError):
        AlgebraParams(4, 2, X_GENERIC, modulus)


def test_params_reduce_r_mod_d(modulus):
    params = AlgebraParams(5, 7, X_GENERIC, modulus)
    assert params.r == 2


def test_denominator_near_zero_raises(modulus):
    # x close to (but not on) the lattice makes theta_0(+-x) nearly vanish
    with pytest.raises(DenominatorNearZero):
        build_relations(AlgebraParams(3, 1, 1e-11 + 1e-11j, modulus))


@pytest.mark.parametrize("d,r", [(3, 1), (4, 3), (5, 2), (7, 3)])
def test_rank_and_gap(d, r, modulus):
    system = build_relations(AlgebraParams(d, r, X_GENERIC, modulus))
    space = relation_space(system)
    expected = d * (d - 1) // 2
    assert space.shape == (d * d, expected)
    svals = singular_values(system)
    assert svals[expected - 1] / svals[expected] > 1e10


def test_rows_normalized_to_unit_max(modulus):
    system = build_relations(AlgebraParams(5, 2, X_GENERIC, modulus))
    flat = system.coeffs.reshape(25, 25)
    for row in flat:
        top = np.abs(row).max()
        if top > 0:
            assert top == pytest.approx(1.0, abs=1e-12)


def test_relation_terms_sum_to_coeffs(modulus):
    params = AlgebraParams(5, 2, X_GENERIC, modulus)
    system = build_relations(params)
    rebuilt = np.zeros_like(system.coeffs)
    for i, j, terms in relation_terms(params):
        for n, a, b, coeff in terms:
            rebuilt[i, j, a, b] += coeff
    assert np.max(np.abs(rebuilt - system.coeffs)) == 0.0


def test_exact_zero_numerators_are_skipped(modulus):
    # for (d, r) = (5, 2) the numerator theta_{j-i+n}(0) vanishes exactly
    # when j - i + n = 0 mod 5; no term with that n may appear
    params = AlgebraParams(5, 2, X_GENERIC, modulus)
    for i, j, terms in relation_terms(params):
        for n, a, b, coeff in terms:
            assert (j - i + (params.r - 1) * n) % 5 != 0
            assert coeff != 0


def test_ambiguous_rank_raises(modulus):
    params = AlgebraParams(3, 1, X_GENERIC, modulus)
    rng = np.random.default_rng(7)
    u, _ = np.linalg.qr(rng.normal(size=(9, 9))
                        + 1j * rng.normal(size=(9, 9)))
    v, _ = np.linalg.qr(rng.normal(size=(9, 9))
                        + 1j * rng.normal(size=(9, 9)))
    svals = np.array([1.0, 1.0, 1.0, 3e-9, 5e-10] + [1e-15] * 4)
    coeffs = (u * svals) @ v
    with pytest.raises(AmbiguousRank):
        relation_space(RelationSystem(params, coeffs.reshape(3, 3, 3, 3)))


def test_subspace_distance_identical_and_orthogonal():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(10, 6)))
    assert subspace_distance(q[:, :3], q[:, :3]) < 1e-14
    assert subspace_distance(q[:, :3], q[:, 3:]) == pytest.approx(1.0)


def test_substitution_isomorphism_positive(modulus):
    dist = check_substitution_isomorphism(5, 2, 3, X_GENERIC, modulus)
    assert dist < 1e-8


def test_substitution_isomorphism_rejects_non_inverse(modulus):
    with pytest.raises(ValueError):
        check_substitution_isomorphism(5, 2, 2, X_GENERIC, modulus)


def test_substitution_negative_control(modulus):
    # r' = 2 is not the inverse of 2 mod 5; the substituted space must be
    # far from the true relation space
    dist = substitution_distance(5, 2, 2, X_GENERIC, modulus)
    assert dist > 0.1


def test_sample_generic_x_avoids_denominator_zeros(modulus, rng):
    for d in (3, 5):
        for _ in range(10):
            x = sample_generic_x(d, modulus, rng)
            build_relations(AlgebraParams(d, 1, x, modulus))
