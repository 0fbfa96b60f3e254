import numpy as np
import pytest

from sklab import poisson
from sklab.poisson import (ExtractionError, extract_bracket, jacobi_check,
                           scale_match_deviation, skew_check,
                           substituted_tensor)

# Largest entry of the d=3, r=1 bracket, frozen from a converged
# extraction; the h -> 0 noise floor sits near 1e-9 so the comparison
# tolerance is generous
GOLDEN_31 = {
    (2, 1, 1, 2): -1.51583126874281 - 2.75359144323306j,
    (1, 0, 0, 1): -1.51583126873541 - 2.75359144322936j,
}


@pytest.fixture(scope="module")
def tensor_31(modulus):
    return extract_bracket(3, 1, modulus)


def test_golden_entries(tensor_31):
    for idx, want in GOLDEN_31.items():
        assert abs(tensor_31.pi[idx] - want) < 1e-6


def test_extraction_quality(tensor_31):
    assert tensor_31.richardson_error < 1e-6
    assert skew_check(tensor_31) == 0.0
    assert jacobi_check(tensor_31, 60, seed=11) < 1e-6
    assert tensor_31.extraction_step == poisson.DEFAULT_H


def test_antisymmetry_in_first_pair(tensor_31):
    pi = tensor_31.pi
    assert np.array_equal(pi[0, 1], -pi[1, 0])
    assert np.all(pi[1, 1] == 0)


def test_storage_is_upper_triangular_in_last_pair(tensor_31):
    pi = tensor_31.pi
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for e in range(c):
                    assert pi[a, b, c, e] == 0


def test_bracket_matrix_symmetry(tensor_31):
    # {t_a, t_b} as a quadratic form: matrix form is symmetric
    mat = tensor_31.bracket_matrix(0, 1)
    assert np.array_equal(mat, mat.T)


def test_top_degree_r_gives_vanishing_bracket(modulus):
    # r = d - 1 is the degenerate direction: the bracket vanishes, so
    # only extraction noise (well under any genuine entry) survives
    tensor = extract_bracket(3, 2, modulus)
    assert np.abs(tensor.pi).max() < 1e-8
    assert jacobi_check(tensor, 10, seed=0) < 1e-8


def test_rejects_unachievable_tolerance(modulus):
    with pytest.raises(ExtractionError):
        extract_bracket(3, 1, modulus, bracket_tol=1e-12)


def test_first_order_equivariance(modulus):
    t_2 = extract_bracket(5, 2, modulus)
    t_3 = extract_bracket(5, 3, modulus)
    lam, dev = scale_match_deviation(substituted_tensor(t_2), t_3)
    assert dev < 1e-6
    assert abs(lam) > 1e-3


def test_scale_match_identical_tensors(modulus):
    t_a = extract_bracket(3, 1, modulus)
    lam, dev = scale_match_deviation(t_a, t_a)
    assert lam == 1.0
    assert dev == 0.0
