import math

import numpy as np
import pytest

from conftest import brute_matmul, max_diff, realify
from qspectra import I, J, QMatrix, abs_op, chi, chi_inverse, det_c, inverse, operator_norm, sqrt_positive
from qspectra.errors import DimensionMismatch, NotInRepresentationImage, NotPositive, Singular
from qspectra.qmatrix import complex_to_vec, inner, outer, right_mul, vec_to_complex
from qspectra.randomized import random_matrix, random_quaternion, random_vector


def test_matmul_matches_brute_force(rng):
    for n in (1, 2, 5):
        M, N = random_matrix(rng, n), random_matrix(rng, n)
        assert (M @ N).max_abs_diff(brute_matmul(M, N)) <= 1e-12


def test_adjoint_example(ex1):
    T = ex1["T"]
    assert T.adjoint().allclose(QMatrix.from_entries([[0, -J], [-I, 0]]), 0)
    assert (T @ T.adjoint()).allclose(QMatrix.identity(2), 1e-15)
    assert (T @ QMatrix.identity(2)).allclose(T, 0)


def test_algebra_laws(rng):
    for n in (2, 4, 7):
        M, N, P = (random_matrix(rng, n) for _ in range(3))
        u = random_vector(rng, n)
        q = random_quaternion(rng)
        assert (M @ N).adjoint().max_abs_diff(N.adjoint() @ M.adjoint()) <= 1e-12
        assert ((M @ N) @ P).max_abs_diff(M @ (N @ P)) <= 1e-11
        np.testing.assert_allclose((M @ N).apply(u), M.apply(N.apply(u)), atol=1e-11)
        np.testing.assert_allclose(M.apply(right_mul(u, q)), right_mul(M.apply(u), q), atol=1e-11)
        assert M.adjoint().adjoint() == M


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        QMatrix.identity(2) @ QMatrix.identity(3)
    with pytest.raises(DimensionMismatch):
        QMatrix.identity(2) + QMatrix.identity(3)


def test_chi_examples(ex1):
    np.testing.assert_array_equal(chi(QMatrix.scalar(J, 1)), [[0, -1], [1, 0]])
    np.testing.assert_array_equal(chi(QMatrix.scalar(I, 1)), [[1j, 0], [0, -1j]])
    T = ex1["T"]
    assert chi_inverse(chi(T)) == T


def test_chi_is_star_homomorphism(rng):
    for n in (2, 5, 8):
        M, N = random_matrix(rng, n), random_matrix(rng, n)
        assert max_diff(chi(M @ N), chi(M) @ chi(N)) <= 1e-10
        assert max_diff(chi(M.adjoint()), chi(M).conj().T) <= 1e-10
        assert chi_inverse(chi(M)).max_abs_diff(M) <= 1e-15


def test_chi_inverse_rejects_foreign_matrix():
    with pytest.raises(NotInRepresentationImage):
        chi_inverse(np.diag([1.0, 2.0]))


def test_vector_map_is_compatible(rng):
    M = random_matrix(rng, 3)
    u = random_vector(rng, 3)
    np.testing.assert_allclose(vec_to_complex(M.apply(u)), chi(M) @ vec_to_complex(u), atol=1e-12)
    np.testing.assert_allclose(complex_to_vec(vec_to_complex(u)), u, atol=1e-15)


def test_eigenvalues_pair_under_conjugation(rng):
    for n in (2, 4, 6):
        ev = np.linalg.eigvals(chi(random_matrix(rng, n)))
        for z in ev:
            assert np.min(np.abs(ev - np.conj(z))) <= 1e-8 * max(1, abs(z))


def test_det_c_properties(rng):
    assert math.isclose(det_c(QMatrix.identity(3)), 1.0)
    for n in (2, 3, 5):
        M, N = random_matrix(rng, n), random_matrix(rng, n)
        dm, dn = det_c(M), det_c(N)
        assert dm >= -1e-8 * M.scale()
        assert math.isclose(det_c(M @ N), dm * dn, rel_tol=1e-8)
        # oracle: the real 4n x 4n realification has determinant det_c^2
        assert math.isclose(det_c(M) ** 2, np.linalg.det(realify(M)), rel_tol=1e-8)


def test_inverse_examples(ex1, rng):
    T = ex1["T"]
    assert inverse(T).max_abs_diff(T.adjoint()) <= 1e-14
    assert inverse(QMatrix.scalar(2.0, 2)).max_abs_diff(QMatrix.scalar(0.5, 2)) <= 1e-15
    with pytest.raises(Singular):
        inverse(QMatrix.zeros(2))
    M = random_matrix(rng, 5)
    assert (M @ inverse(M)).max_abs_diff(QMatrix.identity(5)) <= 1e-10


def test_operator_norm(ex1, rng):
    assert math.isclose(operator_norm(ex1["T"]), 1.0)
    assert operator_norm(QMatrix.zeros(3)) == 0.0
    D = QMatrix.diag([1 + I, 0])
    # oracle: largest singular value of the realification
    assert math.isclose(operator_norm(D), np.linalg.norm(realify(D), 2))
    assert math.isclose(operator_norm(D), math.sqrt(2))
    for n in (2, 6):
        M, N = random_matrix(rng, n), random_matrix(rng, n)
        assert math.isclose(operator_norm(M.adjoint() @ M), operator_norm(M) ** 2, rel_tol=1e-9)
        assert operator_norm(M @ N) <= operator_norm(M) * operator_norm(N) * (1 + 1e-12)


def test_sqrt_positive(ex1, rng):
    r2 = QMatrix.scalar(math.sqrt(2), 2)
    assert sqrt_positive(r2).max_abs_diff(QMatrix.scalar(2 ** 0.25, 2)) <= 1e-15
    P1 = ex1["P1"]
    assert sqrt_positive(P1).max_abs_diff(P1) <= 1e-12
    T = ex1["T"]
    assert sqrt_positive(T.adjoint() @ T).max_abs_diff(QMatrix.identity(2)) <= 1e-14
    for n in (2, 5, 8):
        X = random_matrix(rng, n)
        M = X.adjoint() @ X
        R = sqrt_positive(M)
        assert (R @ R).max_abs_diff(M) <= 1e-9 * operator_norm(M)
        assert R.max_abs_diff(R.adjoint()) <= 1e-12
        assert np.linalg.eigvalsh(chi(R)).min() >= -1e-10
    with pytest.raises(NotPositive):
        sqrt_positive(QMatrix.scalar(-1.0, 2))
    with pytest.raises(NotPositive):
        sqrt_positive(QMatrix.from_entries([[0, 1], [0, 0]]))


def test_abs_op(ex1, ex2):
    T = ex1["T"]
    assert abs_op(T - T.adjoint()).max_abs_diff(QMatrix.scalar(math.sqrt(2), 2)) <= 1e-14
    assert abs_op(QMatrix.zeros(2)).max_abs_diff(QMatrix.zeros(2)) == 0.0
    S = ex2["S"]
    assert brute_oracle_is_identity(S)
    assert abs_op(S).max_abs_diff(QMatrix.identity(2)) <= 1e-14


def brute_oracle_is_identity(S):
    from conftest import brute_matmul

    return brute_matmul(S.adjoint(), S).max_abs_diff(QMatrix.identity(2)) == 0.0


def test_vectors(rng):
    u, v = random_vector(rng, 4), random_vector(rng, 4)
    q = random_quaternion(rng)
    assert math.isclose(inner(u, u).re, float(np.sum(u * u)))
    # <u q | v> = conj(q) <u|v>
    assert (inner(right_mul(u, q), v) - q.conj() * inner(u, v)).norm() <= 1e-12
    np.testing.assert_allclose(outer(u, v).apply(v), right_mul(u, inner(v, v)), atol=1e-11)


def test_json_roundtrip(rng):
    M = random_matrix(rng, 3)
    assert QMatrix.from_json(M.to_json()) == M
    with pytest.raises(ValueError):
        QMatrix.from_json({"n": 2, "entries": [[[0, 0, 0, 0]]]})
