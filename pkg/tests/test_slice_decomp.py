import numpy as np
import pytest

from conftest import UNITS
from qspectra import I, J, QMatrix, complex_subspace_basis, decompose, extend_complex_operator, operator_norm, restrict_to_plus
from qspectra.errors import BadAuxiliaryUnit, DoesNotCommuteWithJ, NotAntiUnitary, NotNormal
from qspectra.left_spectrum import real_kernel_dim, realify
from qspectra.qmatrix import chi, right_mul, vnorm
from qspectra.randomized import random_normal, random_unitary
from qspectra.slice_decomp import plus_projection


def check_invariants(T, d, tol=1e-9):
    nrm = max(1.0, operator_norm(T))
    eye = QMatrix.identity(T.n)
    assert operator_norm(T - d.reconstruct()) <= tol * nrm
    assert d.A.max_abs_diff((T + T.adjoint()) * 0.5) <= 1e-14 * nrm
    assert operator_norm(d.A @ d.B - d.B @ d.A) <= tol * nrm ** 2
    assert operator_norm(d.A @ d.J - d.J @ d.A) <= tol * nrm
    assert operator_norm(d.B @ d.J - d.J @ d.B) <= tol * nrm
    assert d.J.adjoint().max_abs_diff(-d.J) <= tol
    assert (d.J.adjoint() @ d.J).max_abs_diff(eye) <= tol
    assert np.linalg.eigvalsh(chi(d.B)).min() >= -tol * nrm


def test_decompose_example_one(ex1):
    d = decompose(ex1["T"])
    assert d.A.max_abs_diff(ex1["A"]) <= 1e-10
    assert d.B.max_abs_diff(ex1["B"]) <= 1e-10
    assert d.J.max_abs_diff(ex1["J"]) <= 1e-10
    check_invariants(ex1["T"], d)


def test_decompose_example_two(ex2):
    d = decompose(ex2["S"])
    assert d.A.max_abs_diff(ex2["S"]) <= 1e-14
    assert d.B.max_abs_diff(QMatrix.zeros(2)) <= 1e-14
    assert d.J.max_abs_diff(QMatrix.scalar(I, 2)) <= 1e-12


def test_decompose_real_scalar():
    d = decompose(QMatrix.scalar(3.0, 3))
    assert d.A.max_abs_diff(QMatrix.scalar(3.0, 3)) == 0.0
    assert d.B.scale() == 0.0
    assert (d.J @ d.J).max_abs_diff(-QMatrix.identity(3)) <= 1e-12


def test_decompose_rejects_non_normal():
    with pytest.raises(NotNormal):
        decompose(QMatrix.from_entries([[0, 1], [0, 0]]))


@pytest.mark.parametrize("unit", UNITS)
def test_decompose_random(rng, unit):
    for n in (2, 4, 7):
        T = random_normal(rng, n, unit)
        check_invariants(T, decompose(T, unit))


def test_uniqueness_of_A_B_and_J_on_range(rng):
    # conjugating by a unitary commuting with nothing in particular gives an
    # independent computation path; A, B and J on range(B) must transform covariantly
    for n in (3, 5):
        T = random_normal(rng, n)
        V = random_unitary(rng, n)
        d1 = decompose(T)
        d2 = decompose(V.adjoint() @ T @ V)
        assert (V @ d2.A @ V.adjoint()).max_abs_diff(d1.A) <= 1e-9
        assert (V @ d2.B @ V.adjoint()).max_abs_diff(d1.B) <= 1e-9
        J2 = V @ d2.J @ V.adjoint()
        B = d1.B
        assert operator_norm((J2 - d1.J) @ B) <= 1e-9 * max(1.0, operator_norm(B))


def test_complex_subspace_basis_examples(ex1):
    b = complex_subspace_basis(QMatrix.scalar(I, 2), I)
    assert b.vectors.max_abs_diff(QMatrix.identity(2)) <= 1e-15
    J1 = ex1["J"]
    b = complex_subspace_basis(J1, I)
    assert b.n == 2
    for u in (ex1["u1"], ex1["u2"]):
        assert vnorm(J1.apply(u) - right_mul(u, I)) <= 1e-14
        # u lies in the span: its projection onto the basis recovers it
        coeffs = [b.vectors.adjoint().apply(u)[a] for a in range(2)]
        rebuilt = sum(right_mul(b.vectors.column(a), coeffs[a]) for a in range(2))
        assert vnorm(rebuilt - u) <= 1e-12


@pytest.mark.parametrize("unit", UNITS)
def test_complex_subspace_basis_random(rng, unit):
    T = random_normal(rng, 5, unit)
    Jm = decompose(T, unit).J
    b = complex_subspace_basis(Jm, unit)
    Z = b.vectors
    assert (Z.adjoint() @ Z).max_abs_diff(QMatrix.identity(5)) <= 1e-10
    for z in Z.columns():
        assert vnorm(Jm.apply(z) - right_mul(z, unit)) <= 1e-10
    # oracle: real kernel of u -> Ju - u unit has real dimension 2n
    M = realify(lambda u: Jm.apply(u) - right_mul(u, unit), 5)
    assert real_kernel_dim(M) == 10
    u = rng.normal(size=(5, 4))
    up = plus_projection(Jm, unit, u)
    assert vnorm(Jm.apply(up) - right_mul(up, unit)) <= 1e-10


def test_complex_subspace_basis_rejects_bad_J():
    with pytest.raises(NotAntiUnitary):
        complex_subspace_basis(QMatrix.identity(2), I)


def test_restrict_to_plus_examples(ex1, ex2):
    b = complex_subspace_basis(QMatrix.scalar(I, 2), I)
    np.testing.assert_allclose(restrict_to_plus(ex2["S"], b), [[0, 1j], [-1j, 0]], atol=1e-15)
    np.testing.assert_allclose(restrict_to_plus(QMatrix.identity(2), b), np.eye(2), atol=1e-15)
    from qspectra.slice_decomp import ComplexSubspaceBasis

    N = ComplexSubspaceBasis(QMatrix.from_columns([ex1["u1"], ex1["u2"]]), ex1["J"], I)
    r = 1 / np.sqrt(2)
    np.testing.assert_allclose(restrict_to_plus(ex1["T"], N), np.diag([r + 1j * r, -r + 1j * r]), atol=1e-14)


def test_restrict_to_plus_rejects_non_commuting():
    b = complex_subspace_basis(QMatrix.scalar(I, 2), I)
    with pytest.raises(DoesNotCommuteWithJ):
        restrict_to_plus(QMatrix.scalar(J, 2), b)


def test_extend_examples(ex1):
    from qspectra.slice_decomp import ComplexSubspaceBasis

    N = ComplexSubspaceBasis(QMatrix.from_columns([ex1["u1"], ex1["u2"]]), ex1["J"], I)
    assert extend_complex_operator(np.eye(2), N, J).max_abs_diff(QMatrix.identity(2)) <= 1e-14
    r = 1 / np.sqrt(2)
    T = extend_complex_operator(np.diag([r + 1j * r, -r + 1j * r]), N, J)
    assert T.max_abs_diff(ex1["T"]) <= 1e-14
    with pytest.raises(BadAuxiliaryUnit):
        extend_complex_operator(np.eye(2), N, I)


@pytest.mark.parametrize("unit", UNITS)
def test_extend_properties(rng, unit):
    n = 4
    Jm = decompose(random_normal(rng, n, unit), unit).J
    b = complex_subspace_basis(Jm, unit)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    N = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    eM, eN = extend_complex_operator(M, b), extend_complex_operator(N, b)
    assert (eM @ eN).max_abs_diff(extend_complex_operator(M @ N, b)) <= 1e-10
    assert abs(operator_norm(eM) - np.linalg.norm(M, 2)) <= 1e-10
    assert extend_complex_operator(M.conj().T, b).max_abs_diff(eM.adjoint()) <= 1e-10
    assert (eM @ Jm).max_abs_diff(Jm @ eM) <= 1e-10
    Pos = M @ M.conj().T
    assert np.linalg.eigvalsh(chi(extend_complex_operator(Pos, b))).min() >= -1e-10
    # restrict after extend is the identity; extend after restrict too
    np.testing.assert_allclose(restrict_to_plus(eM, b), M, atol=1e-10)
    T = random_normal(rng, n, unit)
    d = decompose(T, unit)
    b2 = complex_subspace_basis(d.J, unit)
    assert extend_complex_operator(restrict_to_plus(T, b2), b2).max_abs_diff(T) <= 1e-10


def test_kernel_rule_with_repeated_real_eigenvalues(rng):
    # self-adjoint T with a repeated eigenvalue: B = 0 and J must still be valid
    V = random_unitary(rng, 4)
    T = V @ QMatrix.diag([1.0, 1.0, -2.0, 0.5]) @ V.adjoint()
    d = decompose(T)
    check_invariants(T, d)
    assert d.B.scale() <= 1e-12
