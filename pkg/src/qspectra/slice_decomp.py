"""Slice decomposition ``T = A + J B`` and the complex subspace ``{u : J u = u iota}``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadAuxiliaryUnit, DimensionMismatch, DoesNotCommuteWithJ, NotAntiUnitary, NotNormal
from .qmatrix import (
    QMatrix, chi, chi_inverse, complex_to_vec, inner, normality_defect, operator_norm,
    outer, right_mul, sigma, vnorm,
)
from .quaternion import I, Quaternion, from_slice_coordinates, orthogonal_unit, require_unit, slice_coordinates

TAU_NORMAL = 1e-9
TAU_KER = 1e-9
TAU_J = 1e-8


@dataclass(frozen=True, eq=False)
class SliceDecomposition:
    A: QMatrix
    B: QMatrix
    J: QMatrix
    unit: Quaternion = I

    def reconstruct(self) -> QMatrix:
        return self.A + self.J @ self.B


@dataclass(frozen=True, eq=False)
class ComplexSubspaceBasis:
    """Orthonormal C_unit basis of ``{u : J u = u unit}``; ``vectors`` are its columns."""

    vectors: QMatrix
    J: QMatrix
    unit: Quaternion = I

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    def columns(self) -> list:
        return self.vectors.columns()


def _check_normal(T: QMatrix, tol: float):
    if not T.is_square():
        raise DimensionMismatch("square matrix required")
    nrm = operator_norm(T)
    defect = normality_defect(T)
    if defect > tol * max(nrm ** 2, 1e-300):
        raise NotNormal(f"||TT* - T*T|| = {defect:.3e}")
    return nrm


def _eigen_clusters(w, tol):
    """Group sorted eigenvalues into runs whose consecutive gaps are <= tol."""
    groups, start = [], 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > tol:
            groups.append(list(range(start, k)))
            start = k
    return groups


def quaternionic_basis_of(E: np.ndarray, tol: float = 1e-6) -> list:
    """Quaternionic orthonormal basis of a sigma-invariant subspace of C^{2n}.

    ``E`` has orthonormal columns spanning the subspace.  Standard basis
    vectors projected onto the subspace are scanned in order; each pick
    is orthogonalised against earlier picks and their sigma images.
    """
    dim = E.shape[1] // 2
    m = E.shape[0]
    picks: list = []
    for s in range(m):
        if len(picks) == dim:
            break
        v = E @ E[s].conj()
        for p in picks:
            v = v - p * np.vdot(p, v)
            sp = sigma(p)
            v = v - sp * np.vdot(sp, v)
        nv = np.linalg.norm(v)
        if nv > tol:
            picks.append(v / nv)
    return [complex_to_vec(p) for p in picks]


def decompose(T: QMatrix, unit=I, tol_normal: float = TAU_NORMAL,
              tol_ker: float = TAU_KER) -> SliceDecomposition:
    """``T = A + J B`` with ``A = (T+T*)/2``, ``B = |T-T*|/2``.

    On the range of B, ``J = (T - A) B^+``.  On ``Ker B`` the eigenbasis of
    ``A`` restricted there is used and ``J w = w unit``.
    """
    unit = require_unit(unit)
    nrm = _check_normal(T, tol_normal)
    n = T.n
    Th = T.adjoint()
    A = (T + Th) * 0.5
    # |T - T*| from the Hermitian matrix -i chi(T - T*): eigenvalues are
    # accurate to machine precision, unlike a square root of (T-T*)*(T-T*)
    H = -1j * chi(T - Th)
    hw, V = np.linalg.eigh((H + H.conj().T) / 2)
    w = np.abs(hw) / 2
    B = chi_inverse((V * w) @ V.conj().T)
    # cutoff against ||T|| too, so roundoff in T - T* is not taken as range
    ref = max(float(w.max()) if w.size else 0.0, nrm)
    rng_mask = w > tol_ker * ref if ref > 0 else np.zeros_like(w, dtype=bool)
    Vr, Vk = V[:, rng_mask], V[:, ~rng_mask]
    pinv = chi_inverse((Vr / w[rng_mask]) @ Vr.conj().T)
    Jr = (T - A) @ pinv

    Jk = QMatrix.zeros(n)
    if Vk.shape[1]:
        ca = chi(A)
        Ak = Vk.conj().T @ ca @ Vk
        Ak = (Ak + Ak.conj().T) / 2
        wa, Va = np.linalg.eigh(Ak)
        anorm = max(float(np.max(np.abs(wa))), 1.0)
        for group in _eigen_clusters(wa, 1e-8 * anorm):
            E = Vk @ Va[:, group]
            for vec in quaternionic_basis_of(E):
                Jk = Jk + _rank_one(vec, unit)
    Jm = Jr + Jk
    Jm = (Jm - Jm.adjoint()) * 0.5
    return SliceDecomposition(A, B, Jm, unit)


def _rank_one(z, q) -> QMatrix:
    """``z q z*``."""
    return outer(right_mul(z, q), z)


def check_anti_unitary(J: QMatrix, tol: float = TAU_J):
    n = J.n
    d1 = (J.adjoint() + J).scale()
    d2 = (J.adjoint() @ J).max_abs_diff(QMatrix.identity(n))
    if max(d1, d2) > tol:
        raise NotAntiUnitary(f"J fails J* = -J or J*J = I by {max(d1, d2):.3e}")


def plus_projection(J: QMatrix, unit, u) -> np.ndarray:
    """``u_+ = (u - J u unit) / 2``."""
    return (u - right_mul(J.apply(u), unit)) / 2


def complex_subspace_basis(J: QMatrix, unit=I, tol: float = TAU_J) -> ComplexSubspaceBasis:
    """Orthonormal C_unit basis of ``{u : J u = u unit}``.

    Candidates ``e_s`` and ``e_s aux`` (aux anticommuting with unit) are
    projected by ``u -> u_+``, which maps H^n onto the subspace, and then
    orthonormalised over C_unit.
    """
    unit = require_unit(unit)
    check_anti_unitary(J, tol)
    n = J.n
    aux = orthogonal_unit(unit)
    picks: list = []
    for s in range(n):
        for q in (Quaternion(1.0), aux):
            if len(picks) == n:
                break
            e = np.zeros((n, 4))
            e[s] = q.as_array()
            v = plus_projection(J, unit, e)
            for z in picks:
                v = v - right_mul(z, _project_to_slice(inner(z, v), unit))
            nv = vnorm(v)
            if nv > 1e-6:
                picks.append(v / nv)
    if len(picks) != n:
        raise NotAntiUnitary(f"complex subspace has dimension {len(picks)}, expected {n}")
    return ComplexSubspaceBasis(QMatrix.from_columns(picks), J, unit)


def _project_to_slice(q: Quaternion, unit: Quaternion) -> Quaternion:
    return from_slice_coordinates(slice_coordinates(q, unit), unit)


def restrict_to_plus(T: QMatrix, basis: ComplexSubspaceBasis, tol: float = TAU_J) -> np.ndarray:
    """Complex matrix ``<z_a | T z_b>`` read through ``unit -> 1j``."""
    J = basis.J
    if T.shape != J.shape:
        raise DimensionMismatch("T and J differ in size")
    defect = (T @ J - J @ T).scale()
    if defect > tol * max(1.0, T.scale()):
        raise DoesNotCommuteWithJ(f"||TJ - JT|| = {defect:.3e}")
    Z = basis.vectors
    G = (Z.adjoint() @ T @ Z).data
    return _slice_coords(G, basis.unit)


def _complex_to_quaternion_array(M, unit: Quaternion) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    out = np.zeros(M.shape + (4,))
    out[..., 0] = M.real
    out[..., 1:] = M.imag[..., None] * unit.vector()
    return out


def _slice_coords(G: np.ndarray, unit: Quaternion) -> np.ndarray:
    return G[..., 0] + 1j * (G[..., 1:] @ unit.vector())


def apply_plus(M, basis: ComplexSubspaceBasis, X: QMatrix) -> QMatrix:
    """Apply the complex operator ``M`` to the columns of ``X``, each lying
    in the complex subspace."""
    Z = basis.vectors
    coords = _slice_coords((Z.adjoint() @ X).data, basis.unit)
    y = np.asarray(M, dtype=complex) @ coords
    return Z @ QMatrix(_complex_to_quaternion_array(y, basis.unit))


def extend_complex_operator(M, basis: ComplexSubspaceBasis, aux_unit=None) -> QMatrix:
    """The right linear extension ``u -> M(u_+) - M(u_- aux) aux``.

    All standard basis vectors are processed at once as the columns of I.
    """
    unit = basis.unit
    aux = orthogonal_unit(unit) if aux_unit is None else Quaternion.coerce(aux_unit)
    if not aux.is_imaginary_unit() or abs(float(np.dot(aux.vector(), unit.vector()))) > 1e-10:
        raise BadAuxiliaryUnit(f"{aux!r} does not anticommute with {unit!r}")
    M = np.asarray(M, dtype=complex)
    if M.shape != (basis.n, basis.n):
        raise DimensionMismatch(f"complex matrix of shape {M.shape} for dimension {basis.n}")
    n = basis.vectors.shape[0]
    eye = QMatrix.identity(n)
    plus = (eye - basis.J.right_scalar(unit)) * 0.5
    minus = eye - plus
    return apply_plus(M, basis, plus) - apply_plus(M, basis, minus.right_scalar(aux)).right_scalar(aux)


def slice_complex_to_quaternion(M, unit) -> QMatrix:
    """Embed a complex matrix entrywise into C_unit."""
    return QMatrix(_complex_to_quaternion_array(M, Quaternion.coerce(unit)))
