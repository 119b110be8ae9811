"""Left scalar multiplications ``q -> L_q`` on H^n.

A left scalar multiplication is stored by the two matrices ``Li`` and
``Lj``; real linearity fixes everything else:

    L_q = q0 I + q1 Li + q2 Lj + q3 Li Lj.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotLeftScalarMultiplication, NotOrthonormal
from .qmatrix import QMatrix, inner, right_mul, vnorm
from .quaternion import I, J, K, Quaternion

TAU_ORTH = 1e-9
TAU_LMULT = 1e-9


@dataclass(frozen=True, eq=False)
class LeftScalarMultiplication:
    Li: QMatrix
    Lj: QMatrix

    def __post_init__(self):
        if not (self.Li.is_square() and self.Li.shape == self.Lj.shape):
            raise DimensionMismatch("Li and Lj must be square of equal size")

    @property
    def n(self) -> int:
        return self.Li.n

    @property
    def Lk(self) -> QMatrix:
        return self.Li @ self.Lj

    def of(self, q) -> QMatrix:
        """The matrix ``L_q``."""
        q = Quaternion.coerce(q)
        data = q.w * np.eye(self.n)[:, :, None] * np.array([1.0, 0, 0, 0])
        data = data + q.x * self.Li.data + q.y * self.Lj.data + q.z * self.Lk.data
        return QMatrix(data)

    __call__ = of

    def apply(self, q, u) -> np.ndarray:
        return self.of(q).apply(u)

    @classmethod
    def standard(cls, n: int) -> "LeftScalarMultiplication":
        """``q -> q I``, induced by the standard basis."""
        return cls(QMatrix.scalar(I, n), QMatrix.scalar(J, n))

    def is_valid(self, tol: float = TAU_LMULT) -> bool:
        return is_left_scalar_multiplication(self.Li, self.Lj, tol)

    def distance(self, other: "LeftScalarMultiplication") -> float:
        return max(self.Li.max_abs_diff(other.Li), self.Lj.max_abs_diff(other.Lj))

    def to_json(self) -> dict:
        return {"Li": self.Li.to_json(), "Lj": self.Lj.to_json()}

    @classmethod
    def from_json(cls, obj) -> "LeftScalarMultiplication":
        try:
            return cls(QMatrix.from_json(obj["Li"]), QMatrix.from_json(obj["Lj"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed left multiplication JSON: {exc}") from exc


def orthonormality_defect(vectors) -> float:
    Z = QMatrix.from_columns(vectors)
    return (Z.adjoint() @ Z).max_abs_diff(QMatrix.identity(Z.shape[1]))


def from_basis(vectors, tol: float = TAU_ORTH) -> LeftScalarMultiplication:
    """The left multiplication ``L_q u = sum_z z q <z|u>`` of a Hilbert basis."""
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    Z = QMatrix.from_columns(vectors)
    n = Z.shape[0]
    if Z.shape[1] != n:
        raise NotOrthonormal(f"need {n} vectors, got {Z.shape[1]}")
    defect = orthonormality_defect(vectors)
    if defect > tol:
        raise NotOrthonormal(f"basis deviates from orthonormal by {defect:.3e}")
    Zh = Z.adjoint()
    return LeftScalarMultiplication(
        Z @ QMatrix.scalar(I, n) @ Zh, Z @ QMatrix.scalar(J, n) @ Zh
    )


def left_mult_defects(Li: QMatrix, Lj: QMatrix) -> dict:
    """Residuals of the defining relations of a left multiplication."""
    n = Li.n
    eye = QMatrix.identity(n)
    return {
        "Li^2=-I": (Li @ Li + eye).scale(),
        "Lj^2=-I": (Lj @ Lj + eye).scale(),
        "LiLj=-LjLi": (Li @ Lj + Lj @ Li).scale(),
        "Li*=-Li": (Li.adjoint() + Li).scale(),
        "Lj*=-Lj": (Lj.adjoint() + Lj).scale(),
    }


def is_left_scalar_multiplication(Li: QMatrix, Lj: QMatrix, tol: float = TAU_LMULT) -> bool:
    if not (Li.is_square() and Li.shape == Lj.shape):
        raise DimensionMismatch("Li and Lj must be square of equal size")
    return max(left_mult_defects(Li, Lj).values()) <= tol


def basis_from_left_mult(L: LeftScalarMultiplication, subspace: QMatrix | None = None,
                         tol: float = TAU_LMULT) -> list:
    """Orthonormal vectors ``z`` with ``L_q z = z q`` for every q.

    Without ``subspace`` the result is a Hilbert basis of H^n.  Otherwise
    ``subspace`` must be the orthogonal projector onto an L-invariant
    subspace and the result is a basis of that subspace.

    Candidates ``c`` are scanned from ``e_s, e_s i, e_s j, e_s k``.  Each
    is projected into the remaining subspace and then onto
    ``{x : L_k x = x k}``.  If ``L_i x + x i`` vanishes, ``x k`` is used
    instead; the new vector is ``x - L_i x i``.
    """
    if not L.is_valid(tol * 10):
        raise NotLeftScalarMultiplication("relations of a left multiplication fail")
    n = L.n
    Li, Lk = L.Li, L.Lk
    proj = QMatrix.identity(n) if subspace is None else subspace
    target = int(round(np.trace(proj.data[:, :, 0]))) if subspace is not None else n
    found: list = []
    eye = np.zeros((n, 4))
    for s in range(n):
        for unit in (Quaternion(1.0), I, J, K):
            if len(found) == target:
                return found
            c = eye.copy()
            c[s] = unit.as_array()
            c = proj.apply(c)
            for z in found:
                c = c - right_mul(z, inner(z, c))
            x = (c - right_mul(Lk.apply(c), K)) / 2
            if vnorm(x) <= 1e-6:
                continue
            y = Li.apply(x) + right_mul(x, I)
            if vnorm(y) <= 1e-6 * vnorm(x):
                x = right_mul(x, K)
            z = x - right_mul(Li.apply(x), I)
            nz = vnorm(z)
            if nz <= 1e-6:
                continue
            z = z / nz
            for w in found:
                z = z - right_mul(w, inner(w, z))
            found.append(z / vnorm(z))
    if len(found) != target:
        raise NotLeftScalarMultiplication(
            f"found {len(found)} fixed vectors, expected {target}")
    return found
