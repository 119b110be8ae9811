"""Quaternionic matrices acting on H^n by left matrix multiplication.

Internally an ``m x p`` matrix is a float array of shape ``(m, p, 4)``.
Products are formed through the split ``M = A + B j`` with complex
``A, B``, which turns the Hamilton product into two complex matrix
products:

    (A + B j)(C + D j) = (A C - B conj(D)) + (A D + B conj(C)) j

Vectors of H^n are plain arrays of shape ``(n, 4)``.

The complex representation used throughout is

    chi(A + B j) = [[A, -B], [conj(B), conj(A)]],

under which ``u = x + y j`` corresponds to ``(x, conj(y))`` in C^{2n}.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotInRepresentationImage, NotPositive, Singular
from .quaternion import Quaternion, from_complex_pair, qconj_arrays, qmul_arrays, to_complex_pair

TAU_REP = 1e-8
TAU_SING = 1e-10
TAU_POS = 1e-9


class QMatrix:
    """Dense quaternionic matrix (immutable)."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise DimensionMismatch(f"expected an (m, p, 4) array, got shape {arr.shape}")
        arr.setflags(write=False)
        self._data = arr

    # construction -------------------------------------------------------
    @classmethod
    def from_complex_pair(cls, a, b) -> "QMatrix":
        return cls(from_complex_pair(a, b))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "QMatrix":
        return cls(np.zeros((n, n if m is None else m, 4)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.scalar(Quaternion(1.0), n)

    @classmethod
    def scalar(cls, q, n: int) -> "QMatrix":
        """The diagonal matrix ``q I`` (entrywise left multiplication by q)."""
        data = np.zeros((n, n, 4))
        idx = np.arange(n)
        data[idx, idx] = Quaternion.coerce(q).as_array()
        return cls(data)

    @classmethod
    def diag(cls, values) -> "QMatrix":
        values = [Quaternion.coerce(v).as_array() for v in values]
        n = len(values)
        data = np.zeros((n, n, 4))
        for r, v in enumerate(values):
            data[r, r] = v
        return cls(data)

    @classmethod
    def from_entries(cls, rows) -> "QMatrix":
        """Build from nested rows of anything coercible to a Quaternion."""
        return cls(np.array([[Quaternion.coerce(q).as_array() for q in row] for row in rows]))

    @classmethod
    def from_columns(cls, vectors) -> "QMatrix":
        """Stack vectors of shape (n, 4) as the columns of a matrix."""
        vs = [np.asarray(v, dtype=float).reshape(-1, 4) for v in vectors]
        if not vs:
            raise DimensionMismatch("need at least one column")
        return cls(np.stack(vs, axis=1))

    # access ------------------------------------------------------------------
    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple:
        return self._data.shape[:2]

    @property
    def n(self) -> int:
        return self._data.shape[0]

    def is_square(self) -> bool:
        return self._data.shape[0] == self._data.shape[1]

    def __getitem__(self, idx) -> Quaternion:
        r, s = idx
        return Quaternion.from_array(self._data[r, s])

    def column(self, s: int) -> np.ndarray:
        return self._data[:, s].copy()

    def columns(self) -> list:
        return [self.column(s) for s in range(self.shape[1])]

    def complex_pair(self):
        return to_complex_pair(self._data)

    # algebra -------------------------------------------------------------------
    def _check_same(self, other):
        if not isinstance(other, QMatrix):
            raise TypeError("expected a QMatrix")
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same(other)
        return QMatrix(self._data + other._data)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same(other)
        return QMatrix(self._data - other._data)

    def __neg__(self):
        return QMatrix(-self._data)

    def __mul__(self, r):
        """Multiplication by a real scalar."""
        if isinstance(r, (int, float, np.floating, np.integer)):
            return QMatrix(self._data * float(r))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, r):
        if isinstance(r, (int, float, np.floating, np.integer)):
            return QMatrix(self._data / float(r))
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            a, b = self.complex_pair()
            c, d = other.complex_pair()
            return QMatrix.from_complex_pair(a @ c - b @ d.conj(), a @ d + b @ c.conj())
        if isinstance(other, np.ndarray):
            return self.apply(other)
        return NotImplemented

    def adjoint(self) -> "QMatrix":
        return QMatrix(qconj_arrays(np.swapaxes(self._data, 0, 1)))

    @property
    def H(self) -> "QMatrix":
        return self.adjoint()

    def apply(self, u) -> np.ndarray:
        """The vector ``M u`` for ``u`` of shape (p, 4)."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.shape[1], 4):
            raise DimensionMismatch(f"vector of shape {u.shape} for matrix {self.shape}")
        return (self @ QMatrix(u[:, None, :])).data[:, 0, :].copy()

    def left_scalar(self, q) -> "QMatrix":
        """Entrywise ``q M_rs``."""
        return QMatrix(qmul_arrays(Quaternion.coerce(q).as_array(), self._data))

    def right_scalar(self, q) -> "QMatrix":
        """Entrywise ``M_rs q``."""
        return QMatrix(qmul_arrays(self._data, Quaternion.coerce(q).as_array()))

    # norms -------------------------------------------------------------------
    def scale(self) -> float:
        """Largest entry modulus."""
        if self._data.size == 0:
            return 0.0
        return float(np.max(np.linalg.norm(self._data, axis=2)))

    def fro(self) -> float:
        return float(np.linalg.norm(self._data))

    def allclose(self, other: "QMatrix", tol: float = 1e-10) -> bool:
        self._check_same(other)
        return float(np.max(np.abs(self._data - other._data), initial=0.0)) <= tol

    def max_abs_diff(self, other: "QMatrix") -> float:
        self._check_same(other)
        return float(np.max(np.linalg.norm(self._data - other._data, axis=2), initial=0.0))

    # serialisation ---------------------------------------------------------------
    def to_json(self) -> dict:
        if not self.is_square():
            raise DimensionMismatch("only square matrices are serialised")
        return {"n": self.n, "entries": self._data.tolist()}

    @classmethod
    def from_json(cls, obj) -> "QMatrix":
        try:
            n = int(obj["n"])
            data = np.array(obj["entries"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed QMatrix JSON: {exc}") from exc
        if data.shape != (n, n, 4):
            raise ValueError(f"QMatrix JSON entries have shape {data.shape}, expected {(n, n, 4)}")
        return cls(data)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and np.array_equal(self._data, other._data)

    __hash__ = None

    def __repr__(self):
        return f"QMatrix(shape={self.shape})"


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def as_vector(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or u.shape[1] != 4:
        raise DimensionMismatch(f"expected a vector of shape (n, 4), got {u.shape}")
    return u


def inner(u, v) -> Quaternion:
    """``<u|v> = sum conj(u_s) v_s``."""
    u, v = as_vector(u), as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatch("vector lengths differ")
    return Quaternion.from_array(qmul_arrays(qconj_arrays(u), v).sum(axis=0))


def vnorm(u) -> float:
    return float(np.linalg.norm(as_vector(u)))


def right_mul(u, q) -> np.ndarray:
    """The vector ``u q``."""
    return qmul_arrays(as_vector(u), Quaternion.coerce(q).as_array())


def outer(u, v) -> QMatrix:
    """The matrix ``u v*``."""
    u, v = as_vector(u), as_vector(v)
    return QMatrix(qmul_arrays(u[:, None, :], qconj_arrays(v)[None, :, :]))


def vec_to_complex(u) -> np.ndarray:
    """``x + y j  ->  (x, conj(y))`` in C^{2n}."""
    x, y = to_complex_pair(as_vector(u))
    return np.concatenate([x, y.conj()])


def complex_to_vec(c) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    n = c.shape[0] // 2
    return from_complex_pair(c[:n], c[n:].conj())


def sigma(c) -> np.ndarray:
    """Right multiplication by ``j`` read in C^{2n}: ``(v1, v2) -> (-conj v2, conj v1)``."""
    c = np.asarray(c, dtype=complex)
    n = c.shape[0] // 2
    return np.concatenate([-c[n:].conj(), c[:n].conj()])


# ---------------------------------------------------------------------------
# complex representation and derived operations
# ---------------------------------------------------------------------------

def chi(M: QMatrix) -> np.ndarray:
    """Complex representation ``[[A, -B], [conj B, conj A]]``."""
    a, b = M.complex_pair()
    return np.block([[a, -b], [b.conj(), a.conj()]])


def chi_inverse(C, tol: float = TAU_REP) -> QMatrix:
    """Pull a matrix in the image of :func:`chi` back to H.

    The two block pairs are averaged; a deviation larger than
    ``tol * max(1, max|C|)`` raises NotInRepresentationImage.
    """
    C = np.asarray(C, dtype=complex)
    if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape[0] % 2:
        raise DimensionMismatch(f"expected a square matrix of even size, got {C.shape}")
    n = C.shape[0] // 2
    c11, c12, c21, c22 = C[:n, :n], C[:n, n:], C[n:, :n], C[n:, n:]
    scale = max(1.0, float(np.max(np.abs(C), initial=0.0)))
    dev = max(
        float(np.max(np.abs(c11 - c22.conj()), initial=0.0)),
        float(np.max(np.abs(c12 + c21.conj()), initial=0.0)),
    )
    if dev > tol * scale:
        raise NotInRepresentationImage(f"block symmetry violated by {dev:.3e}")
    a = (c11 + c22.conj()) / 2
    b = (c21.conj() - c12) / 2
    return QMatrix.from_complex_pair(a, b)


def det_c(M: QMatrix) -> float:
    """Determinant of the complex representation (real and nonnegative)."""
    return float(np.linalg.det(chi(M)).real)


def _require_square(M: QMatrix):
    if not M.is_square():
        raise DimensionMismatch(f"square matrix required, got {M.shape}")


def inverse(M: QMatrix, tol: float = TAU_SING) -> QMatrix:
    """Inverse through the complex representation."""
    _require_square(M)
    scale = M.scale()
    d = det_c(M)
    if scale == 0.0 or d <= tol * scale ** (2 * M.n):
        raise Singular(f"matrix is singular (det_c = {d:.3e})")
    return chi_inverse(np.linalg.inv(chi(M)))


def operator_norm(M: QMatrix) -> float:
    """Largest singular value."""
    if M.data.size == 0:
        return 0.0
    return float(np.linalg.norm(chi(M), 2))


def is_self_adjoint(M: QMatrix, tol: float = TAU_POS) -> bool:
    return M.max_abs_diff(M.adjoint()) <= tol * max(1.0, M.scale())


def hermitian_function(M: QMatrix, func, tol: float = TAU_POS) -> QMatrix:
    """Apply a real function to the spectrum of a self-adjoint matrix."""
    _require_square(M)
    C = chi(M)
    C = (C + C.conj().T) / 2
    w, V = np.linalg.eigh(C)
    return chi_inverse((V * func(w)) @ V.conj().T)


def sqrt_positive(M: QMatrix, tol: float = TAU_POS) -> QMatrix:
    """Positive square root of a positive self-adjoint matrix."""
    _require_square(M)
    scale = max(1.0, M.scale())
    if M.max_abs_diff(M.adjoint()) > tol * scale:
        raise NotPositive("matrix is not self-adjoint")
    C = chi(M)
    C = (C + C.conj().T) / 2
    w, V = np.linalg.eigh(C)
    if w.size and w[0] < -tol * scale:
        raise NotPositive(f"matrix has negative eigenvalue {w[0]:.3e}")
    # rounding noise near zero would otherwise grow to its square root
    floor = 64 * np.finfo(float).eps * float(np.max(np.abs(w), initial=0.0))
    w = np.where(w <= floor, 0.0, w)
    return chi_inverse((V * np.sqrt(w)) @ V.conj().T)


def abs_op(M: QMatrix) -> QMatrix:
    """``|M| = sqrt(M* M)``."""
    return sqrt_positive(M.adjoint() @ M)


def normality_defect(M: QMatrix) -> float:
    """``||M M* - M* M||``."""
    return operator_norm(M @ M.adjoint() - M.adjoint() @ M)
