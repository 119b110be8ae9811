"""Left spectrum of a normal matrix with respect to an associated left multiplication."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NotAssociatedPair, NotEigenvalue
from .left_mult import LeftScalarMultiplication
from .qmatrix import QMatrix, chi, det_c, inverse, operator_norm, right_mul
from .quaternion import I, Quaternion, SlicePoint, orthogonal_unit, require_unit
from .spectral.calculus import integrate
from .spectral.pvm import IqPVM, verify_propL_conditions

TAU_SING = 1e-10
TAU_RANK = 1e-8


@dataclass(frozen=True)
class LeftSpectrumReport:
    point: tuple
    residual: tuple = ()
    continuous: tuple = ()
    resolvent_samples: tuple = field(default=())
    note: str = "continuous left spectrum is empty in finite dimension"

    def to_json(self) -> dict:
        return {
            "point": [[p.alpha, p.beta] for p in self.point],
            "residual": [],
            "continuous": [],
            "resolvent_samples": [
                {"q": q.as_list(), "resolvent": R.to_json()} for q, R in self.resolvent_samples
            ],
            "note": self.note,
        }


def _require_associated(T: QMatrix, L: LeftScalarMultiplication, unit):
    if not verify_propL_conditions(T, L, unit):
        raise NotAssociatedPair("L does not satisfy the conditions tying it to T")


def singularity_threshold(T: QMatrix, q, tol: float = TAU_SING) -> float:
    q = Quaternion.coerce(q)
    return tol * max(1.0, operator_norm(T) + q.norm()) ** (2 * T.n)


def left_membership(T: QMatrix, L: LeftScalarMultiplication, q, unit=I,
                    tol: float = TAU_SING, check: bool = True) -> str:
    """``"point"`` if ``T - L_q`` is singular, else ``"resolvent"``."""
    unit = require_unit(unit)
    if check:
        _require_associated(T, L, unit)
    d = det_c(T - L.of(q))
    return "point" if d <= singularity_threshold(T, q, tol) else "resolvent"


def left_resolvent(T: QMatrix, L: LeftScalarMultiplication, q, tol: float = TAU_SING) -> QMatrix:
    """``(T - L_q)^{-1}``."""
    return inverse(T - L.of(q), tol)


def calculus_resolvent(pvm: IqPVM, q) -> QMatrix:
    """``sum_lambda L_{(lambda - q)^{-1}} P_lambda``."""
    q = Quaternion.coerce(q)
    return integrate(lambda z: (z - q).inverse(), pvm)


def _cluster_points(values, tol):
    reps: list = []
    for v in sorted(values, key=lambda c: (-c.real, c.imag)):
        if not any(abs(v - r) <= tol for r in reps):
            reps.append(v)
    return reps


def left_point_spectrum(T: QMatrix, L: LeftScalarMultiplication, unit=I,
                        tol: float = 1e-7) -> list:
    """Points of C_unit where ``T - L_q`` is singular.

    ``L_unit`` squares to ``-I`` and commutes with ``T``.  On the ``+i``
    and ``-i`` eigenspaces of ``chi(L_unit)`` the operator ``chi(T - L_q)``
    for ``q = a + unit b`` is ``T_+ - (a + ib)`` and ``T_- - (a - ib)``,
    so the zeros come from the eigenvalues of these two compressions.
    The result is not assumed to lie in the upper half plane.
    """
    unit = require_unit(unit)
    CL = chi(L.of(unit))
    CT = chi(T)
    H = -1j * CL
    w, V = np.linalg.eigh((H + H.conj().T) / 2)
    pts = []
    for sign in (1.0, -1.0):
        Q = V[:, np.abs(w - sign) < 0.5]
        ev = scipy.linalg.eigvals(Q.conj().T @ CT @ Q)
        pts.extend(ev if sign > 0 else ev.conj())
    return _cluster_points(pts, tol * max(1.0, operator_norm(T)))


def spherical_point_spectrum(T: QMatrix, tol: float = 1e-7) -> list:
    """Representatives ``Re z + i |Im z|`` of the eigenvalues of ``chi(T)``."""
    ev = scipy.linalg.eigvals(chi(T))
    pts = [complex(z.real, abs(z.imag)) for z in ev]
    return _cluster_points(pts, tol * max(1.0, operator_norm(T)))


def hausdorff(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size == 0 or b.size == 0:
        return 0.0 if a.size == b.size else np.inf
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def left_spectrum(T: QMatrix, L: LeftScalarMultiplication, unit=I, samples=(),
                  tol: float = TAU_SING) -> LeftSpectrumReport:
    """Report of the left spectrum with optional resolvent samples."""
    unit = require_unit(unit)
    _require_associated(T, L, unit)
    pts = [SlicePoint(c.real, max(c.imag, 0.0), unit) for c in left_point_spectrum(T, L, unit)]
    res = []
    for q in samples:
        q = Quaternion.coerce(q)
        if left_membership(T, L, q, unit, tol, check=False) == "resolvent":
            res.append((q, left_resolvent(T, L, q, tol)))
    return LeftSpectrumReport(tuple(pts), resolvent_samples=tuple(res))


def realify(apply, n: int) -> np.ndarray:
    """Real ``4n x 4n`` matrix of a real linear map on H^n."""
    cols = []
    for s in range(n):
        for c in range(4):
            e = np.zeros((n, 4))
            e[s, c] = 1.0
            cols.append(np.asarray(apply(e)).reshape(-1))
    return np.array(cols).T


def real_kernel_dim(M: np.ndarray, tol: float = TAU_RANK) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    scale = max(1.0, float(s[0]) if s.size else 0.0)
    return int(np.sum(s <= tol * scale))


def real_kernel(M: np.ndarray, tol: float = TAU_RANK) -> np.ndarray:
    """Orthonormal basis (columns) of the real kernel."""
    _, s, Vt = np.linalg.svd(M)
    scale = max(1.0, float(s[0]) if s.size else 0.0)
    return Vt[s <= tol * scale].T


def right_eigenspace_matrix(T: QMatrix, q) -> np.ndarray:
    """Real matrix of ``u -> T u - u q``."""
    q = Quaternion.coerce(q)
    return realify(lambda u: T.apply(u) - right_mul(u, q), T.n)


def eigenspace_compare(T: QMatrix, L: LeftScalarMultiplication, q, unit=I,
                       tol: float = TAU_RANK) -> dict:
    """Real dimensions of ``{u : Tu = uq}`` and ``Ker(T - L_q)``."""
    q = q.as_quaternion() if isinstance(q, SlicePoint) else Quaternion.coerce(q)
    right = right_eigenspace_matrix(T, q)
    TL = T - L.of(q)
    left = realify(TL.apply, T.n)
    rdim = real_kernel_dim(right, tol)
    ldim = real_kernel_dim(left, tol)
    if ldim == 0:
        raise NotEigenvalue(f"{q!r} is not a left eigenvalue")
    K = real_kernel(right, tol)
    scale = max(1.0, TL.scale())
    subset = bool(K.size == 0 or np.max(np.abs(left @ K)) <= 1e3 * tol * scale)
    return {
        "right_dim_real": rdim,
        "left_dim_real": ldim,
        "right_subset_left": subset,
        "equality": bool(subset and rdim == ldim),
    }


def star_conjugating_unitary(L: LeftScalarMultiplication, unit=I, aux=None) -> QMatrix:
    """``U = L_{-aux}``, which satisfies ``U* T U = T*`` for associated L."""
    unit = require_unit(unit)
    aux = orthogonal_unit(unit) if aux is None else require_unit(aux)
    return L.of(-aux)


__all__ = [
    "LeftSpectrumReport", "calculus_resolvent", "eigenspace_compare", "hausdorff",
    "left_membership", "left_point_spectrum", "left_resolvent", "left_spectrum",
    "real_kernel", "real_kernel_dim", "realify", "right_eigenspace_matrix",
    "spherical_point_spectrum", "star_conjugating_unitary",
]
