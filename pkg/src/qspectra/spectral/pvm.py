"""Finite support intertwining projection valued measures of normal matrices."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import ClusterAmbiguity, DimensionMismatch
from ..left_mult import LeftScalarMultiplication, from_basis
from ..qmatrix import QMatrix, chi, operator_norm, outer
from ..quaternion import I, Quaternion, SlicePoint, circularize, orthogonal_unit, require_unit
from ..slice_decomp import (
    _complex_to_quaternion_array, complex_subspace_basis, decompose, extend_complex_operator,
    restrict_to_plus,
)

log = logging.getLogger(__name__)

CLUSTER_REL = 1e-8
TAU_PVM = 1e-8
TAU_PROPL = 1e-8


@dataclass(frozen=True, eq=False)
class IqPVM:
    """Support points in the closed upper half of C_unit, one orthogonal
    projector per point, and a left multiplication commuting with them."""

    unit: Quaternion
    support: tuple
    projectors: tuple
    L: LeftScalarMultiplication
    eigenvectors: tuple = ()

    @property
    def n(self) -> int:
        return self.L.n

    def points(self) -> list:
        """Support points as quaternions."""
        return [p.as_quaternion() for p in self.support]

    def rank(self, idx: int) -> int:
        return int(round(float(np.trace(self.projectors[idx].data[:, :, 0]))))

    def defects(self) -> dict:
        n = self.n
        eye = QMatrix.identity(n)
        d = {"idempotent": 0.0, "self_adjoint": 0.0, "orthogonal": 0.0, "commutes_with_L": 0.0}
        total = QMatrix.zeros(n)
        for a, P in enumerate(self.projectors):
            total = total + P
            d["idempotent"] = max(d["idempotent"], (P @ P).max_abs_diff(P))
            d["self_adjoint"] = max(d["self_adjoint"], P.adjoint().max_abs_diff(P))
            for Lm in (self.L.Li, self.L.Lj):
                d["commutes_with_L"] = max(d["commutes_with_L"], (P @ Lm).max_abs_diff(Lm @ P))
            for b in range(a + 1, len(self.projectors)):
                d["orthogonal"] = max(d["orthogonal"], (P @ self.projectors[b]).scale())
        d["sums_to_identity"] = total.max_abs_diff(eye)
        return d

    def is_valid(self, tol: float = TAU_PVM) -> bool:
        return max(self.defects().values()) <= tol and self.L.is_valid(tol)

    def to_json(self) -> dict:
        return {
            "unit": self.unit.as_list(),
            "support": [[p.alpha, p.beta] for p in self.support],
            "projectors": [P.to_json() for P in self.projectors],
            "L": self.L.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "IqPVM":
        try:
            unit = require_unit(obj["unit"])
            support = tuple(SlicePoint(a, b, unit) for a, b in obj["support"])
            projectors = tuple(QMatrix.from_json(p) for p in obj["projectors"])
            L = LeftScalarMultiplication.from_json(obj["L"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed IqPVM JSON: {exc}") from exc
        if len(support) != len(projectors):
            raise ValueError("support and projectors differ in length")
        return cls(unit, support, projectors, L)


def _single_linkage(values: np.ndarray, tol: float) -> list:
    """Connected components of the graph joining values closer than ``tol``."""
    m = len(values)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    dist = np.abs(values[:, None] - values[None, :])
    for a in range(m):
        for b in range(a + 1, m):
            if dist[a, b] <= tol:
                parent[find(a)] = find(b)
    groups: dict = {}
    for a in range(m):
        groups.setdefault(find(a), []).append(a)
    clusters = list(groups.values())
    for x in range(len(clusters)):
        for y in range(x + 1, len(clusters)):
            gap = dist[np.ix_(clusters[x], clusters[y])].min()
            if gap <= 10 * tol:
                raise ClusterAmbiguity(
                    f"eigenvalue clusters separated by {gap:.3e}, within 10x cluster_tol {tol:.3e}")
    return clusters


def _phase_normalise(u: np.ndarray, unit: Quaternion, aux: Quaternion) -> np.ndarray:
    """Multiply ``u`` on the right by a unit of C_unit so that the C_unit
    part of its first significant component lies on ``unit * R_+``.

    Writing a component as ``a + b aux`` with ``a, b`` in C_unit, the
    rule looks at ``a``; if every ``a`` vanishes it looks at ``b``.
    """
    uv = unit.vector()
    a = u[:, 0] + 1j * (u[:, 1:] @ uv)
    if np.max(np.abs(a)) > 1e-6:
        s = int(np.argmax(np.abs(a) > 1e-6))
        c = 1j * np.conj(a[s]) / abs(a[s])
    else:
        rest = u - _complex_to_quaternion_array(a, unit)
        b = np.array([_mul_right(r, aux.conj()) for r in rest])
        b = b[:, 0] + 1j * (b[:, 1:] @ uv)
        s = int(np.argmax(np.abs(b) > 1e-6))
        # (b aux) c = b conj(c) aux
        c = np.conj(1j * np.conj(b[s]) / abs(b[s]))
    cq = Quaternion(c.real) + unit * c.imag
    return np.array([_mul_right(r, cq) for r in u])


def _mul_right(r, q) -> np.ndarray:
    return (Quaternion.from_array(r) * q).as_array()


def spectral_decompose(T: QMatrix, unit=I, cluster_tol: float | None = None) -> IqPVM:
    """The iqPVM ``(P, L)`` with ``T = sum_lambda L_lambda P_lambda``.

    The normal complex matrix ``T_+`` (T restricted to ``{u : J u = u unit}``)
    is unitarily diagonalised by a complex Schur form; eigenvalues are
    clustered by single linkage.
    """
    unit = require_unit(unit)
    dec = decompose(T, unit)
    basis = complex_subspace_basis(dec.J, unit)
    Tp = restrict_to_plus(T, basis)
    nrm = operator_norm(T)
    if cluster_tol is None:
        cluster_tol = CLUSTER_REL * (nrm if nrm > 0 else 1.0)
    R, Zc = scipy.linalg.schur(Tp, output="complex")
    evals = np.diag(R).copy()
    clusters = _single_linkage(evals, cluster_tol)
    reps = []
    for group in clusters:
        lam = complex(np.mean(evals[group]))
        if lam.imag < -max(cluster_tol, 1e-10):
            log.warning("eigenvalue %r below the real axis", lam)
        reps.append(complex(lam.real, max(lam.imag, 0.0)))
    order = sorted(range(len(clusters)), key=lambda k: (-reps[k].real, reps[k].imag))
    aux = orthogonal_unit(unit)
    support, projectors, eigvecs = [], [], []
    for k in order:
        group = clusters[k]
        V = Zc[:, group]
        projectors.append(extend_complex_operator(V @ V.conj().T, basis, aux))
        support.append(SlicePoint(reps[k].real, reps[k].imag, unit))
        vecs = []
        for col in V.T:
            u = basis.vectors.apply(_complex_to_quaternion_array(col, unit))
            vecs.append(_phase_normalise(u, unit, aux))
        eigvecs.append(tuple(vecs))
    L = from_basis([u for vs in eigvecs for u in vs])
    return IqPVM(unit, tuple(support), tuple(projectors), L, tuple(eigvecs))


def reconstruct(pvm: IqPVM) -> QMatrix:
    """``sum_lambda L_lambda P_lambda``."""
    out = QMatrix.zeros(pvm.n)
    for p, P in zip(pvm.support, pvm.projectors):
        out = out + pvm.L.of(p.as_quaternion()) @ P
    return out


@dataclass(frozen=True)
class SpectrumClassification:
    point: tuple
    residual: tuple
    continuous: tuple
    spherical: object


def classify_spectrum(pvm: IqPVM, tol: float = 0.5) -> SpectrumClassification:
    """Point spectrum = support points with nonzero projector; the residual
    and continuous parts are empty in finite dimension."""
    point = tuple(p for a, p in enumerate(pvm.support) if pvm.projectors[a].fro() > tol)
    return SpectrumClassification(point, (), (), circularize(point))


def delta(T: QMatrix, q) -> QMatrix:
    """``T^2 - 2 Re(q) T + |q|^2 I``."""
    q = Quaternion.coerce(q)
    return T @ T - T * (2 * q.re) + QMatrix.identity(T.n) * (q.norm() ** 2)


def propL_defects(T: QMatrix, L: LeftScalarMultiplication, unit=I, aux=None) -> dict:
    """Residuals of the three conditions tying ``L`` to ``T``.

    The third entry is the most negative eigenvalue of
    ``-L_unit (T - T*)`` together with its self-adjointness defect.
    """
    unit = require_unit(unit)
    aux = orthogonal_unit(unit) if aux is None else require_unit(aux)
    if T.shape != L.Li.shape:
        raise DimensionMismatch("T and L differ in size")
    Lu, La = L.of(unit), L.of(aux)
    Th = T.adjoint()
    M = Lu @ (T - Th) * -1.0
    C = chi(M)
    herm = float(np.max(np.abs(C - C.conj().T), initial=0.0))
    mineig = float(np.linalg.eigvalsh((C + C.conj().T) / 2)[0])
    return {
        "commutes": (Lu @ T - T @ Lu).scale(),
        "intertwines_adjoint": (La @ T - Th @ La).scale(),
        "positivity": max(herm, -mineig, 0.0),
    }


def verify_propL_conditions(T: QMatrix, L: LeftScalarMultiplication, unit=I, aux=None,
                            tol: float = TAU_PROPL) -> bool:
    scale = max(1.0, T.scale())
    return max(propL_defects(T, L, unit, aux).values()) <= tol * scale


def rank_one_sum(vectors) -> QMatrix:
    n = np.asarray(vectors[0]).shape[0]
    out = QMatrix.zeros(n)
    for v in vectors:
        out = out + outer(v, v)
    return out
