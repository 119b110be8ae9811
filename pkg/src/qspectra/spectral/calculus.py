"""Functional calculus and spectral measures over a finite support."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, MissingSupportPoint, NotInjective
from ..qmatrix import QMatrix, as_vector, inner, right_mul
from ..quaternion import Quaternion, SlicePoint, orthogonal_unit
from .pvm import IqPVM

TAU_ZERO = 1e-12


def phi_values(phi, pvm: IqPVM) -> list:
    """Resolve ``phi`` to one quaternion per support point.

    ``phi`` may be a callable taking the support point as a Quaternion, a
    sequence aligned with ``pvm.support``, or a mapping keyed by support
    index or SlicePoint.
    """
    m = len(pvm.support)
    if callable(phi):
        return [Quaternion.coerce(phi(p.as_quaternion())) for p in pvm.support]
    if isinstance(phi, Mapping):
        out = []
        for a, p in enumerate(pvm.support):
            if a in phi:
                out.append(Quaternion.coerce(phi[a]))
            elif p in phi:
                out.append(Quaternion.coerce(phi[p]))
            else:
                raise MissingSupportPoint(f"phi is undefined at support point {a}: {p}")
        return out
    values = list(phi)
    if len(values) != m:
        raise MissingSupportPoint(f"phi has {len(values)} values for {m} support points")
    return [Quaternion.coerce(v) for v in values]


def integrate(phi, pvm: IqPVM) -> QMatrix:
    """``sum_lambda L_phi(lambda) P_lambda``."""
    out = QMatrix.zeros(pvm.n)
    for q, P in zip(phi_values(phi, pvm), pvm.projectors):
        out = out + pvm.L.of(q) @ P
    return out


def essential_sup(phi, pvm: IqPVM, tol: float = 0.5) -> float:
    """``max |phi(lambda)|`` over support points with nonzero projector."""
    vals = phi_values(phi, pvm)
    return max((v.norm() for v, P in zip(vals, pvm.projectors) if P.fro() > tol), default=0.0)


def zero_set_projector(phi, pvm: IqPVM, tol: float = TAU_ZERO) -> QMatrix:
    """``sum of P_lambda over phi(lambda) = 0``, the projector onto the kernel."""
    out = QMatrix.zeros(pvm.n)
    for v, P in zip(phi_values(phi, pvm), pvm.projectors):
        if v.norm() <= tol:
            out = out + P
    return out


def invert_via_calculus(phi, pvm: IqPVM, tol: float = TAU_ZERO) -> QMatrix:
    """``integrate(1/phi)``; the inverse of ``integrate(phi)``."""
    vals = phi_values(phi, pvm)
    for a, v in enumerate(vals):
        if v.norm() <= tol:
            raise NotInjective(f"phi vanishes at support point {pvm.support[a]}")
    return integrate([v.inverse() for v in vals], pvm)


@dataclass(frozen=True)
class ScalarSpectralMeasure:
    """``mu_u({lambda}) = <u|P_lambda u>`` for each support point."""

    support: tuple
    weights: tuple

    def total(self) -> float:
        return float(sum(self.weights))

    def integrate(self, f) -> float:
        """``sum f(lambda) mu({lambda})`` for a real function of the support point."""
        return float(sum(f(p) * w for p, w in zip(self.support, self.weights)))


@dataclass(frozen=True)
class QuaternionSpectralMeasure:
    """``nu_{u,v}({lambda}) = <u|P_lambda v>`` for each support point."""

    support: tuple
    values: tuple


def _check_vector(u, pvm: IqPVM) -> np.ndarray:
    u = as_vector(u)
    if u.shape[0] != pvm.n:
        raise DimensionMismatch(f"vector of length {u.shape[0]} for dimension {pvm.n}")
    return u


def scalar_measure(u, pvm: IqPVM) -> ScalarSpectralMeasure:
    u = _check_vector(u, pvm)
    weights = tuple(max(inner(u, P.apply(u)).re, 0.0) for P in pvm.projectors)
    return ScalarSpectralMeasure(pvm.support, weights)


def quaternion_measure(u, v, pvm: IqPVM) -> QuaternionSpectralMeasure:
    u = _check_vector(u, pvm)
    v = _check_vector(v, pvm)
    return QuaternionSpectralMeasure(pvm.support, tuple(inner(u, P.apply(v)) for P in pvm.projectors))


def polarization(u, v, pvm: IqPVM, aux=None) -> list:
    """Rebuild ``nu_{u,v}`` pointwise from scalar measures only.

    ``4 nu = mu_{u+v} - mu_{u-v} + sum over e in (unit, aux, unit*aux)
    of (mu_{u e + v} - mu_{u e - v}) e``.
    """
    unit = pvm.unit
    aux = orthogonal_unit(unit) if aux is None else Quaternion.coerce(aux)
    units = (unit, aux, unit * aux)
    u = _check_vector(u, pvm)
    v = _check_vector(v, pvm)
    base = np.array(scalar_measure(u + v, pvm).weights) - np.array(scalar_measure(u - v, pvm).weights)
    out = [Quaternion(b / 4) for b in base]
    for e in units:
        ue = right_mul(u, e)
        diff = (np.array(scalar_measure(ue + v, pvm).weights)
                - np.array(scalar_measure(ue - v, pvm).weights))
        out = [o + e * (d / 4) for o, d in zip(out, diff)]
    return out


def support_index(pvm: IqPVM, point: SlicePoint | Quaternion, tol: float = 1e-8) -> int:
    """Index of the support point nearest to ``point`` (within ``tol``)."""
    q = point.as_quaternion() if isinstance(point, SlicePoint) else Quaternion.coerce(point)
    for a, p in enumerate(pvm.support):
        if (p.as_quaternion() - q).norm() <= tol:
            return a
    raise MissingSupportPoint(f"{q!r} is not a support point")
