"""Bounded transform ``Z = T (I + T*T)^{-1/2}`` and its inverse."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotContractive, SupportOnBoundary
from .qmatrix import QMatrix, inverse, operator_norm, sqrt_positive
from .quaternion import I, SlicePoint, require_unit
from .spectral.pvm import IqPVM, spectral_decompose

TAU_MARGIN = 1e-12


@dataclass(frozen=True, eq=False)
class TransformPair:
    T: QMatrix
    C: QMatrix
    Z: QMatrix


def bounded_transform(T: QMatrix) -> TransformPair:
    """``C = (I + T*T)^{-1}`` and ``Z = T sqrt(C)``."""
    n = T.n
    C = inverse(QMatrix.identity(n) + T.adjoint() @ T)
    C = (C + C.adjoint()) * 0.5
    return TransformPair(T, C, T @ sqrt_positive(C))


def inverse_transform(Z: QMatrix, margin: float = TAU_MARGIN) -> QMatrix:
    """``Z (sqrt(I - Z*Z))^{-1}``."""
    nz = operator_norm(Z)
    if nz >= 1.0 - margin:
        raise NotContractive(f"||Z|| = {nz!r} is not below 1")
    n = Z.n
    D = QMatrix.identity(n) - Z.adjoint() @ Z
    return Z @ inverse(sqrt_positive((D + D.adjoint()) * 0.5))


def pushforward_point(p: SlicePoint) -> SlicePoint:
    """``F(z) = z / sqrt(1 - |z|^2)`` on the unit disc of the slice."""
    r2 = p.alpha ** 2 + p.beta ** 2
    f = 1.0 / np.sqrt(1.0 - r2)
    return SlicePoint(p.alpha * f, p.beta * f, p.unit)


def decompose_via_transform(T: QMatrix, unit=I, cluster_tol: float | None = None,
                            margin: float = TAU_MARGIN) -> IqPVM:
    """Decompose ``Z_T`` and push its support forward by F.

    Projectors and the left multiplication are kept unchanged.
    """
    unit = require_unit(unit)
    pair = bounded_transform(T)
    pz = spectral_decompose(pair.Z, unit, cluster_tol)
    for p in pz.support:
        if p.alpha ** 2 + p.beta ** 2 >= (1.0 - margin) ** 2:
            raise SupportOnBoundary(f"support point {p} of Z lies on the unit circle")
    pushed = [pushforward_point(p) for p in pz.support]
    order = sorted(range(len(pushed)), key=lambda k: (-pushed[k].alpha, pushed[k].beta))
    return IqPVM(
        unit,
        tuple(pushed[k] for k in order),
        tuple(pz.projectors[k] for k in order),
        pz.L,
        tuple(pz.eigenvectors[k] for k in order),
    )
