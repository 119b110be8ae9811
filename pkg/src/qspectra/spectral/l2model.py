"""Cyclic multiplication model and twisted left multiplications."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from ..errors import NotUnimodular
from ..left_mult import LeftScalarMultiplication, basis_from_left_mult, from_basis
from ..qmatrix import QMatrix, right_mul, vnorm
from ..quaternion import Quaternion, slice_coordinates
from .calculus import ScalarSpectralMeasure, phi_values, scalar_measure
from .pvm import IqPVM

TAU_UNIMODULAR = 1e-10


@dataclass(frozen=True, eq=False)
class CyclicBlock:
    """One cyclic subspace spanned by ``P_lambda z`` over the support.

    ``isometry`` has one column ``P_lambda z / sqrt(mu_z({lambda}))`` per
    entry of ``support_indices``.
    """

    generator: np.ndarray
    measure: ScalarSpectralMeasure
    isometry: QMatrix
    support_indices: tuple

    @property
    def dim(self) -> int:
        return len(self.support_indices)


def fixed_vectors(pvm: IqPVM) -> list:
    """Per support point, an orthonormal basis of ``range(P_lambda)`` of
    vectors ``w`` with ``L_q w = w q``."""
    return [basis_from_left_mult(pvm.L, subspace=P) for P in pvm.projectors]


def cyclic_l2_model(pvm: IqPVM, merge: bool = False, tol: float = 1e-10) -> list:
    """Orthogonal decomposition of H^n into cyclic subspaces.

    By default each L-fixed eigenvector generates its own block, a point
    mass.  With ``merge=True`` the generator of block ``a`` is the
    normalised sum of the ``a``-th fixed vector of every eigenspace that
    has one, so fewer and larger blocks arise.
    """
    fixed = fixed_vectors(pvm)
    if merge:
        depth = max(len(f) for f in fixed)
        generators = []
        for a in range(depth):
            parts = [f[a] for f in fixed if len(f) > a]
            z = sum(parts)
            generators.append(z / vnorm(z))
    else:
        generators = [w for f in fixed for w in f]
    blocks = []
    for z in generators:
        mu = scalar_measure(z, pvm)
        cols, idx = [], []
        for a, P in enumerate(pvm.projectors):
            if mu.weights[a] > tol:
                cols.append(P.apply(z) / np.sqrt(mu.weights[a]))
                idx.append(a)
        blocks.append(CyclicBlock(z, mu, QMatrix.from_columns(cols), tuple(idx)))
    return blocks


def assemble_isometry(blocks) -> QMatrix:
    """Columns of every block side by side: a unitary of H^n."""
    return QMatrix.from_columns([c for b in blocks for c in b.isometry.columns()])


def multiplication_operator(phi, pvm: IqPVM, blocks) -> QMatrix:
    """Diagonal matrix of ``phi(lambda)`` ordered like :func:`assemble_isometry`."""
    vals = phi_values(phi, pvm)
    return QMatrix.diag([vals[a] for b in blocks for a in b.support_indices])


def _gamma_quaternion(g, unit: Quaternion) -> Quaternion:
    if isinstance(g, (complex, np.complexfloating)):
        return Quaternion(g.real) + unit * g.imag
    q = Quaternion.coerce(g)
    if isinstance(g, (int, float, np.floating, np.integer)):
        return q
    c = slice_coordinates(q, unit)
    if (q - (Quaternion(c.real) + unit * c.imag)).norm() > TAU_UNIMODULAR:
        raise NotUnimodular(f"{q!r} does not lie in the slice of {unit!r}")
    return q


def twist_left_mult(pvm: IqPVM, gammas, blocks=None) -> LeftScalarMultiplication:
    """A new left multiplication acting on block ``a`` at ``lambda`` as
    ``q -> conj(g) q g`` with ``g = gammas[a][lambda]``.

    ``gammas`` is a sequence (one entry per block) of mappings from
    support index to a unit element of C_unit; missing entries mean 1.
    """
    if blocks is None:
        blocks = cyclic_l2_model(pvm)
    gammas = list(gammas)
    if len(gammas) < len(blocks):
        gammas = gammas + [{}] * (len(blocks) - len(gammas))
    vectors = []
    for b, gmap in zip(blocks, gammas):
        if not isinstance(gmap, Mapping):
            gmap = dict(enumerate(gmap))
            gmap = {b.support_indices[k]: v for k, v in gmap.items()}
        for col, a in zip(b.isometry.columns(), b.support_indices):
            g = _gamma_quaternion(gmap.get(a, 1.0), pvm.unit)
            if abs(g.norm() - 1.0) > TAU_UNIMODULAR:
                raise NotUnimodular(f"|gamma| = {g.norm():.6g} at support point {a}")
            vectors.append(right_mul(col, g.conj()))
    return from_basis(vectors)
