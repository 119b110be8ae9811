"""Seeded random quaternionic matrices for property suites."""

from __future__ import annotations

import numpy as np

from .left_mult import LeftScalarMultiplication, from_basis
from .qmatrix import QMatrix, inner, right_mul, vnorm
from .quaternion import I, Quaternion, require_unit


def random_quaternion(rng: np.random.Generator) -> Quaternion:
    return Quaternion(*rng.normal(size=4))


def random_matrix(rng: np.random.Generator, n: int) -> QMatrix:
    return QMatrix(rng.normal(size=(n, n, 4)))


def random_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=(n, 4))


def random_unitary(rng: np.random.Generator, n: int) -> QMatrix:
    """Gram-Schmidt (applied twice) on Gaussian quaternionic columns."""
    cols: list = []
    while len(cols) < n:
        v = random_vector(rng, n)
        for _ in range(2):
            for z in cols:
                v = v - right_mul(z, inner(z, v))
        nv = vnorm(v)
        if nv > 1e-8:
            cols.append(v / nv)
    return QMatrix.from_columns(cols)


def random_slice_values(rng: np.random.Generator, n: int, repeat: bool = True,
                        real: bool = True) -> list:
    """Complex numbers in the closed upper half plane.

    With ``repeat``/``real`` some entries are duplicated or put on the
    real axis so degenerate and self-adjoint parts get exercised.
    """
    vals = [complex(rng.normal(), abs(rng.normal())) for _ in range(n)]
    if real and n > 1 and rng.random() < 0.5:
        vals[int(rng.integers(n))] = complex(rng.normal(), 0.0)
    if repeat and n > 2 and rng.random() < 0.3:
        a, b = rng.choice(n, size=2, replace=False)
        vals[int(b)] = vals[int(a)]
    return vals


def random_normal(rng: np.random.Generator, n: int, unit=I, repeat: bool = True,
                  real: bool = True) -> QMatrix:
    """``U D U*`` with a random unitary U and D diagonal in C_unit."""
    unit = require_unit(unit)
    U = random_unitary(rng, n)
    vals = random_slice_values(rng, n, repeat, real)
    D = QMatrix.diag([Quaternion(c.real) + unit * c.imag for c in vals])
    return U @ D @ U.adjoint()


def random_left_mult(rng: np.random.Generator, n: int) -> LeftScalarMultiplication:
    return from_basis(random_unitary(rng, n).columns())
