"""Quaternion scalars, slice planes and spheres.

A quaternion ``q = w + x i + y j + z k`` is stored as four float64
components.  Besides the scalar class, this module offers vectorised
helpers acting on arrays whose last axis has length 4; the matrix code
is built on those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DivisionByZero, PreconditionError

TAU_UNIT = 1e-10
TAU_SPHERE = 1e-9


# ---------------------------------------------------------------------------
# array level helpers
# ---------------------------------------------------------------------------

def qmul_arrays(a, b):
    """Hamilton product of two arrays of shape (..., 4), broadcasting."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    w0, x0, y0, z0 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w1, x1, y1, z1 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = w0 * w1 - x0 * x1 - y0 * y1 - z0 * z1
    out[..., 1] = w0 * x1 + x0 * w1 + y0 * z1 - z0 * y1
    out[..., 2] = w0 * y1 - x0 * z1 + y0 * w1 + z0 * x1
    out[..., 3] = w0 * z1 + x0 * y1 - y0 * x1 + z0 * w1
    return out


def qconj_arrays(a):
    """Componentwise quaternion conjugate of an array of shape (..., 4)."""
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def to_complex_pair(a):
    """Split ``q = a + b j`` into complex arrays ``(a, b)`` over C_i."""
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def from_complex_pair(a, b):
    """Inverse of :func:`to_complex_pair`."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.empty(a.shape + (4,))
    out[..., 0] = a.real
    out[..., 1] = a.imag
    out[..., 2] = b.real
    out[..., 3] = b.imag
    return out


# ---------------------------------------------------------------------------
# scalar class
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """Immutable quaternion ``w + x i + y j + z k``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    # construction -------------------------------------------------------
    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.asarray(arr, dtype=float).reshape(4)
        return cls(*arr)

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Accept a Quaternion, a real number, a complex number (read in
        C_i) or a length 4 sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value))
        if isinstance(value, (complex, np.complexfloating)):
            return cls(value.real, value.imag)
        return cls.from_array(value)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def as_list(self) -> list:
        return [self.w, self.x, self.y, self.z]

    # algebra --------------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return Quaternion.from_array(qmul_arrays(self.as_array(), o.as_array()))

    def __rmul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            if other == 0:
                raise DivisionByZero("division of a quaternion by zero")
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return self * Quaternion.coerce(other).inverse()

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        n2 = self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2
        if n2 == 0.0:
            raise DivisionByZero("inverse of the zero quaternion")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    @property
    def re(self) -> float:
        return self.w

    @property
    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def is_real(self, tol: float = TAU_UNIT) -> bool:
        return math.hypot(self.x, self.y, self.z) <= tol

    def is_imaginary_unit(self, tol: float = TAU_UNIT) -> bool:
        return abs(self.w) <= tol and abs(self.norm() - 1.0) <= tol

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return (self - Quaternion.coerce(other)).norm() <= tol

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce_or_none(value):
    try:
        return Quaternion.coerce(value)
    except (TypeError, ValueError):
        return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


# functional spellings of the algebra
def add(a, b):
    return Quaternion.coerce(a) + Quaternion.coerce(b)


def mul(a, b):
    return Quaternion.coerce(a) * Quaternion.coerce(b)


def conj(a):
    return Quaternion.coerce(a).conj()


def inverse(a):
    return Quaternion.coerce(a).inverse()


def norm(a):
    return Quaternion.coerce(a).norm()


def re(a):
    return Quaternion.coerce(a).re


def im(a):
    return Quaternion.coerce(a).im


def require_unit(unit, tol: float = TAU_UNIT) -> Quaternion:
    """Coerce ``unit`` and check that it is an imaginary unit."""
    u = Quaternion.coerce(unit)
    if not u.is_imaginary_unit(tol):
        raise PreconditionError(f"{u!r} is not an imaginary unit")
    return u


def orthogonal_unit(unit) -> Quaternion:
    """An imaginary unit anticommuting with ``unit``.

    Gives ``j`` for ``i``; otherwise the normalised component of a
    coordinate axis orthogonal to ``unit``.
    """
    u = require_unit(unit)
    v = u.vector()
    for axis in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])):
        w = axis - np.dot(axis, v) * v
        nw = np.linalg.norm(w)
        if nw > 0.5:
            w = w / nw
            return Quaternion(0.0, *w)
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# slice planes and spheres
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlicePoint:
    """The quaternion ``alpha + unit * beta`` with ``beta >= 0``."""

    alpha: float
    beta: float
    unit: Quaternion = I

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.beta < 0:
            raise PreconditionError("SlicePoint requires beta >= 0")

    def as_quaternion(self) -> Quaternion:
        return Quaternion(self.alpha) + self.unit * self.beta

    def as_complex(self) -> complex:
        """Read the point as a complex number through ``unit -> 1j``."""
        return complex(self.alpha, self.beta)

    def conj(self) -> Quaternion:
        return Quaternion(self.alpha) - self.unit * self.beta


def slice_form(q, default_unit=I) -> SlicePoint:
    """Write ``q = alpha + unit * beta`` with ``beta = |Im q|``.

    Real inputs get ``default_unit`` as their unit.
    """
    q = Quaternion.coerce(q)
    default_unit = require_unit(default_unit)
    beta = q.im.norm()
    if beta > 0.0:
        return SlicePoint(q.re, beta, q.im / beta)
    return SlicePoint(q.re, 0.0, default_unit)


def slice_coordinates(q, unit) -> complex:
    """Coordinates of ``q`` in the plane C_unit as ``alpha + 1j*beta``.

    The component of ``Im q`` orthogonal to ``unit`` is discarded.
    """
    q = Quaternion.coerce(q)
    u = Quaternion.coerce(unit)
    return complex(q.w, float(np.dot(q.vector(), u.vector())))


def from_slice_coordinates(c, unit) -> Quaternion:
    """Inverse of :func:`slice_coordinates` for points of C_unit."""
    c = complex(c)
    return Quaternion(c.real) + Quaternion.coerce(unit) * c.imag


def sphere_equivalent(p, q, tol: float = TAU_SPHERE) -> bool:
    """True iff ``p`` and ``q`` lie on the same 2-sphere within ``tol``."""
    if tol < 0:
        raise PreconditionError("tol must be nonnegative")
    p = Quaternion.coerce(p)
    q = Quaternion.coerce(q)
    return abs(p.re - q.re) <= tol and abs(p.norm() - q.norm()) <= tol


@dataclass(frozen=True)
class CircularSet:
    """A finite union of 2-spheres ``{alpha + kappa*beta : kappa in S}``.

    Each sphere is recorded by its pair ``(alpha, beta)`` with ``beta >= 0``;
    a sphere with ``beta = 0`` is the single real point ``alpha``.
    """

    spheres: tuple = ()

    def __contains__(self, q) -> bool:
        return self.contains(q)

    def contains(self, q, tol: float = TAU_SPHERE) -> bool:
        q = Quaternion.coerce(q)
        return any(
            sphere_equivalent(q, Quaternion(a) + I * b, tol) for a, b in self.spheres
        )

    def is_empty(self) -> bool:
        return len(self.spheres) == 0

    def __len__(self):
        return len(self.spheres)

    def representatives(self, unit=I) -> list:
        """The points of the set lying in the closed upper half of C_unit."""
        unit = require_unit(unit)
        return [SlicePoint(a, b, unit) for a, b in self.spheres]

    def equals(self, other: "CircularSet", tol: float = TAU_SPHERE) -> bool:
        def covered(xs, ys):
            return all(
                any(abs(a - c) <= tol and abs(b - d) <= tol for c, d in ys) for a, b in xs
            )

        return covered(self.spheres, other.spheres) and covered(other.spheres, self.spheres)


def circularize(points: Iterable, tol: float = TAU_SPHERE) -> CircularSet:
    """Union of the spheres through the given points.

    Accepts SlicePoints or anything coercible to a Quaternion.  Spheres
    closer than ``tol`` are merged.
    """
    spheres = []
    for p in points:
        if isinstance(p, SlicePoint):
            a, b = p.alpha, p.beta
        else:
            q = Quaternion.coerce(p)
            a, b = q.re, q.im.norm()
        if not any(abs(a - c) <= tol and abs(b - d) <= tol for c, d in spheres):
            spheres.append((float(a), float(b)))
    return CircularSet(tuple(sorted(spheres)))


def is_circular(points: Iterable, tol: float = TAU_SPHERE) -> bool:
    """A finite set is circular only if every point is real."""
    return all(Quaternion.coerce(
        p.as_quaternion() if isinstance(p, SlicePoint) else p).is_real(tol) for p in points)
