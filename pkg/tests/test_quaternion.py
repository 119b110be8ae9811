import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hmul
from qspectra import I, J, K, ONE, Quaternion, SlicePoint, circularize, slice_form, sphere_equivalent
from qspectra.errors import DivisionByZero
from qspectra.quaternion import is_circular, orthogonal_unit

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_defining_relations():
    assert I * J == K
    assert J * K == I
    assert K * I == J
    for u in (I, J, K):
        assert u * u == -ONE
    assert I * J * K == -ONE


def test_conj_and_inverse():
    assert (1 + 2 * J).conj() == 1 - 2 * J
    assert I.inverse() == -I
    with pytest.raises(DivisionByZero):
        Quaternion().inverse()
    with pytest.raises(ZeroDivisionError):
        Quaternion(1.0) / 0


def test_product_matches_hand_written_oracle(rng):
    for _ in range(20):
        a, b = rng.normal(size=4), rng.normal(size=4)
        got = (Quaternion(*a) * Quaternion(*b)).as_array()
        np.testing.assert_allclose(got, hmul(a, b), atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(quats, quats, quats)
def test_algebra_laws(a, b, c):
    scale = 1 + a.norm() * b.norm() * c.norm()
    assert ((a * b) * c - a * (b * c)).norm() <= 1e-12 * scale
    assert (a * (b + c) - (a * b + a * c)).norm() <= 1e-12 * (1 + a.norm() * (b.norm() + c.norm()))
    assert a.conj().conj() == a
    assert abs((a * b).norm() - a.norm() * b.norm()) <= 1e-12 * (1 + a.norm() * b.norm())
    assert ((a * b).conj() - b.conj() * a.conj()).norm() <= 1e-12 * (1 + a.norm() * b.norm())
    n2 = a.conj() * a
    assert abs(n2.w - a.norm() ** 2) <= 1e-12 * (1 + a.norm() ** 2)
    assert n2.im.norm() <= 1e-12 * (1 + a.norm() ** 2)


@settings(max_examples=200, deadline=None)
@given(quats)
def test_slice_form_reconstructs(q):
    p = slice_form(q, I)
    assert p.beta >= 0
    if p.beta > 0:
        assert (p.as_quaternion() - q).norm() <= 1e-14 * (1 + q.norm())
        assert p.unit.is_imaginary_unit()


def test_slice_form_examples():
    p = slice_form(1 + 2 * J, I)
    assert (p.alpha, p.beta, p.unit) == (1.0, 2.0, J)
    p = slice_form(Quaternion(3.0), I)
    assert (p.alpha, p.beta, p.unit) == (3.0, 0.0, I)
    r = 1 / math.sqrt(2)
    p = slice_form(Quaternion(r, r), I)
    assert math.isclose(p.alpha, r) and math.isclose(p.beta, r) and p.unit == I


def test_slice_point_rejects_negative_beta():
    with pytest.raises(Exception):
        SlicePoint(0.0, -1.0, I)


def test_sphere_equivalent_examples():
    assert sphere_equivalent(I, J, 0)
    assert sphere_equivalent(1 + I, 1 - I, 0)
    assert not sphere_equivalent(ONE, I, 0)


def test_sphere_conjugation_invariance(rng):
    for _ in range(100):
        q = Quaternion(*rng.normal(size=4))
        s = Quaternion(*rng.normal(size=4))
        assert sphere_equivalent(q, s * q * s.inverse(), 1e-12)


def test_circularize_examples():
    whole = circularize([SlicePoint(0, 1, I)])
    assert all(whole.contains(u) for u in (I, J, K, (I + J) / math.sqrt(2)))
    assert not whole.contains(ONE)
    r = 1 / math.sqrt(2)
    both = circularize([SlicePoint(r, r, I), SlicePoint(-r, r, I)])
    # q0^2 = 1/2 and |Im q|^2 = 1/2
    assert both.contains(Quaternion(r, 0, r, 0))
    assert both.contains(Quaternion(-r, 0, 0, r))
    assert not both.contains(Quaternion(r, 0, 0, 2 * r))
    assert circularize([]).is_empty()


def test_is_circular_for_finite_sets():
    assert is_circular([1.0, -2.0])
    assert not is_circular([I])


def test_orthogonal_unit_anticommutes(rng):
    for u in (I, J, K, Quaternion(0, *(v := rng.normal(size=3)) / np.linalg.norm(v))):
        a = orthogonal_unit(u)
        assert a.is_imaginary_unit()
        assert (u * a + a * u).norm() <= 1e-14
    assert orthogonal_unit(I) == J
