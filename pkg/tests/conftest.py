"""Shared fixtures and independent oracles.

The oracles avoid the library's own product and representation code:
quaternion products are spelled out on tuples, and matrices are
realified into 4n x 4n real matrices.
"""

import math

import numpy as np
import pytest

from qspectra import I, J, K, QMatrix, Quaternion

R2 = math.sqrt(2.0)


def hmul(a, b):
    """Hamilton product of 4-tuples, written out by hand."""
    w0, x0, y0, z0 = a
    w1, x1, y1, z1 = b
    return (
        w0 * w1 - x0 * x1 - y0 * y1 - z0 * z1,
        w0 * x1 + x0 * w1 + y0 * z1 - z0 * y1,
        w0 * y1 - x0 * z1 + y0 * w1 + z0 * x1,
        w0 * z1 + x0 * y1 - y0 * x1 + z0 * w1,
    )


def left_matrix(q):
    """Real 4x4 matrix of ``p -> q p``."""
    cols = [hmul(q, e) for e in np.eye(4)]
    return np.array(cols).T


def realify(M):
    """Real 4n x 4n matrix of ``u -> M u`` for an (n, n, 4) array."""
    M = np.asarray(M.data if isinstance(M, QMatrix) else M)
    n = M.shape[0]
    out = np.zeros((4 * n, 4 * n))
    for r in range(n):
        for s in range(n):
            out[4 * r:4 * r + 4, 4 * s:4 * s + 4] = left_matrix(M[r, s])
    return out


def brute_matmul(A, B):
    A, B = A.data, B.data
    n, m, p = A.shape[0], A.shape[1], B.shape[1]
    out = np.zeros((n, p, 4))
    for r in range(n):
        for t in range(p):
            acc = np.zeros(4)
            for s in range(m):
                acc += hmul(A[r, s], B[s, t])
            out[r, t] = acc
    return QMatrix(out)


def printed_det(q):
    """The determinant of ``T - L_q`` printed for the final example."""
    q0, q1, q2, q3 = q
    t = R2 * q1 - 1
    return ((q0 ** 2 - 0.5) + (q1 - 1 / R2) ** 2) ** 2 + t ** 2 + (
        1 + 2 * q0 ** 2 + t ** 2 + q2 ** 2 + q3 ** 2) * (q2 ** 2 + q3 ** 2)


def vec(*entries):
    return np.array([Quaternion.coerce(e).as_array() for e in entries])


def quat(w=0.0, x=0.0, y=0.0, z=0.0):
    return Quaternion(w, x, y, z)


def max_diff(A, B):
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B))))


# ---------------------------------------------------------------------------
# golden data from the worked examples
# ---------------------------------------------------------------------------

@pytest.fixture
def ex1():
    T = QMatrix.from_entries([[0, I], [J, 0]])
    h = 0.5
    A = QMatrix.from_entries([[0, quat(0, h, -h)], [quat(0, -h, h), 0]])
    B = QMatrix.scalar(R2 / 2, 2)
    Jm = QMatrix.from_entries([[0, quat(0, 1 / R2, 1 / R2)], [quat(0, 1 / R2, 1 / R2), 0]])
    lam1 = quat(1 / R2, 1 / R2)
    lam2 = quat(-1 / R2, 1 / R2)
    c = 1 / (2 * R2)
    u1 = vec(quat(0, 0.5, 0, 0.5), quat(c, c, c, -c))
    u2 = vec(quat(0, 0.5, 0, -0.5), quat(-c, c, c, c))
    u1p = vec(quat(0.5, 0, -0.5, 0), quat(c, -c, c, c))
    d = 1 / (2 * R2)
    P1 = QMatrix.from_entries([[0.5, quat(0, d, -d)], [quat(0, -d, d), 0.5]])
    P2 = QMatrix.from_entries([[0.5, quat(0, -d, d)], [quat(0, d, -d), 0.5]])

    def L(q):
        q0, q1, q2, q3 = Quaternion.coerce(q).as_list()
        return QMatrix.from_entries([
            [quat(q0, 0, -q2, 0), quat(-q3, q1, q1, -q3) * (1 / R2)],
            [quat(q3, q1, q1, -q3) * (1 / R2), quat(q0, q2, 0, 0)],
        ])

    delta1 = QMatrix.from_entries([[quat(1, 0, 0, 1), quat(0, -R2)], [quat(0, 0, -R2), quat(1, 0, 0, -1)]])
    return dict(T=T, A=A, B=B, J=Jm, lam1=lam1, lam2=lam2, u1=u1, u2=u2, u1p=u1p,
                P1=P1, P2=P2, L=L, delta1=delta1)


@pytest.fixture
def ex2():
    S = QMatrix.from_entries([[0, I], [-I, 0]])
    r = 1 / R2
    u1 = vec(r, quat(0, -r))
    u2 = vec(r, quat(0, r))
    P1 = QMatrix.from_entries([[0.5, quat(0, 0.5)], [quat(0, -0.5), 0.5]])
    P2 = QMatrix.from_entries([[0.5, quat(0, -0.5)], [quat(0, 0.5), 0.5]])

    def L(q):
        q = Quaternion.coerce(q)
        return QMatrix.diag([q, -(I * q * I)])

    return dict(S=S, u1=u1, u2=u2, P1=P1, P2=P2, L=L)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


UNITS = [I, J, K]
