"""Invariant suites over seeded random normal matrices.

Each check returns the largest residual it observed; ``run_suites``
compares those residuals with fixed thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounded_transform import bounded_transform, decompose_via_transform, inverse_transform
from .left_mult import basis_from_left_mult, from_basis
from .left_spectrum import calculus_resolvent, hausdorff, left_point_spectrum, left_resolvent, spherical_point_spectrum
from .qmatrix import QMatrix, operator_norm
from .quaternion import I, Quaternion
from .randomized import random_left_mult, random_matrix, random_normal, random_quaternion
from .spectral import (
    assemble_isometry, cyclic_l2_model, integrate, multiplication_operator, propL_defects,
    reconstruct, spectral_decompose,
)


@dataclass
class SuiteResult:
    name: str
    threshold: float
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.threshold)

    def update(self, value: float):
        self.worst = max(self.worst, float(value))

    def to_json(self) -> dict:
        return {"name": self.name, "threshold": self.threshold, "max_residual": self.worst,
                "passed": self.passed}


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def match_supports(p, q) -> list:
    """Pair support indices of two pvms by nearest point."""
    pairs = []
    for a, s in enumerate(p.support):
        d = [abs(s.as_complex() - t.as_complex()) for t in q.support]
        pairs.append((a, int(np.argmin(d)), float(min(d))))
    return pairs


def run_suites(seed: int = 42, trials: int = 50, max_n: int = 6, unit=I) -> list:
    suites = {
        name: SuiteResult(name, thr)
        for name, thr in [
            ("reconstruction", 1e-8),
            ("propL_conditions", 1e-8),
            ("pvm_axioms", 1e-8),
            ("calculus_laws", 1e-9),
            ("left_multiplication_roundtrip", 1e-9),
            ("bounded_transform", 1e-8),
            ("left_spectrum", 1e-7),
            ("resolvent", 1e-8),
            ("cyclic_model", 1e-8),
        ]
    }
    for t in range(trials):
        rng = trial_rng(seed, t)
        n = int(rng.integers(2, max_n + 1))
        T = random_normal(rng, n, unit)
        nrm = operator_norm(T)
        pvm = spectral_decompose(T, unit)
        suites["reconstruction"].update(operator_norm(T - reconstruct(pvm)) / nrm)
        suites["propL_conditions"].update(max(propL_defects(T, pvm.L, unit).values()) / max(1.0, nrm))
        suites["pvm_axioms"].update(max(pvm.defects().values()))

        m = len(pvm.support)
        phi = [random_quaternion(rng) for _ in range(m)]
        psi = [random_quaternion(rng) for _ in range(m)]
        F, G = integrate(phi, pvm), integrate(psi, pvm)
        res = max(
            operator_norm(integrate([a + b for a, b in zip(phi, psi)], pvm) - F - G),
            operator_norm(integrate([a * b for a, b in zip(phi, psi)], pvm) - F @ G),
            operator_norm(integrate([a.conj() for a in phi], pvm) - F.adjoint()),
            abs(operator_norm(F) - max(a.norm() for a in phi)),
        )
        suites["calculus_laws"].update(res)

        L = random_left_mult(rng, n)
        suites["left_multiplication_roundtrip"].update(L.distance(from_basis(basis_from_left_mult(L))))

        Z = bounded_transform(T).Z
        rt = operator_norm(T - inverse_transform(Z)) / (1 + nrm ** 2)
        pz = decompose_via_transform(T, unit)
        pdiff = max(
            max(d, pvm.projectors[a].max_abs_diff(pz.projectors[b]))
            for a, b, d in match_supports(pvm, pz)
        )
        Tg = random_matrix(rng, n)
        zs = bounded_transform(Tg).Z.adjoint().max_abs_diff(bounded_transform(Tg.adjoint()).Z)
        suites["bounded_transform"].update(max(rt, pdiff, zs))

        suites["left_spectrum"].update(
            hausdorff(left_point_spectrum(T, pvm.L, unit), spherical_point_spectrum(T)))
        q = Quaternion(*rng.normal(size=4)) * (2 * nrm + 1)
        R1 = left_resolvent(T, pvm.L, q)
        suites["resolvent"].update(
            operator_norm(R1 - calculus_resolvent(pvm, q)) / max(1.0, operator_norm(R1)))

        blocks = cyclic_l2_model(pvm)
        U = assemble_isometry(blocks)
        res = max(
            operator_norm(U.adjoint() @ F @ U - multiplication_operator(phi, pvm, blocks)),
            operator_norm(U.adjoint() @ pvm.L.of(phi[0]) @ U - QMatrix.scalar(phi[0], n)),
        )
        suites["cyclic_model"].update(res)
    return list(suites.values())
