"""Spectral theory of normal matrices over the quaternions."""

from .calculus import (
    QuaternionSpectralMeasure, ScalarSpectralMeasure, essential_sup, integrate,
    invert_via_calculus, phi_values, polarization, quaternion_measure, scalar_measure,
    support_index, zero_set_projector,
)
from .l2model import (
    CyclicBlock, assemble_isometry, cyclic_l2_model, fixed_vectors, multiplication_operator,
    twist_left_mult,
)
from .pvm import (
    IqPVM, SpectrumClassification, classify_spectrum, delta, propL_defects, reconstruct,
    spectral_decompose, verify_propL_conditions,
)

__all__ = [
    "CyclicBlock", "IqPVM", "QuaternionSpectralMeasure", "ScalarSpectralMeasure",
    "SpectrumClassification", "assemble_isometry", "classify_spectrum", "cyclic_l2_model",
    "delta", "essential_sup", "fixed_vectors", "integrate", "invert_via_calculus",
    "multiplication_operator", "phi_values", "polarization", "propL_defects",
    "quaternion_measure", "reconstruct", "scalar_measure", "spectral_decompose",
    "support_index", "twist_left_mult", "verify_propL_conditions", "zero_set_projector",
]
