"""Spectral theory of normal quaternionic matrices."""

from .bounded_transform import TransformPair, bounded_transform, decompose_via_transform, inverse_transform
from .errors import QSpectraError
from .left_mult import LeftScalarMultiplication, basis_from_left_mult, from_basis, is_left_scalar_multiplication
from .left_spectrum import (
    LeftSpectrumReport, eigenspace_compare, left_membership, left_resolvent, left_spectrum,
)
from .qmatrix import QMatrix, abs_op, chi, chi_inverse, det_c, inverse, operator_norm, sqrt_positive
from .quaternion import I, J, K, ONE, CircularSet, Quaternion, SlicePoint, circularize, slice_form, sphere_equivalent
from .slice_decomp import (
    ComplexSubspaceBasis, SliceDecomposition, complex_subspace_basis, decompose,
    extend_complex_operator, restrict_to_plus,
)
from .spectral import (
    IqPVM, classify_spectrum, cyclic_l2_model, delta, integrate, invert_via_calculus,
    quaternion_measure, reconstruct, scalar_measure, spectral_decompose, twist_left_mult,
    verify_propL_conditions,
)

__version__ = "0.1.0"

__all__ = [
    "CircularSet",
    "ComplexSubspaceBasis",
    "I",
    "IqPVM",
    "J",
    "K",
    "LeftScalarMultiplication",
    "LeftSpectrumReport",
    "ONE",
    "QMatrix",
    "QSpectraError",
    "Quaternion",
    "SliceDecomposition",
    "SlicePoint",
    "TransformPair",
    "abs_op",
    "basis_from_left_mult",
    "bounded_transform",
    "chi",
    "chi_inverse",
    "circularize",
    "classify_spectrum",
    "complex_subspace_basis",
    "cyclic_l2_model",
    "decompose",
    "decompose_via_transform",
    "delta",
    "det_c",
    "eigenspace_compare",
    "extend_complex_operator",
    "from_basis",
    "integrate",
    "inverse",
    "inverse_transform",
    "invert_via_calculus",
    "is_left_scalar_multiplication",
    "left_membership",
    "left_resolvent",
    "left_spectrum",
    "operator_norm",
    "quaternion_measure",
    "reconstruct",
    "restrict_to_plus",
    "scalar_measure",
    "slice_form",
    "spectral_decompose",
    "sphere_equivalent",
    "sqrt_positive",
    "twist_left_mult",
    "verify_propL_conditions",
]
