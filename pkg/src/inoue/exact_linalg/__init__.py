"""Exact integer-matrix algebra and real quadratic field arithmetic."""

from .conjugacy import (ConjugatorResult, centralizer_generator, gl2z_conjugator,
                        unimodular_in_lattice, unimodular_in_lattice_exact)
from .forms import BinaryForm, represent_small
from .intmat import IntMat, as_mat, det, identity, inverse_unimodular, mat_mul, mat_pow
from .lattice import (LatticeBasis, commutant_lattice, congruence_lattice, lattice_membership,
                      shifted)
from .normal_forms import hnf_rows, integer_kernel, lll, snf
from .quadext import QuadExt
from .spectral import SpectralError, eigen_data, s0_conditions, s0_numeric_eigen

__all__ = [
    "BinaryForm", "ConjugatorResult", "IntMat", "LatticeBasis", "QuadExt", "SpectralError",
    "as_mat", "centralizer_generator", "commutant_lattice", "congruence_lattice", "det",
    "eigen_data", "gl2z_conjugator", "hnf_rows", "identity", "integer_kernel",
    "inverse_unimodular", "lattice_membership", "lll", "mat_mul", "mat_pow", "represent_small",
    "s0_conditions", "s0_numeric_eigen", "shifted", "snf", "unimodular_in_lattice",
    "unimodular_in_lattice_exact",
]
