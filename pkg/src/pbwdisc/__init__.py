"""Exact discriminants, regular traces and monomial automorphisms of PBW algebras.

Relations have the form x_j x_i = q_ij x_i x_j + a_ij (i < j) over K = Q[z]/(m).
"""

from .algebra import AlgebraSpec, GeneratorMap, NCPoly, omega
from .automorphisms import AutGroupDescription, enumerate_monomial_automorphisms
from .center import CenterSpec, regular_trace, validate_center
from .discriminant import DiscriminantResult, discriminant, trace_matrix
from .field import QQ, Coefficient, NumberField, cyclotomic_field
from .poly import CommPoly, PolyMatrix, bareiss_determinant
from .presets import preset

__all__ = [
    "AlgebraSpec", "AutGroupDescription", "CenterSpec", "Coefficient", "CommPoly", "DiscriminantResult", "GeneratorMap",
    "NCPoly", "NumberField", "PolyMatrix", "QQ", "bareiss_determinant", "cyclotomic_field",
    "discriminant", "enumerate_monomial_automorphisms", "omega", "preset", "regular_trace", "trace_matrix", "validate_center",
]
