"""Exact computations for left-symmetric color algebras.

Cohomology with coefficients in a bimodule, formal deformations with their
obstructions and equivalences, and Nijenhuis / Rota-Baxter operators, all over
cyclotomic fields with exact arithmetic.
"""
from .algebra import (
    Bimodule,
    GradedAlgebra,
    GradedLinOp,
    HomogeneityError,
    standard_bimodule,
    verify_left_symmetric,
)
from .catalog import CatalogEntry, CatalogError, load, names
from .cochain import Cochain, check_complex, coboundary, coboundary_matrix, cohomology
from .deform import (
    Deformation,
    DeformationError,
    EquivalenceMap,
    ObstructionError,
    extend_deformation,
    formal_inverse,
    infinitesimal_equivalence,
    obstruction_and_extend,
    star,
    transport,
    verify_deformation,
)
from .exactnum import CycMatrix, CycScalar, ExactArithmeticError
from .grading import AbelianGroup, Bicharacter, GroupElement, validate_bicharacter
from .operators import (
    HypothesisError,
    correspondence_checks,
    nijenhuis_power_identity,
    nijenhuis_residual,
    rota_baxter_residual,
)

__all__ = [
    "Bimodule",
    "GradedAlgebra",
    "GradedLinOp",
    "HomogeneityError",
    "standard_bimodule",
    "verify_left_symmetric",
    "CatalogEntry",
    "CatalogError",
    "load",
    "names",
    "Cochain",
    "check_complex",
    "coboundary",
    "coboundary_matrix",
    "cohomology",
    "Deformation",
    "DeformationError",
    "EquivalenceMap",
    "ObstructionError",
    "extend_deformation",
    "formal_inverse",
    "infinitesimal_equivalence",
    "obstruction_and_extend",
    "star",
    "transport",
    "verify_deformation",
    "CycMatrix",
    "CycScalar",
    "ExactArithmeticError",
    "AbelianGroup",
    "Bicharacter",
    "GroupElement",
    "validate_bicharacter",
    "HypothesisError",
    "correspondence_checks",
    "nijenhuis_power_identity",
    "nijenhuis_residual",
    "rota_baxter_residual",
]

__version__ = "0.1.0"
