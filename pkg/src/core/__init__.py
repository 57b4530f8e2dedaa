from .base import CheckReport
from .asm_numbers import AsmRow, asm_refined, asm_row, asm_total, brute_force_refined
from .tq_solution import PhiPolynomial, XiPolynomial, build_phi, build_xi, chi_via_field
from .symfun import ChiPolynomial, ElementarySymmetricList, chi_polynomial, elementary_sym
from .spin_sector import SectorVector, SpinBasisState, SymmetryOrbit, ground_candidate, increment_sum
from .bethe_numeric import BetheRootSet, bethe_residual, bethe_vector_oracle, energy, roots_of_chi

__all__ = [
    "CheckReport",
    "AsmRow",
    "asm_refined",
    "asm_row",
    "asm_total",
    "brute_force_refined",
    "PhiPolynomial",
    "XiPolynomial",
    "build_phi",
    "build_xi",
    "chi_via_field",
    "ChiPolynomial",
    "ElementarySymmetricList",
    "chi_polynomial",
    "elementary_sym",
    "SectorVector",
    "SpinBasisState",
    "SymmetryOrbit",
    "ground_candidate",
    "increment_sum",
    "BetheRootSet",
    "bethe_residual",
    "bethe_vector_oracle",
    "energy",
    "roots_of_chi",
]
