"""
Elementary symmetric polynomials in the Bethe roots and the polynomial chi(z)

e_r follows from the recursion (2M - r + 1) r e_r = (M - r + 1)(M + r) e_(r-1),
e_0 = 1, forced by the ODE z(z+1) chi'' + 2(z - M) chi' - M(M+1) chi = 0 for
chi(z) = sum_r (-1)^r e_r z^(M-r).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from ..algebra.exact_arith import format_rational
from ..algebra.laurent import CenteredLaurentPoly
from ..config import DELTA
from ..errors import VerificationError
from .asm_numbers import asm_refined, asm_total
from .base import CheckReport

Z_TIMES_Z_PLUS_1 = CenteredLaurentPoly({2: 1, 1: 1})


@dataclass(frozen=True)
class ElementarySymmetricList:
    """e_0 ... e_M of the M Bethe roots"""

    M: int
    values: Tuple[Fraction, ...]

    def __getitem__(self, r: int) -> Fraction:
        return self.values[r]

    def __len__(self) -> int:
        return len(self.values)

    def to_strings(self) -> List[str]:
        return [format_rational(v) for v in self.values]


@dataclass(frozen=True)
class ChiPolynomial:
    """chi(z) = prod (z - z_m), stored as a Laurent polynomial in z with exponents 0..M"""

    M: int
    poly: CenteredLaurentPoly

    def coefficient(self, power: int) -> Fraction:
        return self.poly.coefficient(power)

    def coefficients_descending(self) -> List[Fraction]:
        """[c_M, c_(M-1), ..., c_0] where c_k multiplies z^k"""
        return [Fraction(self.poly.coefficient(k)) for k in range(self.M, -1, -1)]

    def to_text(self) -> str:
        return self.poly.to_text(var="z")


@lru_cache(maxsize=None)
def elementary_sym(M: int) -> ElementarySymmetricList:
    """e_0 ... e_M from the recursion; the list invariants are checked on the way out"""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    values = [Fraction(1)]
    for r in range(1, M + 1):
        values.append(values[-1] * Fraction((M - r + 1) * (M + r), (2 * M - r + 1) * r))
    esym = ElementarySymmetricList(M=M, values=tuple(values))
    report = check_esym_invariants(esym)
    if not report.passed:
        raise VerificationError(f"e_r for M={M}: {report.failures}")
    return esym


def check_esym_invariants(esym: ElementarySymmetricList) -> CheckReport:
    """e_0 = 1, e_M = 1, e_r = e_(M-r), e_1 = (M+1)/2"""
    M, e = esym.M, esym.values
    failures: List[str] = []
    if e[0] != 1:
        failures.append(f"e_0 = {e[0]}")
    if e[M] != 1:
        failures.append(f"e_M = {e[M]} (product of roots must be 1)")
    for r in range(M + 1):
        if e[r] != e[M - r]:
            failures.append(f"e_{r} != e_{M - r}")
    if e[1] != Fraction(M + 1, 2):
        failures.append(f"e_1 = {e[1]} != {Fraction(M + 1, 2)}")
    return CheckReport.from_failures("symfun.invariants", {"M": M}, failures)


def chi_from_coefficients(esym: ElementarySymmetricList) -> ChiPolynomial:
    M = esym.M
    poly = CenteredLaurentPoly({M - r: (-1) ** r * esym[r] for r in range(M + 1)})
    return ChiPolynomial(M=M, poly=poly)


def chi_polynomial(M: int) -> ChiPolynomial:
    return chi_from_coefficients(elementary_sym(M))


def check_asm_relation(M: int) -> CheckReport:
    """e_r = A(M+1, r+1) / A(M) for r = 0..M"""
    esym = elementary_sym(M)
    total = asm_total(M)
    failures = []
    for r in range(M + 1):
        expected = Fraction(asm_refined(M + 1, r + 1), total)
        if esym[r] != expected:
            failures.append(f"e_{r} = {format_rational(esym[r])} != A({M + 1},{r + 1})/A({M}) = {format_rational(expected)}")
    return CheckReport.from_failures("symfun.asm_relation", {"M": M}, failures)


def chi_ode_residual(chi: ChiPolynomial) -> CenteredLaurentPoly:
    M, p = chi.M, chi.poly
    first = p.derivative()
    second = first.derivative()
    return Z_TIMES_Z_PLUS_1 * second + CenteredLaurentPoly({1: 2, 0: -2 * M}) * first - p * (M * (M + 1))


def check_chi_ode(chi: ChiPolynomial) -> CheckReport:
    """z(z+1) chi'' + 2(z - M) chi' - M(M+1) chi = 0 as a polynomial identity"""
    residual = chi_ode_residual(chi)
    failures = [] if residual.is_zero() else [f"ODE residual {residual.to_text(var='z')}"]
    return CheckReport.from_failures(
        "symfun.chi_ode",
        {"M": chi.M},
        failures,
        residual=None if residual.is_zero() else residual.to_text(var="z"),
    )


def check_chi_invariants(chi: ChiPolynomial) -> CheckReport:
    """Monic of degree M, chi(0) = (-1)^M and z^M chi(1/z) = (-1)^M chi(z)"""
    M, p = chi.M, chi.poly
    failures: List[str] = []
    if p.is_zero() or p.max_exponent != M or p.leading_coefficient != 1:
        failures.append("chi is not monic of degree M")
    if p.coefficient(0) != (-1) ** M:
        failures.append(f"chi(0) = {p.coefficient(0)} != {(-1) ** M}")
    if p.invert_variable().shift(M) != p * (-1) ** M:
        failures.append("root set is not closed under z -> 1/z")
    return CheckReport.from_failures("symfun.chi_invariants", {"M": M}, failures)


def check_energy_consequence(M: int) -> CheckReport:
    """
    E = -Delta N/2 + sum_k (2 Delta - z_k - 1/z_k) with sum z_k = sum 1/z_k = e_1
    must equal -3N/4.
    """
    N = 2 * M + 1
    e1 = elementary_sym(M)[1]
    energy = -DELTA * N / 2 + 2 * DELTA * M - 2 * e1
    expected = Fraction(-3 * N, 4)
    failures = [] if energy == expected else [f"E = {format_rational(energy)} != {format_rational(expected)}"]
    return CheckReport.from_failures(
        "symfun.energy", {"M": M, "N": N}, failures, details={"energy": format_rational(energy)}
    )
