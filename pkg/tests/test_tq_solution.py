from fractions import Fraction

import pytest

from src.algebra.laurent import CenteredLaurentPoly, sigma
from src.core import tq_solution
from src.core.symfun import chi_polynomial
from src.core.tq_solution import (
    build_phi,
    build_xi,
    check_cyclic,
    check_phi_ode,
    check_symmetries,
    check_tq_identity,
    check_xi,
    chi_via_field,
    generalized_binomial,
    uniqueness_dimension,
    verify_chi,
)


class TestExplicitSolution:
    def test_m1(self):
        assert build_phi(1).poly == CenteredLaurentPoly({4: 1, 2: -2, -2: 2, -4: -1})

    def test_m2(self):
        expected = sigma(7) + sigma(1) * 7 - sigma(5) * Fraction(14, 5)
        assert build_phi(2).poly == expected

    def test_xi_m2(self):
        assert build_xi(2).poly == CenteredLaurentPoly({2: 1, 0: Fraction(11, 5), -2: 1})

    def test_no_exponent_divisible_by_three(self):
        for M in range(1, 8):
            assert all(k % 3 != 0 for k in build_phi(M).poly.exponents())

    def test_generalized_binomial(self):
        assert generalized_binomial(Fraction(2, 3), 0) == 1
        assert generalized_binomial(Fraction(2, 3), 1) == Fraction(2, 3)
        assert generalized_binomial(Fraction(2, 3), 2) == Fraction(-1, 9)
        assert generalized_binomial(Fraction(5), -1) == 0

    def test_rejects_m0(self):
        with pytest.raises(ValueError):
            build_phi(0)


@pytest.mark.parametrize("M", range(1, 13))
class TestIdentities:
    def test_cyclic(self, M):
        assert check_cyclic(build_phi(M)).passed

    def test_symmetries(self, M):
        assert check_symmetries(build_phi(M)).passed

    def test_ode(self, M):
        assert check_phi_ode(build_phi(M)).passed

    def test_xi(self, M):
        assert check_xi(build_xi(M)).passed

    def test_tq_identity(self, M):
        assert check_tq_identity(build_xi(M)).passed


class TestBrokenInputs:
    def test_wrong_eigenvalue_fails(self):
        xi = build_xi(2)
        report = check_tq_identity(xi, eigenvalue=sigma(1) ** 5 + 1)
        assert not report.passed
        assert report.residual is not None

    def test_perturbed_phi_fails_cyclic(self):
        phi = build_phi(2)
        broken = tq_solution.PhiPolynomial(M=2, poly=phi.poly + sigma(3), normalization=phi.normalization)
        report = check_cyclic(broken)
        assert not report.passed
        assert report.details["offending_exponents"] == [3, -3]

    def test_perturbed_phi_fails_ode(self):
        phi = build_phi(3)
        broken = tq_solution.PhiPolynomial(M=3, poly=phi.poly + sigma(1), normalization=phi.normalization)
        assert not check_phi_ode(broken).passed


class TestChiThroughField:
    def test_m1(self):
        assert chi_via_field(1) == CenteredLaurentPoly({1: 1, 0: -1})

    @pytest.mark.parametrize("M", range(1, 7))
    def test_agrees_with_recursion(self, M):
        assert chi_via_field(M) == chi_polynomial(M).poly

    @pytest.mark.slow
    @pytest.mark.parametrize("M", [7, 8])
    def test_agrees_with_recursion_large(self, M):
        assert chi_via_field(M) == chi_polynomial(M).poly

    def test_verify_accepts_true_chi(self):
        assert verify_chi(3, chi_polynomial(3).poly).passed

    def test_verify_rejects_perturbed_chi(self):
        assert not verify_chi(3, chi_polynomial(3).poly + CenteredLaurentPoly({1: 1})).passed


class TestUniqueness:
    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_one_dimensional(self, M):
        assert uniqueness_dimension(M) == 1

    def test_solution_is_xi(self):
        report = tq_solution.check_uniqueness(2)
        assert report.passed
        assert report.details["dimension"] == 1
