from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.algebra.laurent import CenteredLaurentPoly
from src.core.asm_numbers import asm_refined, asm_total
from src.core.symfun import (
    ChiPolynomial,
    ElementarySymmetricList,
    check_asm_relation,
    check_chi_invariants,
    check_chi_ode,
    check_energy_consequence,
    check_esym_invariants,
    chi_polynomial,
    elementary_sym,
)


class TestElementarySymmetric:
    def test_small_cases(self):
        assert elementary_sym(1).values == (1, 1)
        assert elementary_sym(2).values == (1, Fraction(3, 2), 1)
        assert elementary_sym(3).to_strings() == ["1", "2", "2", "1"]

    @given(st.integers(1, 40))
    def test_first_is_half_m_plus_one(self, M):
        assert elementary_sym(M)[1] == Fraction(M + 1, 2)

    @given(st.integers(1, 40))
    def test_palindromic_and_product_one(self, M):
        e = elementary_sym(M)
        assert e[M] == 1
        assert list(e.values) == list(reversed(e.values))

    @pytest.mark.parametrize("M", range(1, 31))
    def test_asm_relation(self, M):
        e = elementary_sym(M)
        assert [e[r] for r in range(M + 1)] == [
            Fraction(asm_refined(M + 1, r + 1), asm_total(M)) for r in range(M + 1)
        ]
        assert check_asm_relation(M).passed

    def test_invariant_check_catches_bad_list(self):
        bad = ElementarySymmetricList(M=2, values=(Fraction(1), Fraction(2), Fraction(1)))
        report = check_esym_invariants(bad)
        assert not report.passed
        assert any("e_1" in f for f in report.failures)

    def test_rejects_m0(self):
        with pytest.raises(ValueError):
            elementary_sym(0)


class TestChi:
    def test_m1(self):
        assert chi_polynomial(1).poly == CenteredLaurentPoly({1: 1, 0: -1})

    def test_coefficients_descending(self):
        assert chi_polynomial(2).coefficients_descending() == [1, Fraction(-3, 2), 1]

    @pytest.mark.parametrize("M", range(1, 16))
    def test_ode(self, M):
        assert check_chi_ode(chi_polynomial(M)).passed

    @pytest.mark.parametrize("M", range(1, 16))
    def test_invariants(self, M):
        assert check_chi_invariants(chi_polynomial(M)).passed

    def test_ode_rejects_perturbation(self):
        chi = chi_polynomial(4)
        broken = ChiPolynomial(M=4, poly=chi.poly + 1)
        report = check_chi_ode(broken)
        assert not report.passed
        assert report.residual is not None

    def test_text_in_z(self):
        assert chi_polynomial(2).to_text() == "z^2 - 3/2*z + 1"


class TestEnergy:
    @pytest.mark.parametrize("M", range(1, 12))
    def test_energy_is_minus_three_n_over_four(self, M):
        report = check_energy_consequence(M)
        assert report.passed
        assert report.details["energy"] == str(Fraction(-3 * (2 * M + 1), 4))
