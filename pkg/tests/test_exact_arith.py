from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from src.algebra.exact_arith import (
    TAU,
    CycloQ6,
    cyclo_eval_numeric,
    cyclo_inv,
    cyclo_mul,
    delta_of_tau,
    format_rational,
    parse_rational,
)
from strategies import cyclos, nonzero_cyclos, rationals


class TestRationals:
    def test_format_reduces(self):
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(Fraction(-8, 4)) == "-2"
        assert format_rational(0) == "0"

    def test_parse_forms(self):
        assert parse_rational("3/2") == Fraction(3, 2)
        assert parse_rational(" -7 ") == -7
        assert parse_rational("-1.25") == Fraction(-5, 4)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("three halves")


class TestTau:
    def test_minimal_polynomial(self):
        assert TAU ** 2 == TAU - 1

    def test_sixth_root_of_unity(self):
        assert TAU ** 3 == -1
        assert TAU ** 6 == 1

    def test_tau_plus_inverse(self):
        assert TAU + TAU ** -1 == 1

    def test_anisotropy(self):
        assert delta_of_tau(TAU) == Fraction(-1, 2)

    def test_numeric_embedding(self):
        value = cyclo_eval_numeric(TAU)
        assert abs(value - mpmath.mpc(0.5, mpmath.sqrt(3) / 2)) < 1e-14

    def test_norm_of_tau(self):
        assert TAU.norm() == 1


class TestFieldAxioms:
    @given(cyclos(), cyclos())
    def test_commutative(self, x, y):
        assert x * y == y * x
        assert x + y == y + x

    @given(cyclos(), cyclos(), cyclos())
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(cyclos(), cyclos(), cyclos())
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(nonzero_cyclos())
    def test_inverse(self, x):
        assert x * x.inverse() == 1
        assert cyclo_mul(x, cyclo_inv(x)) == 1

    @given(cyclos(), cyclos())
    def test_norm_is_multiplicative(self, x, y):
        assert (x * y).norm() == x.norm() * y.norm()

    @given(nonzero_cyclos(), nonzero_cyclos())
    def test_division_undoes_multiplication(self, x, y):
        assert (x * y) / y == x

    @given(cyclos(), rationals())
    def test_mixed_scalars(self, x, q):
        assert x * q == q * x
        assert x + q - q == x

    @given(cyclos(), cyclos())
    def test_numeric_embedding_is_a_ring_map(self, x, y):
        ex, ey = cyclo_eval_numeric(x), cyclo_eval_numeric(y)
        product = cyclo_eval_numeric(x * y)
        assert abs(product - ex * ey) <= 1e-12 * max(1, abs(product))
        total = cyclo_eval_numeric(x + y)
        assert abs(total - (ex + ey)) <= 1e-12 * max(1, abs(total))

    @given(nonzero_cyclos())
    def test_numeric_embedding_of_inverse(self, x):
        assert abs(cyclo_eval_numeric(x.inverse()) * cyclo_eval_numeric(x) - 1) < 1e-12

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            CycloQ6(0, 0).inverse()
        with pytest.raises(ZeroDivisionError):
            TAU / 0


class TestComparison:
    def test_rational_elements_equal_fractions(self):
        assert CycloQ6(3, 0) == Fraction(3)
        assert hash(CycloQ6(Fraction(1, 2), 0)) == hash(Fraction(1, 2))

    def test_to_rational(self):
        assert CycloQ6(Fraction(2, 3)).is_rational()
        assert not TAU.is_rational()
        assert (TAU + TAU ** -1).is_rational()
        assert CycloQ6(Fraction(2, 3)).to_rational() == Fraction(2, 3)
        with pytest.raises(ValueError):
            TAU.to_rational()

    def test_immutable(self):
        with pytest.raises(AttributeError):
            TAU._a = 5

    @given(cyclos())
    def test_text_form_parses_back(self, x):
        assert CycloQ6.parse(str(x)) == x
