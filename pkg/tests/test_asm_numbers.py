import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core import asm_numbers
from src.core.asm_numbers import asm_refined, asm_row, asm_table, asm_total, brute_force_refined


class TestRefinedRows:
    def test_classical_rows(self, reference_values):
        for order, expected in enumerate(reference_values["asm_refined_rows"], start=1):
            assert list(asm_row(order).counts) == expected

    def test_totals(self):
        assert [asm_total(m) for m in range(1, 8)] == [1, 2, 7, 42, 429, 7436, 218348]

    @given(st.integers(1, 30))
    def test_palindromic(self, order):
        assert asm_row(order).is_palindromic()

    @given(st.integers(2, 30))
    def test_first_entry_is_previous_total(self, order):
        assert asm_refined(order, 1) == asm_total(order - 1)

    def test_range_checks(self):
        with pytest.raises(ValueError):
            asm_refined(3, 0)
        with pytest.raises(ValueError):
            asm_refined(3, 4)
        with pytest.raises(ValueError):
            asm_row(0)

    def test_to_dict(self):
        assert asm_row(3).to_dict() == {"M": 3, "counts": ["2", "3", "2"], "total": "7"}


class TestBruteForce:
    @pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
    def test_matches_recursion(self, order):
        assert brute_force_refined(order) == asm_row(order).counts

    @pytest.mark.slow
    def test_order_six(self):
        assert brute_force_refined(6) == asm_row(6).counts

    def test_row_alphabet(self):
        # order 2: rows with partial sums in {0,1} ending at 1
        assert sorted(asm_numbers._asm_rows(2)) == [(0, 1), (1, 0)]

    def test_order_limit(self):
        with pytest.raises(ValueError):
            brute_force_refined(asm_numbers.BRUTE_FORCE_MAX_ORDER + 1)


class TestTable:
    def test_centered_triangle(self):
        lines = asm_table(3).splitlines()
        assert [line.split() for line in lines] == [["1"], ["1", "1"], ["2", "3", "2"]]

    def test_rows_are_centered(self):
        lines = asm_table(4).splitlines()
        indents = [len(line) - len(line.lstrip()) for line in lines]
        assert indents == sorted(indents, reverse=True)
