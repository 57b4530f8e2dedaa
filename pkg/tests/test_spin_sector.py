from fractions import Fraction
from math import comb

import pytest

from src.algebra.linalg import sparse_integer_nullspace
from src.core import spin_sector
from src.core.asm_numbers import asm_refined
from src.core.spin_sector import (
    SpinBasisState,
    canonical,
    check_commutation,
    check_operator_symmetries,
    classical_label,
    decrement_sum,
    enumerate_sector,
    ground_candidate,
    hamiltonian_action,
    increment_sums,
    orbit_decompose,
    reduced_matrix,
    shift_positions,
    table_order,
)
from src.core.symfun import elementary_sym
from src.errors import NullspaceDimensionError
from strategies import parse_positions


class TestBasis:
    @pytest.mark.parametrize("N,K,size", [(3, 1, 3), (5, 2, 10), (11, 5, 462), (17, 8, 24310)])
    def test_sector_size(self, N, K, size):
        assert len(enumerate_sector(N, K)) == size

    def test_lexicographic(self):
        assert [s.positions for s in enumerate_sector(4, 2)][:3] == [(1, 2), (1, 3), (1, 4)]

    def test_shift_wraps(self):
        assert shift_positions((1, 3), 5) == (2, 5)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            enumerate_sector(3, 4)


class TestHamiltonian:
    def test_single_minus_on_three_sites(self):
        assert hamiltonian_action(SpinBasisState(3, (1,))) == [
            (SpinBasisState(3, (1,)), Fraction(-1, 4)),
            (SpinBasisState(3, (2,)), Fraction(-1)),
            (SpinBasisState(3, (3,)), Fraction(-1)),
        ]

    def test_all_up_is_diagonal(self):
        assert hamiltonian_action(SpinBasisState(5, ())) == [(SpinBasisState(5, ()), Fraction(5, 4))]

    def test_shift_covariance(self):
        N = 7
        for state in enumerate_sector(N, 3):
            shifted = {(shift_positions(s.positions, N), a) for s, a in hamiltonian_action(state)}
            image = {(s.positions, a) for s, a in hamiltonian_action(SpinBasisState(N, shift_positions(state.positions, N)))}
            assert shifted == image

    def test_matrix_is_symmetric(self):
        h = spin_sector.sector_matrix(7, 3)
        for i, row in h.rows.items():
            for j, value in row.items():
                assert h.get(j, i) == value

    @pytest.mark.parametrize("N", [5, 7, 9])
    def test_commutation(self, N):
        assert check_commutation(N, (N - 1) // 2).passed


class TestOrbits:
    def test_three_sites(self):
        orbits = orbit_decompose(3, 1)
        assert len(orbits) == 1
        assert orbits[0].size == 3

    def test_five_sites(self):
        assert [o.representative for o in orbit_decompose(5, 2)] == [(1, 2), (1, 3)]

    @pytest.mark.parametrize("N", [5, 7, 9, 11, 13])
    def test_partition(self, N):
        K = (N - 1) // 2
        orbits = orbit_decompose(N, K)
        assert sum(o.size for o in orbits) == comb(N, K)
        assert all((2 * N) % o.size == 0 for o in orbits)

    def test_eleven_sites_has_26_orbits(self):
        assert len(orbit_decompose(11, 5)) == 26

    def test_canonical(self):
        # gaps 1,2,2,2,4 around the ring; the least member opens with the gap-1 pair
        assert canonical((9, 7, 5, 3, 2), 11) == (1, 2, 4, 6, 8)


class TestGroundCandidate:
    def test_three_sites(self):
        assert ground_candidate(3).values == (1,)

    def test_five_sites(self):
        assert sorted(ground_candidate(5).values) == [1, 2]

    def test_eleven_sites_table(self, ground_n11, reference_values):
        for key, expected in reference_values["ground_state_n11"].items():
            assert ground_n11.component(parse_positions(key)) == expected
        assert ground_n11.integral and ground_n11.positive
        assert ground_n11.min_component == 1
        assert ground_n11.max_component == 429

    def test_single_components(self, ground_n11, reference_values):
        for key, expected in reference_values["single_components_n11"].items():
            assert ground_n11.component(parse_positions(key)) == expected

    def test_component_order_does_not_matter(self, ground_n11):
        assert ground_n11.component((9, 7, 5, 3, 2)) == 169

    @pytest.mark.parametrize("N", [1, 4, 10])
    def test_rejects_bad_length(self, N):
        with pytest.raises(ValueError):
            ground_candidate(N)

    def test_component_validation(self, ground_n11):
        with pytest.raises(ValueError):
            ground_n11.component((1, 2, 3))
        with pytest.raises(ValueError):
            ground_n11.component((1, 1, 2, 3, 4))
        with pytest.raises(ValueError):
            ground_n11.component((1, 2, 3, 4, 12))

    @pytest.mark.parametrize("N", [7, 9, 11])
    def test_full_solve_matches_reduced(self, N):
        assert ground_candidate(N, reduce_symmetry=False).values == ground_candidate(N).values

    def test_wrong_energy_has_no_solution(self):
        matrix = reduced_matrix(11, 5, Fraction(0))
        assert sparse_integer_nullspace(matrix.integer_rows(), matrix.n_cols) == []

    def test_nullspace_error_carries_dimension(self):
        error = NullspaceDimensionError(2, 11)
        assert error.dimension == 2
        assert "N=11" in str(error)


class TestComponentSums:
    def test_eleven_sites(self, ground_n11, reference_values):
        assert increment_sums(ground_n11) == reference_values["increment_sums_n11"]

    def test_decrement_matches_increment(self, ground_n11):
        sums = increment_sums(ground_n11)
        assert [decrement_sum(ground_n11, r) for r in range(6)] == sums

    def test_r_out_of_range(self, ground_n11):
        with pytest.raises(ValueError):
            spin_sector.increment_sum(ground_n11, 6)

    @pytest.mark.parametrize("N", [3, 5, 7, 9, 11, 13])
    def test_sums_are_refined_asm_numbers(self, N):
        v = ground_candidate(N)
        M = v.K
        sums = increment_sums(v)
        assert sums == [asm_refined(M + 1, r + 1) for r in range(M + 1)]
        e = elementary_sym(M)
        assert [s / v.max_component for s in sums] == list(e.values)

    @pytest.mark.slow
    @pytest.mark.parametrize("N", [15, 17])
    def test_sums_large(self, N):
        v = ground_candidate(N)
        M = v.K
        assert increment_sums(v) == [asm_refined(M + 1, r + 1) for r in range(M + 1)]


class TestOperatorSymmetries:
    @pytest.mark.parametrize("N", [3, 5, 7, 9])
    def test_small_chains(self, N):
        assert check_operator_symmetries(ground_candidate(N)).passed

    def test_eleven_sites(self, ground_n11):
        report = check_operator_symmetries(ground_n11)
        assert report.passed, report.failures

    def test_companion_lives_in_complement_sector(self, ground_n11):
        companion = spin_sector.companion_vector(ground_n11)
        assert all(len(state) == 6 for state in companion)


class TestPresentation:
    def test_table_order_matches_reference(self, ground_n11, reference_values):
        labels = [label for label, _ in table_order(ground_n11)]
        assert labels == [parse_positions(k) for k in reference_values["ground_state_n11"]]

    def test_label_starts_at_one(self, ground_n11):
        assert all(classical_label(o)[0] == 1 for o in ground_n11.orbits)

    def test_format_table(self, ground_n11):
        text = spin_sector.format_table(ground_n11)
        assert text.splitlines()[0].startswith("Psi^{1,2,3,4,5} = 1")
        assert "Psi^{1,3,5,7,9} = 429" in text

    def test_iter_components(self, ground_n11):
        rows = list(spin_sector.iter_components(ground_n11))
        assert len(rows) == 26
        assert sum(size for _, size, _ in rows) == comb(11, 5)
