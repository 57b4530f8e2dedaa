"""
XXZ chain on a fixed magnetization sector, periodic boundary

Basis states are labelled by the sorted positions n_1 < ... < n_K of the minus
spins.  The Hamiltonian

    H = -1/2 sum_n [ s^x_n s^x_(n+1) + s^y_n s^y_(n+1) + Delta s^z_n s^z_(n+1) ]

swaps every antiparallel neighbour pair with amplitude -1 and has diagonal
-(Delta/2) sum_n mu_n mu_(n+1).

The ground-state candidate at Delta = -1/2, N = 2M + 1, K = M is found by imposing
the eigenvalue -3N/4 and computing an exact nullspace.  Because the candidate is
invariant under the shift S and reflection R, H is row-reduced on dihedral
orbit representatives: unknowns are orbit values, and each row applies H to a
representative and folds the images onto their orbits.
"""

import itertools
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from ..algebra.exact_arith import format_rational
from ..algebra.linalg import SparseRationalMatrix, sparse_integer_nullspace
from ..config import DELTA, config, ground_energy
from ..errors import NullspaceDimensionError
from .base import CheckReport

logger = logging.getLogger(__name__)

Positions = Tuple[int, ...]


class SpinBasisState(NamedTuple):
    """|n_1, ..., n_K> with 1 <= n_1 < ... < n_K <= N"""

    N: int
    positions: Positions


@dataclass(frozen=True)
class SymmetryOrbit:
    """Orbit of a basis state under the dihedral group generated by S and R"""

    representative: Positions
    members: Tuple[Positions, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SectorVector:
    """An S,R-invariant vector stored as one exact value per orbit"""

    N: int
    K: int
    orbits: Tuple[SymmetryOrbit, ...]
    values: Tuple[Fraction, ...]
    index: Mapping[Positions, int] = field(repr=False, compare=False)
    integral: bool = True
    positive: bool = True

    @property
    def M(self) -> int:
        return (self.N - 1) // 2

    @property
    def max_component(self) -> Fraction:
        return max(self.values)

    @property
    def min_component(self) -> Fraction:
        return min(self.values)

    def component(self, positions: Sequence[int]) -> Fraction:
        return component(self, positions)

    def full_vector(self) -> Dict[Positions, Fraction]:
        """Component of every basis state in the sector"""
        return {state: self.values[i] for state, i in self.index.items()}


# ---------- basis and symmetry operations ----------


def enumerate_sector(N: int, K: int) -> List[SpinBasisState]:
    """All C(N, K) basis states in lexicographic order"""
    if not 0 <= K <= N:
        raise ValueError(f"K must lie in 0..{N}, got {K}")
    return [SpinBasisState(N, combo) for combo in itertools.combinations(range(1, N + 1), K)]


def shift_positions(positions: Positions, N: int) -> Positions:
    """S|mu_1 ... mu_N> = |mu_2 ... mu_N mu_1>: a minus at n moves to n - 1 (1 -> N)"""
    return tuple(sorted(N if p == 1 else p - 1 for p in positions))


def reflect_positions(positions: Positions, N: int) -> Positions:
    """R|mu_1 ... mu_N> = |mu_N ... mu_1>: a minus at n moves to N + 1 - n"""
    return tuple(sorted(N + 1 - p for p in positions))


def complement_positions(positions: Positions, N: int) -> Positions:
    """P flips every spin, so minus positions become the complement set"""
    present = set(positions)
    return tuple(n for n in range(1, N + 1) if n not in present)


def orbit_members(positions: Positions, N: int) -> Tuple[Positions, ...]:
    members = set()
    current = tuple(positions)
    for _ in range(N):
        members.add(current)
        members.add(reflect_positions(current, N))
        current = shift_positions(current, N)
    return tuple(sorted(members))


@lru_cache(maxsize=32)
def _sector_orbits(N: int, K: int) -> Tuple[Tuple[SymmetryOrbit, ...], Mapping[Positions, int]]:
    seen: Dict[Positions, int] = {}
    orbits: List[SymmetryOrbit] = []
    for combo in itertools.combinations(range(1, N + 1), K):
        if combo in seen:
            continue
        members = orbit_members(combo, N)
        orbit_id = len(orbits)
        orbits.append(SymmetryOrbit(representative=members[0], members=members))
        for member in members:
            seen[member] = orbit_id
    # combinations are generated in lexicographic order, so the first unseen
    # state of each orbit is already its least member and the list is sorted
    return tuple(orbits), MappingProxyType(seen)


def orbit_decompose(N: int, K: int) -> List[SymmetryOrbit]:
    """Dihedral orbits partitioning the sector, sorted by representative"""
    if not 0 <= K <= N:
        raise ValueError(f"K must lie in 0..{N}, got {K}")
    return list(_sector_orbits(N, K)[0])


def canonical(positions: Sequence[int], N: int) -> Positions:
    """Lexicographically least member of the orbit"""
    return orbit_members(tuple(sorted(positions)), N)[0]


# ---------- Hamiltonian ----------


def _action(positions: Positions, N: int, delta: Fraction) -> Dict[Positions, Fraction]:
    minus = set(positions)
    out: Dict[Positions, Fraction] = {}
    zz = 0
    for n in range(1, N + 1):
        m = n % N + 1
        a, b = n in minus, m in minus
        zz += 1 if a == b else -1
        if a != b:
            moved = minus - {n if a else m} | {m if a else n}
            key = tuple(sorted(moved))
            out[key] = out.get(key, Fraction(0)) - 1
    diagonal = -delta / 2 * zz
    if diagonal:
        out[positions] = out.get(positions, Fraction(0)) + diagonal
    return out


def hamiltonian_action(state: SpinBasisState, delta: Fraction = DELTA) -> List[Tuple[SpinBasisState, Fraction]]:
    """H|state> as (state, amplitude) pairs; diagonal term first when nonzero"""
    images = _action(tuple(state.positions), state.N, Fraction(delta))
    ordered = sorted(images.items(), key=lambda item: (item[0] != tuple(state.positions), item[0]))
    return [(SpinBasisState(state.N, positions), amp) for positions, amp in ordered]


def sector_matrix(N: int, K: int, delta: Fraction = DELTA) -> SparseRationalMatrix:
    """H on the full sector in the lexicographic basis; column j holds H|state_j>"""
    basis = [s.positions for s in enumerate_sector(N, K)]
    index = {s: i for i, s in enumerate(basis)}
    rows: Dict[int, Dict[int, Fraction]] = {}
    for j, state in enumerate(basis):
        for image, amp in _action(state, N, Fraction(delta)).items():
            rows.setdefault(index[image], {})[j] = amp
    return SparseRationalMatrix(len(basis), len(basis), rows)


def _permutation_matrix(N: int, K: int, move) -> SparseRationalMatrix:
    basis = [s.positions for s in enumerate_sector(N, K)]
    index = {s: i for i, s in enumerate(basis)}
    rows = {index[move(state, N)]: {j: 1} for j, state in enumerate(basis)}
    return SparseRationalMatrix(len(basis), len(basis), rows)


def shift_matrix(N: int, K: int) -> SparseRationalMatrix:
    return _permutation_matrix(N, K, shift_positions)


def reflection_matrix(N: int, K: int) -> SparseRationalMatrix:
    return _permutation_matrix(N, K, reflect_positions)


def sigma_total(N: int, K: int) -> SparseRationalMatrix:
    """Sigma = sum_n s^z_n, which is (N - 2K) times the identity on the sector"""
    size = len(enumerate_sector(N, K))
    return SparseRationalMatrix.identity(size, N - 2 * K)


def check_commutation(N: int, K: int, delta: Fraction = DELTA) -> CheckReport:
    """[H, S] = [H, R] = [H, Sigma] = 0 by explicit sparse matrix products"""
    h = sector_matrix(N, K, delta)
    failures = []
    for name, op in (("S", shift_matrix(N, K)), ("R", reflection_matrix(N, K)), ("Sigma", sigma_total(N, K))):
        if h @ op != op @ h:
            failures.append(f"H does not commute with {name}")
    return CheckReport.from_failures("spin.commutation", {"N": N, "K": K}, failures)


# ---------- the ground-state candidate ----------


def _validate_odd_chain(N: int) -> int:
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N must be odd and >= 3, got {N}")
    return (N - 1) // 2


def reduced_matrix(N: int, K: int, energy: Fraction, delta: Fraction = DELTA) -> SparseRationalMatrix:
    """(H - E) folded onto orbit representatives; unknowns are orbit values"""
    orbits, index = _sector_orbits(N, K)
    rows: Dict[int, Dict[int, Fraction]] = {}
    for i, orbit in enumerate(orbits):
        row: Dict[int, Fraction] = {i: -energy}
        for image, amp in _action(orbit.representative, N, delta).items():
            j = index[image]
            row[j] = row.get(j, Fraction(0)) + amp
        rows[i] = row
    return SparseRationalMatrix(len(orbits), len(orbits), rows)


def _progress_wanted(unknowns: int, show_progress: Optional[bool]) -> bool:
    if show_progress is not None:
        return show_progress
    if config.solver.show_progress:
        return True
    return unknowns >= config.solver.progress_min_unknowns and sys.stderr.isatty()


def _normalize(values: Sequence[Fraction]) -> Tuple[Tuple[Fraction, ...], bool, bool]:
    smallest = min((v for v in values if v != 0), key=abs)
    scaled = tuple(v / smallest for v in values)
    integral = all(v.denominator == 1 for v in scaled)
    positive = all(v > 0 for v in scaled)
    return scaled, integral, positive


@lru_cache(maxsize=16)
def ground_candidate(N: int, reduce_symmetry: bool = True, show_progress: Optional[bool] = None) -> SectorVector:
    """
    Exact eigenvector of H(-1/2) with eigenvalue -3N/4 in the sector K = M.

    The nullspace of H + 3N/4 must be one-dimensional.  The vector is scaled so
    the smallest component is 1; whether all components are then positive
    integers is recorded on the result and logged, never assumed.

    Raises:
        ValueError: N even or N < 3
        NullspaceDimensionError: the imposed eigenvalue does not give a 1-dim nullspace
    """
    M = _validate_odd_chain(N)
    K = M
    energy = ground_energy(N)
    orbits, index = _sector_orbits(N, K)

    if reduce_symmetry:
        matrix = reduced_matrix(N, K, energy)
        logger.info("N=%d: solving %d orbit unknowns (%d nonzeros)", N, matrix.n_rows, matrix.nnz)
        basis = sparse_integer_nullspace(
            matrix.integer_rows(), matrix.n_cols, show_progress=_progress_wanted(matrix.n_rows, show_progress)
        )
        if len(basis) != 1:
            raise NullspaceDimensionError(len(basis), N)
        orbit_values = basis[0]
    else:
        states = [s.positions for s in enumerate_sector(N, K)]
        matrix = sector_matrix(N, K) - SparseRationalMatrix.identity(len(states), energy)
        logger.info("N=%d: solving full sector with %d unknowns", N, len(states))
        basis = sparse_integer_nullspace(
            matrix.integer_rows(), matrix.n_cols, show_progress=_progress_wanted(len(states), show_progress)
        )
        if len(basis) != 1:
            raise NullspaceDimensionError(len(basis), N)
        by_state = dict(zip(states, basis[0]))
        orbit_values = [by_state[orbit.representative] for orbit in orbits]
        for orbit, value in zip(orbits, orbit_values):
            if any(by_state[m] != value for m in orbit.members):
                logger.warning("N=%d: full-sector vector is not constant on orbit %s", N, orbit.representative)

    values, integral, positive = _normalize(orbit_values)
    if not integral:
        logger.warning("N=%d: normalized components are not all integers", N)
    if not positive:
        logger.warning("N=%d: normalized components are not all positive", N)
    return SectorVector(
        N=N, K=K, orbits=orbits, values=values, index=index, integral=integral, positive=positive
    )


def component(v: SectorVector, positions: Sequence[int]) -> Fraction:
    """Psi^{n_1..n_K} for any ordering of a valid K-subset"""
    key = tuple(sorted(positions))
    if len(key) != v.K:
        raise ValueError(f"expected {v.K} positions, got {len(key)}")
    if len(set(key)) != len(key) or key[0] < 1 or key[-1] > v.N:
        raise ValueError(f"positions {tuple(positions)} are not distinct values in 1..{v.N}")
    return v.values[v.index[key]]


# ---------- component sums ----------


def _base_positions(M: int) -> List[int]:
    return [2 * m + 1 for m in range(M)]


def _require_candidate_shape(v: SectorVector) -> int:
    if v.N != 2 * v.K + 1:
        raise ValueError(f"component sums need N = 2K + 1, got N={v.N}, K={v.K}")
    return v.K


def increment_sum(v: SectorVector, r: int) -> Fraction:
    """Sum of F_{m_1..m_r} over all r-subsets of indices of (1, 3, ..., 2M-1) raised by one"""
    M = _require_candidate_shape(v)
    if not 0 <= r <= M:
        raise ValueError(f"r must lie in 0..{M}, got {r}")
    base = _base_positions(M)
    total = Fraction(0)
    for chosen in itertools.combinations(range(M), r):
        moved = [p + 1 if i in chosen else p for i, p in enumerate(base)]
        total += component(v, moved)
    return total


def decrement_sum(v: SectorVector, r: int) -> Fraction:
    """As increment_sum, lowering the chosen indices by one (position 1 wraps to N)"""
    M = _require_candidate_shape(v)
    if not 0 <= r <= M:
        raise ValueError(f"r must lie in 0..{M}, got {r}")
    base = _base_positions(M)
    total = Fraction(0)
    for chosen in itertools.combinations(range(M), r):
        moved = [(p - 1 if p > 1 else v.N) if i in chosen else p for i, p in enumerate(base)]
        total += component(v, moved)
    return total


def increment_sums(v: SectorVector) -> List[Fraction]:
    return [increment_sum(v, r) for r in range(v.K + 1)]


# ---------- operator checks ----------


def _apply_hamiltonian(vector: Mapping[Positions, Fraction], N: int) -> Dict[Positions, Fraction]:
    out: Dict[Positions, Fraction] = {}
    for state, value in vector.items():
        if not value:
            continue
        for image, amp in _action(state, N, DELTA).items():
            out[image] = out.get(image, Fraction(0)) + amp * value
    return out


def _is_eigenvector(vector: Mapping[Positions, Fraction], N: int, energy: Fraction) -> bool:
    image = _apply_hamiltonian(vector, N)
    states = set(vector) | set(image)
    return all(image.get(s, Fraction(0)) == energy * vector.get(s, Fraction(0)) for s in states)


def companion_vector(v: SectorVector) -> Dict[Positions, Fraction]:
    """P Psi in the sector with N - K minuses"""
    return {complement_positions(state, v.N): value for state, value in v.full_vector().items()}


def check_operator_symmetries(v: SectorVector) -> CheckReport:
    """
    S Psi = Psi, R Psi = Psi, H Psi = -3N/4 Psi, Sigma eigenvalue N - 2K,
    P Psi an eigenvector with the same eigenvalue in sector N - K, and the
    increment-complement and decrement symmetries of the component sums.
    """
    N, K = v.N, v.K
    energy = ground_energy(N)
    full = v.full_vector()
    failures: List[str] = []

    if any(full[shift_positions(s, N)] != value for s, value in full.items()):
        failures.append("S Psi != Psi")
    if any(full[reflect_positions(s, N)] != value for s, value in full.items()):
        failures.append("R Psi != Psi")
    if not _is_eigenvector(full, N, energy):
        failures.append(f"H Psi != {format_rational(energy)} Psi")
    if any(sum(-1 if n in s else 1 for n in range(1, N + 1)) != N - 2 * K for s in full):
        failures.append(f"Sigma eigenvalue differs from {N - 2 * K}")
    if not _is_eigenvector(companion_vector(v), N, energy):
        failures.append(f"P Psi is not an eigenvector in sector K={N - K}")

    if N == 2 * K + 1:
        sums = increment_sums(v)
        for r in range(K + 1):
            if sums[r] != sums[K - r]:
                failures.append(f"increment sum r={r} != r={K - r}")
            if decrement_sum(v, r) != sums[r]:
                failures.append(f"decrement sum r={r} != increment sum")

    return CheckReport.from_failures("spin.operator_symmetries", {"N": N}, failures)


# ---------- presentation ----------


def classical_label(orbit: SymmetryOrbit) -> Positions:
    """Member starting at 1 with the smallest last position, lexicographically greatest among those"""
    starting = [m for m in orbit.members if m and m[0] == 1]
    if not starting:
        return orbit.representative
    span = min(m[-1] for m in starting)
    return max(m for m in starting if m[-1] == span)


def table_order(v: SectorVector) -> List[Tuple[Positions, Fraction]]:
    """(label, value) pairs ordered by last position, then labels in decreasing order"""
    labelled = [(classical_label(orbit), value) for orbit, value in zip(v.orbits, v.values)]
    return sorted(labelled, key=lambda item: (item[0][-1] if item[0] else 0, tuple(-x for x in item[0])))


def format_table(v: SectorVector, per_line: int = 4) -> str:
    entries = [
        f"Psi^{{{','.join(str(p) for p in label)}}} = {format_rational(value)}"
        for label, value in table_order(v)
    ]
    width = max(len(e) for e in entries) + 3
    lines = []
    for start in range(0, len(entries), per_line):
        lines.append("".join(e.ljust(width) for e in entries[start:start + per_line]).rstrip())
    return "\n".join(lines)


def iter_components(v: SectorVector) -> Iterable[Tuple[Positions, int, Fraction]]:
    """(representative, orbit size, value) in representative order"""
    for orbit, value in zip(v.orbits, v.values):
        yield orbit.representative, orbit.size, value
