"""
Exact linear algebra

- ``rref`` / ``nullspace`` / ``solve``: dense Gauss-Jordan over any exact field
  (Fractions or Q(tau) values), used for the small coefficient systems.
- ``SparseRationalMatrix``: dict-of-dicts sparse matrix with exact entries.
- ``sparse_integer_nullspace``: fraction-free elimination on integer rows with
  Markowitz-style pivot choice, used for the spin-sector eigenproblem.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from tqdm import tqdm

logger = logging.getLogger(__name__)

Row = Dict[int, int]


# ---------- dense, any exact field ----------


def rref(matrix: Sequence[Sequence[object]]) -> Tuple[List[List[object]], List[int]]:
    """Reduced row echelon form and pivot columns; entries must support exact division"""
    a = [list(row) for row in matrix]
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(matrix: Sequence[Sequence[object]], n_cols: Optional[int] = None) -> List[List[object]]:
    """Basis of {x : matrix x = 0}, one vector per free column"""
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(n_cols or 0)] for j in range(n_cols or 0)]
    reduced, pivots = rref(matrix)
    n = len(reduced[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x: List[object] = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -reduced[r][f]
        basis.append(x)
    return basis


def solve(matrix: Sequence[Sequence[object]], rhs: Sequence[object]) -> Optional[List[object]]:
    """
    Unique solution of matrix x = rhs.

    Returns None when the system is inconsistent; raises ValueError when the
    solution is not unique.
    """
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented)
    n = len(augmented[0]) - 1
    if n in pivots:
        return None
    if len(pivots) < n:
        raise ValueError(f"system is underdetermined: rank {len(pivots)} < {n} unknowns")
    x: List[object] = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = reduced[r][n]
    return x


# ---------- sparse exact matrices ----------


class SparseRationalMatrix:
    """Row-indexed sparse matrix with Fraction entries and no stored zeros"""

    def __init__(self, n_rows: int, n_cols: int, rows: Optional[Mapping[int, Mapping[int, object]]] = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: Dict[int, Dict[int, Fraction]] = {}
        for i, row in (rows or {}).items():
            clean = {j: Fraction(v) for j, v in row.items() if v != 0}
            if clean:
                self.rows[i] = clean

    @property
    def dimension(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    @classmethod
    def identity(cls, n: int, value=1) -> "SparseRationalMatrix":
        return cls(n, n, {i: {i: value} for i in range(n)})

    def get(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, Fraction(0))

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        out: Dict[int, Dict[int, Fraction]] = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            target = out.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, 0) + v
        return SparseRationalMatrix(self.n_rows, self.n_cols, out)

    def __sub__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        return self + other.scale(-1)

    def scale(self, factor) -> "SparseRationalMatrix":
        return SparseRationalMatrix(
            self.n_rows, self.n_cols, {i: {j: v * factor for j, v in r.items()} for i, r in self.rows.items()}
        )

    def matmul(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.dimension} @ {other.dimension}")
        out: Dict[int, Dict[int, Fraction]] = {}
        for i, row in self.rows.items():
            acc: Dict[int, Fraction] = defaultdict(Fraction)
            for k, v in row.items():
                for j, w in other.rows.get(k, {}).items():
                    acc[j] += v * w
            out[i] = acc
        return SparseRationalMatrix(self.n_rows, other.n_cols, out)

    __matmul__ = matmul

    def apply(self, vector: Sequence[object]) -> List[Fraction]:
        out = [Fraction(0)] * self.n_rows
        for i, row in self.rows.items():
            out[i] = sum((v * vector[j] for j, v in row.items()), Fraction(0))
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.dimension == other.dimension and self.rows == other.rows

    def integer_rows(self) -> Dict[int, Row]:
        """Each row scaled by the lcm of its denominators, then made primitive"""
        out: Dict[int, Row] = {}
        for i, row in self.rows.items():
            lcm = 1
            for v in row.values():
                lcm = lcm * v.denominator // gcd(lcm, v.denominator)
            out[i] = _primitive({j: int(v * lcm) for j, v in row.items()})
        return out


def _primitive(row: Row) -> Row:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def sparse_integer_nullspace(
    rows: Mapping[int, Row],
    n_cols: int,
    show_progress: bool = False,
) -> List[List[Fraction]]:
    """
    Exact nullspace basis of a sparse integer matrix.

    Forward elimination is fraction-free: a row r is replaced by
    (p/g) * r - (a/g) * pivot_row with g = gcd(p, a), then divided by the gcd
    of its entries, so every stored entry stays an integer.  The pivot is the
    shortest remaining row (Markowitz row count), and inside it the column
    with the fewest remaining entries, smallest magnitude, then lowest index.
    Ties are resolved by index so the result is deterministic.

    Back substitution over Fractions yields one basis vector per free column.
    """
    active: Dict[int, Row] = {i: _primitive(dict(r)) for i, r in rows.items() if r}
    col_rows: Dict[int, Set[int]] = defaultdict(set)
    for i, row in active.items():
        for j in row:
            col_rows[j].add(i)

    pivots: List[Tuple[int, Row]] = []
    fill = 0
    with tqdm(total=len(active), desc="Eliminating", disable=not show_progress, leave=False) as bar:
        while active:
            i = min(active, key=lambda r: (len(active[r]), r))
            row = active.pop(i)
            for j in row:
                col_rows[j].discard(i)
            bar.update(1)

            j = min(row, key=lambda c: (len(col_rows[c]), abs(row[c]), c))
            p = row[j]
            pivots.append((j, row))

            for k in sorted(col_rows[j]):
                other = active[k]
                a = other[j]
                g = gcd(p, a)
                mp, ma = p // g, a // g
                new: Row = {c: v * mp for c, v in other.items()}
                for c, v in row.items():
                    w = new.get(c, 0) - v * ma
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
                new = _primitive(new)
                for c in other.keys() - new.keys():
                    col_rows[c].discard(k)
                for c in new.keys() - other.keys():
                    col_rows[c].add(k)
                    fill += 1
                if new:
                    active[k] = new
                else:
                    del active[k]
                    bar.update(1)

    logger.debug("sparse elimination: %d pivots, %d columns, fill-in %d", len(pivots), n_cols, fill)

    pivot_cols = {j for j, _ in pivots}
    free = [c for c in range(n_cols) if c not in pivot_cols]
    basis: List[List[Fraction]] = []
    for f in free:
        x: Dict[int, Fraction] = {c: Fraction(0) for c in free}
        x[f] = Fraction(1)
        for j, row in reversed(pivots):
            s = sum((Fraction(v) * x[c] for c, v in row.items() if c != j), Fraction(0))
            x[j] = -s / row[j]
        basis.append([x.get(c, Fraction(0)) for c in range(n_cols)])
    return basis
