"""
Refined enumeration of alternating-sign matrices

A(M, r) counts order-M alternating-sign matrices whose first column carries
its single 1 in row r.  Rows are generated left to right by the ratio recursion

    (2M - r - 1) r A(M, r+1) = (M - r)(M + r - 1) A(M, r),   A(M, 1) = A(M - 1),

in exact rational arithmetic; every step must land on an integer.  A brute-force
enumerator gives an independent count for small orders.
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from ..errors import IntegralityError

logger = logging.getLogger(__name__)

# Row M lives at index M - 1
_ROWS: List[Tuple[int, ...]] = [(1,)]
_ROWS_LOCK = threading.Lock()

BRUTE_FORCE_MAX_ORDER = 6


@dataclass(frozen=True)
class AsmRow:
    """A(M, 1) ... A(M, M)"""

    order: int
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_palindromic(self) -> bool:
        return self.counts == self.counts[::-1]

    def to_dict(self) -> Dict[str, object]:
        return {"M": self.order, "counts": [str(c) for c in self.counts], "total": str(self.total)}


def _next_row(order: int, previous_total: int) -> Tuple[int, ...]:
    counts = [previous_total]
    for r in range(1, order):
        step = Fraction((order - r) * (order + r - 1), (2 * order - r - 1) * r) * counts[-1]
        if step.denominator != 1:
            raise IntegralityError(f"A({order}, {r + 1}) came out fractional: {step}")
        counts.append(step.numerator)
    return tuple(counts)


def asm_row(order: int) -> AsmRow:
    """Full refined row of order M, memoized"""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    with _ROWS_LOCK:
        while len(_ROWS) < order:
            m = len(_ROWS) + 1
            _ROWS.append(_next_row(m, sum(_ROWS[-1])))
        counts = _ROWS[order - 1]
    return AsmRow(order=order, counts=counts)


def asm_refined(order: int, r: int) -> int:
    """A(M, r) for 1 <= r <= M"""
    if not 1 <= r <= order:
        raise ValueError(f"r must lie in 1..{order}, got {r}")
    return asm_row(order).counts[r - 1]


def asm_total(order: int) -> int:
    """A(M), the number of order-M alternating-sign matrices"""
    return asm_row(order).total


# ---------- brute force ----------


def _asm_rows(order: int) -> List[Tuple[int, ...]]:
    """Rows in {-1,0,1}^M whose partial sums stay in {0,1} and end at 1"""
    rows = []
    for candidate in itertools.product((-1, 0, 1), repeat=order):
        partial = 0
        ok = True
        for x in candidate:
            partial += x
            if partial not in (0, 1):
                ok = False
                break
        if ok and partial == 1:
            rows.append(candidate)
    return rows


def brute_force_refined(order: int) -> Tuple[int, ...]:
    """
    Count alternating-sign matrices directly, grouped by the row of the 1 in column one.

    A {-1,0,1} matrix is alternating-sign exactly when every row and every column
    has partial sums in {0,1} ending at 1; rows are checked up front and column
    partial sums are carried through a depth-first search.
    """
    if not 1 <= order <= BRUTE_FORCE_MAX_ORDER:
        raise ValueError(f"brute force is limited to orders 1..{BRUTE_FORCE_MAX_ORDER}")
    rows = _asm_rows(order)
    counts = [0] * order

    def extend(depth: int, column_sums: Tuple[int, ...], first_one: int) -> None:
        if depth == order:
            if all(s == 1 for s in column_sums):
                counts[first_one] += 1
            return
        for row in rows:
            sums = tuple(s + x for s, x in zip(column_sums, row))
            if any(s not in (0, 1) for s in sums):
                continue
            extend(depth + 1, sums, depth if row[0] == 1 else first_one)

    extend(0, (0,) * order, -1)
    logger.debug("brute force order %d: %s", order, counts)
    return tuple(counts)


# ---------- presentation ----------


def asm_table(max_order: int) -> str:
    """Centered triangle of A(M, r), one row per order, as in the classical figure"""
    rows = [asm_row(m).counts for m in range(1, max_order + 1)]
    cell = max(len(str(c)) for row in rows for c in row) + 2
    width = cell * max_order
    lines = []
    for row in rows:
        body = "".join(str(c).center(cell) for c in row)
        lines.append(body.center(width).rstrip())
    return "\n".join(lines)
