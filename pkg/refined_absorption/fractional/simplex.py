"""
Exact-rational phase-one simplex for feasibility problems A x = b, x >= 0.

Everything is carried in ``fractions.Fraction``; infeasible systems come
back with a Farkas vector y (y.A <= 0 and y.b > 0).
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import attr

from ..config import settings
from ..errors import CapExceededError, PreconditionError

logger = logging.getLogger(__name__)

PIVOT_RULES = ('bland', 'dantzig')

# consecutive degenerate pivots before the Dantzig rule falls back to Bland
DEGENERATE_LIMIT = 50


@attr.s(auto_attribs=True)
class LPResult:
    feasible: bool
    x: List[Fraction]
    certificate: List[Fraction] = attr.ib(factory=list)
    pivots: int = 0
    rule: str = 'bland'


class _Tableau:
    """Rows [A | I | b] with the phase-one reduced-cost row kept alongside."""

    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int):
        m = len(A)
        self.m, self.n = m, n
        self.rows: List[List[Fraction]] = []
        self.signs: List[int] = []
        for i in range(m):
            sign = -1 if b[i] < 0 else 1
            row = [Fraction(sign * a) for a in A[i]]
            row += [Fraction(int(k == i)) for k in range(m)]
            row.append(Fraction(sign * b[i]))
            self.rows.append(row)
            self.signs.append(sign)
        self.basis = [n + i for i in range(m)]
        width = n + m + 1
        self.costs = [Fraction(0)] * width
        for j in range(n):
            self.costs[j] = -sum((row[j] for row in self.rows), Fraction(0))
        self.costs[-1] = -sum((row[-1] for row in self.rows), Fraction(0))

    def entering(self, rule: str) -> Optional[int]:
        candidates = [j for j in range(self.n + self.m) if self.costs[j] < 0]
        if not candidates:
            return None
        if rule == 'dantzig':
            return min(candidates, key=lambda j: (self.costs[j], j))
        return candidates[0]

    def leaving(self, j: int) -> Optional[int]:
        best, best_ratio = None, None
        for i, row in enumerate(self.rows):
            if row[j] > 0:
                ratio = row[-1] / row[j]
                if best is None or ratio < best_ratio or (ratio == best_ratio and self.basis[i] < self.basis[best]):
                    best, best_ratio = i, ratio
        return best

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        p = row[j]
        self.rows[i] = row = [a / p for a in row]
        for k, other in enumerate(self.rows):
            factor = other[j]
            if k != i and factor != 0:
                self.rows[k] = [a - factor * c for a, c in zip(other, row)]
        factor = self.costs[j]
        if factor != 0:
            self.costs = [a - factor * c for a, c in zip(self.costs, row)]
        self.basis[i] = j

    def infeasibility(self) -> Fraction:
        return sum((row[-1] for i, row in enumerate(self.rows) if self.basis[i] >= self.n), Fraction(0))


def solve_feasibility(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: Optional[int] = None,
                      rule: str = 'bland', cap: Optional[int] = None) -> LPResult:
    """Decide A x = b, x >= 0 exactly.

    ``rule`` is ``bland`` (least index) or ``dantzig`` (most negative reduced
    cost, switching to Bland after a run of degenerate pivots).

    Raises:
        CapExceededError: rows * columns is above the tableau cap.
    """
    if rule not in PIVOT_RULES:
        raise PreconditionError(f"Unknown pivot rule {rule!r}")
    m = len(A)
    n = n if n is not None else (len(A[0]) if A else 0)
    cap = cap if cap is not None else settings.LP_CAP
    if m * n > cap:
        logger.error(f"Tableau of {m} x {n} exceeds the LP cap {cap}")
        raise CapExceededError(f"LP with {m} rows and {n} columns exceeds the cap {cap}")

    tableau = _Tableau(A, b, n)
    pivots = 0
    degenerate = 0
    current = rule
    while True:
        j = tableau.entering(current)
        if j is None:
            break
        i = tableau.leaving(j)
        if i is None:
            # phase one is bounded below by 0
            break
        degenerate = degenerate + 1 if tableau.rows[i][-1] == 0 else 0
        if current == 'dantzig' and degenerate > DEGENERATE_LIMIT:
            logger.debug("Switching to Bland's rule after degenerate pivots")
            current = 'bland'
        tableau.pivot(i, j)
        pivots += 1

    x = [Fraction(0)] * n
    for i, j in enumerate(tableau.basis):
        if j < n:
            x[j] = tableau.rows[i][-1]
    if tableau.infeasibility() == 0:
        logger.debug(f"Feasible after {pivots} pivots ({rule})")
        return LPResult(True, x, pivots=pivots, rule=rule)

    certificate = [tableau.signs[i] * (1 - tableau.costs[n + i]) for i in range(m)]
    logger.debug(f"Infeasible after {pivots} pivots ({rule})")
    return LPResult(False, [], certificate=certificate, pivots=pivots, rule=rule)
