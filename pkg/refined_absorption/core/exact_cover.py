"""
Exact cover search (Knuth's Algorithm X over dictionaries of sets).

Columns are r-sets, rows are q-cliques. Primary columns must be covered exactly
once; secondary columns at most once. Branching always takes the primary
column with the fewest remaining rows.
"""

import logging
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

from .hypercore import _require_uniform, enumerate_cliques, verify_decomposition
from .models import Clique, CliqueFamily, Edge, Hypergraph
from ..config import settings
from ..errors import AbsorptionError, BudgetExhaustedError

logger = logging.getLogger(__name__)


class ExactCoverSolver:
    """Algorithm X with secondary columns and a node budget.

    Args:
        primary: columns that must be covered exactly once.
        rows: row key -> the columns it covers.
        secondary: columns that may be covered at most once.
        budget: maximum number of search nodes before giving up.
    """

    def __init__(self, primary: Iterable[Hashable], rows: Dict[Hashable, Sequence[Hashable]],
                 secondary: Iterable[Hashable] = (), budget: Optional[int] = None):
        self.primary = set(primary)
        self.budget = budget if budget is not None else settings.EXACT_COVER_BUDGET
        self.nodes = 0
        columns = self.primary | set(secondary)
        self.rows = {key: list(cols) for key, cols in rows.items() if set(cols) <= columns}
        self.columns: Dict[Hashable, set] = {c: set() for c in columns}
        for key, cols in self.rows.items():
            for c in cols:
                self.columns[c].add(key)

    def solve(self) -> Optional[List[Hashable]]:
        """Return a list of row keys, or None when the search space is exhausted.

        Raises:
            BudgetExhaustedError: the node budget ran out first.
        """
        if any(not self.columns[c] for c in self.primary):
            return None
        solution: List[Hashable] = []
        if self._search(solution):
            return sorted(solution)
        return None

    def _search(self, solution: List[Hashable]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhaustedError(f"Exact cover gave up after {self.budget} nodes")
        open_primary = [c for c in self.primary if c in self.columns]
        if not open_primary:
            return True
        column = min(open_primary, key=lambda c: (len(self.columns[c]), c))
        for key in sorted(self.columns[column]):
            solution.append(key)
            removed = self._select(key)
            if self._search(solution):
                return True
            self._deselect(key, removed)
            solution.pop()
        return False

    def _select(self, key: Hashable) -> List[set]:
        removed = []
        for c in self.rows[key]:
            for other in self.columns[c]:
                for c2 in self.rows[other]:
                    if c2 != c:
                        self.columns[c2].discard(other)
            removed.append(self.columns.pop(c))
        return removed

    def _deselect(self, key: Hashable, removed: List[set]) -> None:
        for c in reversed(self.rows[key]):
            self.columns[c] = removed.pop()
            for other in self.columns[c]:
                for c2 in self.rows[other]:
                    if c2 != c:
                        self.columns[c2].add(other)


def exact_cover_packing(cliques: Iterable[Clique], r: int, primary: Iterable[Edge],
                        secondary: Iterable[Edge] = (), budget: Optional[int] = None
                        ) -> Optional[List[Clique]]:
    """Cliques covering every primary r-set once and secondary r-sets at most once."""
    rows = {c: list(combinations(c, r)) for c in cliques}
    solver = ExactCoverSolver(primary, rows, secondary=secondary, budget=budget)
    return solver.solve()


def exact_cover_decompose(G: Hypergraph, q: int, budget: Optional[int] = None) -> Optional[CliqueFamily]:
    """Search for a K_q^r-decomposition of G.

    Returns:
        A verified decomposition, or None when the search proved that none exists.

    Raises:
        BudgetExhaustedError: the search was cut off before deciding.
    """
    r = _require_uniform(G)
    cliques = enumerate_cliques(G, q)
    logger.debug(f"Exact cover over {G.num_edges} edges and {len(cliques)} cliques")
    found = exact_cover_packing(cliques, r, G.edges, budget=budget)
    if found is None:
        logger.info(f"No K_{q}^{r}-decomposition exists (search exhausted)")
        return None
    family = CliqueFamily(q, found, ground=G, packing=True)
    if not verify_decomposition(G, family):
        raise AbsorptionError("Exact cover returned a family that does not decompose the ground")
    return family
