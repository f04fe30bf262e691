"""
Nibble with reserves: semi-random bites out of a clique family, then
cover-down of the uncovered edges through reserve cliques, with bounded
exact searches as later routes.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Any, Dict, List, Optional, Set, Tuple

import attr
import numpy as np
from tqdm import tqdm

from ..config import settings
from ..core.exact_cover import exact_cover_packing
from ..core.hypercore import enumerate_cliques, verify_packing
from ..core.models import Clique, CliqueFamily, Edge, Hypergraph, normalize_edge
from ..errors import AbsorptionError, BudgetExhaustedError, PreconditionError

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class NibbleReport:
    rounds: int = 0
    nibbled: int = 0
    swept: int = 0
    covered_down: int = 0
    searched: int = 0
    route: str = 'nibble'
    leave: List[Edge] = attr.ib(factory=list)
    history: List[int] = attr.ib(factory=list)

    @property
    def success(self) -> bool:
        return not self.leave

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rounds': self.rounds,
            'nibbled': self.nibbled,
            'swept': self.swept,
            'covered_down': self.covered_down,
            'searched': self.searched,
            'route': self.route,
            'leave': [list(e) for e in self.leave],
            'success': self.success,
            'uncovered_by_round': list(self.history),
        }


def _edges(clique: Clique, r: int) -> List[Edge]:
    return list(combinations(clique, r))


def cover_down(G: Hypergraph, X: Hypergraph, q: int, covered: Set[Edge], used: Set[Edge]) -> List[Clique]:
    """For each uncovered e in edge order, the least q-clique of X + {e} through e on unused reserve edges."""
    r = G.r_max
    added: List[Clique] = []
    for e in G.sorted_edges():
        if e in covered:
            continue
        others = [v for v in range(max(G.n, X.n)) if v not in e]
        for T in combinations(others, q - r):
            clique = normalize_edge(e + T)
            rest = [f for f in _edges(clique, r) if f != e]
            if all(X.has_edge(f) and f not in used for f in rest):
                added.append(clique)
                covered.add(e)
                used.update(rest)
                break
    return added


def cover_down_search(G: Hypergraph, X: Hypergraph, q: int, covered: Set[Edge], used: Set[Edge],
                      budget: Optional[int] = None) -> Optional[List[Clique]]:
    """Exact search covering every uncovered edge of G once, using unused reserve edges at most once."""
    r = G.r_max
    primary = [e for e in G.sorted_edges() if e not in covered]
    secondary = [f for f in X.sorted_edges() if f not in used]
    if not primary:
        return []
    free = Hypergraph(max(G.n, X.n), primary + secondary, r_max=r)
    targets = set(primary)
    cliques = [c for c in enumerate_cliques(free, q) if any(f in targets for f in _edges(c, r))]
    return exact_cover_packing(cliques, r, primary, secondary, budget=budget)


def full_packing_search(G: Hypergraph, X: Hypergraph, q: int,
                        budget: Optional[int] = None) -> Optional[List[Clique]]:
    """Exact search for a packing of G + X covering all of G."""
    r = G.r_max
    union = G.union(X)
    return exact_cover_packing(enumerate_cliques(union, q), r, G.edges, X.edges, budget=budget)


def nibble_with_reserves(G: Hypergraph, X: Hypergraph, family: CliqueFamily, bite: Optional[float] = None,
                         seed: Optional[int] = None, rounds: Optional[int] = None, search: bool = True,
                         budget: Optional[int] = None,
                         show_progress: bool = True) -> Tuple[CliqueFamily, NibbleReport]:
    """Pack G + X with edge-disjoint q-cliques covering as much of G as possible.

    Each round keeps every surviving clique of ``family`` with probability
    bite / D, D the largest current clique-degree of an edge, and accepts the
    kept cliques in order when their edges are still free. Survivors are then
    swept greedily and the rest of G is covered down through X. With
    ``search`` on, leftover edges go to an exact search over the unused
    reserve edges, then over the whole packing problem.

    Raises:
        PreconditionError: X shares edges with G or a family clique is not a clique of G.
    """
    bite = settings.BITE if bite is None else bite
    rounds = settings.NIBBLE_ROUNDS if rounds is None else rounds
    q = family.q
    r = G.r_max
    if G.edges & X.edges:
        raise PreconditionError("Reserve graph shares edges with G")
    for clique in family:
        if not all(G.has_edge(e) for e in _edges(clique, r)):
            raise PreconditionError(f"Family clique {clique} is not a clique of G")
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    covered: Set[Edge] = set()
    used: Set[Edge] = set()
    packing: List[Clique] = []
    report = NibbleReport()

    survivors = sorted(set(family.cliques))
    for _ in tqdm(range(rounds), desc="Nibble rounds", disable=not show_progress):
        survivors = [c for c in survivors if not any(e in covered for e in _edges(c, r))]
        if not survivors:
            break
        degrees = Counter(e for c in survivors for e in _edges(c, r))
        D = max(degrees.values())
        kept = [c for c, u in zip(survivors, rng.random(len(survivors))) if u < bite / D]
        for clique in kept:
            edges = _edges(clique, r)
            if not any(e in covered for e in edges):
                packing.append(clique)
                covered.update(edges)
                report.nibbled += 1
        report.rounds += 1
        report.history.append(G.num_edges - len(covered))

    for clique in survivors:
        edges = _edges(clique, r)
        if not any(e in covered for e in edges):
            packing.append(clique)
            covered.update(edges)
            report.swept += 1

    down = cover_down(G, X, q, covered, used)
    packing.extend(down)
    report.covered_down = len(down)

    if search and len(covered) < G.num_edges:
        try:
            found = cover_down_search(G, X, q, covered, used, budget)
            if found is not None:
                packing.extend(found)
                report.searched = len(found)
                report.route = 'search'
                for clique in found:
                    covered.update(f for f in _edges(clique, r) if f in G.edges)
            else:
                found = full_packing_search(G, X, q, budget)
                if found is not None:
                    packing = list(found)
                    report.searched = len(found)
                    report.route = 'full-search'
                    covered = set(G.edges)
        except BudgetExhaustedError:
            logger.warning("Exact cover-down search ran out of budget")

    report.leave = sorted(set(G.edges) - covered)
    result = CliqueFamily(q, packing, packing=True)
    if not verify_nibble_packing(G, X, result):
        raise AbsorptionError("Nibble produced cliques that do not form a packing of G + X")
    logger.info(f"Nibble: {len(packing)} cliques via {report.route}, leave {len(report.leave)} of {G.num_edges}")
    return result, report


def verify_nibble_packing(G: Hypergraph, X: Hypergraph, packing: CliqueFamily) -> bool:
    return verify_packing(G.union(X), packing)


def covered_edges(G: Hypergraph, packing: CliqueFamily) -> Set[Edge]:
    r = G.r_max
    return {e for clique in packing for e in _edges(clique, r) if e in G.edges}
