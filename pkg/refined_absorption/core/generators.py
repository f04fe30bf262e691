"""Standard host and pattern hypergraphs."""

from itertools import combinations, product
from typing import List, Sequence

import numpy as np

from .models import Hypergraph


def complete_graph(n: int, r: int) -> Hypergraph:
    """K_n^r."""
    return Hypergraph(n, combinations(range(n), r), r_max=r)


def complete_bounded(n: int, r: int) -> Hypergraph:
    """K_n^{[r]}: every set of size 1..r is an edge."""
    return Hypergraph(n, [e for i in range(1, r + 1) for e in combinations(range(n), i)], r_max=r)


def cycle_graph(n: int) -> Hypergraph:
    return Hypergraph(n, [(i, (i + 1) % n) for i in range(n)], r_max=2)


def complete_partite(parts: int, size: int, r: int) -> Hypergraph:
    """Complete r-uniform ``parts``-partite graph with parts {j*size, ..., j*size + size - 1}."""
    edges = []
    for chosen in combinations(range(parts), r):
        for offsets in product(range(size), repeat=r):
            edges.append(tuple(j * size + k for j, k in zip(chosen, offsets)))
    return Hypergraph(parts * size, edges, r_max=r)


def disjoint_union(graphs: Sequence[Hypergraph]) -> Hypergraph:
    edges, offset = [], 0
    for G in graphs:
        edges.extend(tuple(v + offset for v in e) for e in G.edges)
        offset += G.n
    return Hypergraph(offset, edges, r_max=max((G.r_max for G in graphs), default=0))


def random_graph(n: int, r: int, density: float, rng: np.random.Generator) -> Hypergraph:
    """Each r-set kept independently with probability ``density``."""
    candidates = list(combinations(range(n), r))
    keep = rng.random(len(candidates)) < density
    return Hypergraph(n, [e for e, k in zip(candidates, keep) if k], r_max=r)


def random_bounded(n: int, densities: Sequence[float], rng: np.random.Generator) -> Hypergraph:
    """r-bounded host whose i-sets are kept with probability densities[i-1]."""
    edges: List[tuple] = []
    for i, density in enumerate(densities, start=1):
        candidates = list(combinations(range(n), i))
        keep = rng.random(len(candidates)) < min(1.0, float(density))
        edges.extend(e for e, k in zip(candidates, keep) if k)
    return Hypergraph(n, edges, r_max=len(densities))