"""Projection of a host past a fixed root set, so rooted embeddings reduce to plain ones."""

import logging
from itertools import combinations
from typing import Iterable, List, Tuple

from ..core.models import Edge, Hypergraph

logger = logging.getLogger(__name__)


def rooted_projection(G: Hypergraph, R: Iterable[int]) -> Tuple[Hypergraph, List[int]]:
    """G' on V(G) - R, relabelled to 0..n-|R|-1.

    An i-set e outside R is an edge of G' when e + f is an edge of G for
    every (r-i)-subset f of R. With |R| < r - i there is no such f and
    every i-set qualifies. Returns G' and the original label of each vertex.
    """
    roots = sorted(set(R))
    rest = [v for v in range(G.n) if v not in set(roots)]
    index = {v: i for i, v in enumerate(rest)}
    r = G.r_max
    edges: List[Edge] = []
    for i in range(1, r + 1):
        fills = list(combinations(roots, r - i))
        for e in combinations(rest, i):
            if all(G.has_edge(sorted(e + f)) for f in fills):
                edges.append(tuple(index[v] for v in e))
    logger.debug(f"Rooted projection past {len(roots)} roots: {len(edges)} edges on {len(rest)} vertices")
    return Hypergraph(len(rest), edges, r_max=r), rest


def truncate_rooted(H: Hypergraph, R: Iterable[int]) -> Tuple[Hypergraph, List[int]]:
    """H' = {e - R : e in H} on V(H) - R; edges inside R vanish."""
    roots = set(R)
    rest = [v for v in range(H.n) if v not in roots]
    index = {v: i for i, v in enumerate(rest)}
    edges = {tuple(index[v] for v in e if v not in roots) for e in H.edges}
    edges.discard(())
    return Hypergraph(len(rest), edges, r_max=max(H.r_max, 1)), rest
