"""Degrees, links, cliques, divisibility and copy counting on ``Hypergraph``."""

import logging
from collections import Counter
from itertools import combinations, product
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, TypeVar

from .models import Clique, CliqueFamily, Edge, Hypergraph, normalize_edge, vertex_mask
from ..config import settings
from ..errors import CapExceededError, CliqueOutsideGroundError, PreconditionError, VertexRangeError

logger = logging.getLogger(__name__)

Number = TypeVar('Number')


def _check_vertices(G: Hypergraph, S: Iterable[int]) -> Edge:
    S = normalize_edge(S)
    if S and (S[0] < 0 or S[-1] >= G.n):
        raise VertexRangeError(f"Vertex set {S} not inside 0..{G.n - 1}")
    return S


def _require_uniform(G: Hypergraph) -> int:
    if not G.is_uniform():
        raise PreconditionError("Operation needs a uniform hypergraph")
    return G.r_max


def degree(G: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges of G containing S; degree(G, ()) = e(G)."""
    S = _check_vertices(G, S)
    mask = vertex_mask(S)
    return sum(1 for e in G.edges if vertex_mask(e) & mask == mask)


def degree_counts(G: Hypergraph, i: int) -> Counter:
    """degree(G, T) for every i-set T of positive degree."""
    counts = Counter()
    for e in G.edges:
        counts.update(combinations(e, i))
    return counts


def min_codegree(G: Hypergraph) -> int:
    """delta(G): minimum degree over all (r-1)-sets of V(G)."""
    r = _require_uniform(G)
    if r < 1:
        raise PreconditionError("min_codegree needs r_max >= 1")
    if r - 1 > G.n:
        return 0
    counts = degree_counts(G, r - 1)
    if len(counts) < comb(G.n, r - 1):
        return 0
    return min(counts.values(), default=0)


def max_codegree(G: Hypergraph) -> int:
    """Delta(G): maximum degree over (r-1)-sets."""
    r = G.r_max
    if r < 1 or not G.edges:
        return 0
    return max(degree_counts(G, r - 1).values())


def is_divisible(G: Hypergraph, q: int) -> bool:
    """K_q^r-divisibility: C(q-i, r-i) divides every i-set degree, 0 <= i < r."""
    r = _require_uniform(G)
    if q <= r:
        raise PreconditionError(f"Divisibility needs q > r (got q={q}, r={r})")
    for i in range(r):
        modulus = comb(q - i, r - i)
        if any(d % modulus for d in degree_counts(G, i).values()):
            return False
    return True


def weighted_divisible(psi: Mapping[Edge, int], r: int, q: int) -> bool:
    """Divisibility of an integer edge weighting (the integral-hypergraph reading)."""
    for i in range(r):
        modulus = comb(q - i, r - i)
        sums: Dict[Edge, int] = {}
        for e, w in psi.items():
            for T in combinations(e, i):
                sums[T] = sums.get(T, 0) + w
        if any(s % modulus for s in sums.values()):
            return False
    return True


def link(G: Hypergraph, S: Iterable[int]) -> Hypergraph:
    """The link {e - S : S <= e in G}.

    Labels are kept, so the vertices of S are isolated in the result.
    """
    S = _check_vertices(G, S)
    if len(S) >= G.r_max:
        raise PreconditionError(f"Link of a {len(S)}-set in an r_max={G.r_max} hypergraph has empty edges")
    mask = vertex_mask(S)
    edges = [tuple(v for v in e if not mask >> v & 1) for e in G.edges if vertex_mask(e) & mask == mask]
    return Hypergraph(G.n, edges, r_max=G.r_max - len(S))


def enumerate_cliques(G: Hypergraph, q: int) -> List[Clique]:
    """All q-sets whose r-subsets are edges of G, in lexicographic order."""
    r = _require_uniform(G)
    if q < r or r == 0:
        return []
    cliques: List[Clique] = []

    def extend(partial: List[int]):
        if len(partial) == q:
            cliques.append(tuple(partial))
            return
        start = partial[-1] + 1 if partial else 0
        needed = q - len(partial)
        for v in range(start, G.n - needed + 1):
            if len(partial) >= r - 1 and not all(
                    G.has_edge(T + (v,)) for T in combinations(partial, r - 1)):
                continue
            partial.append(v)
            extend(partial)
            partial.pop()

    extend([])
    return cliques


def clique_boundary(weights: Mapping[Clique, Number], r: int) -> Dict[Edge, Number]:
    """Sum of clique weights through each r-set, zeros dropped."""
    totals: Dict[Edge, Number] = {}
    for clique, w in weights.items():
        for e in combinations(clique, r):
            totals[e] = totals.get(e, 0) + w
    return {e: w for e, w in totals.items() if w != 0}


def verify_decomposition(G: Hypergraph, Q: CliqueFamily) -> bool:
    """True iff the r-subsets of Q's cliques partition E(G) exactly.

    Raises:
        CliqueOutsideGroundError: a clique uses an r-set that is not an edge of G.
    """
    r = _require_uniform(G)
    counts = Q.edge_counts(r)
    for e in counts:
        if e not in G.edges:
            logger.error(f"Clique through {e} is not present in the ground")
            raise CliqueOutsideGroundError(f"r-set {e} of a listed clique is not an edge")
    if len(counts) != len(G.edges):
        return False
    return all(c == 1 for c in counts.values())


def verify_packing(G: Hypergraph, Q: CliqueFamily) -> bool:
    """True iff Q's cliques are cliques of G with pairwise disjoint edge sets."""
    r = G.r_max
    counts = Q.edge_counts(r)
    return all(c == 1 and e in G.edges for e, c in counts.items())


def _embedding_order(F: Hypergraph) -> List[int]:
    """Pattern vertices ordered so each is adjacent to as many earlier ones as possible."""
    remaining = set(F.vertices)
    order: List[int] = []
    while remaining:
        best = max(sorted(remaining), key=lambda v: (
            sum(1 for e in F.edges if v in e and all(u in order or u == v for u in e)),
            sum(1 for e in F.edges if v in e)))
        order.append(best)
        remaining.remove(best)
    return order


def count_copies(G: Hypergraph, F: Hypergraph, cap: Optional[int] = None) -> int:
    """Number of subgraphs of G isomorphic to F.

    Copies are deduplicated by their image (vertex set, edge set), so
    automorphisms of F are never divided out by formula.

    Raises:
        CapExceededError: v(F) is above the configured cap.
    """
    cap = cap if cap is not None else settings.COPY_CAP
    if F.n > cap:
        raise CapExceededError(f"Pattern with {F.n} vertices exceeds the copy-count cap {cap}")
    if F.n > G.n:
        return 0
    order = _embedding_order(F)
    position = {v: i for i, v in enumerate(order)}
    # edges checked as soon as their last vertex (in order) is placed
    closing: List[List[Edge]] = [[] for _ in order]
    for e in F.edges:
        closing[max(position[v] for v in e)].append(e)

    images: Set[Tuple[Tuple[int, ...], Tuple[Edge, ...]]] = set()
    phi: Dict[int, int] = {}
    used: Set[int] = set()

    def place(i: int):
        if i == len(order):
            vertex_image = tuple(sorted(phi.values()))
            edge_image = tuple(sorted(normalize_edge(phi[v] for v in e) for e in F.edges))
            images.add((vertex_image, edge_image))
            return
        v = order[i]
        for w in range(G.n):
            if w in used:
                continue
            phi[v] = w
            if all(G.has_edge(phi[u] for u in e) for e in closing[i]):
                used.add(w)
                place(i + 1)
                used.discard(w)
            del phi[v]

    place(0)
    return len(images)


def blow_up(F: Hypergraph, t: int) -> Hypergraph:
    """F(t): vertex v becomes {v*t, ..., v*t + t - 1}, edges become complete partite bundles."""
    if t < 1:
        raise PreconditionError(f"Blow-up factor must be >= 1, got {t}")
    edges = []
    for e in F.edges:
        for choice in product(range(t), repeat=len(e)):
            edges.append(tuple(v * t + k for v, k in zip(e, choice)))
    return Hypergraph(F.n * t, edges, r_max=F.r_max)


def is_clique(G: Hypergraph, vertices: Sequence[int]) -> bool:
    return all(G.has_edge(e) for e in combinations(sorted(vertices), G.r_max))
