"""Density vectors of r-bounded hypergraphs and Spencer's deletion method for independent sets."""

import logging
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, floor
from typing import Any, Dict, List, Optional, Tuple

import attr
import numpy as np

from ..config import settings
from ..core.models import DensityVector, Hypergraph, vertex_mask
from ..errors import AbsorptionError, PreconditionError

logger = logging.getLogger(__name__)


def density_vector(G: Hypergraph) -> DensityVector:
    """(e(G^(1))/C(n,1), ..., e(G^(r))/C(n,r)) in exact rationals."""
    counts = [0] * G.r_max
    for e in G.edges:
        counts[len(e) - 1] += 1
    return DensityVector([Fraction(k, comb(G.n, i)) if comb(G.n, i) else 0
                          for i, k in enumerate(counts, start=1)])


def spencer_constant(r: int) -> Fraction:
    return Fraction(1, r * 6 ** r)


def spencer_density_caps(q: int, r: int, n: int) -> List[Fraction]:
    """Edge-count caps c / C(q, i-1) * C(n, i) for i = 1..r with c = 1/(r 6^r)."""
    c = spencer_constant(r)
    return [c / comb(q, i - 1) * comb(n, i) for i in range(1, r + 1)]


def meets_spencer_caps(G: Hypergraph, q: int) -> bool:
    counts = [0] * G.r_max
    for e in G.edges:
        counts[len(e) - 1] += 1
    return all(k <= cap for k, cap in zip(counts, spencer_density_caps(q, G.r_max, G.n)))


def random_below_caps(n: int, q: int, r: int, rng: np.random.Generator) -> Hypergraph:
    """r-bounded graph with a uniformly random number of i-edges, 0..floor(cap_i), for every i."""
    edges: List[tuple] = []
    for i, cap in enumerate(spencer_density_caps(q, r, n), start=1):
        k = int(rng.integers(0, floor(cap) + 1))
        pool = list(combinations(range(n), i))
        for index in sorted(rng.choice(len(pool), size=k, replace=False)):
            edges.append(pool[int(index)])
    return Hypergraph(n, edges, r_max=r)


@attr.s(auto_attribs=True)
class SpencerResult:
    independent_set: List[int]
    sampled: List[int]
    p: Fraction
    expectation_bound: Fraction
    derandomized: bool

    @property
    def size(self) -> int:
        return len(self.independent_set)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'independent_set': self.independent_set,
            'sampled': self.sampled,
            'p': str(self.p),
            'expectation_bound': str(self.expectation_bound),
            'derandomized': self.derandomized,
            'size': self.size,
        }


def expectation_bound(G: Hypergraph, p: Fraction) -> Fraction:
    """pn - sum_i p^i e(G^(i)), a lower bound on E|A*|."""
    return p * G.n - sum((p ** len(e) for e in G.edges), Fraction(0))


def _conditional_choice(G: Hypergraph, p: Fraction) -> List[int]:
    """Fix vertices in order so that E[|A| - #edges inside A] never decreases."""
    state: Dict[int, Fraction] = {v: p for v in range(G.n)}
    touching: Dict[int, List[Tuple[int, ...]]] = {v: [] for v in range(G.n)}
    for e in G.edges:
        for v in e:
            touching[v].append(e)
    for v in range(G.n):
        pressure = Fraction(0)
        for e in touching[v]:
            term = Fraction(1)
            for u in e:
                if u != v:
                    term *= state[u]
            pressure += term
        state[v] = Fraction(1) if pressure <= 1 else Fraction(0)
    return [v for v in range(G.n) if state[v] == 1]


def spencer_alteration(G: Hypergraph, q: int, seed: Optional[int] = None,
                       derandomize: bool = False) -> SpencerResult:
    """Independent set A* = A - {min(e) : e an edge inside A}, with A drawn at p = 2q/n.

    With ``derandomize`` the vertices of A are fixed by conditional
    expectations, so |A*| is at least the rounded-up expectation bound.

    Raises:
        PreconditionError: n < 2q.
    """
    n = G.n
    if n < 2 * q:
        raise PreconditionError(f"Need n >= 2q (n={n}, q={q})")
    p = Fraction(2 * q, n)
    bound = expectation_bound(G, p)
    if derandomize:
        A = _conditional_choice(G, p)
    else:
        rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
        A = [v for v, u in zip(range(n), rng.random(n)) if u < float(p)]
    inside = vertex_mask(A)
    deleted = {min(e) for e in G.edges if vertex_mask(e) & ~inside == 0}
    result = [v for v in A if v not in deleted]
    kept = vertex_mask(result)
    if any(vertex_mask(e) & ~kept == 0 for e in G.edges):
        raise AbsorptionError("Alteration left an edge inside the returned set")
    if derandomize and len(result) < ceil(bound):
        raise AbsorptionError(f"Derandomized set of size {len(result)} is below the bound {bound}")
    logger.debug(f"Spencer alteration: |A|={len(A)}, |A*|={len(result)}, bound={float(bound):.3f}")
    return SpencerResult(result, A, p, bound, derandomize)
