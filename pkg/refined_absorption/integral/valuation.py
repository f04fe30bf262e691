"""
Integral K_q^r-valuations: boundaries, exact integer decompositions, cones,
and edge-intersecting decompositions built stage by stage.
"""

import logging
from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .lattice import NormalForm, normal_form, reduce_l1, solve_integer_system
from ..config import settings
from ..core.hypercore import _require_uniform, clique_boundary, weighted_divisible
from ..core.models import Clique, Edge, Hypergraph, IntegralHypergraph, IntegralValuation, normalize_edge
from ..errors import AbsorptionError, DivisibilityError, NoIntegralSolutionError, PreconditionError

logger = logging.getLogger(__name__)


def boundary(phi: IntegralValuation) -> Dict[Edge, int]:
    """The r-set sums of a valuation, zeros dropped."""
    return clique_boundary(phi.weights, phi.r)


@lru_cache(maxsize=64)
def _incidence_system(k: int, q: int, r: int) -> Tuple[List[Edge], List[Clique], NormalForm]:
    """Normal form of the (r-set x q-set) incidence matrix of K_k^r, cached per shape."""
    rows = list(combinations(range(k), r))
    cols = list(combinations(range(k), q))
    index = {e: i for i, e in enumerate(rows)}
    A = np.zeros((len(rows), len(cols)), dtype=object)
    for j, clique in enumerate(cols):
        for e in combinations(clique, r):
            A[index[e], j] = 1
    logger.debug(f"Normal form of K_{k}^{r} incidence for q={q}: {A.shape}")
    return rows, cols, normal_form(A)


def _solve_on(vertices: Sequence[int], target: Mapping[Edge, int], q: int, r: int,
              minimize: bool = False) -> Dict[Clique, int]:
    """Integer clique weights on K_vertices^r whose boundary is ``target`` (0 elsewhere)."""
    vertices = sorted(vertices)
    local = {v: i for i, v in enumerate(vertices)}
    rows, cols, form = _incidence_system(len(vertices), q, r)
    row_index = {e: i for i, e in enumerate(rows)}
    b = np.zeros(len(rows), dtype=object)
    for e, w in target.items():
        b[row_index[tuple(local[v] for v in e)]] = w
    x = solve_integer_system(form, b)
    if x is None:
        logger.error(f"No integral K_{q}^{r} solution on {len(vertices)} vertices")
        raise NoIntegralSolutionError(f"Integer system for K_{q}^{r} on {len(vertices)} vertices has no solution")
    if minimize:
        x, moves = reduce_l1(x, form.kernel())
        logger.debug(f"l1 post-pass made {moves} kernel moves")
    return {tuple(vertices[i] for i in cols[j]): int(w) for j, w in enumerate(x) if w != 0}


def wilson_decompose(L: IntegralHypergraph, q: int, m: Optional[int] = None,
                     minimize: bool = False) -> IntegralValuation:
    """Integral K_q^r-decomposition of L inside K_m^r, m = max(v(L), q + r) by default.

    Every r-set of the ground is a row and every q-set a column of the exact
    system; ``minimize`` runs the l1 post-pass over the kernel lattice.

    Raises:
        DivisibilityError: Psi violates the divisibility congruences.
        NoIntegralSolutionError: the system has no integer solution.
    """
    r = _require_uniform(L.graph)
    if q <= r:
        raise PreconditionError(f"Need q > r (q={q}, r={r})")
    m = max(L.graph.n, q + r) if m is None else m
    if m < L.graph.n:
        raise PreconditionError(f"Ground K_{m} is smaller than v(L)={L.graph.n}")
    if not weighted_divisible(L.psi, r, q):
        logger.error(f"Integral hypergraph with {len(L.psi)} weighted edges is not K_{q}^{r}-divisible")
        raise DivisibilityError(f"Weights are not K_{q}^{r}-divisible")
    phi = IntegralValuation(m, q, r, _solve_on(range(m), L.psi, q, r, minimize=minimize))
    if boundary(phi) != L.psi:
        raise AbsorptionError("Integer solution does not reproduce the target boundary")
    return phi


def cone_valuation(psi: Mapping[Edge, int], S: Iterable[int], m: int, q: int, r: int,
                   vertices: Optional[Iterable[int]] = None, minimize: bool = True) -> IntegralValuation:
    """Valuation whose boundary matches psi on every r-set containing S.

    The link target {e - S : S <= e} is decomposed at uniformity r - |S| with
    clique order q - |S| on ``vertices`` - S (default 0..m-1), and each
    (q - |S|)-set P becomes the clique P + S. When |S| = r the whole weight
    sits on the lexicographically least completion of S. ``minimize`` runs
    the l1 post-pass on the link solution.

    Raises:
        DivisibilityError: the link target is not divisible.
    """
    S = normalize_edge(S)
    i = len(S)
    if i > r:
        raise PreconditionError(f"Cone apex has {i} > r={r} vertices")
    vertices = sorted(vertices) if vertices is not None else list(range(m))
    inside = set(vertices)
    if not set(S) <= inside:
        raise PreconditionError(f"Cone apex {S} is outside the ground")
    link = {}
    for e, w in psi.items():
        if w and set(S) <= set(e) and set(e) <= inside:
            link[tuple(v for v in e if v not in S)] = w
    if not link:
        return IntegralValuation(m, q, r)
    rest = [v for v in vertices if v not in S]
    if len(rest) < (q - i) + (r - i):
        raise PreconditionError(f"Cone ground of {len(rest)} vertices is too small for K_{q - i}^{r - i}")
    if i == r:
        return IntegralValuation(m, q, r, {tuple(rest[:q - r]) + S: link[()]})
    if not weighted_divisible(link, r - i, q - i):
        logger.error(f"Link target at {S} is not K_{q - i}^{r - i}-divisible")
        raise DivisibilityError(f"Link target at {S} is not K_{q - i}^{r - i}-divisible")
    lower = _solve_on(rest, link, q - i, r - i, minimize=minimize)
    return IntegralValuation(m, q, r, {P + S: w for P, w in lower.items()})


def _residual(target: Mapping[Edge, int], phi: Mapping[Clique, int], r: int) -> Dict[Edge, int]:
    current = clique_boundary(phi, r)
    residual = dict(target)
    for e, w in current.items():
        residual[e] = residual.get(e, 0) - w
    return {e: w for e, w in residual.items() if w != 0}


def edge_intersecting_integral_decompose(L: IntegralHypergraph, q: int) -> IntegralValuation:
    """L-edge-intersecting integral decomposition of L inside K_{v(L)+q+r}^r.

    Stage 0 puts Psi(e) on V(e) + X' for a fixed (q-r)-set X' of new
    vertices. Stage i (1..r) cancels the remaining boundary on the edges that
    meet V(L) in exactly r - i vertices, one cone over S + X per such
    intersection S.

    Raises:
        DivisibilityError: L is not divisible.
    """
    G = L.graph
    r = _require_uniform(G)
    if q <= r:
        raise PreconditionError(f"Need q > r (q={q}, r={r})")
    if not weighted_divisible(L.psi, r, q):
        logger.error("Integral hypergraph is not divisible")
        raise DivisibilityError(f"Weights are not K_{q}^{r}-divisible")
    n = G.n
    m = n + q + r
    X = list(range(n, m))
    apex_pool = {S for e in L.psi for k in range(r + 1) for S in combinations(e, k)}
    phi: Dict[Clique, int] = defaultdict(int)
    for e, w in L.psi.items():
        phi[normalize_edge(e + tuple(X[:q - r]))] += w

    for i in range(1, r + 1):
        residual = _residual(L.psi, phi, r)
        groups: Dict[Edge, Dict[Edge, int]] = defaultdict(dict)
        for f, w in residual.items():
            groups[tuple(v for v in f if v < n)][f] = w
        for S in sorted(S for S in groups if len(S) == r - i):
            if S not in apex_pool:
                raise AbsorptionError(f"Residual at {S} is not inside an edge of L")
            cone = cone_valuation(groups[S], S, m, q, r, vertices=S + tuple(X))
            for clique, w in cone.weights.items():
                phi[clique] += w
        if settings.DEBUG_CHECKS:
            _check_stage(L, phi, r, i, n)

    result = IntegralValuation(m, q, r, phi)
    if boundary(result) != {e: w for e, w in L.psi.items() if w}:
        raise AbsorptionError("Edge-intersecting decomposition does not reproduce the target")
    logger.info(f"Edge-intersecting decomposition on K_{m}^{r}: {len(result.weights)} cliques, l1={result.l1()}")
    return result


def _check_stage(L: IntegralHypergraph, phi: Mapping[Clique, int], r: int, i: int, n: int) -> None:
    """After stage i the boundary is Psi on L and 0 on non-edges meeting V(L) in >= r - i vertices."""
    for f, w in _residual(L.psi, phi, r).items():
        if sum(1 for v in f if v < n) >= r - i:
            raise AbsorptionError(f"Stage {i} left residual {w} at {f}")


def is_edge_intersecting(phi: IntegralValuation, L: Hypergraph) -> bool:
    """Every support clique meets V(L) inside a single edge of L."""
    return fits_inside_edges(phi.support(), L)


def fits_inside_edges(vertex_sets: Iterable[Iterable[int]], L: Hypergraph) -> bool:
    """Each set meets V(L) = 0..v(L)-1 in a subset of some edge of L (empty meets always fit)."""
    edges = [set(e) for e in L.edges]
    for vs in vertex_sets:
        trace = {v for v in vs if v < L.n}
        if trace and not any(trace <= e for e in edges):
            return False
    return True
