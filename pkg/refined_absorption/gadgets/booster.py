"""
Boosters from Cauchy matrices over a prime field.

The complete q-partite r-graph K_{q*n}^r has the vectors of F_n^q as its
transversal q-sets. For a (q-r) x q Cauchy matrix M, every (q-r) x (q-r)
submatrix is invertible, so for each right-hand side a the solution set
{v : Mv = a} meets every transversal r-set exactly once: it is a clique
decomposition of K_{q*n}^r. Two such solution sets give the on/off
decompositions of a booster.

Constructions are computed once per (q, r) on abstract labels (roots are
0..q-1, one per part) and relabelled for every use.
"""

import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from ..core.hypercore import verify_decomposition
from ..core.models import Booster, Clique, CliqueFamily, Hypergraph, LabelArena, Layer, RootedGadget
from ..errors import FieldConstructionError, PreconditionError

logger = logging.getLogger(__name__)


def booster_prime(q: int, r: int) -> int:
    """Smallest prime n with 2q - r < n < 2(2q - r)."""
    low, high = 2 * q - r, 2 * (2 * q - r)
    n = galois.next_prime(low)
    if n >= high:
        raise FieldConstructionError(f"No prime strictly between {low} and {high}")
    return int(n)


def cauchy_matrix(q: int, r: int) -> galois.FieldArray:
    """M_ij = (x_i - y_j)^-1 over F_n with x_i = i and y_j = q - r + j.

    Raises:
        FieldConstructionError: some (q-r) x (q-r) submatrix is singular.
    """
    n = booster_prime(q, r)
    GF = galois.GF(n)
    xs = GF(np.arange(1, q - r + 1) % n)
    ys = GF(np.arange(q - r + 1, 2 * q - r + 1) % n)
    M = (xs[:, np.newaxis] - ys[np.newaxis, :]) ** -1
    for columns in combinations(range(q), q - r):
        if np.linalg.det(M[:, list(columns)]) == 0:
            raise FieldConstructionError(f"Cauchy submatrix on columns {columns} is singular")
    return M


def solution_cliques(M: galois.FieldArray, a: Sequence[int]) -> List[Tuple[int, ...]]:
    """All v in F_n^q with Mv = a, as value tuples, in lexicographic order of the free part."""
    GF = type(M)
    k, q = M.shape
    dependent, free = M[:, :k], M[:, k:]
    inverse = np.linalg.inv(dependent)
    values = GF(np.array(list(product(range(GF.order), repeat=q - k)), dtype=int))
    rhs = GF(np.array(a, dtype=int) % GF.order)[np.newaxis, :] - values @ free.T
    solved = rhs @ inverse.T
    return [tuple(int(x) for x in row) for row in np.hstack([np.asarray(solved), np.asarray(values)])]


def _label(j: int, x: int, q: int, n: int) -> int:
    """Template label of value x in part j; the zero vector is the target clique 0..q-1."""
    return j if x == 0 else q + j * (n - 1) + (x - 1)


@lru_cache(maxsize=None)
def _booster_template(q: int, r: int) -> Booster:
    n = booster_prime(q, r)
    M = cauchy_matrix(q, r)
    zero = [0] * (q - r)
    unit = [1] + [0] * (q - r - 1)

    def as_clique(vector: Tuple[int, ...]) -> Clique:
        return tuple(_label(j, x, q, n) for j, x in enumerate(vector))

    target = tuple(range(q))
    on = [as_clique(v) for v in solution_cliques(M, unit)]
    off = [as_clique(v) for v in solution_cliques(M, zero) if any(v)]
    edges = []
    for parts in combinations(range(q), r):
        for values in product(range(n), repeat=r):
            if any(values):
                edges.append(tuple(_label(j, x, q, n) for j, x in zip(parts, values)))
    size = q * n
    coloring = {_label(j, x, q, n): j for j in range(q) for x in range(n)}
    gadget = RootedGadget(
        graph=Hypergraph(size, edges, r_max=r),
        roots=target,
        layers=[Layer(range(q, size), {v: coloring[v] for v in range(q, size)})],
        coloring=coloring,
    )
    logger.debug(f"Booster template q={q} r={r}: n={n}, {len(edges)} edges, |on|={len(on)}, |off|={len(off)}")
    return Booster(gadget, target, CliqueFamily(q, on), CliqueFamily(q, off), orthogonal=False, prime=n)


def _check_target(S: Sequence[int], r: int) -> Tuple[int, ...]:
    S = tuple(int(v) for v in S)
    if len(set(S)) != len(S):
        raise PreconditionError(f"Target clique {S} repeats a vertex")
    if not 1 <= r < len(S):
        raise PreconditionError(f"Boosters need q > r >= 1 (q={len(S)}, r={r})")
    return S


def _instantiate(template: Booster, S: Tuple[int, ...], arena: Optional[LabelArena]) -> Booster:
    q = len(S)
    arena = arena if arena is not None else LabelArena(max(S) + 1)
    fresh = arena.fresh(template.gadget.graph.n - q)
    mapping: Dict[int, int] = {j: S[j] for j in range(q)}
    mapping.update({q + i: label for i, label in enumerate(fresh)})
    return template.relabel(mapping)


def build_booster(S: Sequence[int], r: int, arena: Optional[LabelArena] = None) -> Booster:
    """Booster B for the clique S (vertex S[j] placed in part j).

    Returns B = K_{q*n}^r - S with on(B) = {v : Mv = e_1} and off(B) = {v : Mv = 0} - {S}.
    """
    S = _check_target(S, r)
    return _instantiate(_booster_template(len(S), r), S, arena)


def _edges_hit(clique: Clique, target_edges: set, r: int) -> int:
    return sum(1 for e in combinations(clique, r) if e in target_edges)


@lru_cache(maxsize=None)
def _spread_positions(q: int, r: int, j: int) -> Tuple[int, ...]:
    """Root positions T, |T| = j, not all inside one on-clique of the template booster.

    T starts from the lexicographically least (r+1)-set avoiding every on-clique
    and is extended lexicographically.
    """
    template = _booster_template(q, r)
    traces = [set(c) & set(range(q)) for c in template.on.cliques]
    for base in combinations(range(q), r + 1):
        if not any(set(base) <= trace for trace in traces):
            extra = [p for p in range(q) if p not in base][:j - r - 1]
            return tuple(sorted(base + tuple(extra)))
    raise FieldConstructionError(f"Every (r+1)-set of roots lies in an on-clique for q={q}, r={r}")


def _on_statistic(on: List[Clique], target_edges: set, r: int) -> int:
    return sum(1 for c in on if _edges_hit(c, target_edges, r) > 0)


@lru_cache(maxsize=None)
def _orthogonal_template(q: int, r: int) -> Booster:
    base = _booster_template(q, r)
    target = base.target
    target_edges = set(combinations(target, r))
    on = list(base.on.cliques)
    off = list(base.off.cliques)
    edges = set(base.gadget.graph.edges)
    coloring = dict(base.gadget.coloring)
    arena = LabelArena(base.gadget.graph.n)
    rounds = [_on_statistic(on, target_edges, r)]

    while True:
        offenders = [c for c in on if _edges_hit(c, target_edges, r) >= 2]
        if not offenders:
            break
        Q = min(offenders)
        inner = sorted(set(Q) & set(target))
        positions = _spread_positions(q, r, len(inner))
        ordered: List[int] = [0] * q
        for p, v in zip(positions, inner):
            ordered[p] = v
        for p, v in zip([p for p in range(q) if p not in positions], sorted(set(Q) - set(inner))):
            ordered[p] = v
        star = _instantiate(base, tuple(ordered), arena)
        # parts of the spliced booster inherit the colors of Q's vertices
        part_color = {p: coloring[ordered[p]] for p in range(q)}
        for v, part in star.gadget.coloring.items():
            coloring.setdefault(v, part_color[part])
        on.remove(Q)
        on.extend(star.on.cliques)
        off.extend(star.off.cliques)
        edges |= star.gadget.graph.edges
        rounds.append(_on_statistic(on, target_edges, r))
        logger.debug(f"Orthogonal augmentation q={q} r={r}: statistic {rounds[-2]} -> {rounds[-1]}")
        if rounds[-1] <= rounds[-2]:
            raise FieldConstructionError("Augmentation did not increase the on-clique statistic")

    size = arena.next_label
    non_roots = range(q, size)
    gadget = RootedGadget(
        graph=Hypergraph(size, edges, r_max=r),
        roots=target,
        layers=[Layer(non_roots, {v: coloring[v] for v in non_roots})],
        coloring=coloring,
    )
    return Booster(gadget, target, CliqueFamily(q, on), CliqueFamily(q, off),
                   orthogonal=True, prime=base.prime, rounds=rounds)


def build_orthogonal_booster(S: Sequence[int], r: int, arena: Optional[LabelArena] = None) -> Booster:
    """Booster for S whose on-cliques through distinct edges of S are distinct."""
    S = _check_target(S, r)
    return _instantiate(_orthogonal_template(len(S), r), S, arena)


def is_orthogonal(booster: Booster, r: int) -> bool:
    seen = set()
    for e in combinations(booster.target, r):
        clique = booster.on.at(e)
        if clique in seen:
            return False
        seen.add(clique)
    return True


def _partite(edges, coloring: Dict[int, int]) -> bool:
    for e in edges:
        colors = [coloring.get(v) for v in e]
        if None in colors or len(set(colors)) != len(colors):
            return False
    return True


def verify_booster(booster: Booster, r: int) -> Dict[str, bool]:
    """Exact checks of the booster definition; every value is True for a valid booster."""
    graph = booster.gadget.graph
    closed = graph.with_edges(combinations(booster.target, r))
    checks = {
        'off_decomposes': verify_decomposition(graph, booster.off),
        'on_decomposes': verify_decomposition(closed, booster.on),
        'target_not_on': booster.target not in booster.on,
        'partite': _partite(closed.edges, booster.gadget.coloring),
    }
    if booster.orthogonal:
        checks['orthogonal'] = is_orthogonal(booster, r)
    return checks
