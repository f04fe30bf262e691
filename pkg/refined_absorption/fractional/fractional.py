"""
Fractional K_q^r-decompositions in exact rationals: LP existence, fixed
edge targets, low-weight averaging over s-sets, regularity boosting by
clique sampling and the inheritance statistic for s-sets.
"""

import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import attr
import numpy as np
import pandas as pd
from tqdm import tqdm

from .simplex import solve_feasibility
from ..config import settings
from ..core.hypercore import _require_uniform, clique_boundary, enumerate_cliques, min_codegree
from ..core.models import Clique, CliqueFamily, Edge, FractionalWeighting, Hypergraph, normalize_edge
from ..errors import AbsorptionError, CapExceededError, FractionalInfeasibleError, LowWeightError, PreconditionError

logger = logging.getLogger(__name__)


def fractional_boundary(psi: FractionalWeighting) -> Dict[Edge, Fraction]:
    return clique_boundary(psi.weights, psi.ground.r_max)


def is_fractional_decomposition(psi: FractionalWeighting) -> bool:
    """Weights in [0, 1] on cliques of the ground, total exactly 1 on every edge."""
    G = psi.ground
    if any(not 0 <= w <= 1 for w in psi.weights.values()):
        return False
    if any(not all(G.has_edge(e) for e in combinations(c, G.r_max)) for c in psi.weights):
        return False
    boundary = fractional_boundary(psi)
    return set(boundary) == set(G.edges) and all(w == 1 for w in boundary.values())


def fractional_decompose(G: Hypergraph, q: int, rule: str = 'bland', cap: Optional[int] = None) -> FractionalWeighting:
    """Exact fractional K_q^r-decomposition of G from the edge-by-clique LP.

    Raises:
        FractionalInfeasibleError: no decomposition exists; carries a Farkas vector on the edges.
        CapExceededError: the tableau is above the LP cap.
    """
    r = _require_uniform(G)
    if q <= r:
        raise PreconditionError(f"Need q > r (q={q}, r={r})")
    if not G.edges:
        return FractionalWeighting(G, q)
    edges = G.sorted_edges()
    cliques = enumerate_cliques(G, q)
    row = {e: i for i, e in enumerate(edges)}
    A = [[Fraction(0)] * len(cliques) for _ in edges]
    for j, clique in enumerate(cliques):
        for e in combinations(clique, r):
            A[row[e]][j] = Fraction(1)
    result = solve_feasibility(A, [Fraction(1)] * len(edges), n=len(cliques), rule=rule, cap=cap)
    if not result.feasible:
        certificate = {e: y for e, y in zip(edges, result.certificate) if y != 0}
        logger.error(f"No fractional K_{q}^{r}-decomposition of a graph with {len(edges)} edges")
        raise FractionalInfeasibleError(f"G has no fractional K_{q}^{r}-decomposition", certificate)
    psi = FractionalWeighting(G, q, {c: w for c, w in zip(cliques, result.x) if w})
    logger.debug(f"Fractional decomposition with {len(psi.weights)} cliques after {result.pivots} pivots")
    return psi


def fixed_fractional(G: Hypergraph, q: int, phi: Mapping[Edge, Fraction], base: FractionalWeighting,
                     removed: Mapping[Edge, FractionalWeighting]) -> FractionalWeighting:
    """Fractional packing with boundary exactly phi(e) on every edge.

    ``base`` decomposes G and ``removed[e]`` decomposes G - e. With
    lambda_e = e(G) (phi(e) - 1 + 1/e(G)), every edge contributes
    lambda_e base + (1 - lambda_e) removed[e] and the result is the average.

    Raises:
        PreconditionError: some phi(e) is outside [1 - 1/e(G), 1] or some removed[e] is missing.
    """
    m = G.num_edges
    if m == 0:
        return FractionalWeighting(G, q)
    low = 1 - Fraction(1, m)
    total: Dict[Clique, Fraction] = Counter()
    for e in G.sorted_edges():
        target = Fraction(phi.get(e, 1))
        if not low <= target <= 1:
            raise PreconditionError(f"Target {target} at {e} is outside [{low}, 1]")
        lam = m * (target - low)
        if lam != 1 and e not in removed:
            raise PreconditionError(f"No decomposition of G - {e} was given")
        for clique, w in base.weights.items():
            total[clique] += lam * w
        if lam != 1:
            for clique, w in removed[e].weights.items():
                total[clique] += (1 - lam) * w
    return FractionalWeighting(G, q, {c: w / m for c, w in total.items()})


def removal_decompositions(G: Hypergraph, q: int, rule: str = 'bland') -> Dict[Edge, FractionalWeighting]:
    """A fractional decomposition of G - e for every edge e.

    Raises:
        FractionalInfeasibleError: some G - e has none.
    """
    return {e: FractionalWeighting(G, q, fractional_decompose(G.without_edges([e]), q, rule).weights)
            for e in G.sorted_edges()}


@lru_cache(maxsize=4096)
def _local_decompositions(edges: FrozenSet[Edge], k: int, q: int):
    """(base, {e: decomposition of G - e}) on a compacted k-vertex graph, None when unusable."""
    G = Hypergraph(k, edges)
    try:
        base = fractional_decompose(G, q)
        removed = {e: fractional_decompose(G.without_edges([e]), q) for e in G.sorted_edges()}
    except FractionalInfeasibleError:
        return None
    return base.weights, {e: psi.weights for e, psi in removed.items()}


@attr.s(auto_attribs=True)
class LowWeightReport:
    s: int
    usable_sets: int
    min_count: int
    max_count: int
    achieved_c: Fraction
    reference_c: int

    def to_dict(self) -> Dict[str, Any]:
        data = attr.asdict(self)
        data['achieved_c'] = str(self.achieved_c)
        return data


def _candidate_sets(n: int, s: int, mode: str, samples: Optional[int], rng) -> List[Tuple[int, ...]]:
    if mode == 'enumerate':
        if comb(n, s) > settings.ENUMERATION_CAP:
            raise CapExceededError(f"C({n},{s}) s-sets exceed the enumeration cap")
        return list(combinations(range(n), s))
    if mode != 'sample':
        raise PreconditionError(f"Unknown mode {mode!r}")
    samples = samples if samples is not None else 20 * n
    chosen = {tuple(sorted(int(v) for v in rng.choice(n, size=s, replace=False))) for _ in range(samples)}
    return sorted(chosen)


def low_weight_fractional(G: Hypergraph, q: int, s: Optional[int] = None, mode: str = 'enumerate',
                          samples: Optional[int] = None, seed: Optional[int] = None,
                          show_progress: bool = True) -> Tuple[FractionalWeighting, LowWeightReport]:
    """Average fractional decompositions of the usable induced s-sets.

    An s-set S is usable when G[S] and every G[S] - e have fractional
    decompositions. With c(e) the number of usable sets through e and
    N = min c(e), each G[S] gets the fixed-target packing with phi(e) = N/c(e)
    and the sum is divided by N, so the boundary is exactly 1.

    Raises:
        LowWeightError: an edge lies in no usable s-set, or some target N/c(e) falls below
            1 - 1/e(G[S]) for a usable S through e.
    """
    r = _require_uniform(G)
    s = s if s is not None else settings.SUBSET_SIZE
    if s <= r or s > G.n:
        raise PreconditionError(f"Need r < s <= n (s={s})")
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    local: Dict[Tuple[int, ...], Any] = {}
    counts: Counter = Counter()
    for S in tqdm(_candidate_sets(G.n, s, mode, samples, rng), desc="Inducing s-sets", disable=not show_progress):
        sub, order = G.compact(S)
        if not sub.edges:
            continue
        found = _local_decompositions(sub.edges, s, q)
        if found is None:
            continue
        local[S] = found
        counts.update(tuple(order[v] for v in e) for e in sub.edges)
    for e in G.sorted_edges():
        if not counts[e]:
            logger.error(f"Edge {e} lies in no usable {s}-set")
            raise LowWeightError(f"Edge {e} lies in no usable {s}-set", edge=e)

    N = min(counts[e] for e in G.edges) if G.edges else 1
    top = max(counts.values(), default=1)
    total: Dict[Clique, Fraction] = Counter()
    for S, (base, removed) in local.items():
        m = len(removed)
        targets = {e: Fraction(N, counts[tuple(S[v] for v in e)]) for e in removed}
        low = min(targets, key=lambda e: (targets[e], e))
        if targets[low] < 1 - Fraction(1, m):
            bad = tuple(S[v] for v in low)
            logger.error(f"Averaging target {targets[low]} at {bad} is below the fixed-target range 1 - 1/{m}")
            raise LowWeightError(f"Averaging target at {bad} is out of range", edge=bad)
        sub = Hypergraph(s, list(removed))
        packed = fixed_fractional(sub, q, targets, FractionalWeighting(sub, q, base),
                                  {e: FractionalWeighting(sub, q, w) for e, w in removed.items()})
        for clique, w in packed.weights.items():
            total[tuple(S[v] for v in clique)] += w

    psi = FractionalWeighting(G, q, {c: w / N for c, w in total.items()})
    boundary = fractional_boundary(psi)
    if settings.DEBUG_CHECKS and any(boundary.get(e, 0) != 1 for e in G.edges):
        logger.error("Averaged weighting does not have unit boundary")
        raise AbsorptionError("Averaged weighting does not have unit boundary")
    scale = comb(G.n - r, q - r)
    report = LowWeightReport(s, len(local), N, top, psi.max_weight() * scale, 2 * comb(s - r, q - r))
    logger.info(f"Low-weight fractional: {len(local)} usable {s}-sets, achieved C={report.achieved_c}")
    return psi, report


@attr.s(auto_attribs=True)
class RegularityReport:
    """Per-edge sample counts |H(e)| against their expectation boundary(e) * d."""
    d: Fraction
    low_weight_c: Fraction
    counts: Dict[Edge, int] = attr.ib(factory=dict)
    expected: Dict[Edge, Fraction] = attr.ib(factory=dict)

    def frame(self) -> pd.DataFrame:
        rows = [{'Edge': ' '.join(map(str, e)), 'Sampled': self.counts.get(e, 0),
                 'Expected': float(self.expected[e])} for e in sorted(self.expected)]
        return pd.DataFrame(rows, columns=['Edge', 'Sampled', 'Expected'])

    def max_relative_deviation(self) -> float:
        deviations = [abs(self.counts.get(e, 0) - x) / x for e, x in self.expected.items() if x]
        return float(max(deviations, default=0))

    def export_analysis(self, output_path: str) -> None:
        self.frame().to_csv(f"{output_path}_regularity.csv", index=False)
        logger.info(f"Regularity report exported to {output_path}_regularity.csv")

    def to_dict(self) -> Dict[str, Any]:
        return {'d': str(self.d), 'low_weight_c': str(self.low_weight_c), 'edges': len(self.expected),
                'sampled_cliques_max_edge': max(self.counts.values(), default=0),
                'max_relative_deviation': self.max_relative_deviation()}


def boost_regularity(G: Hypergraph, psi: FractionalWeighting, C: Optional[Fraction] = None,
                     seed: Optional[int] = None) -> Tuple[CliqueFamily, RegularityReport]:
    """Keep each clique H independently with probability psi(H) * d, d = C(n-r, q-r)/C.

    C defaults to the achieved low-weight constant max psi(H) * C(n-r, q-r).

    Raises:
        LowWeightError: some psi(H) * d exceeds 1.
    """
    r = G.r_max
    q = psi.q
    scale = comb(G.n - r, q - r)
    C = Fraction(C) if C is not None else psi.max_weight() * scale
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    if C == 0:
        return CliqueFamily(q), RegularityReport(Fraction(0), C)
    d = Fraction(scale) / C
    chosen: List[Clique] = []
    for clique in psi.support():
        p = psi.weights[clique] * d
        if p > 1:
            logger.error(f"Clique {clique} has sampling probability {p} > 1")
            raise LowWeightError(f"Weighting is not {C}-low-weight at {clique}")
        if rng.random() < float(p):
            chosen.append(clique)
    family = CliqueFamily(q, chosen)
    counts = family.edge_counts(r)
    expected = {e: w * d for e, w in fractional_boundary(psi).items()}
    for e in G.edges:
        expected.setdefault(e, Fraction(0))
    report = RegularityReport(d, C, {e: counts.get(e, 0) for e in expected}, expected)
    logger.info(f"Boosted family of {len(family)} cliques, d={float(d):.3f}")
    return family, report


@attr.s(auto_attribs=True)
class InheritanceStats:
    s: int
    threshold: int
    sets: int
    inheriting: int
    exhaustive: bool

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.inheriting, self.sets) if self.sets else Fraction(0)

    def to_dict(self) -> Dict[str, Any]:
        return dict(attr.asdict(self), fraction=str(self.fraction))


def inheritance_sample(G: Hypergraph, R: Sequence[int], s: int, trials: int = 200, seed: Optional[int] = None,
                       threshold: Optional[int] = None, exhaustive: bool = False) -> InheritanceStats:
    """Share of s-sets S containing R whose induced minimum codegree reaches ``threshold``.

    The default threshold scales delta(G) to s vertices:
    floor(delta(G) * (s - r + 1) / (n - r + 1)).
    """
    r = _require_uniform(G)
    R = normalize_edge(R)
    if len(R) > s or (R and R[-1] >= G.n):
        raise PreconditionError(f"Root set {R} does not fit in an {s}-subset of V(G)")
    if threshold is None:
        threshold = min_codegree(G) * (s - r + 1) // (G.n - r + 1)
    rest = [v for v in range(G.n) if v not in R]
    if exhaustive:
        pool = [R + extra for extra in combinations(rest, s - len(R))]
    else:
        rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
        pool = [R + tuple(int(v) for v in rng.choice(rest, size=s - len(R), replace=False)) for _ in range(trials)]
    hits = sum(1 for S in pool if min_codegree(G.compact(sorted(S))[0]) >= threshold)
    return InheritanceStats(s, threshold, len(pool), hits, exhaustive)
