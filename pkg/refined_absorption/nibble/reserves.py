"""Random reserve graphs X inside G with a maximum codegree bound and clique extension counts."""

import logging
from itertools import combinations
from typing import Any, Dict, Optional, Tuple

import attr
import numpy as np
import pandas as pd
from tenacity import retry, retry_if_exception_type, stop_after_attempt

from ..config import settings
from ..core.hypercore import _require_uniform, max_codegree
from ..core.models import Edge, Hypergraph, normalize_edge
from ..errors import PreconditionError, ReserveBoundError

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class ReserveReport:
    p: float
    seed: int
    attempts: int
    max_codegree: int
    bound: float
    extension_counts: Dict[Edge, int] = attr.ib(factory=dict)

    @property
    def within_bound(self) -> bool:
        return self.max_codegree <= self.bound

    def frame(self) -> pd.DataFrame:
        rows = [{'Edge': ' '.join(map(str, e)), 'Extensions': k} for e, k in sorted(self.extension_counts.items())]
        return pd.DataFrame(rows, columns=['Edge', 'Extensions'])

    def export_analysis(self, output_path: str) -> None:
        self.frame().to_csv(f"{output_path}_extensions.csv", index=False)
        logger.info(f"Reserve extension counts exported to {output_path}_extensions.csv")

    def to_dict(self) -> Dict[str, Any]:
        counts = list(self.extension_counts.values())
        return {
            'p': self.p,
            'seed': self.seed,
            'attempts': self.attempts,
            'max_codegree': self.max_codegree,
            'bound': self.bound,
            'within_bound': self.within_bound,
            'min_extensions': min(counts, default=0),
            'edges_outside': len(counts),
        }


def extension_count(X: Hypergraph, e: Edge, q: int) -> int:
    """Number of q-cliques of X + {e} through e."""
    r = len(e)
    others = [v for v in range(X.n) if v not in e]
    total = 0
    for T in combinations(others, q - r):
        clique = normalize_edge(e + T)
        if all(f == e or X.has_edge(f) for f in combinations(clique, r)):
            total += 1
    return total


class ReserveSampler:
    """Draws X by keeping each edge of G with probability p; redraws while Delta(X) > 2pn."""

    def __init__(self, G: Hypergraph, q: int, p: float, seed: Optional[int] = None):
        if not 0 <= p <= 1:
            raise PreconditionError(f"Reserve probability {p} outside [0, 1]")
        self.r = _require_uniform(G)
        self.G = G
        self.q = q
        self.p = p
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.attempts = 0

    @property
    def bound(self) -> float:
        return 2 * self.p * self.G.n

    @retry(
        stop=stop_after_attempt(settings.RESERVE_RETRIES),
        retry=retry_if_exception_type(ReserveBoundError),
        reraise=True,
    )
    def sample(self) -> Hypergraph:
        rng = np.random.default_rng([self.seed, self.attempts])
        self.attempts += 1
        edges = self.G.sorted_edges()
        keep = rng.random(len(edges)) < self.p
        X = Hypergraph(self.G.n, [e for e, k in zip(edges, keep) if k], r_max=self.r)
        delta = max_codegree(X)
        if delta > self.bound:
            logger.warning(f"Reserve draw {self.attempts} has Delta(X)={delta} > {self.bound:.2f}")
            raise ReserveBoundError(f"Delta(X)={delta} exceeds 2pn={self.bound:.2f}")
        return X


def sample_reserves(G: Hypergraph, q: int, p: Optional[float] = None,
                    seed: Optional[int] = None) -> Tuple[Hypergraph, ReserveReport]:
    """Random reserve X <= G and, for each e in G - X, the number of K_q^r in X + {e} through e.

    Raises:
        ReserveBoundError: every allowed draw broke the 2pn codegree bound.
    """
    p = settings.RESERVE_P if p is None else p
    sampler = ReserveSampler(G, q, p, seed)
    X = sampler.sample()
    counts = {e: extension_count(X, e, q) for e in G.sorted_edges() if e not in X.edges}
    report = ReserveReport(p, sampler.seed, sampler.attempts, max_codegree(X), sampler.bound, counts)
    logger.info(f"Reserves: e(X)={X.num_edges} of {G.num_edges}, Delta(X)={report.max_codegree}, "
                f"{sampler.attempts} draw(s)")
    return X, report
