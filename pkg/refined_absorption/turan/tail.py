"""Fraction of k-subsets whose induced edge count falls below beta * C(k, r)."""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from ..config import settings
from ..core.hypercore import _require_uniform
from ..core.models import Hypergraph, vertex_mask
from ..errors import PreconditionError

logger = logging.getLogger(__name__)

TAIL_MODES = ('auto', 'exhaustive', 'sample')


def _induced_count(G: Hypergraph, S) -> int:
    mask = vertex_mask(S)
    return sum(1 for e in G.edges if vertex_mask(e) & ~mask == 0)


def subset_density_tail(G: Hypergraph, k: int, beta, trials: int = 1000, seed: Optional[int] = None,
                        mode: str = 'auto', cap: Optional[int] = None) -> Fraction:
    """Share of k-subsets S with e(G[S]) < beta * C(k, r).

    ``auto`` enumerates every k-subset when C(n, k) is within the cap and
    samples ``trials`` uniform subsets otherwise.
    """
    if mode not in TAIL_MODES:
        raise PreconditionError(f"Unknown tail mode {mode!r}")
    r = _require_uniform(G)
    n = G.n
    if not 0 < k <= n:
        raise PreconditionError(f"Subset size {k} outside 1..{n}")
    if 2 * k * k > n:
        logger.warning(f"2k^2 = {2 * k * k} > n = {n}; outside the regime where the tail bound applies")
    threshold = Fraction(beta) * comb(k, r)
    cap = cap if cap is not None else settings.TAIL_EXHAUSTIVE_CAP
    exhaustive = mode == 'exhaustive' or (mode == 'auto' and comb(n, k) <= cap)

    if exhaustive:
        total = comb(n, k)
        low = sum(1 for S in combinations(range(n), k) if _induced_count(G, S) < threshold)
        logger.debug(f"Exhaustive tail over {total} subsets: {low} below threshold")
        return Fraction(low, total)

    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    low = 0
    for _ in range(trials):
        S = rng.choice(n, size=k, replace=False)
        if _induced_count(G, S.tolist()) < threshold:
            low += 1
    return Fraction(low, trials)
