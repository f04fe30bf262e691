from math import comb
from typing import Any, Dict, List, Optional, Sequence
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..config import settings
from ..core.generators import random_bounded
from ..core.hypercore import count_copies
from ..core.models import DensityVector, Hypergraph
from ..errors import PreconditionError
from .density import density_vector

logger = logging.getLogger(__name__)


class TuranProbe:
    """Empirical Turán-space probe: copies of an r-bounded pattern F in random hosts.

    Each trial draws a host on n vertices whose i-sets are edges with
    probability alpha_i + epsilon, then counts copies of F exactly. The
    probe reports; it never decides membership.
    """

    def __init__(self, F: Hypergraph, alpha: DensityVector, n: int, epsilon: float = 0.05,
                 cap: Optional[int] = None):
        if len(alpha) < F.r_max:
            raise PreconditionError(f"Density vector has {len(alpha)} components, pattern is {F.r_max}-bounded")
        self.F = F
        self.alpha = alpha
        self.n = n
        self.epsilon = epsilon
        self.cap = cap if cap is not None else settings.COPY_CAP
        self.trials: List[Dict[str, Any]] = []

    @property
    def target(self) -> List[float]:
        return [min(1.0, float(a) + self.epsilon) for a in self.alpha.components]

    @property
    def subset_size(self) -> int:
        """Copies are normalised by C(n, k) with k = v(F)."""
        return self.F.n

    def run(self, trials: int = 10, seed: Optional[int] = None, show_progress: bool = True) -> None:
        """Run ``trials`` independent hosts; trial seeds are spawned from the master seed."""
        seed = settings.DEFAULT_SEED if seed is None else seed
        logger.info(f"Probing {trials} hosts on {self.n} vertices for a pattern on {self.F.n} vertices")
        children = np.random.SeedSequence(seed).spawn(trials)
        total = comb(self.n, self.subset_size)
        for index, child in enumerate(tqdm(children, desc="Turán probe", disable=not show_progress)):
            host = random_bounded(self.n, self.target, np.random.default_rng(child))
            copies = count_copies(host, self.F, cap=self.cap)
            realized = density_vector(host)
            self.trials.append({
                'trial': index,
                'edges': host.num_edges,
                'copies': copies,
                'ratio': copies / total if total else 0.0,
                'densities': ' '.join(f"{float(d):.4f}" for d in realized.components),
            })

    def get_summary(self) -> Dict[str, Any]:
        copies = [t['copies'] for t in self.trials]
        ratios = [t['ratio'] for t in self.trials]
        return {
            'trials': len(self.trials),
            'n': self.n,
            'pattern_vertices': self.F.n,
            'target_densities': self.target,
            'hit_rate': (sum(1 for c in copies if c > 0) / len(copies)) if copies else 0.0,
            'min_copies': min(copies, default=0),
            'max_copies': max(copies, default=0),
            'min_ratio': min(ratios, default=0.0),
            'k': self.subset_size,
            'empirical': True,
        }

    def get_trials_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.trials, columns=['trial', 'edges', 'copies', 'ratio', 'densities'])

    def export_analysis(self, output_path: str) -> None:
        """Export per-trial counts and the summary to CSV files."""
        self.get_trials_frame().to_csv(f"{output_path}_probe_trials.csv", index=False)
        summary = {k: v for k, v in self.get_summary().items() if k != 'target_densities'}
        pd.DataFrame([summary]).to_csv(f"{output_path}_probe_summary.csv", index=False)
        logger.info(f"Probe results exported to {output_path}_probe_*.csv")


def turan_space_probe(F: Hypergraph, alpha: Sequence, n: int, trials: int = 10,
                      seed: Optional[int] = None, epsilon: float = 0.05,
                      show_progress: bool = True) -> Dict[str, Any]:
    probe = TuranProbe(F, alpha if isinstance(alpha, DensityVector) else DensityVector(alpha), n, epsilon)
    probe.run(trials, seed, show_progress)
    return probe.get_summary()
