"""
End-to-end finishing pipeline on a dense divisible host.

Reserves X are set aside, an omni-absorber for X is built on adjoined
vertices, a boosted fractional family drives the nibble over G - X, and the
divisible leftover of X is absorbed. Every stage is checked before the next
one consumes its output; a failing stage ends the run with a trace instead
of an exception.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from ..absorber.omni import build_omni_absorber_exhaustive
from ..config import settings
from ..core.hypercore import _require_uniform, is_divisible, verify_decomposition
from ..core.models import CliqueFamily, Hypergraph, LabelArena
from ..errors import (
    AbsorptionError,
    CapExceededError,
    DivisibilityError,
    FractionalInfeasibleError,
    LowWeightError,
    PreconditionError,
    StageFailure,
)
from ..fractional.fractional import (
    boost_regularity,
    fractional_boundary,
    fractional_decompose,
    low_weight_fractional,
)
from ..nibble.nibble import covered_edges, nibble_with_reserves
from ..nibble.reserves import sample_reserves
from .trace import DecompositionTrace, PipelineConfig

logger = logging.getLogger(__name__)

STAGES = ('reserves', 'omni-absorber', 'fractional', 'nibble', 'divisibility', 'absorb')
SEEDED_STAGES = (STAGES[0], STAGES[2], STAGES[3])


def _stage_seeds(seed: int) -> Dict[str, int]:
    """One independent seed per randomized stage, keyed by stage name."""
    states = np.random.SeedSequence(seed).generate_state(len(SEEDED_STAGES))
    return {name: int(s) for name, s in zip(SEEDED_STAGES, states)}


def _trim_reserves(X: Hypergraph, cap: int, seed: int) -> Tuple[Hypergraph, int]:
    """Keep at most ``cap`` reserve edges, chosen in a seeded order."""
    if X.num_edges <= cap:
        return X, 0
    edges = X.sorted_edges()
    order = np.random.default_rng(seed).permutation(len(edges))
    kept = [edges[int(i)] for i in order[:cap]]
    return Hypergraph(X.n, kept, r_max=X.r_max), len(edges) - cap


def _fractional_family(J: Hypergraph, q: int, config: PipelineConfig, seed: int, trace: DecompositionTrace):
    """psi on J by low-weight averaging, else one exact LP; boosted to a clique family."""
    if not J.edges:
        trace.record(3, STAGES[2], route='empty', cliques=0)
        return CliqueFamily(q)
    try:
        psi, low = low_weight_fractional(J, q, s=config.subset_size, mode=config.low_weight_mode,
                                         seed=seed, show_progress=config.show_progress)
        route, achieved = 'low-weight', low.achieved_c
    except (LowWeightError, CapExceededError, PreconditionError) as exc:
        logger.warning(f"Low-weight averaging unavailable ({exc}); solving one LP on J")
        try:
            psi = fractional_decompose(J, q, cap=config.lp_cap)
            route, achieved = 'lp', None
        except (FractionalInfeasibleError, CapExceededError) as inner:
            logger.warning(f"No fractional decomposition of J ({inner}); nibble starts from nothing")
            trace.record(3, STAGES[2], route='none', cliques=0)
            return CliqueFamily(q)
    boundary = fractional_boundary(psi)
    if any(boundary.get(e, 0) != 1 for e in J.edges):
        raise StageFailure("Fractional weighting is not a decomposition of J", 3, STAGES[2])
    family, regularity = boost_regularity(J, psi, seed=seed)
    trace.record(3, STAGES[2], route=route, support=len(psi.weights),
                 achieved_c=str(achieved) if achieved is not None else '', d=str(regularity.d),
                 cliques=len(family), max_relative_deviation=regularity.max_relative_deviation())
    return family


def decompose(G: Hypergraph, q: int, config: Optional[PipelineConfig] = None,
              seed: Optional[int] = None) -> Tuple[Optional[CliqueFamily], DecompositionTrace]:
    """K_q^r-decomposition of G + A, A the omni-absorber adjoined on fresh vertices.

    Returns the decomposition (None when a stage failed) and the trace.

    Raises:
        DivisibilityError: G is not K_q^r-divisible.
    """
    config = config if config is not None else PipelineConfig()
    seed = settings.DEFAULT_SEED if seed is None else seed
    r = _require_uniform(G)
    if not is_divisible(G, q):
        logger.error(f"Host with {G.num_edges} edges is not K_{q}^{r}-divisible")
        raise DivisibilityError(f"Host is not K_{q}^{r}-divisible")
    trace = DecompositionTrace(G.n, q, seed, config.to_dict())
    seeds = _stage_seeds(seed)

    try:
        X, reserves = sample_reserves(G, q, p=config.reserve_p, seed=seeds[STAGES[0]])
        X, trimmed = _trim_reserves(X, config.omni_cap, seeds[STAGES[0]])
        J = G.without_edges(X.edges)
        trace.record(1, STAGES[0], reserve_edges=X.num_edges, trimmed=trimmed,
                     max_codegree=reserves.max_codegree, bound=reserves.bound, draws=reserves.attempts)

        omni = build_omni_absorber_exhaustive(X, q, LabelArena(G.n), cap=config.omni_cap,
                                              show_progress=config.show_progress)
        if omni.graph.edges & G.edges:
            raise StageFailure("Absorber edges overlap the host", 2, STAGES[1])
        checks = omni.verify()
        if not all(checks.values()):
            raise StageFailure("Some Q_A(L) does not decompose A + L", 2, STAGES[1])
        trace.absorber_vertices = omni.graph.n - G.n
        trace.record(2, STAGES[1], subgraphs=len(checks), absorber_edges=omni.graph.num_edges,
                     absorber_vertices=trace.absorber_vertices, refinement=omni.refinement())

        family = _fractional_family(J, q, config, seeds[STAGES[2]], trace)

        Q1, nibble = nibble_with_reserves(J, X, family, bite=config.bite, seed=seeds[STAGES[3]],
                                          rounds=config.rounds, budget=config.search_budget,
                                          show_progress=config.show_progress)
        if nibble.leave:
            trace.record(4, STAGES[3], ok=False, error=f"{len(nibble.leave)} edges of J left uncovered",
                         route=nibble.route, cliques=len(Q1), leave=len(nibble.leave))
            return None, trace
        trace.record(4, STAGES[3], route=nibble.route, cliques=len(Q1), nibbled=nibble.nibbled,
                     swept=nibble.swept, covered_down=nibble.covered_down, searched=nibble.searched, leave=0)

        L = X.without_edges(covered_edges(X, Q1))
        if not is_divisible(L, q):
            raise StageFailure(f"Leftover reserve graph with {L.num_edges} edges is not divisible", 5, STAGES[4])
        trace.record(5, STAGES[4], leftover_edges=L.num_edges)

        Q2 = omni.decomposition(L.edges)
        decomposition = CliqueFamily(q, Q1.cliques + Q2.cliques, packing=True)
        trace.verified = verify_decomposition(G.union(omni.graph), decomposition)
        if not trace.verified:
            raise StageFailure("Q1 + Q2 is not a decomposition of G + A", 6, STAGES[5])
        trace.decomposition = decomposition
        trace.record(6, STAGES[5], absorbed=len(Q2), cliques=len(decomposition))
    except StageFailure as exc:
        trace.record(exc.stage, exc.name, ok=False, error=str(exc))
        return None, trace
    except AbsorptionError as exc:
        index = len({s.index for s in trace.stages}) + 1
        name = STAGES[index - 1] if index <= len(STAGES) else 'unknown'
        trace.record(index, name, ok=False, error=f"{type(exc).__name__}: {exc}")
        return None, trace

    logger.info(f"Pipeline decomposed G + A into {len(trace.decomposition)} cliques")
    return trace.decomposition, trace
