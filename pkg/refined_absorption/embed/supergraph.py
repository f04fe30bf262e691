"""
Supergraph systems: embed one rooted gadget W_H per member H of a refined
family inside J, all at once, by choosing candidate embeddings through a
capacitated finishing matching.

B-side resources of a candidate image:
    ('e', edge)   each host edge used at most once
    ('v', vertex) each new vertex used at most once
    ('s', rset)   each (r-1)-set inside V(J) covered by at most T images
"""

import logging
from collections import Counter
from itertools import combinations, islice
from typing import Any, Dict, List, Optional

import attr
import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from .embedding import iter_embeddings
from .matching import MatchingResult, finishing_matching
from ..config import settings
from ..core.models import Edge, Hypergraph, RootedGadget, normalize_edge
from ..errors import BudgetExhaustedError, EmbeddingNotFoundError, PreconditionError

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class SupergraphSystem:
    """Base J, members H of J and for each H a gadget W_H - H rooted at V(H)."""
    base: Hypergraph
    family: List[Hypergraph]
    supers: List[RootedGadget]

    def __attrs_post_init__(self):
        if len(self.family) != len(self.supers):
            raise PreconditionError("Every member needs exactly one supergraph")
        for H, W in zip(self.family, self.supers):
            if not H.edges <= self.base.edges:
                raise PreconditionError("A family member is not a subgraph of the base")
            if set(W.roots) != set(H.spanned_vertices()):
                raise PreconditionError("A supergraph is not rooted at V(H)")

    def refinement(self) -> int:
        """Largest number of members through one edge of J."""
        counts = Counter(e for H in self.family for e in H.edges)
        return max(counts.values(), default=0)

    def bound(self) -> int:
        """Largest max(e(W_H), v(W_H)) over the members."""
        sizes = [max(W.graph.num_edges, len(W.roots) + len(W.non_root_vertices())) for W in self.supers]
        return max(sizes, default=0)

    def is_edge_intersecting(self) -> bool:
        for H, W in zip(self.family, self.supers):
            edges = [set(e) for e in H.edges]
            for e in W.graph.edges:
                trace = set(e) & W.roots
                if trace and not any(trace <= f for f in edges):
                    return False
        return True

    def disjoint_outside_base(self) -> bool:
        seen = set()
        for W in self.supers:
            own = set(W.non_root_vertices())
            if own & seen:
                return False
            seen |= own
        return True


@attr.s(auto_attribs=True)
class SystemEmbedding:
    maps: List[Dict[int, int]]
    slots: int
    refinement: int
    rset_loads: Dict[Edge, int] = attr.ib(factory=dict)
    matching: Optional[MatchingResult] = None

    @property
    def max_rset_load(self) -> int:
        return max(self.rset_loads.values(), default=0)

    def images(self, sys: SupergraphSystem) -> List[List[Edge]]:
        return [[normalize_edge(phi[v] for v in e) for e in W.graph.sorted_edges()]
                for phi, W in zip(self.maps, sys.supers)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'members': len(self.maps),
            'slots': self.slots,
            'refinement': self.refinement,
            'max_rset_load': self.max_rset_load,
            'load_bound': self.slots * max(self.refinement, 1),
            'matching': self.matching.to_dict() if self.matching else None,
        }


def _resources(W: RootedGadget, phi: Dict[int, int], base_vertices: set, r: int):
    resources = []
    rsets = set()
    for e in W.graph.edges:
        image = normalize_edge(phi[v] for v in e)
        resources.append(('e', image))
        rsets.update(s for s in combinations(image, r - 1) if set(s) <= base_vertices)
    resources.extend(('v', phi[v]) for v in W.non_root_vertices())
    resources.extend(('s', s) for s in sorted(rsets))
    return tuple(resources)


def embed_supergraph_system(G: Hypergraph, sys: SupergraphSystem, T: Optional[int] = None,
                            seed: Optional[int] = None, max_candidates: int = 64,
                            budget: Optional[int] = None) -> SystemEmbedding:
    """Embed every W_H into G, root-fixing, with pairwise edge-disjoint images.

    New vertices avoid V(J) and image edges avoid E(J). Up to
    ``max_candidates`` embeddings per member are collected (host vertices
    scanned in a seeded random order) and a finishing matching picks one
    each, so that images are vertex-disjoint outside V(J) and every
    (r-1)-set inside V(J) lies in at most T images.

    Raises:
        EmbeddingNotFoundError: some member has no candidate or no matching was found.
    """
    T = T if T is not None else settings.SLOTS
    seed = seed if seed is not None else settings.DEFAULT_SEED
    rng = np.random.default_rng(seed)
    r = G.r_max
    base_vertices = set(sys.base.spanned_vertices())
    for H in sys.family:
        base_vertices.update(H.spanned_vertices())
    order = [int(v) for v in rng.permutation(G.n) if int(v) not in base_vertices]

    options: Dict[int, List[tuple]] = {}
    candidates: Dict[int, Dict[tuple, Dict[int, int]]] = {}
    for k, W in enumerate(sys.supers):
        identity = {v: v for v in W.roots}
        found = islice(iter_embeddings(G, W, identity, candidates=order, avoid_edges=sys.base.edges),
                       max_candidates)
        candidates[k] = {}
        for phi in found:
            candidates[k].setdefault(_resources(W, phi, base_vertices, r), phi)
        if not candidates[k]:
            logger.error(f"Member {k} has no candidate embedding")
            raise EmbeddingNotFoundError(f"No candidate embedding for member {k}")
        options[k] = list(candidates[k])

    capacities = {b: T for opts in options.values() for o in opts for b in o if b[0] == 's'}
    try:
        result = finishing_matching(options, capacities=capacities, budget=budget)
    except BudgetExhaustedError as exc:
        raise EmbeddingNotFoundError(f"Matching budget exhausted with T={T}") from exc
    if result is None:
        logger.warning(f"No system embedding with T={T}")
        raise EmbeddingNotFoundError(f"No A-perfect matching with slot capacity T={T}")

    maps = [candidates[k][result.assignment[k]] for k in range(len(sys.supers))]
    loads = Counter(b[1] for option in result.assignment.values() for b in option if b[0] == 's')
    embedding = SystemEmbedding(maps, T, sys.refinement(), dict(loads), result)
    if not verify_system_embedding(G, sys, embedding):
        raise EmbeddingNotFoundError("Matched images fail the system checks")
    logger.info(f"Embedded {len(maps)} supergraphs with T={T}, max (r-1)-set load {embedding.max_rset_load}")
    return embedding


def embed_supergraph_system_with_growth(G: Hypergraph, sys: SupergraphSystem, T: Optional[int] = None,
                                        seed: Optional[int] = None, attempts: int = 4,
                                        **kwargs) -> SystemEmbedding:
    """Retry with the slot capacity doubled after each EmbeddingNotFoundError."""
    T = T if T is not None else settings.SLOTS
    try:
        for attempt in Retrying(stop=stop_after_attempt(attempts),
                                retry=retry_if_exception_type(EmbeddingNotFoundError)):
            with attempt:
                slots = T * 2 ** (attempt.retry_state.attempt_number - 1)
                return embed_supergraph_system(G, sys, slots, seed, **kwargs)
    except RetryError as exc:
        logger.error(f"System embedding failed after {attempts} capacity doublings")
        raise EmbeddingNotFoundError(f"No system embedding up to T={T * 2 ** (attempts - 1)}") from exc


def verify_system_embedding(G: Hypergraph, sys: SupergraphSystem, embedding: SystemEmbedding) -> bool:
    """Root-fixing, edge-preserving, pairwise edge-disjoint, disjoint outside V(J), off E(J)."""
    used_edges = set()
    used_vertices = set()
    for phi, W in zip(embedding.maps, sys.supers):
        if any(phi.get(v) != v for v in W.roots):
            return False
        images = [normalize_edge(phi[v] for v in e) for e in W.graph.edges]
        if not all(G.has_edge(e) for e in images):
            return False
        if any(e in sys.base.edges or e in used_edges for e in images):
            return False
        new = {phi[v] for v in W.non_root_vertices()}
        if new & used_vertices or new & set(sys.base.spanned_vertices()):
            return False
        used_edges.update(images)
        used_vertices |= new
    return embedding.max_rset_load <= embedding.slots * max(embedding.refinement, 1)
