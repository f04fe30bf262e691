"""Rooted degeneracy orders and the layered partite checks on rooted gadgets."""

import logging
from typing import Dict, List, Tuple

from ..core.models import RootedGadget
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


def degeneracy_order(H: RootedGadget) -> Tuple[int, List[int]]:
    """Rooted degeneracy of H and an ordering of V(H) - R achieving it.

    Back-degree counts edges: the back-degree of v is the number of edges
    containing v inside R + {earlier vertices} + {v}. Repeatedly removing the
    vertex of minimum remaining degree and placing it last is optimal, as for
    ordinary degeneracy.
    """
    remaining = set(H.non_root_vertices())
    alive = {v: [] for v in remaining}
    for e in H.graph.edges:
        for v in e:
            if v in alive:
                alive[v].append(e)
    degree = {v: len(es) for v, es in alive.items()}
    removed: List[int] = []
    d = 0
    while remaining:
        v = min(sorted(remaining), key=lambda u: degree[u])
        d = max(d, degree[v])
        removed.append(v)
        remaining.discard(v)
        for e in alive[v]:
            for u in e:
                if u in remaining:
                    degree[u] -= 1
    removed.reverse()
    return d, removed


def rooted_degeneracy(H: RootedGadget) -> int:
    """Smallest d such that some ordering of V(H) - R has all back-degrees <= d."""
    return degeneracy_order(H)[0]


def is_rooted_q_partite(H: RootedGadget, q: int) -> bool:
    """The coloring puts the non-root vertices of every edge in distinct parts 0..q-1."""
    for e in H.graph.edges:
        colors = [H.coloring.get(v) for v in e if v not in H.roots]
        if any(c is None or not 0 <= c < q for c in colors) or len(set(colors)) != len(colors):
            return False
    return True


def is_rooted_partite_degenerate(H: RootedGadget, d: int, q: int) -> bool:
    """Check the layered (d, q) conditions against the recorded layers.

    For each layer V_i, let E_i be the edges whose last touched layer is i.
    Every such edge meets each part V_{i,j} at most once, and the vertices of
    E_i outside V_i number at most d*q.

    Raises:
        PreconditionError: the gadget carries no layer annotation.
    """
    if H.layers is None:
        raise PreconditionError("Gadget has no layer annotation")
    position: Dict[int, int] = {}
    for i, layer in enumerate(H.layers):
        for v in layer.vertices:
            if v in position or v in H.roots:
                logger.debug(f"Vertex {v} is in two layers or is a root")
                return False
            position[v] = i
    if set(H.non_root_vertices()) - set(position):
        logger.debug("Some non-root vertex is outside every layer")
        return False

    outside: Dict[int, set] = {i: set() for i in range(len(H.layers))}
    for e in H.graph.edges:
        touched = [position[v] for v in e if v not in H.roots]
        if not touched:
            return False
        i = max(touched)
        coloring = H.layers[i].coloring
        colors = [coloring.get(v) for v in e if position.get(v) == i]
        if any(c is None or not 0 <= c < q for c in colors) or len(set(colors)) != len(colors):
            return False
        outside[i].update(v for v in e if position.get(v) != i)
    return all(len(vs) <= d * q for vs in outside.values())
