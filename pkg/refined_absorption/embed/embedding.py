"""Rooted embeddings of gadgets into host hypergraphs: greedy, exhaustive and layer by layer."""

import logging
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

from ..config import settings
from ..core.models import Edge, Hypergraph, RootedGadget
from ..errors import CapExceededError, GreedyEmbeddingError, PreconditionError, VertexRangeError
from ..gadgets.degeneracy import degeneracy_order

logger = logging.getLogger(__name__)


def _check_image(G: Hypergraph, H: RootedGadget, image: Mapping[int, int]) -> Dict[int, int]:
    image = {int(v): int(w) for v, w in image.items()}
    missing = H.roots - set(image)
    if missing:
        raise PreconditionError(f"Roots {sorted(missing)} have no image")
    if len(set(image.values())) != len(image):
        raise PreconditionError("Root image is not injective")
    if any(not 0 <= w < G.n for w in image.values()):
        raise VertexRangeError(f"Root image leaves 0..{G.n - 1}")
    if not H.roots_independent():
        raise PreconditionError("Roots are not independent in the gadget")
    return image


def _closing_edges(H: RootedGadget, order: Sequence[int]) -> List[List[Edge]]:
    """Edges checked when the i-th vertex of ``order`` is placed (its last vertex in order)."""
    position = {v: i for i, v in enumerate(order)}
    closing: List[List[Edge]] = [[] for _ in order]
    for e in H.graph.edges:
        placed = [position[v] for v in e if v in position]
        if placed:
            closing[max(placed)].append(e)
    return closing


class _Extender:
    """Backtracking over placements of ``order`` with edge checks on closing edges."""

    def __init__(self, G: Hypergraph, H: RootedGadget, image: Dict[int, int], order: Sequence[int],
                 forbidden: Sequence[int] = (), candidates: Optional[Sequence[int]] = None,
                 avoid_edges=frozenset(), cap: Optional[int] = None):
        self.G = G
        self.order = list(order)
        self.closing = _closing_edges(H, self.order)
        self.phi = dict(image)
        self.used = set(image.values()) | set(forbidden)
        self.candidates = list(candidates) if candidates is not None else list(range(G.n))
        self.avoid_edges = avoid_edges
        self.cap = cap if cap is not None else settings.EMBED_CAP
        self.nodes = 0

    def _fits(self, i: int) -> bool:
        for e in self.closing[i]:
            mapped = tuple(sorted(self.phi[u] for u in e))
            if not self.G.has_edge(mapped) or mapped in self.avoid_edges:
                return False
        return True

    def eligible(self, i: int) -> Iterator[int]:
        v = self.order[i]
        for w in self.candidates:
            if w in self.used:
                continue
            self.phi[v] = w
            if self._fits(i):
                yield w
            del self.phi[v]

    def walk(self, i: int = 0) -> Iterator[Dict[int, int]]:
        self.nodes += 1
        if self.nodes > self.cap:
            logger.error(f"Embedding search passed {self.cap} nodes")
            raise CapExceededError(f"Embedding search exceeded {self.cap} nodes")
        if i == len(self.order):
            yield dict(self.phi)
            return
        v = self.order[i]
        for w in list(self.eligible(i)):
            self.phi[v] = w
            self.used.add(w)
            yield from self.walk(i + 1)
            self.used.discard(w)
            del self.phi[v]


def check_embedding(G: Hypergraph, H: RootedGadget, phi: Mapping[int, int], image: Mapping[int, int]) -> bool:
    """phi is injective, fixes the root image and maps every gadget edge to a host edge."""
    if any(phi.get(v) != w for v, w in image.items()):
        return False
    if len(set(phi.values())) != len(phi):
        return False
    return all(G.has_edge(sorted(phi[v] for v in e)) for e in H.graph.edges)


def embed_degenerate(G: Hypergraph, H: RootedGadget, image: Mapping[int, int], mode: str = 'greedy',
                     cap: Optional[int] = None):
    """Extend the root image to H, placing vertices in degeneracy order.

    ``greedy`` returns one extension, taking the least eligible host vertex
    at every step without backtracking. ``count`` returns the number of all
    extensions.

    Raises:
        GreedyEmbeddingError: greedy mode reached a vertex with no eligible host vertex.
        CapExceededError: count mode passed the node cap.
    """
    image = _check_image(G, H, image)
    _, order = degeneracy_order(H)
    if mode == 'count':
        return sum(1 for _ in _Extender(G, H, image, order, cap=cap).walk())
    if mode != 'greedy':
        raise PreconditionError(f"Unknown embedding mode {mode!r}")
    extender = _Extender(G, H, image, order, cap=cap)
    for i, v in enumerate(order):
        choice = next(extender.eligible(i), None)
        if choice is None:
            logger.debug(f"Greedy embedding stuck at gadget vertex {v}")
            raise GreedyEmbeddingError(f"No eligible host vertex for gadget vertex {v}", vertex=v)
        extender.phi[v] = choice
        extender.used.add(choice)
    phi = extender.phi
    if not check_embedding(G, H, phi, image):
        raise GreedyEmbeddingError("Greedy placement produced an invalid embedding")
    return phi


def iter_embeddings(G: Hypergraph, H: RootedGadget, image: Mapping[int, int],
                    forbidden: Sequence[int] = (), candidates: Optional[Sequence[int]] = None,
                    avoid_edges=frozenset(), cap: Optional[int] = None) -> Iterator[Dict[int, int]]:
    """All extensions of the root image, in degeneracy order, skipping ``forbidden`` host
    vertices and host edges in ``avoid_edges``; ``candidates`` fixes the scan order."""
    image = _check_image(G, H, image)
    _, order = degeneracy_order(H)
    yield from _Extender(G, H, image, order, forbidden=forbidden, candidates=candidates,
                         avoid_edges=avoid_edges, cap=cap).walk()


def count_layered_embeddings(G: Hypergraph, H: RootedGadget, image: Mapping[int, int],
                             cap: Optional[int] = None) -> int:
    """Exact number of rooted embeddings, extending one layer at a time.

    Raises:
        PreconditionError: H has no layer annotation or a non-root vertex outside every layer.
        CapExceededError: the node cap was passed.
    """
    if H.layers is None:
        raise PreconditionError("Layered counting needs a layer annotation")
    image = _check_image(G, H, image)
    layers = [list(layer.vertices) for layer in H.layers]
    placed = {v for layer in layers for v in layer}
    if set(H.non_root_vertices()) - placed:
        raise PreconditionError("Some non-root vertex is outside every layer")
    extender = _Extender(G, H, image, [v for layer in layers for v in layer], cap=cap)
    bounds = []
    start = 0
    for layer in layers:
        start += len(layer)
        bounds.append(start)

    def extend_layer(index: int, i: int) -> int:
        # i is the next vertex position; layers end at ``bounds``
        if index == len(layers):
            return 1
        if i == bounds[index]:
            return extend_layer(index + 1, i)
        extender.nodes += 1
        if extender.nodes > extender.cap:
            raise CapExceededError(f"Layered count exceeded {extender.cap} nodes")
        total = 0
        v = extender.order[i]
        for w in list(extender.eligible(i)):
            extender.phi[v] = w
            extender.used.add(w)
            total += extend_layer(index, i + 1)
            extender.used.discard(w)
            del extender.phi[v]
        return total

    return extend_layer(0, 0)
