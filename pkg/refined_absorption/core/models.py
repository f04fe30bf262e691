from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import attr

from ..errors import PreconditionError, VertexRangeError

Edge = Tuple[int, ...]
Clique = Tuple[int, ...]


def normalize_edge(vertices: Iterable[int]) -> Edge:
    """Return the sorted tuple form of a vertex set, rejecting repeated labels."""
    items = [int(v) for v in vertices]
    edge = tuple(sorted(set(items)))
    if len(edge) != len(items):
        raise VertexRangeError(f"Repeated vertex in {items}")
    return edge


def vertex_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _edge_set(edges: Iterable[Iterable[int]]) -> FrozenSet[Edge]:
    return frozenset(normalize_edge(e) for e in edges)


def _remap(vertices: Iterable[int], mapping: Mapping[int, int]) -> Edge:
    return normalize_edge(mapping.get(v, v) for v in vertices)


@attr.s(auto_attribs=True, frozen=True)
class Hypergraph:
    """An r-bounded hypergraph on the dense labels 0..n-1.

    Edges are stored as sorted tuples; a bitmask index per edge size gives
    constant-time membership tests.
    """
    n: int
    edges: FrozenSet[Edge] = attr.ib(factory=frozenset, converter=_edge_set)
    r_max: Optional[int] = None
    _masks: Dict[int, Set[int]] = attr.ib(factory=dict, init=False, eq=False, repr=False)

    def __attrs_post_init__(self):
        if self.n < 0:
            raise VertexRangeError(f"Negative vertex count {self.n}")
        if self.r_max is None:
            object.__setattr__(self, 'r_max', max((len(e) for e in self.edges), default=0))
        for edge in self.edges:
            if not edge or len(edge) > self.r_max:
                raise VertexRangeError(f"Edge {edge} violates 1 <= |e| <= {self.r_max}")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise VertexRangeError(f"Edge {edge} leaves the vertex range 0..{self.n - 1}")
            self._masks.setdefault(len(edge), set()).add(vertex_mask(edge))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def r(self) -> int:
        return self.r_max

    def is_uniform(self) -> bool:
        return all(len(e) == self.r_max for e in self.edges)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        vertices = tuple(vertices)
        masks = self._masks.get(len(vertices))
        return bool(masks) and vertex_mask(vertices) in masks

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def layer(self, i: int) -> 'Hypergraph':
        """The i-uniform part G^{(i)}."""
        return Hypergraph(self.n, frozenset(e for e in self.edges if len(e) == i), r_max=i)

    def spanned_vertices(self) -> List[int]:
        return sorted({v for e in self.edges for v in e})

    def with_edges(self, edges: Iterable[Iterable[int]], n: Optional[int] = None) -> 'Hypergraph':
        added = _edge_set(edges)
        n = max(self.n, n or 0, max((e[-1] + 1 for e in added), default=0))
        r_max = max([self.r_max] + [len(e) for e in added])
        return Hypergraph(n, self.edges | added, r_max=r_max)

    def without_edges(self, edges: Iterable[Iterable[int]]) -> 'Hypergraph':
        return Hypergraph(self.n, self.edges - _edge_set(edges), r_max=self.r_max)

    def union(self, other: 'Hypergraph') -> 'Hypergraph':
        return Hypergraph(max(self.n, other.n), self.edges | other.edges,
                          r_max=max(self.r_max, other.r_max))

    def add_vertices(self, k: int) -> 'Hypergraph':
        return Hypergraph(self.n + k, self.edges, r_max=self.r_max)

    def induced(self, vertices: Iterable[int]) -> 'Hypergraph':
        """G[S], keeping the original labels."""
        mask = vertex_mask(vertices)
        kept = frozenset(e for e in self.edges if vertex_mask(e) & ~mask == 0)
        return Hypergraph(self.n, kept, r_max=self.r_max)

    def compact(self, vertices: Sequence[int]) -> Tuple['Hypergraph', List[int]]:
        """G[S] relabelled onto 0..|S|-1; returns the graph and the label list."""
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        kept = [tuple(index[v] for v in e) for e in self.edges if all(v in index for v in e)]
        return Hypergraph(len(order), kept, r_max=self.r_max), order

    def relabel(self, mapping: Mapping[int, int], n: Optional[int] = None) -> 'Hypergraph':
        edges = frozenset(_remap(e, mapping) for e in self.edges)
        if n is None:
            n = max((mapping.get(v, v) + 1 for v in range(self.n)), default=0)
        return Hypergraph(n, edges, r_max=self.r_max)

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'r_max': self.r_max, 'edges': [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Hypergraph':
        """Create a Hypergraph from its dictionary form."""
        return cls(n=data['n'], edges=data.get('edges', []), r_max=data.get('r_max'))


@attr.s(auto_attribs=True)
class CliqueFamily:
    """A list of q-cliques; flagged ``packing`` when edge sets are pairwise disjoint."""
    q: int
    cliques: List[Clique] = attr.ib(factory=list, converter=lambda cs: [normalize_edge(c) for c in cs])
    ground: Optional[Hypergraph] = None
    packing: bool = False

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self) -> Iterator[Clique]:
        return iter(self.cliques)

    def __contains__(self, clique: Iterable[int]) -> bool:
        return normalize_edge(clique) in set(self.cliques)

    def __add__(self, other: 'CliqueFamily') -> 'CliqueFamily':
        return CliqueFamily(self.q, self.cliques + other.cliques)

    def edge_counts(self, r: int) -> Counter:
        """Number of listed cliques containing each r-set."""
        counts = Counter()
        for clique in self.cliques:
            counts.update(combinations(clique, r))
        return counts

    def containing(self, edge: Iterable[int]) -> List[Clique]:
        mask = vertex_mask(edge)
        return [c for c in self.cliques if vertex_mask(c) & mask == mask]

    def at(self, edge: Iterable[int]) -> Clique:
        """The unique clique through ``edge`` (``on(B)[e]`` for a decomposition)."""
        found = self.containing(edge)
        if len(found) != 1:
            raise PreconditionError(f"{len(found)} cliques contain {tuple(edge)}, expected exactly one")
        return found[0]

    def without(self, removed: Iterable[Iterable[int]]) -> 'CliqueFamily':
        removed = Counter(normalize_edge(c) for c in removed)
        kept = []
        for clique in self.cliques:
            if removed[clique] > 0:
                removed[clique] -= 1
            else:
                kept.append(clique)
        return CliqueFamily(self.q, kept, ground=self.ground, packing=self.packing)

    def relabel(self, mapping: Mapping[int, int]) -> 'CliqueFamily':
        return CliqueFamily(self.q, [_remap(c, mapping) for c in self.cliques], packing=self.packing)

    def to_dict(self) -> Dict[str, Any]:
        return {'q': self.q, 'packing': self.packing, 'cliques': [list(c) for c in self.cliques]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CliqueFamily':
        return cls(q=data['q'], cliques=data.get('cliques', []), packing=data.get('packing', False))


def _check_densities(instance, attribute, value):
    for alpha in value:
        if not 0 <= alpha <= 1:
            raise PreconditionError(f"Density {alpha} outside [0, 1]")


@attr.s(auto_attribs=True, frozen=True)
class DensityVector:
    """Per-uniformity densities (alpha_1, ..., alpha_r) as exact rationals."""
    components: Tuple[Fraction, ...] = attr.ib(
        converter=lambda cs: tuple(Fraction(c) for c in cs), validator=_check_densities)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Fraction:
        """Density of uniformity ``i`` (1-based, like the notation alpha_i)."""
        return self.components[i - 1]

    def to_dict(self) -> Dict[str, Any]:
        return {'components': [str(c) for c in self.components]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DensityVector':
        return cls(components=[Fraction(c) for c in data['components']])


@attr.s(auto_attribs=True)
class LabelArena:
    """Monotone counter handing out fresh vertex labels for one build context."""
    next_label: int = 0

    def fresh(self, k: int = 1) -> List[int]:
        labels = list(range(self.next_label, self.next_label + k))
        self.next_label += k
        return labels

    def reserve_through(self, label: int) -> None:
        self.next_label = max(self.next_label, label + 1)

    def fork(self) -> 'LabelArena':
        return LabelArena(self.next_label)


@attr.s(auto_attribs=True)
class Layer:
    """One layer V_i of a rooted partite gadget with its q-part coloring."""
    vertices: Tuple[int, ...] = attr.ib(converter=lambda vs: tuple(sorted(vs)))
    coloring: Dict[int, int] = attr.ib(factory=dict)

    def relabel(self, mapping: Mapping[int, int]) -> 'Layer':
        return Layer([mapping.get(v, v) for v in self.vertices],
                     {mapping.get(v, v): c for v, c in self.coloring.items()})

    def to_dict(self) -> Dict[str, Any]:
        return {'vertices': list(self.vertices), 'coloring': {str(v): c for v, c in self.coloring.items()}}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Layer':
        return cls(vertices=data['vertices'], coloring={int(v): c for v, c in data['coloring'].items()})


@attr.s(auto_attribs=True)
class RootedGadget:
    """A hypergraph with an independent root set and optional partite layers.

    ``coloring`` is a q-part coloring of the vertices the construction colors
    (always every non-root vertex, and roots when the gadget is partite
    together with them).
    """
    graph: Hypergraph
    roots: FrozenSet[int] = attr.ib(converter=frozenset)
    layers: Optional[List[Layer]] = None
    coloring: Dict[int, int] = attr.ib(factory=dict)

    def roots_independent(self) -> bool:
        root_mask = vertex_mask(self.roots)
        return all(vertex_mask(edge) & ~root_mask != 0 for edge in self.graph.edges)

    def non_root_vertices(self) -> List[int]:
        seen = {v for e in self.graph.edges for v in e}
        for layer in self.layers or []:
            seen.update(layer.vertices)
        return sorted(seen - self.roots)

    def relabel(self, mapping: Mapping[int, int], n: Optional[int] = None) -> 'RootedGadget':
        return RootedGadget(
            graph=self.graph.relabel(mapping, n=n),
            roots=[mapping.get(v, v) for v in self.roots],
            layers=[layer.relabel(mapping) for layer in self.layers] if self.layers is not None else None,
            coloring={mapping.get(v, v): c for v, c in self.coloring.items()},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'graph': self.graph.to_dict(),
            'roots': sorted(self.roots),
            'layers': [layer.to_dict() for layer in self.layers] if self.layers is not None else None,
            'coloring': {str(v): c for v, c in sorted(self.coloring.items())},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RootedGadget':
        layers = data.get('layers')
        return cls(
            graph=Hypergraph.from_dict(data['graph']),
            roots=data.get('roots', []),
            layers=[Layer.from_dict(layer) for layer in layers] if layers is not None else None,
            coloring={int(v): c for v, c in data.get('coloring', {}).items()},
        )


@attr.s(auto_attribs=True)
class Booster:
    """Booster for the clique ``target``: ``on`` decomposes B+S, ``off`` decomposes B."""
    gadget: RootedGadget
    target: Clique
    on: CliqueFamily
    off: CliqueFamily
    orthogonal: bool = False
    prime: int = 0
    rounds: List[int] = attr.ib(factory=list)

    def relabel(self, mapping: Mapping[int, int]) -> 'Booster':
        return Booster(
            gadget=self.gadget.relabel(mapping),
            target=_remap(self.target, mapping),
            on=self.on.relabel(mapping),
            off=self.off.relabel(mapping),
            orthogonal=self.orthogonal,
            prime=self.prime,
            rounds=list(self.rounds),
        )


@attr.s(auto_attribs=True)
class Hinge:
    """Hinge for s1, s2 sharing ``edge``: left decomposes H+(s1-e), right H+(s2-e)."""
    gadget: RootedGadget
    s1: Clique
    s2: Clique
    edge: Edge
    left: CliqueFamily
    right: CliqueFamily
    middle: Optional[Clique] = None
    independent: bool = True

    def relabel(self, mapping: Mapping[int, int]) -> 'Hinge':
        return Hinge(
            gadget=self.gadget.relabel(mapping),
            s1=_remap(self.s1, mapping),
            s2=_remap(self.s2, mapping),
            edge=_remap(self.edge, mapping),
            left=self.left.relabel(mapping),
            right=self.right.relabel(mapping),
            middle=_remap(self.middle, mapping) if self.middle is not None else None,
            independent=self.independent,
        )


def _drop_zero_weights(weights: Mapping[Iterable[int], int]) -> Dict[Clique, int]:
    merged: Dict[Clique, int] = {}
    for clique, w in weights.items():
        key = normalize_edge(clique)
        merged[key] = merged.get(key, 0) + int(w)
    return {c: w for c, w in merged.items() if w != 0}


@attr.s(auto_attribs=True)
class IntegralValuation:
    """Integer weights on the q-cliques of the complete r-graph K_m^r."""
    m: int
    q: int
    r: int
    weights: Dict[Clique, int] = attr.ib(factory=dict, converter=_drop_zero_weights)

    def support(self) -> List[Clique]:
        return sorted(self.weights)

    def positive(self) -> List[Clique]:
        """Phi+ as a multiset: each clique repeated w times."""
        return [c for c in self.support() for _ in range(max(self.weights[c], 0))]

    def negative(self) -> List[Clique]:
        """Phi- as a multiset: each clique repeated |w| times."""
        return [c for c in self.support() for _ in range(max(-self.weights[c], 0))]

    def l1(self) -> int:
        return sum(abs(w) for w in self.weights.values())

    def __add__(self, other: 'IntegralValuation') -> 'IntegralValuation':
        merged = dict(self.weights)
        for clique, w in other.weights.items():
            merged[clique] = merged.get(clique, 0) + w
        return IntegralValuation(max(self.m, other.m), self.q, self.r, merged)

    def to_dict(self) -> Dict[str, Any]:
        return {'m': self.m, 'q': self.q, 'r': self.r,
                'weights': [[w] + list(c) for c, w in sorted(self.weights.items())]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'IntegralValuation':
        return cls(m=data['m'], q=data['q'], r=data['r'],
                   weights={tuple(row[1:]): row[0] for row in data.get('weights', [])})


@attr.s(auto_attribs=True)
class IntegralHypergraph:
    """A hypergraph L with integer edge weights Psi supported on E(L)."""
    graph: Hypergraph
    psi: Dict[Edge, int] = attr.ib(factory=dict, converter=_drop_zero_weights)

    def __attrs_post_init__(self):
        stray = [e for e in self.psi if e not in self.graph.edges]
        if stray:
            raise PreconditionError(f"Weights on non-edges: {stray[:3]}")

    @classmethod
    def unit(cls, graph: Hypergraph) -> 'IntegralHypergraph':
        """Psi = 1 on every edge."""
        return cls(graph, {e: 1 for e in graph.edges})


@attr.s(auto_attribs=True)
class FractionalWeighting:
    """Exact rational weights in [0, 1] on the q-cliques of ``ground``."""
    ground: Hypergraph
    q: int
    weights: Dict[Clique, Fraction] = attr.ib(factory=dict)

    def __attrs_post_init__(self):
        self.weights = {normalize_edge(c): Fraction(w) for c, w in self.weights.items() if w != 0}

    def support(self) -> List[Clique]:
        return sorted(self.weights)

    def max_weight(self) -> Fraction:
        return max(self.weights.values(), default=Fraction(0))

    def to_dict(self) -> Dict[str, Any]:
        return {'q': self.q, 'ground': self.ground.to_dict(),
                'weights': [[str(w)] + list(c) for c, w in sorted(self.weights.items())]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FractionalWeighting':
        return cls(ground=Hypergraph.from_dict(data['ground']), q=data['q'],
                   weights={tuple(row[1:]): Fraction(row[0]) for row in data.get('weights', [])})
