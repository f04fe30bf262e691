"""
Edge-intersecting, layered K_q^r-absorbers.

An absorber for L is assembled from an edge-intersecting integral
decomposition Phi of L: one orthogonal booster per clique of Phi+ and Phi-
(with multiplicity), and one hinge per matched pair of a negative and a
positive clique through a common r-set.
"""

import logging
from collections import defaultdict
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import attr

from ..core.hypercore import _require_uniform, is_divisible, verify_decomposition
from ..core.io import format_cliques, format_gadget, write_atomic, write_json
from ..core.models import (
    Booster,
    Clique,
    CliqueFamily,
    Edge,
    Hinge,
    Hypergraph,
    IntegralHypergraph,
    IntegralValuation,
    LabelArena,
    Layer,
    RootedGadget,
)
from ..errors import AbsorptionError, CliqueOutsideGroundError, DivisibilityError, MatchingError
from ..gadgets.booster import build_orthogonal_booster
from ..gadgets.degeneracy import is_rooted_partite_degenerate
from ..gadgets.hinge import build_hinge
from ..integral.valuation import edge_intersecting_integral_decompose, fits_inside_edges

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True)
class MatchedPair:
    """One element of M_f: negative clique index -> positive clique index, with its hinge."""
    edge: Edge
    negative: int
    positive: int
    hinge: Hinge


@attr.s(auto_attribs=True)
class AbsorberStructure:
    """Phi, the booster per signed clique, the matchings M_f and the unmatched positives."""
    phi: IntegralValuation
    cliques: List[Clique]
    signs: List[int]
    boosters: List[Booster]
    pairs: List[MatchedPair] = attr.ib(factory=list)
    unmatched: Dict[Edge, int] = attr.ib(factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'phi_l1': self.phi.l1(),
            'phi_support': len(self.phi.weights),
            'ground': self.phi.m,
            'signed_cliques': [[s] + list(c) for s, c in zip(self.signs, self.cliques)],
            'boosters': len(self.boosters),
            'hinges': len(self.pairs),
            'matchings': [{'edge': list(p.edge), 'from': p.negative, 'to': p.positive} for p in self.pairs],
            'unmatched': [{'edge': list(e), 'clique': k} for e, k in sorted(self.unmatched.items())],
        }


@attr.s(auto_attribs=True)
class Absorber:
    """A1 decomposes A; A2 decomposes A + L; A is rooted at V(L)."""
    gadget: RootedGadget
    target: Hypergraph
    q: int
    a1: CliqueFamily
    a2: CliqueFamily
    structure: Optional[AbsorberStructure] = None

    @property
    def graph(self) -> Hypergraph:
        return self.gadget.graph

    def relabel(self, mapping: Dict[int, int]) -> 'Absorber':
        """Rename absorber-internal vertices (roots keep their labels)."""
        return Absorber(self.gadget.relabel(mapping), self.target, self.q,
                        self.a1.relabel(mapping), self.a2.relabel(mapping), structure=None)


def _empty_absorber(L: Hypergraph, q: int) -> Absorber:
    gadget = RootedGadget(Hypergraph(L.n, [], r_max=L.r_max), roots=L.spanned_vertices(), layers=[])
    return Absorber(gadget, L, q, CliqueFamily(q), CliqueFamily(q))


def _global_valuation(L: Hypergraph, q: int, arena: LabelArena) -> IntegralValuation:
    """Phi in host labels: spanned vertices of L keep theirs, padding and X take fresh ones."""
    r = L.r_max
    spanned = L.spanned_vertices()
    local, order = L.compact(spanned)
    padded = local.add_vertices(max(0, q + r - local.n))
    phi = edge_intersecting_integral_decompose(IntegralHypergraph.unit(padded), q)
    extra = arena.fresh(phi.m - len(order))
    labels = order + extra
    return IntegralValuation(arena.next_label, q, r,
                             {tuple(labels[v] for v in c): w for c, w in phi.weights.items()})


def build_absorber(L: Hypergraph, q: int, arena: Optional[LabelArena] = None) -> Absorber:
    """Layered, L-edge-intersecting K_q^r-absorber for a divisible r-graph L.

    New vertices are drawn from ``arena`` (default: labels from v(L) on).

    Raises:
        DivisibilityError: L is not K_q^r-divisible.
        MatchingError: the signed cliques through some r-set cannot be matched.
    """
    if not L.edges:
        return _empty_absorber(L, q)
    r = _require_uniform(L)
    if not is_divisible(L, q):
        logger.error(f"Target with {L.num_edges} edges is not K_{q}^{r}-divisible")
        raise DivisibilityError(f"Target is not K_{q}^{r}-divisible")
    arena = arena if arena is not None else LabelArena(L.n)
    arena.reserve_through(L.n - 1)

    phi = _global_valuation(L, q, arena)
    positives, negatives = phi.positive(), phi.negative()
    cliques = positives + negatives
    signs = [1] * len(positives) + [-1] * len(negatives)
    boosters = [build_orthogonal_booster(c, r, arena) for c in cliques]
    logger.info(f"Absorber for {L.num_edges} edges: |Phi+|={len(positives)}, |Phi-|={len(negatives)}")

    through: Dict[Edge, Dict[int, List[int]]] = defaultdict(lambda: {1: [], -1: []})
    for k, (clique, sign) in enumerate(zip(cliques, signs)):
        for f in combinations(clique, r):
            through[f][sign].append(k)

    structure = AbsorberStructure(phi, cliques, signs, boosters)
    for f in sorted(through):
        plus, minus = through[f][1], through[f][-1]
        expected = 1 if f in L.edges else 0
        if len(plus) - len(minus) != expected:
            logger.error(f"At {f}: {len(plus)} positive and {len(minus)} negative cliques")
            raise MatchingError(f"Signed cliques at {f} do not balance to {expected}")
        if expected:
            # the lexicographically least positive clique stays unmatched
            structure.unmatched[f] = plus[0]
            plus = plus[1:]
        for k1, k2 in zip(minus, plus):
            s1, s2 = boosters[k1].on.at(f), boosters[k2].on.at(f)
            if set(s1) & set(s2) != set(f):
                raise AbsorptionError(f"Orthogonal cliques at {f} share more than the edge")
            hinge = build_hinge(s1, s2, r, arena)
            structure.pairs.append(MatchedPair(f, k1, k2, hinge))

    return _assemble(L, q, r, structure, arena)


def _assemble(L: Hypergraph, q: int, r: int, structure: AbsorberStructure, arena: LabelArena) -> Absorber:
    boosters, signs = structure.boosters, structure.signs
    edges = set()
    for b in boosters:
        edges |= b.gadget.graph.edges
    for pair in structure.pairs:
        edges |= pair.hinge.gadget.graph.edges

    matched_at: Dict[int, List[Edge]] = defaultdict(list)
    for pair in structure.pairs:
        matched_at[pair.positive].append(pair.edge)

    a1, a2 = [], []
    for k, (b, sign) in enumerate(zip(boosters, signs)):
        if sign < 0:
            orthogonal = [b.on.at(e) for e in combinations(b.target, r)]
            a1.extend(b.on.without(orthogonal).cliques)
            a2.extend(b.off.cliques)
        else:
            a1.extend(b.off.cliques)
            a2.extend(b.on.without([b.on.at(f) for f in matched_at[k]]).cliques)
    for pair in structure.pairs:
        a1.extend(pair.hinge.left.cliques)
        a2.extend(pair.hinge.right.cliques)

    roots = set(L.spanned_vertices())
    inner = sorted({v for c in structure.cliques for v in c} - roots)
    layers = [Layer(inner, {v: i % q for i, v in enumerate(inner)})]
    coloring = dict(layers[0].coloring)
    for b in boosters:
        layer = Layer(b.gadget.layers[0].vertices, b.gadget.layers[0].coloring)
        layers.append(layer)
        coloring.update(layer.coloring)
    for pair in structure.pairs:
        layer = Layer(pair.hinge.gadget.layers[0].vertices, pair.hinge.gadget.layers[0].coloring)
        layers.append(layer)
        coloring.update(layer.coloring)

    gadget = RootedGadget(Hypergraph(max(arena.next_label, L.n), edges, r_max=r), roots=roots,
                          layers=layers, coloring=coloring)
    logger.info(f"Absorber assembled: {len(edges)} edges, {len(boosters)} boosters, "
                f"{len(structure.pairs)} hinges, |A1|={len(a1)}, |A2|={len(a2)}")
    return Absorber(gadget, L, q, CliqueFamily(q, a1), CliqueFamily(q, a2), structure)


@attr.s(auto_attribs=True)
class AbsorberReport:
    roots_independent: bool
    a1_decomposes: bool
    a2_decomposes: bool
    edge_intersecting: bool
    partite_degenerate: bool
    vertices: int
    edges: int
    a1_size: int
    a2_size: int
    boosters: int = 0
    hinges: int = 0

    @property
    def passed(self) -> bool:
        return all([self.roots_independent, self.a1_decomposes, self.a2_decomposes,
                    self.edge_intersecting, self.partite_degenerate])

    def to_dict(self) -> Dict[str, Any]:
        return dict(attr.asdict(self), passed=self.passed)


def _decomposes(G: Hypergraph, family: CliqueFamily) -> bool:
    try:
        return verify_decomposition(G, family)
    except CliqueOutsideGroundError:
        return False


def verify_absorber(ab: Absorber, d: int = 2) -> AbsorberReport:
    """Run the five absorber checks; failures are reported, never raised."""
    A, L = ab.graph, ab.target
    r = L.r_max or A.r_max
    uniform_A = Hypergraph(max(A.n, L.n), A.edges, r_max=r)
    with_target = uniform_A.with_edges(L.edges)
    structure = ab.structure
    return AbsorberReport(
        roots_independent=ab.gadget.roots_independent(),
        a1_decomposes=_decomposes(uniform_A, ab.a1),
        a2_decomposes=_decomposes(with_target, ab.a2),
        edge_intersecting=fits_inside_edges(A.edges, L),
        partite_degenerate=is_rooted_partite_degenerate(ab.gadget, d, ab.q),
        vertices=len(set(ab.gadget.non_root_vertices()) | ab.gadget.roots),
        edges=A.num_edges,
        a1_size=len(ab.a1),
        a2_size=len(ab.a2),
        boosters=len(structure.boosters) if structure else 0,
        hinges=len(structure.pairs) if structure else 0,
    )


def write_absorber_bundle(ab: Absorber, directory) -> Path:
    """gadget.txt (graph + annotations), a1.txt, a2.txt and manifest.json under ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_atomic(directory / 'gadget.txt', format_gadget(ab.gadget))
    write_atomic(directory / 'a1.txt', format_cliques(ab.a1))
    write_atomic(directory / 'a2.txt', format_cliques(ab.a2))
    manifest = {
        'q': ab.q,
        'target': ab.target.to_dict(),
        'report': verify_absorber(ab).to_dict(),
        'structure': ab.structure.to_dict() if ab.structure else None,
    }
    write_json(directory / 'manifest.json', manifest)
    logger.info(f"Absorber bundle written to {directory}")
    return directory
