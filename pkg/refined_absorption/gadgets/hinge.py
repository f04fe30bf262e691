"""
Independent hinges built from two orthogonal boosters.

For an orthogonal booster B of S and an edge e of S with S' = on(B)[e],
B - (S' - e) is a hinge between S and S'. Two such hinges glued along a
middle clique S (S1 and S2 both meet S exactly in e) give a hinge between
S1 and S2.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Sequence

from .booster import _instantiate, _orthogonal_template, _partite
from ..core.hypercore import verify_decomposition
from ..core.models import Hinge, Hypergraph, LabelArena, Layer, RootedGadget, normalize_edge
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _hinge_template(q: int, r: int) -> Hinge:
    """Hinge on abstract labels: S1 = 0..q-1, S2 = 0..r-1 + q..2q-r-1, shared edge 0..r-1."""
    e = tuple(range(r))
    s1 = tuple(range(q))
    s2 = e + tuple(range(q, 2 * q - r))
    arena = LabelArena(2 * q - r)
    template = _orthogonal_template(q, r)

    first = _instantiate(template, s1, arena)
    middle = first.on.at(e)

    second = _instantiate(template, s2, arena.fork())
    inner = second.on.at(e)
    # inner - e is identified with middle - e part by part; everything else gets main-arena labels
    by_color = {first.gadget.coloring[v]: v for v in middle if v not in e}
    mapping: Dict[int, int] = {v: by_color[second.gadget.coloring[v]] for v in inner if v not in e}
    for v in second.gadget.non_root_vertices():
        if v not in mapping:
            mapping[v] = arena.fresh()[0]
    second = second.relabel(mapping)
    if second.on.at(e) != middle:
        raise PreconditionError("Relabelled second booster does not meet the middle clique")

    edges = first.gadget.graph.edges | second.gadget.graph.edges
    coloring = dict(first.gadget.coloring)
    for v, c in second.gadget.coloring.items():
        coloring.setdefault(v, c)
    roots = set(s1) | set(s2)
    non_roots = sorted({v for g in edges for v in g} - roots)
    gadget = RootedGadget(
        graph=Hypergraph(arena.next_label, edges, r_max=r),
        roots=roots,
        layers=[Layer(non_roots, {v: coloring[v] for v in non_roots})],
        coloring=coloring,
    )
    left = first.on.without([middle]) + second.off
    right = first.off + second.on.without([middle])
    logger.debug(f"Hinge template q={q} r={r}: {len(edges)} edges, {len(non_roots)} non-root vertices, "
                 f"middle {middle}")
    return Hinge(gadget, s1, s2, e, left, right, middle=middle, independent=True)


def build_hinge(S1: Sequence[int], S2: Sequence[int], r: int,
                arena: Optional[LabelArena] = None) -> Hinge:
    """Independent hinge H for cliques S1, S2 sharing exactly one r-edge e.

    ``left`` decomposes H + (S1 - e) and ``right`` decomposes H + (S2 - e);
    no edge of H lies inside V(S1) + V(S2).

    Raises:
        PreconditionError: the cliques differ in size or do not share exactly r vertices.
    """
    S1, S2 = normalize_edge(S1), normalize_edge(S2)
    q = len(S1)
    shared = tuple(sorted(set(S1) & set(S2)))
    if len(S2) != q or len(shared) != r or not 1 <= r < q:
        raise PreconditionError(f"Hinge needs two q-cliques sharing exactly r={r} vertices, got {S1} and {S2}")
    template = _hinge_template(q, r)
    arena = arena if arena is not None else LabelArena()
    arena.reserve_through(max(S1 + S2))
    rest1 = [v for v in S1 if v not in shared]
    rest2 = [v for v in S2 if v not in shared]
    mapping: Dict[int, int] = dict(enumerate(list(shared) + rest1 + rest2))
    base = 2 * q - r
    for i, label in enumerate(arena.fresh(template.gadget.graph.n - base)):
        mapping[base + i] = label
    return template.relabel(mapping)



def verify_hinge(hinge: Hinge, r: int) -> Dict[str, bool]:
    """Exact checks of the hinge definition; every value is True for a valid hinge."""
    graph = hinge.gadget.graph
    side1 = [g for g in combinations(hinge.s1, r) if g != hinge.edge]
    side2 = [g for g in combinations(hinge.s2, r) if g != hinge.edge]
    roots = set(hinge.s1) | set(hinge.s2)
    return {
        'left_decomposes': verify_decomposition(graph.with_edges(side1), hinge.left),
        'right_decomposes': verify_decomposition(graph.with_edges(side2), hinge.right),
        'independent': not any(set(e) <= roots for e in graph.edges),
        'partite': _partite(graph.with_edges(side1 + side2).edges, hinge.gadget.coloring),
    }
