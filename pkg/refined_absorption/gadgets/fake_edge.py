"""Anti-edges and fake-edges: gadgets with the divisibility profile of (minus) one edge."""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from ..core.models import Hypergraph, LabelArena, Layer, RootedGadget, normalize_edge
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


def _check(f: Sequence[int], q: int):
    f = normalize_edge(f)
    if not 0 < len(f) < q:
        raise PreconditionError(f"Need q > |f| >= 1 (|f|={len(f)}, q={q})")
    return f


def _anti_edge_edges(T: Sequence[int], fresh: Sequence[int], r: int) -> List[tuple]:
    T = tuple(sorted(T))
    return [e for e in combinations(sorted(T + tuple(fresh)), r) if e != T]


def build_anti_edge(f: Sequence[int], q: int, arena: Optional[LabelArena] = None) -> RootedGadget:
    """K_q^r on f + {x_1..x_{q-r}} with the edge f removed, rooted at f."""
    f = _check(f, q)
    r = len(f)
    arena = arena if arena is not None else LabelArena()
    arena.reserve_through(f[-1])
    xs = arena.fresh(q - r)
    coloring = {v: c for c, v in enumerate(f + tuple(xs))}
    return RootedGadget(
        graph=Hypergraph(arena.next_label, _anti_edge_edges(f, xs, r), r_max=r),
        roots=f,
        layers=[Layer(xs, {x: coloring[x] for x in xs})],
        coloring=coloring,
    )


def build_fake_edge(f: Sequence[int], q: int, arena: Optional[LabelArena] = None) -> RootedGadget:
    """Fake-edge rooted at f.

    Fresh vertices x_1..x_{q-r} are added, then an anti-edge on fresh vertices
    for every r-subset T != f of f + x. Neither f nor the sets T are edges; the
    gadget uses exactly (q-r) * C(q, r) new vertices.
    """
    f = _check(f, q)
    r = len(f)
    arena = arena if arena is not None else LabelArena()
    arena.reserve_through(f[-1])
    xs = arena.fresh(q - r)
    base = f + tuple(xs)
    coloring: Dict[int, int] = {v: c for c, v in enumerate(base)}
    edges: List[tuple] = []
    ys: List[int] = []
    for T in combinations(base, r):
        if T == f:
            continue
        fresh = arena.fresh(q - r)
        # the fresh vertices take the parts T leaves free
        free_colors = sorted(set(range(q)) - {coloring[v] for v in T})
        coloring.update(zip(fresh, free_colors))
        edges.extend(_anti_edge_edges(T, fresh, r))
        ys.extend(fresh)
    logger.debug(f"Fake-edge at {f} for q={q}: {len(xs) + len(ys)} new vertices, {len(edges)} edges")
    return RootedGadget(
        graph=Hypergraph(arena.next_label, edges, r_max=r),
        roots=f,
        layers=[Layer(xs, {x: coloring[x] for x in xs}), Layer(ys, {y: coloring[y] for y in ys})],
        coloring=coloring,
    )
