"""Line-oriented text formats and atomic file writes."""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from .models import CliqueFamily, Edge, FractionalWeighting, Hypergraph, IntegralValuation, Layer, RootedGadget
from ..errors import VertexRangeError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_atomic(path: PathLike, text: str) -> Path:
    """Write ``text`` through a temporary file so readers never see a partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_file = path.with_suffix(path.suffix + '.tmp')
    try:
        temp_file.write_text(text)
        temp_file.replace(path)  # Atomic replace
    except Exception as e:
        logger.error(f"Error writing {path}: {str(e)}")
        if temp_file.exists():
            temp_file.unlink()
        raise
    return path


def write_json(path: PathLike, data: Dict[str, Any]) -> Path:
    return write_atomic(path, json.dumps(data, indent=2, sort_keys=True) + '\n')


def _vertex_line(vertices: Iterable[int]) -> str:
    return ' '.join(str(v) for v in vertices)


def format_hypergraph(G: Hypergraph) -> str:
    """``r n m`` header, then one sorted edge per line in lexicographic order."""
    lines = [f"{G.r_max} {G.n} {G.num_edges}"]
    lines.extend(_vertex_line(e) for e in G.sorted_edges())
    return '\n'.join(lines) + '\n'


def _parse_header(line: str) -> Tuple[int, int, int]:
    try:
        r, n, m = (int(tok) for tok in line.split())
    except ValueError:
        raise VertexRangeError(f"Malformed header line: {line!r}")
    return r, n, m


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise VertexRangeError("Empty hypergraph text")
    r, n, m = _parse_header(lines[0])
    body = lines[1:1 + m]
    if len(body) != m:
        raise VertexRangeError(f"Header announces {m} edges, found {len(body)}")
    edges = [tuple(int(tok) for tok in line.split()) for line in body]
    return Hypergraph(n, edges, r_max=r)


def read_hypergraph(path: PathLike) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(path: PathLike, G: Hypergraph) -> Path:
    return write_atomic(path, format_hypergraph(G))


def format_cliques(family: CliqueFamily) -> str:
    return ''.join(_vertex_line(c) + '\n' for c in family.cliques)


def parse_cliques(text: str, q: int) -> CliqueFamily:
    cliques = [tuple(int(tok) for tok in line.split()) for line in text.splitlines() if line.strip()]
    return CliqueFamily(q, cliques)


def format_gadget(gadget: RootedGadget, families: Optional[Dict[str, CliqueFamily]] = None) -> str:
    """Hypergraph text followed by the roots/layers/families annotation block."""
    lines = [format_hypergraph(gadget.graph).rstrip('\n')]
    lines.append('roots ' + _vertex_line(sorted(gadget.roots)))
    if gadget.coloring:
        lines.append('coloring ' + ' '.join(f"{v}:{c}" for v, c in sorted(gadget.coloring.items())))
    for i, layer in enumerate(gadget.layers or []):
        lines.append(f"layer {i} " + ' '.join(f"{v}:{layer.coloring.get(v, -1)}" for v in layer.vertices))
    for name, family in (families or {}).items():
        lines.append(f"family {name} {len(family)}")
        lines.extend(_vertex_line(c) for c in family.cliques)
    return '\n'.join(lines) + '\n'


def parse_gadget(text: str, q: int) -> Tuple[RootedGadget, Dict[str, CliqueFamily]]:
    lines = [line for line in text.splitlines() if line.strip()]
    r, n, m = _parse_header(lines[0])
    graph = parse_hypergraph('\n'.join(lines[:1 + m]))
    roots: List[int] = []
    coloring: Dict[int, int] = {}
    layers: List[Layer] = []
    families: Dict[str, CliqueFamily] = {}
    i = 1 + m
    while i < len(lines):
        tokens = lines[i].split()
        i += 1
        if tokens[0] == 'roots':
            roots = [int(tok) for tok in tokens[1:]]
        elif tokens[0] == 'coloring':
            coloring = {int(a): int(b) for a, b in (tok.split(':') for tok in tokens[1:])}
        elif tokens[0] == 'layer':
            pairs = [tuple(int(x) for x in tok.split(':')) for tok in tokens[2:]]
            layers.append(Layer([v for v, _ in pairs], {v: c for v, c in pairs if c >= 0}))
        elif tokens[0] == 'family':
            name, count = tokens[1], int(tokens[2])
            families[name] = parse_cliques('\n'.join(lines[i:i + count]), q)
            i += count
        else:
            raise VertexRangeError(f"Unknown annotation line: {lines[i - 1]!r}")
    gadget = RootedGadget(graph, roots, layers=layers or None, coloring=coloring)
    return gadget, families


def format_valuation(phi: IntegralValuation) -> str:
    """One ``w v1 ... vq`` line per support clique."""
    return ''.join(f"{w} {_vertex_line(c)}\n" for c, w in sorted(phi.weights.items()))


def parse_valuation(text: str, m: int, q: int, r: int) -> IntegralValuation:
    weights = {}
    for line in text.splitlines():
        if line.strip():
            tokens = [int(tok) for tok in line.split()]
            weights[tuple(tokens[1:])] = tokens[0]
    return IntegralValuation(m, q, r, weights)


def format_weighting(psi: FractionalWeighting) -> str:
    """One ``p/q v1 ... vq`` line per support clique."""
    return ''.join(f"{w.numerator}/{w.denominator} {_vertex_line(c)}\n" for c, w in sorted(psi.weights.items()))


def parse_weighting(text: str, ground: Hypergraph, q: int) -> FractionalWeighting:
    weights = {}
    for line in text.splitlines():
        if line.strip():
            head, *rest = line.split()
            weights[tuple(int(tok) for tok in rest)] = Fraction(head)
    return FractionalWeighting(ground, q, weights)


def format_packing(packing: CliqueFamily, leave: Iterable[Edge] = ()) -> str:
    """Cliques one per line, then a ``leave k`` line and the uncovered edges."""
    leave = sorted(leave)
    return format_cliques(packing) + f"leave {len(leave)}\n" + ''.join(_vertex_line(e) + '\n' for e in leave)
