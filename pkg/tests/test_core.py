from fractions import Fraction
from itertools import combinations, permutations

import pytest

from refined_absorption.core.exact_cover import exact_cover_decompose
from refined_absorption.core.generators import complete_bounded, complete_graph, complete_partite, random_graph
from refined_absorption.core.hypercore import (
    blow_up,
    count_copies,
    degree,
    enumerate_cliques,
    is_divisible,
    is_clique,
    link,
    min_codegree,
    verify_decomposition,
    verify_packing,
)
from refined_absorption.core.io import (
    format_gadget,
    format_hypergraph,
    format_packing,
    format_weighting,
    parse_gadget,
    parse_hypergraph,
    parse_weighting,
    read_hypergraph,
    write_hypergraph,
)
from refined_absorption.core.models import CliqueFamily, FractionalWeighting, Hypergraph, normalize_edge
from refined_absorption.errors import CliqueOutsideGroundError, VertexRangeError


def naive_copies(G, F):
    images = set()
    for mapping in permutations(range(G.n), F.n):
        edges = [normalize_edge(mapping[v] for v in e) for e in F.edges]
        if all(G.has_edge(e) for e in edges):
            images.add((tuple(sorted(mapping)), tuple(sorted(edges))))
    return len(images)


def test_edges_outside_range_rejected():
    with pytest.raises(VertexRangeError):
        Hypergraph(3, [(0, 3)])
    with pytest.raises(VertexRangeError):
        normalize_edge([1, 1])


def test_degrees_and_codegree(k7):
    assert degree(k7, ()) == 21
    assert degree(k7, (0,)) == 6
    assert min_codegree(k7) == 6
    assert min_codegree(k7.without_edges([(0, 1)])) == 5


def test_divisibility(k7, c6):
    assert is_divisible(k7, 3)
    assert is_divisible(c6, 3)
    assert not is_divisible(complete_graph(6, 2), 3)
    assert not is_divisible(complete_graph(4, 2).without_edges([(0, 1)]), 3)


def test_link_of_vertex(k7):
    L = link(k7, (0,))
    assert L.num_edges == 6


def test_clique_enumeration():
    assert len(enumerate_cliques(complete_graph(5, 2), 3)) == 10
    assert len(enumerate_cliques(complete_graph(6, 3), 4)) == 15


def test_exact_cover_decomposes_k7(k7):
    family = exact_cover_decompose(k7, 3)
    assert family is not None
    assert len(family) == 7
    assert verify_decomposition(k7, family)


def test_exact_cover_proves_absence(c6):
    assert exact_cover_decompose(c6, 3) is None


def test_verify_decomposition_rejects_foreign_clique(c6):
    with pytest.raises(CliqueOutsideGroundError):
        verify_decomposition(c6, CliqueFamily(3, [(0, 1, 2)]))


def test_verify_packing_detects_overlap(k7):
    assert verify_packing(k7, CliqueFamily(3, [(0, 1, 2), (0, 3, 4)]))
    assert not verify_packing(k7, CliqueFamily(3, [(0, 1, 2), (0, 1, 3)]))


def test_count_copies_matches_naive(rng):
    patterns = [complete_graph(3, 2), Hypergraph(4, [(0, 1), (1, 2), (2, 3)]), complete_graph(4, 3),
                complete_bounded(2, 2)]
    for _ in range(6):
        G2 = random_graph(7, 2, 0.5, rng)
        G3 = random_graph(6, 3, 0.5, rng)
        for F in patterns:
            G = G3 if F.r_max == 3 else G2
            if F.r_max == 2 and any(len(e) == 1 for e in F.edges):
                G = G2.with_edges([(v,) for v in range(0, G2.n, 2)])
            assert count_copies(G, F) == naive_copies(G, F)


def test_count_copies_in_complete_graph():
    assert count_copies(complete_graph(6, 2), complete_graph(3, 2)) == 20


def test_blow_up_edge_growth():
    F = complete_bounded(3, 2)
    t = 3
    grown = blow_up(F, t)
    for i in (1, 2):
        assert grown.layer(i).num_edges == t ** i * F.layer(i).num_edges


def test_text_format_parses_back(c6):
    assert parse_hypergraph(format_hypergraph(c6)) == c6


def test_induced_keeps_labels(k7):
    sub = k7.induced([0, 2, 4])
    assert sorted(sub.edges) == sorted(combinations([0, 2, 4], 2))


def test_gadget_annotations_survive_text_form():
    from refined_absorption.gadgets import build_anti_edge
    gadget = build_anti_edge((0, 1), 4)
    family = CliqueFamily(4, [(0, 1, 2, 3)])
    parsed, families = parse_gadget(format_gadget(gadget, {'a1': family}), 4)
    assert parsed.graph == gadget.graph
    assert parsed.roots == gadget.roots
    assert parsed.coloring == gadget.coloring
    assert [layer.vertices for layer in parsed.layers] == [layer.vertices for layer in gadget.layers]
    assert families['a1'].cliques == family.cliques


def test_weighting_and_packing_text(k7):
    psi = FractionalWeighting(k7, 3, {(0, 1, 2): Fraction(1, 5), (3, 4, 5): Fraction(2, 3)})
    text = format_weighting(psi)
    assert text.splitlines()[0] == "1/5 0 1 2"
    assert parse_weighting(text, k7, 3).weights == psi.weights
    packing = format_packing(CliqueFamily(3, [(0, 1, 2)]), leave=[(5, 6), (3, 4)])
    assert packing.splitlines() == ["0 1 2", "leave 2", "3 4", "5 6"]


def test_octahedron_decomposes_into_four_triangles():
    G = complete_partite(3, 2, 2)
    assert G.num_edges == 12
    assert is_divisible(G, 3)
    found = exact_cover_decompose(G, 3)
    assert found is not None and len(found) == 4
    assert all(is_clique(G, c) for c in found.cliques)
    assert not is_clique(G, (0, 1, 2))


def test_hypergraph_file_round_trip(tmp_path, k7):
    path = write_hypergraph(tmp_path / "k7.txt", k7)
    assert read_hypergraph(path) == k7
