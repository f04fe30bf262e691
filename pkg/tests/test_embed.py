from itertools import permutations
from math import factorial

import pytest

from refined_absorption.core.generators import complete_graph, random_graph
from refined_absorption.core.models import Hypergraph, LabelArena
from refined_absorption.embed import (
    SupergraphSystem,
    check_embedding,
    count_layered_embeddings,
    embed_degenerate,
    embed_supergraph_system,
    embed_supergraph_system_with_growth,
    finishing_matching,
    is_valid_matching,
    iter_embeddings,
    verify_system_embedding,
)
from refined_absorption.errors import EmbeddingNotFoundError, GreedyEmbeddingError
from refined_absorption.gadgets import build_anti_edge, build_booster, build_fake_edge, build_hinge

# (gadget, uniformity); every entry has at most 12 vertices
SMALL_GADGETS = [
    (build_anti_edge((0, 1), 3), 2),
    (build_fake_edge((0, 1), 3), 2),
    (build_anti_edge((0, 1), 4), 2),
    (build_anti_edge((0, 1, 2), 4), 3),
    (build_fake_edge((0, 1, 2), 4), 3),
]


def brute_force_extensions(G, H, image):
    free = [v for v in H.non_root_vertices()]
    hosts = [w for w in range(G.n) if w not in set(image.values())]
    total = 0
    for chosen in permutations(hosts, len(free)):
        phi = dict(image)
        phi.update(zip(free, chosen))
        if all(G.has_edge(sorted(phi[v] for v in e)) for e in H.graph.edges):
            total += 1
    return total


def _random_image(H, n, rng):
    roots = sorted(H.roots)
    chosen = rng.choice(n, size=len(roots), replace=False)
    return {v: int(w) for v, w in zip(roots, chosen)}


def test_counts_agree_with_brute_force(rng):
    discrepancies = 0
    for trial in range(100):
        H, r = SMALL_GADGETS[trial % len(SMALL_GADGETS)]
        G = random_graph(9, r, 0.6, rng)
        image = _random_image(H, G.n, rng)
        expected = brute_force_extensions(G, H, image)
        layered = count_layered_embeddings(G, H, image)
        degenerate = embed_degenerate(G, H, image, mode='count')
        discrepancies += (layered != expected) + (degenerate != expected)
    assert discrepancies == 0


def test_counts_are_invariant_under_host_relabeling(rng):
    for trial in range(25):
        H, r = SMALL_GADGETS[trial % len(SMALL_GADGETS)]
        G = random_graph(9, r, 0.6, rng)
        image = _random_image(H, G.n, rng)
        mapping = {v: int(w) for v, w in enumerate(rng.permutation(G.n))}
        moved = G.relabel(mapping, n=G.n)
        moved_image = {v: mapping[w] for v, w in image.items()}
        count = embed_degenerate(G, H, image, mode='count')
        assert embed_degenerate(moved, H, moved_image, mode='count') == count
        assert count_layered_embeddings(moved, H, moved_image) == count


def test_booster_embeds_into_itself_part_by_part(rng):
    # non-roots can only move inside their own part, so the count is ((n-1)!)^q
    booster = build_booster((0, 1, 2), 2)
    H = booster.gadget
    image = {v: v for v in booster.target}
    expected = factorial(booster.prime - 1) ** 3
    assert count_layered_embeddings(H.graph, H, image) == expected
    assert embed_degenerate(H.graph, H, image, mode='count') == expected

    mapping = {v: int(w) for v, w in enumerate(rng.permutation(H.graph.n))}
    moved_image = {v: mapping[v] for v in booster.target}
    assert count_layered_embeddings(H.graph.relabel(mapping, n=H.graph.n), H, moved_image) == expected


def test_hinge_embeds_greedily():
    hinge = build_hinge((0, 1, 2), (0, 1, 3), 2)
    H = hinge.gadget
    G = complete_graph(H.graph.n + 2, 2)
    image = {v: v + 2 for v in H.roots}
    phi = embed_degenerate(G, H, image)
    assert check_embedding(G, H, phi, image)
    assert len(phi) == len(H.roots) + len(H.non_root_vertices())


def test_greedy_embedding_in_complete_host():
    G = complete_graph(10, 2)
    H = build_fake_edge((0, 1), 3)
    phi = embed_degenerate(G, H, {0: 4, 1: 7})
    assert check_embedding(G, H, phi, {0: 4, 1: 7})


def test_greedy_embedding_stuck_on_sparse_host():
    G = Hypergraph(6, [(0, 2)])
    H = build_anti_edge((0, 1), 3)
    with pytest.raises(GreedyEmbeddingError):
        embed_degenerate(G, H, {0: 0, 1: 1})


def test_iter_embeddings_respects_forbidden():
    G = complete_graph(5, 2)
    H = build_anti_edge((0, 1), 3)
    found = list(iter_embeddings(G, H, {0: 0, 1: 1}, forbidden=[2]))
    assert sorted(phi[2] for phi in found) == [3, 4]


def test_plain_matching():
    result = finishing_matching({'a': [('x',), ('y',)], 'b': [('x',)]})
    assert result.assignment == {'a': ('y',), 'b': ('x',)}
    assert is_valid_matching(result)


def test_matching_absent():
    assert finishing_matching({'a': [('x',)], 'b': [('x',)]}) is None


def test_capacitated_matching():
    options = {'a': [('x', 'u')], 'b': [('x', 'v')], 'c': [('x', 'w'), ('y', 'w')]}
    assert finishing_matching(options) is None
    result = finishing_matching(options, capacities={'x': 2})
    assert result is not None
    assert is_valid_matching(result, capacities={'x': 2})
    assert result.assignment['c'] == ('y', 'w')
    assert result.r_prime == 2


def _two_fake_edges():
    base = Hypergraph(4, [(0, 1), (2, 3)])
    arena = LabelArena(4)
    supers = [build_fake_edge((0, 1), 3, arena), build_fake_edge((2, 3), 3, arena)]
    family = [Hypergraph(4, [(0, 1)]), Hypergraph(4, [(2, 3)])]
    return SupergraphSystem(base, family, supers)


def test_system_of_two_fake_edges():
    system = _two_fake_edges()
    assert system.is_edge_intersecting()
    assert system.disjoint_outside_base()
    assert system.refinement() == 1
    G = complete_graph(14, 2)
    embedding = embed_supergraph_system(G, system, T=2, seed=3)
    assert verify_system_embedding(G, system, embedding)
    assert embedding.max_rset_load <= 2 * system.refinement()
    images = embedding.images(system)
    assert not set(images[0]) & set(images[1])


def test_system_without_room_fails():
    system = _two_fake_edges()
    G = complete_graph(8, 2)
    with pytest.raises(EmbeddingNotFoundError):
        embed_supergraph_system_with_growth(G, system, T=1, attempts=2)
