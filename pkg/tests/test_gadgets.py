from itertools import combinations
from math import comb

import pytest

from refined_absorption.core.hypercore import degree
from refined_absorption.gadgets import (
    booster_prime,
    build_anti_edge,
    build_booster,
    build_fake_edge,
    build_hinge,
    build_orthogonal_booster,
    is_orthogonal,
    is_rooted_q_partite,
    rooted_degeneracy,
    verify_booster,
    verify_hinge,
)
from refined_absorption.errors import PreconditionError


def test_booster_counts_for_triangles():
    booster = build_booster([0, 1, 2], 2)
    assert booster.prime == 5
    assert len(booster.on) == 25
    assert len(booster.off) == 24
    assert booster.gadget.graph.num_edges == 72
    assert all(verify_booster(booster, 2).values())


@pytest.mark.parametrize("q,r", [(3, 2), (4, 2), (4, 3)])
def test_booster_decompositions(q, r):
    booster = build_booster(list(range(q)), r)
    checks = verify_booster(booster, r)
    assert all(checks.values()), checks
    assert 2 * q - r < booster_prime(q, r) < 2 * (2 * q - r)


@pytest.mark.parametrize("q,r", [(3, 2), (4, 2), (4, 3)])
def test_orthogonal_booster(q, r):
    booster = build_orthogonal_booster(list(range(q)), r)
    assert all(verify_booster(booster, r).values())
    assert is_orthogonal(booster, r)
    assert len(booster.rounds) - 1 <= comb(q, r)
    on_cliques = [booster.on.at(e) for e in combinations(booster.target, r)]
    assert len(set(on_cliques)) == comb(q, r)


def test_booster_rejects_short_target():
    with pytest.raises(PreconditionError):
        build_booster([0, 1], 2)


def test_hinge_for_triangles():
    hinge = build_hinge([0, 1, 2], [0, 1, 3], 2)
    checks = verify_hinge(hinge, 2)
    assert all(checks.values()), checks
    assert hinge.edge == (0, 1)
    assert len(hinge.left) == len(hinge.right)
    # left decomposes H plus the two other edges of S1
    assert 3 * len(hinge.left) == hinge.gadget.graph.num_edges + 2
    assert is_rooted_q_partite(hinge.gadget, 3)


def test_hinge_needs_single_shared_edge():
    with pytest.raises(PreconditionError):
        build_hinge([0, 1, 2], [3, 4, 5], 2)


def test_anti_edge_shape():
    gadget = build_anti_edge((0, 1), 3)
    assert sorted(gadget.graph.edges) == [(0, 2), (1, 2)]
    assert gadget.roots_independent()


@pytest.mark.parametrize("q,r", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_fake_edge_congruences(q, r):
    f = tuple(range(r))
    gadget = build_fake_edge(f, q)
    graph = gadget.graph
    assert gadget.roots_independent()
    assert not graph.has_edge(f)
    vertices = sorted(set(gadget.non_root_vertices()) | set(f))
    assert len(gadget.non_root_vertices()) == (q - r) * comb(q, r)
    for i in range(r):
        modulus = comb(q - i, r - i)
        for S in combinations(vertices, i):
            expected = 1 if set(S) <= set(f) else 0
            assert degree(graph, S) % modulus == expected % modulus, (S, degree(graph, S))


@pytest.mark.parametrize("q,r", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_fake_edge_degeneracy(q, r):
    gadget = build_fake_edge(tuple(range(r)), q)
    d = rooted_degeneracy(gadget)
    assert d <= comb(q - 1, r - 1)
    if (q, r) == (3, 2):
        assert d == 2
