from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from refined_absorption.core.generators import complete_bounded, complete_graph, random_graph
from refined_absorption.core.models import DensityVector, Hypergraph
from refined_absorption.embed import count_layered_embeddings
from refined_absorption.errors import PreconditionError
from refined_absorption.gadgets import build_anti_edge
from refined_absorption.turan import (
    TuranProbe,
    density_vector,
    meets_spencer_caps,
    random_below_caps,
    rooted_projection,
    spencer_alteration,
    subset_density_tail,
    truncate_rooted,
    turan_space_probe,
)


def test_density_vectors():
    assert density_vector(complete_bounded(5, 3)).components == (1, 1, 1)
    assert density_vector(Hypergraph(5, [], r_max=2)).components == (0, 0)
    assert density_vector(complete_graph(5, 3)).components == (0, 0, 1)
    assert density_vector(Hypergraph(4, [(0,), (0, 1)], r_max=2))[2] == Fraction(1, 6)


def test_density_vector_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        DensityVector([Fraction(3, 2)])


def test_spencer_on_random_instances_below_caps():
    rng = np.random.default_rng(77)
    for trial in range(100):
        r = 2 + trial % 2
        q = 3 + trial % 3
        n = int(rng.integers(30, 41))
        G = random_below_caps(n, q, r, rng)
        assert meets_spencer_caps(G, q)
        result = spencer_alteration(G, q, derandomize=True)
        inside = set(result.independent_set)
        assert not any(set(e) <= inside for e in G.edges)
        assert result.size >= q


def test_spencer_needs_room():
    with pytest.raises(PreconditionError):
        spencer_alteration(Hypergraph(5, [], r_max=2), 3)


def test_spencer_without_edges_keeps_the_sample():
    result = spencer_alteration(Hypergraph(40, [], r_max=2), 3, seed=5)
    assert result.independent_set == result.sampled
    assert result.expectation_bound == 6


def test_tail_extremes():
    assert subset_density_tail(complete_graph(10, 2), 3, Fraction(1, 2)) == 0
    assert subset_density_tail(Hypergraph(10, [], r_max=2), 3, Fraction(1, 2)) == 1


def test_tail_sampling_tracks_enumeration(rng):
    trials = 2000
    for _ in range(20):
        G = random_graph(14, 2, 0.5, rng)
        exact = subset_density_tail(G, 4, Fraction(1, 2), mode='exhaustive')
        sampled = subset_density_tail(G, 4, Fraction(1, 2), trials=trials, seed=3, mode='sample')
        sigma = sqrt(float(exact) * (1 - float(exact)) / trials)
        assert abs(float(sampled) - float(exact)) <= 3 * sigma + 0.01


def test_tail_rejects_unknown_mode(k7):
    with pytest.raises(PreconditionError):
        subset_density_tail(k7, 3, Fraction(1, 2), mode='guess')


def test_rooted_projection_matches_rooted_embeddings(rng):
    H = build_anti_edge((0, 1), 3)
    H_trunc, _ = truncate_rooted(H.graph, H.roots)
    assert H_trunc.edges == {(0,)}
    for _ in range(10):
        G = random_graph(9, 2, 0.5, rng)
        G_proj, rest = rooted_projection(G, (0, 1))
        assert rest == list(range(2, 9))
        singles = [e for e in G_proj.edges if len(e) == 1]
        assert len(singles) == count_layered_embeddings(G, H, {0: 0, 1: 1})
        for (v,) in singles:
            assert G.has_edge((0, rest[v])) and G.has_edge((1, rest[v]))


def test_probe_on_saturated_hosts():
    summary = turan_space_probe(complete_graph(3, 2), [1, 1], 6, trials=3, seed=1, show_progress=False)
    assert summary['min_copies'] == summary['max_copies'] == 20
    assert summary['hit_rate'] == 1
    assert summary['min_ratio'] == 1
    assert summary['k'] == 3


def test_probe_is_seeded_and_exports(tmp_path):
    F = complete_graph(3, 2)
    first = TuranProbe(F, DensityVector([0, Fraction(1, 2)]), 8)
    first.run(trials=4, seed=9, show_progress=False)
    second = TuranProbe(F, DensityVector([0, Fraction(1, 2)]), 8)
    second.run(trials=4, seed=9, show_progress=False)
    assert first.trials == second.trials
    first.export_analysis(str(tmp_path / "probe"))
    assert (tmp_path / "probe_probe_trials.csv").exists()
    assert (tmp_path / "probe_probe_summary.csv").exists()
