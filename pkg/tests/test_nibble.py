import numpy as np
import pytest

from refined_absorption.core.generators import complete_graph
from refined_absorption.core.hypercore import enumerate_cliques
from refined_absorption.core.models import CliqueFamily
from refined_absorption.errors import FractionalInfeasibleError, PreconditionError
from refined_absorption.fractional import boost_regularity, fractional_decompose
from refined_absorption.nibble import (
    ReserveSampler,
    covered_edges,
    extension_count,
    nibble_with_reserves,
    sample_reserves,
    verify_nibble_packing,
)


def test_reserves_are_a_subgraph_within_bound():
    G = complete_graph(15, 2)
    X, report = sample_reserves(G, 3, p=0.5, seed=4)
    assert X.edges <= G.edges
    assert report.within_bound
    assert set(report.extension_counts) == G.edges - X.edges
    for e, k in list(report.extension_counts.items())[:5]:
        assert k == extension_count(X, e, 3)


def test_reserve_sampling_is_seeded():
    G = complete_graph(12, 2)
    assert sample_reserves(G, 3, p=0.3, seed=9)[0] == sample_reserves(G, 3, p=0.3, seed=9)[0]


def test_reserve_probability_range():
    with pytest.raises(PreconditionError):
        ReserveSampler(complete_graph(5, 2), 3, p=1.5)


def test_reserve_export(tmp_path):
    _, report = sample_reserves(complete_graph(9, 2), 3, p=0.3, seed=1)
    report.export_analysis(str(tmp_path / "res"))
    assert (tmp_path / "res_extensions.csv").exists()


def test_extension_count_in_complete_reserve():
    X = complete_graph(6, 2).without_edges([(0, 1)])
    assert extension_count(X, (0, 1), 3) == 4


def _nibble_instance(seed):
    G = complete_graph(15, 2)
    X, _ = sample_reserves(G, 3, p=0.5, seed=seed)
    J = G.without_edges(X.edges)
    try:
        family, _ = boost_regularity(J, fractional_decompose(J, 3), seed=seed)
    except FractionalInfeasibleError:
        family = CliqueFamily(3, enumerate_cliques(J, 3))
    return G, J, X, family


def test_nibble_returns_valid_packing():
    for seed in range(4):
        _, J, X, family = _nibble_instance(seed)
        packing, report = nibble_with_reserves(J, X, family, seed=seed, search=False, show_progress=False)
        assert verify_nibble_packing(J, X, packing)
        assert set(report.leave) == J.edges - covered_edges(J, packing)


def test_nibble_leave_is_small_without_search():
    leaves = []
    for seed in range(20):
        G, J, X, family = _nibble_instance(seed)
        packing, report = nibble_with_reserves(J, X, family, seed=seed, search=False, show_progress=False)
        assert verify_nibble_packing(J, X, packing)
        leaves.append(len(report.leave))
    assert np.median(leaves) <= 0.15 * G.num_edges


def test_search_only_shrinks_the_leave():
    for seed in range(3):
        _, J, X, family = _nibble_instance(seed)
        _, plain = nibble_with_reserves(J, X, family, seed=seed, search=False, show_progress=False)
        packing, searched = nibble_with_reserves(J, X, family, seed=seed, budget=5000, show_progress=False)
        assert verify_nibble_packing(J, X, packing)
        assert len(searched.leave) <= len(plain.leave)


def test_nibble_rejects_overlapping_reserve():
    G = complete_graph(6, 2)
    with pytest.raises(PreconditionError):
        nibble_with_reserves(G, G, CliqueFamily(3), show_progress=False)


def test_nibble_rejects_foreign_clique():
    G = complete_graph(6, 2).without_edges([(0, 1)])
    X = complete_graph(6, 2).without_edges(G.edges)
    with pytest.raises(PreconditionError):
        nibble_with_reserves(G, X, CliqueFamily(3, [(0, 1, 2)]), show_progress=False)
