import json
import time
from collections import Counter
from itertools import combinations

import pytest

from refined_absorption.core.exact_cover import exact_cover_decompose
from refined_absorption.core.generators import complete_graph
from refined_absorption.core.hypercore import verify_decomposition
from refined_absorption.errors import DivisibilityError
from refined_absorption.pipeline import STAGES, DecompositionTrace, PipelineConfig, decompose, report
from refined_absorption.pipeline.pipeline import SEEDED_STAGES, _stage_seeds


def _host(n, perturbed):
    G = complete_graph(n, 2)
    return G.without_edges([(0, 1), (0, 2), (1, 2)]) if perturbed else G


def _check_run(G, family, trace):
    text, data = report(trace)
    if family is not None:
        assert trace.success
        assert data['verified']
        assert text.splitlines()[-1] == "decomposition verified: true"
        assert [s.index for s in trace.stages] == [1, 2, 3, 4, 5, 6]
        used = Counter(e for c in family.cliques for e in combinations(c, 2) if G.has_edge(e))
        assert set(used) == G.edges
        assert set(used.values()) == {1}
    else:
        assert text.splitlines()[-1] == "decomposition verified: false"
        assert trace.failed_stage is not None
        referee = exact_cover_decompose(G, 3)
        assert referee is not None and verify_decomposition(G, referee)


@pytest.mark.parametrize("n", [7, 9])
def test_pipeline_decomposes_or_is_refereed(n):
    G = complete_graph(n, 2)
    family, trace = decompose(G, 3, seed=5)
    _check_run(G, family, trace)


@pytest.mark.parametrize("perturbed", [False, True])
@pytest.mark.parametrize("n", [13, 19])
def test_pipeline_on_larger_hosts(n, perturbed, tmp_path):
    G = _host(n, perturbed)
    config = PipelineConfig(search_budget=10000, low_weight_mode='sample')
    start = time.perf_counter()
    family, trace = decompose(G, 3, config=config, seed=3)
    assert time.perf_counter() - start < 60
    _check_run(G, family, trace)

    _, again = decompose(G, 3, config=config, seed=3)
    first = json.dumps(trace.to_dict(), sort_keys=True, default=str)
    assert json.dumps(again.to_dict(), sort_keys=True, default=str) == first
    trace.export_analysis(str(tmp_path / "first"))
    again.export_analysis(str(tmp_path / "second"))
    assert (tmp_path / "first_stages.csv").read_bytes() == (tmp_path / "second_stages.csv").read_bytes()


def test_stage_seeds_cover_only_randomized_stages():
    seeds = _stage_seeds(4)
    assert tuple(seeds) == SEEDED_STAGES
    assert STAGES[1] not in seeds
    assert len(set(seeds.values())) == len(SEEDED_STAGES)
    assert seeds == _stage_seeds(4)


def test_pipeline_absorber_lives_on_new_vertices():
    G = complete_graph(7, 2)
    family, trace = decompose(G, 3, config=PipelineConfig(reserve_p=0.3), seed=2)
    stage_two = next((s for s in trace.stages if s.index == 2), None)
    if stage_two is None or not stage_two.ok:
        pytest.skip("absorber stage did not complete")
    assert stage_two.details["subgraphs"] >= 1
    if family is not None:
        assert all(v < G.n + trace.absorber_vertices for c in family.cliques for v in c)


def test_pipeline_is_deterministic_per_seed():
    G = complete_graph(7, 2)
    _, first = decompose(G, 3, seed=11)
    _, second = decompose(G, 3, seed=11)
    assert first.to_dict() == second.to_dict()


def test_pipeline_rejects_indivisible_host():
    with pytest.raises(DivisibilityError):
        decompose(complete_graph(6, 2), 3)


def test_empty_trace_report():
    assert report(DecompositionTrace()) == ('', {})


def test_failed_stage_report():
    trace = DecompositionTrace(9, 3, 0)
    trace.record(1, STAGES[0], reserve_edges=4)
    trace.record(2, STAGES[1], subgraphs=3)
    trace.record(3, STAGES[2], route='lp')
    trace.record(4, STAGES[3], ok=False, error="5 edges of J left uncovered", leave=5)
    text, data = report(trace)
    assert "failed stage: 4 (nibble)" in text
    assert "  leave: 5" in text
    assert text.splitlines()[-1] == "decomposition verified: false"
    assert not trace.success
    assert data['stages'][3]['ok'] is False


def test_trace_export(tmp_path):
    trace = DecompositionTrace(7, 3, 0)
    trace.record(1, STAGES[0], reserve_edges=2)
    trace.export_analysis(str(tmp_path / "run"))
    assert (tmp_path / "run_stages.csv").exists()
