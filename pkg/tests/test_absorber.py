import attr
import pytest

from refined_absorption.absorber import (
    build_absorber,
    build_omni_absorber_exhaustive,
    divisible_subgraphs,
    verify_absorber,
    write_absorber_bundle,
)
from refined_absorption.core.generators import complete_graph
from refined_absorption.core.hypercore import verify_decomposition
from refined_absorption.core.models import CliqueFamily, Hypergraph
from refined_absorption.errors import CapExceededError, DivisibilityError


@pytest.fixture(scope="module")
def cycle_absorber():
    from refined_absorption.core.generators import cycle_graph
    return build_absorber(cycle_graph(6), 3)


def test_absorber_for_cycle_passes_all_checks(cycle_absorber):
    report = verify_absorber(cycle_absorber)
    assert report.passed, report.to_dict()


def test_absorber_for_two_triangles(two_triangles):
    report = verify_absorber(build_absorber(two_triangles, 3))
    assert report.passed, report.to_dict()


def test_absorber_needs_divisible_target():
    with pytest.raises(DivisibilityError):
        build_absorber(complete_graph(4, 2), 3)


def test_removing_a1_clique_flips_only_a1(cycle_absorber):
    broken = attr.evolve(cycle_absorber, a1=CliqueFamily(3, cycle_absorber.a1.cliques[1:]))
    report = verify_absorber(broken)
    assert not report.a1_decomposes
    assert report.a2_decomposes and report.roots_independent and report.edge_intersecting
    assert report.partite_degenerate


def test_removing_a2_clique_flips_only_a2(cycle_absorber):
    broken = attr.evolve(cycle_absorber, a2=CliqueFamily(3, cycle_absorber.a2.cliques[1:]))
    report = verify_absorber(broken)
    assert not report.a2_decomposes
    assert report.a1_decomposes and report.roots_independent and report.edge_intersecting


def test_bundle_written(cycle_absorber, tmp_path):
    write_absorber_bundle(cycle_absorber, tmp_path / "bundle")
    assert (tmp_path / "bundle" / "manifest.json").exists()


def test_divisible_subgraphs_of_k4():
    found = divisible_subgraphs(complete_graph(4, 2), 3, show_progress=False)
    # the empty graph and the four triangles
    assert len(found) == 5


def test_omni_absorber_on_k4():
    X = complete_graph(4, 2)
    omni = build_omni_absorber_exhaustive(X, 3, show_progress=False)
    checks = omni.verify()
    assert len(checks) == 5
    assert all(checks.values())
    assert not omni.graph.edges & X.edges
    assert omni.refinement() >= 1
    assert all(omni.verify_private().values())


def test_omni_absorber_on_eight_edges():
    X = Hypergraph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (0, 5)])
    omni = build_omni_absorber_exhaustive(X, 3, show_progress=False)
    for L, ok in omni.verify().items():
        assert ok
        assert verify_decomposition(omni.graph.with_edges(L), omni.decomposition(L))


def test_omni_cap_enforced():
    with pytest.raises(CapExceededError):
        divisible_subgraphs(complete_graph(6, 2), 3, cap=8, show_progress=False)


def test_omni_export(tmp_path):
    omni = build_omni_absorber_exhaustive(complete_graph(3, 2), 3, show_progress=False)
    omni.export_analysis(str(tmp_path / "omni"))
    assert (tmp_path / "omni_refinement.csv").exists()
    assert (tmp_path / "omni_subgraphs.csv").exists()
