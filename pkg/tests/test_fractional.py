from fractions import Fraction
from itertools import combinations

import pytest

from refined_absorption.core.generators import complete_graph, disjoint_union
from refined_absorption.core.hypercore import enumerate_cliques
from refined_absorption.core.models import FractionalWeighting
from refined_absorption.errors import CapExceededError, FractionalInfeasibleError, LowWeightError, PreconditionError
from refined_absorption.fractional import (
    boost_regularity,
    fixed_fractional,
    fractional_boundary,
    fractional_decompose,
    inheritance_sample,
    is_fractional_decomposition,
    low_weight_fractional,
    removal_decompositions,
    solve_feasibility,
)
from refined_absorption.nibble import sample_reserves


def test_simplex_feasible_system():
    A = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    b = [Fraction(2), Fraction(3)]
    for rule in ('bland', 'dantzig'):
        result = solve_feasibility(A, b, rule=rule)
        assert result.feasible
        assert all(x >= 0 for x in result.x)
        assert [sum(a * x for a, x in zip(row, result.x)) for row in A] == b


def test_simplex_farkas_certificate():
    A = [[Fraction(1)], [Fraction(1)]]
    b = [Fraction(1), Fraction(2)]
    result = solve_feasibility(A, b)
    assert not result.feasible
    y = result.certificate
    assert sum(yi * row[0] for yi, row in zip(y, A)) <= 0
    assert sum(yi * bi for yi, bi in zip(y, b)) > 0


def test_simplex_cap():
    with pytest.raises(CapExceededError):
        solve_feasibility([[Fraction(1)] * 10] * 10, [Fraction(1)] * 10, cap=50)


def test_uniform_weighting_on_k7(k7):
    psi = FractionalWeighting(k7, 3, {c: Fraction(1, 5) for c in enumerate_cliques(k7, 3)})
    assert is_fractional_decomposition(psi)


def test_lp_decomposition_on_k7(k7):
    for rule in ('bland', 'dantzig'):
        psi = fractional_decompose(k7, 3, rule=rule)
        assert is_fractional_decomposition(psi)


def test_cycle_is_fractionally_infeasible(c6):
    with pytest.raises(FractionalInfeasibleError) as info:
        fractional_decompose(c6, 3)
    assert sum(info.value.certificate.values()) > 0


@pytest.fixture(scope="module")
def k7_parts():
    G = complete_graph(7, 2)
    return G, fractional_decompose(G, 3), removal_decompositions(G, 3)


def test_fixed_fractional_hits_targets(k7_parts, rng):
    G, base, removed = k7_parts
    m = G.num_edges
    low = 1 - Fraction(1, m)
    for _ in range(50):
        phi = {e: low + Fraction(int(rng.integers(0, 1001)), 1000 * m) for e in G.edges}
        psi = fixed_fractional(G, 3, phi, base, removed)
        boundary = fractional_boundary(psi)
        assert all(boundary.get(e, 0) == phi[e] for e in G.edges)
        assert all(0 <= w <= 1 for w in psi.weights.values())


def test_fixed_fractional_rejects_low_target(k7_parts):
    G, base, removed = k7_parts
    with pytest.raises(PreconditionError):
        fixed_fractional(G, 3, {(0, 1): Fraction(1, 2)}, base, removed)


def test_low_weight_on_k7(k7):
    psi, report = low_weight_fractional(k7, 3, s=5, show_progress=False)
    assert report.min_count == report.max_count == 10
    assert is_fractional_decomposition(psi)
    assert report.reference_c == 2 * 3
    assert report.achieved_c == psi.max_weight() * 5


def test_boost_regularity_on_k7(k7):
    psi = FractionalWeighting(k7, 3, {c: Fraction(1, 5) for c in enumerate_cliques(k7, 3)})
    family, report = boost_regularity(k7, psi, seed=11)
    assert report.d == 5
    # every probability psi(H) * d is exactly 1
    assert len(family) == 35
    assert all(x == 5 for x in report.expected.values())
    assert report.max_relative_deviation() == 0
    again, _ = boost_regularity(k7, psi, seed=11)
    assert again.cliques == family.cliques


def test_regularity_export(k7, tmp_path):
    psi = fractional_decompose(k7, 3)
    _, report = boost_regularity(k7, psi, seed=2)
    report.export_analysis(str(tmp_path / "boost"))
    assert (tmp_path / "boost_regularity.csv").exists()


def test_inheritance_in_complete_graph(k7):
    stats = inheritance_sample(k7, (0, 1), 5, exhaustive=True)
    assert stats.threshold == 4
    assert stats.sets == len(list(combinations(range(2, 7), 3)))
    assert stats.fraction == 1


def test_low_weight_on_two_components_has_unit_boundary():
    G = disjoint_union([complete_graph(5, 2), complete_graph(5, 2)])
    psi, report = low_weight_fractional(G, 3, s=5, show_progress=False)
    boundary = fractional_boundary(psi)
    assert all(boundary.get(e, 0) == 1 for e in G.edges)
    assert is_fractional_decomposition(psi)
    # only the two components are usable 5-sets
    assert report.usable_sets == 2
    assert report.min_count == report.max_count == 1


def test_low_weight_refuses_uneven_counts():
    G = complete_graph(13, 2)
    X, _ = sample_reserves(G, 3, p=0.3, seed=4)
    J = G.without_edges(X.edges)
    with pytest.raises(LowWeightError) as info:
        low_weight_fractional(J, 3, s=5, show_progress=False)
    assert info.value.edge in J.edges
