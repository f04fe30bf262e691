import numpy as np
import pytest

from refined_absorption.core.generators import complete_graph
from refined_absorption.core.io import format_valuation, parse_valuation
from refined_absorption.core.models import IntegralHypergraph
from refined_absorption.errors import DivisibilityError
from refined_absorption.integral import (
    boundary,
    edge_intersecting_integral_decompose,
    is_edge_intersecting,
    normal_form,
    reduce_l1,
    solve_integer_system,
    wilson_decompose,
)


def test_normal_form_solves_integer_system():
    A = np.array([[2, 4, 6, 0], [1, 3, 5, 1], [0, 2, 4, 2]], dtype=object)
    x0 = np.array([1, -2, 3, 4], dtype=object)
    form = normal_form(A)
    assert (form.Sinv.dot(A).dot(form.Tinv) == form.D).all()
    x = solve_integer_system(form, A.dot(x0))
    assert x is not None
    assert list(A.dot(x)) == list(A.dot(x0))
    kernel = form.kernel()
    assert kernel.shape[1] >= 1
    assert all(v == 0 for v in A.dot(kernel).flatten())


def test_no_integer_solution():
    A = np.array([[2, 4]], dtype=object)
    assert solve_integer_system(normal_form(A), np.array([3], dtype=object)) is None


def test_l1_reduction_never_increases_norm():
    A = np.array([[1, 1, 1]], dtype=object)
    form = normal_form(A)
    x = np.array([5, -3, 1], dtype=object)
    reduced, _ = reduce_l1(x, form.kernel())
    assert sum(abs(v) for v in reduced) <= sum(abs(v) for v in x)
    assert A.dot(reduced)[0] == A.dot(x)[0]


@pytest.mark.parametrize("name", ["clique", "cycle", "two_triangles", "k7"])
def test_edge_intersecting_decomposition(name, c6, two_triangles, k7):
    graph = {'clique': complete_graph(3, 2), 'cycle': c6, 'two_triangles': two_triangles, 'k7': k7}[name]
    L = IntegralHypergraph.unit(graph)
    phi = edge_intersecting_integral_decompose(L, 3)
    assert boundary(phi) == L.psi
    assert is_edge_intersecting(phi, graph)
    assert phi.m == graph.n + 3 + 2


def test_wilson_decomposition_of_cycle(c6):
    L = IntegralHypergraph.unit(c6)
    phi = wilson_decompose(L, 3)
    assert boundary(phi) == L.psi
    minimized = wilson_decompose(L, 3, minimize=True)
    assert boundary(minimized) == L.psi
    assert minimized.l1() <= phi.l1()


def test_indivisible_weights_rejected():
    L = IntegralHypergraph.unit(complete_graph(4, 2))
    with pytest.raises(DivisibilityError):
        edge_intersecting_integral_decompose(L, 3)


def test_valuation_text_form(c6):
    phi = edge_intersecting_integral_decompose(IntegralHypergraph.unit(c6), 3)
    text = format_valuation(phi)
    assert len(text.splitlines()) == len(phi.weights)
    assert parse_valuation(text, phi.m, 3, 2).weights == phi.weights
