from .lattice import NormalForm, normal_form, reduce_l1, solve_integer_system
from .valuation import (
    boundary,
    cone_valuation,
    edge_intersecting_integral_decompose,
    fits_inside_edges,
    is_edge_intersecting,
    wilson_decompose,
)
