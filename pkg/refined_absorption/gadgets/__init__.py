from .booster import (
    booster_prime,
    build_booster,
    build_orthogonal_booster,
    cauchy_matrix,
    is_orthogonal,
    solution_cliques,
    verify_booster,
)
from .degeneracy import degeneracy_order, is_rooted_partite_degenerate, is_rooted_q_partite, rooted_degeneracy
from .fake_edge import build_anti_edge, build_fake_edge
from .hinge import build_hinge, verify_hinge
