from .models import (
    Booster,
    Clique,
    CliqueFamily,
    DensityVector,
    Edge,
    FractionalWeighting,
    Hinge,
    Hypergraph,
    IntegralHypergraph,
    IntegralValuation,
    LabelArena,
    Layer,
    RootedGadget,
    normalize_edge,
)
from .hypercore import (
    blow_up,
    clique_boundary,
    count_copies,
    degree,
    enumerate_cliques,
    is_divisible,
    link,
    max_codegree,
    min_codegree,
    verify_decomposition,
    verify_packing,
)
from .exact_cover import ExactCoverSolver, exact_cover_decompose, exact_cover_packing
