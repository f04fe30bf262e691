from .simplex import LPResult, PIVOT_RULES, solve_feasibility
from .fractional import (
    InheritanceStats,
    LowWeightReport,
    RegularityReport,
    boost_regularity,
    fixed_fractional,
    fractional_boundary,
    fractional_decompose,
    inheritance_sample,
    is_fractional_decomposition,
    low_weight_fractional,
    removal_decompositions,
)
