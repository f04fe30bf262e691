from .density import (
    SpencerResult,
    density_vector,
    expectation_bound,
    meets_spencer_caps,
    random_below_caps,
    spencer_alteration,
    spencer_constant,
    spencer_density_caps,
)
from .probe import TuranProbe, turan_space_probe
from .rooted import rooted_projection, truncate_rooted
from .tail import subset_density_tail
