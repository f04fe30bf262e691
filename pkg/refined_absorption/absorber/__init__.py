from .absorber import Absorber, AbsorberReport, build_absorber, verify_absorber, write_absorber_bundle
from .omni import OmniAbsorber, build_omni_absorber_exhaustive, divisible_subgraphs
from ..gadgets.degeneracy import is_rooted_partite_degenerate
