from .reserves import ReserveReport, ReserveSampler, extension_count, sample_reserves
from .nibble import (
    NibbleReport,
    cover_down,
    cover_down_search,
    covered_edges,
    full_packing_search,
    nibble_with_reserves,
    verify_nibble_packing,
)
