from .embedding import check_embedding, count_layered_embeddings, embed_degenerate, iter_embeddings
from .matching import MatchingResult, finishing_matching, is_valid_matching
from .supergraph import (
    SupergraphSystem,
    SystemEmbedding,
    embed_supergraph_system,
    embed_supergraph_system_with_growth,
    verify_system_embedding,
)
