"""Language similarity from multilingual model hidden states.

Pipeline: HS1 hidden-state files -> pooled sentence embeddings -> per-layer
cosine similarity matrices -> correlation against linguistic measures,
complete-linkage clustering, and transfer source selection.
"""

from .analysis import best_layer, correlation_report, pearson, summarize, target_layer_correlations
from .clustering import Dendrogram, complete_linkage, cut, neighbors, to_newick
from .corpus import (
    LanguageCode,
    MonolingualCorpus,
    MultiParallelCorpus,
    load_monolingual_corpus,
    load_parallel_corpus,
    parse_language_code,
    subset_sentences,
)
from .hidden_io import HiddenStateSet, read_hs1, validate, write_hs1
from .lexstat import build_lex_matrix, levenshtein, normalized_edit_similarity
from .measures import MeasureKind, MeasureTable, load_measure_csv, to_similarity
from .pooling import (
    PoolingStrategy,
    SentenceEmbeddings,
    mean_pool,
    pool_set,
    position_weighted_pool,
)
from .similarity import (
    LayerSimilaritySet,
    build_monolingual_similarity,
    build_parallel_similarity,
    cosine,
    similarity_vector,
)
from .transfer import (
    DEFAULT_SOURCES,
    ScoreTable,
    SelectionMap,
    constant_selection,
    delta_table,
    evaluate,
    select_sources,
)

__version__ = "0.1.0"
