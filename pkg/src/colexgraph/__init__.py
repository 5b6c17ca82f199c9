"""Colexification mining from verse-aligned parallel corpora.

The pipeline: load a corpus and index its ngrams (`corpus`), align concepts
to target-language ngrams by chi-squared association (`assoc`), fold the
patterns into a concept graph and its bipartite concept-ngram expansion
(`graphs`), train multilingual node embeddings by biased random walks plus
skip-gram (`embed`), evaluate them (`evalsuite`) and analyze the graph
structure (`analysis`). `cli` chains the stages; `datagen` writes synthetic
corpora for experiments and tests.
"""

from .corpus import (
    ConceptPool,
    Corpus,
    OccurrenceIndex,
    VerseSet,
    build_concept_pool,
    build_occurrence_index,
    enumerate_ngrams,
    load_corpus,
)
from .assoc import (
    FPConfig,
    Ngram,
    PatternRecord,
    backward_pass,
    chi_square,
    coverage,
    extract_patterns,
    forward_pass,
)
from .graphs import (
    ColexNet,
    ColexNetPlus,
    PruneConfig,
    build_colexnet,
    build_colexnetplus,
    prune,
)
from .embed import (
    EmbeddingTable,
    TrainConfig,
    WalkConfig,
    embed_verse,
    generate_walks,
    nearest_neighbors,
    train_skipgram,
    transition_distribution,
)
from .evalsuite import (
    Classifier,
    ClassifierConfig,
    ClicsReport,
    GoldColexSet,
    eval_classification,
    eval_clics,
    eval_retrieval,
    macro_f1,
    roundtrip_eval,
    roundtrip_trial,
    train_classifier,
)
from .analysis import (
    Partition,
    adjusted_rand_index,
    betweenness,
    graph_stats,
    louvain,
    modularity,
    subnetwork,
)

__version__ = "0.1.0"

__all__ = [
    "ConceptPool", "Corpus", "OccurrenceIndex", "VerseSet",
    "build_concept_pool", "build_occurrence_index", "enumerate_ngrams",
    "load_corpus",
    "FPConfig", "Ngram", "PatternRecord", "backward_pass", "chi_square",
    "coverage", "extract_patterns", "forward_pass",
    "ColexNet", "ColexNetPlus", "PruneConfig", "build_colexnet",
    "build_colexnetplus", "prune",
    "EmbeddingTable", "TrainConfig", "WalkConfig", "embed_verse",
    "generate_walks", "nearest_neighbors", "train_skipgram",
    "transition_distribution",
    "Classifier", "ClassifierConfig", "ClicsReport", "GoldColexSet",
    "eval_classification", "eval_clics", "eval_retrieval", "macro_f1",
    "roundtrip_eval", "roundtrip_trial", "train_classifier",
    "Partition", "adjusted_rand_index", "betweenness", "graph_stats",
    "louvain", "modularity", "subnetwork",
    "__version__",
]
