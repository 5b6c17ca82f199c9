"""Shared fixtures: the 8-verse hand-built corpus, the generated synthetic
corpora, and trained embedding tables. Expensive artifacts are session-scoped
and record their build wall time so acceptance tests can assert runtime
budgets without rebuilding."""

import time

import pytest

import colexgraph as cg
from colexgraph import datagen


@pytest.fixture(scope="session")
def toy_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("toy")
    datagen.write_toy_corpus(root / "corpus")
    return root / "corpus"


@pytest.fixture(scope="session")
def toy_corpus(toy_dir):
    return cg.load_corpus(toy_dir)


@pytest.fixture(scope="session")
def toy_pool(toy_corpus):
    # toy frequencies are 2..3, below the default [5, 2000] production window
    return cg.build_concept_pool(toy_corpus, min_freq=1, max_freq=2000)


@pytest.fixture(scope="session")
def toy_indexes(toy_corpus):
    return {
        lang: cg.build_occurrence_index(toy_corpus, lang)
        for lang in toy_corpus.languages
        if lang != toy_corpus.pivot
    }


@pytest.fixture(scope="session")
def toy_patterns(toy_pool, toy_indexes):
    return cg.extract_patterns(toy_pool, toy_indexes.keys(), toy_indexes)


@pytest.fixture(scope="session")
def toy_net(toy_patterns):
    return cg.build_colexnet(toy_patterns)


@pytest.fixture(scope="session")
def toy_plus(toy_patterns, toy_net):
    return cg.build_colexnetplus(toy_patterns, cg.prune(toy_net, cg.PruneConfig(1)))


@pytest.fixture(scope="session")
def toy_table(toy_plus):
    walks = cg.generate_walks(
        toy_plus, cg.WalkConfig(walks_per_node=10, walk_length=20, seed=5)
    )
    return cg.train_skipgram(
        walks, cg.TrainConfig(dim=16, window=3, negatives=3, epochs=3, seed=9)
    )


@pytest.fixture(scope="session")
def planted(tmp_path_factory):
    """Synthetic corpus with 5 colexified pairs planted in one language."""
    root = tmp_path_factory.mktemp("planted")
    start = time.perf_counter()
    info = datagen.synthetic_corpus(
        root, n_concepts=40, n_verses=200, n_colex=5, seed=7
    )
    corpus = cg.load_corpus(root)
    pool = cg.build_concept_pool(corpus)
    indexes = {
        lang: cg.build_occurrence_index(corpus, lang)
        for lang in corpus.languages
        if lang != corpus.pivot
    }
    records = cg.extract_patterns(pool, indexes.keys(), indexes)
    net = cg.build_colexnet(records)
    return {
        "info": info,
        "corpus": corpus,
        "pool": pool,
        "indexes": indexes,
        "records": records,
        "net": net,
        "elapsed": time.perf_counter() - start,
    }


@pytest.fixture(scope="session")
def transfer(tmp_path_factory):
    """One-to-one 3-target-language corpus with trained 50-dim embeddings."""
    root = tmp_path_factory.mktemp("transfer")
    start = time.perf_counter()
    info = datagen.synthetic_corpus(
        root, n_concepts=40, n_verses=200, n_colex=0, seed=11
    )
    corpus = cg.load_corpus(root)
    pool = cg.build_concept_pool(corpus)
    indexes = {
        lang: cg.build_occurrence_index(corpus, lang)
        for lang in corpus.languages
        if lang != corpus.pivot
    }
    records = cg.extract_patterns(pool, indexes.keys(), indexes)
    net = cg.prune(cg.build_colexnet(records), cg.PruneConfig(1))
    plus = cg.build_colexnetplus(records, net)
    walks = cg.generate_walks(
        plus, cg.WalkConfig(walks_per_node=6, walk_length=32, seed=3)
    )
    table = cg.train_skipgram(
        walks, cg.TrainConfig(dim=50, window=3, negatives=5, epochs=5, seed=13)
    )
    return {
        "info": info,
        "corpus": corpus,
        "plus": plus,
        "table": table,
        "targets": ["xx1", "xx2", "xx3"],
        "elapsed": time.perf_counter() - start,
    }
