#!/usr/bin/env python3
"""Train multilingual node embeddings on the bipartite concept-ngram graph.

Walks are biased second-order random walks (return parameter p=0.5, in-out
parameter q=2), which on a bipartite graph means every step either returns
to the previous node (factor 1/p) or moves on (factor 1/q). The trainer is
plain skip-gram with negative sampling over the walk sequences.
"""

import tempfile
from pathlib import Path

import numpy as np

import colexgraph as cg
from colexgraph.datagen import synthetic_corpus

workdir = Path(tempfile.mkdtemp(prefix="colexgraph-demo-"))
info = synthetic_corpus(workdir, n_concepts=40, n_verses=200, n_colex=0, seed=11)
corpus = cg.load_corpus(workdir)
pool = cg.build_concept_pool(corpus)
indexes = {
    lang: cg.build_occurrence_index(corpus, lang)
    for lang in corpus.languages
    if lang != corpus.pivot
}
records = cg.extract_patterns(pool, indexes.keys(), indexes)
plus = cg.build_colexnetplus(
    records, cg.prune(cg.build_colexnet(records), cg.PruneConfig(1))
)

# The second-order bias in one picture: standing on an ngram node after
# arriving from concept c1, returning is twice as likely as moving on.
some_ngram = sorted(plus.ngram_nodes)[0]
prev = sorted(plus.neighbors(some_ngram))[0]
dist = cg.transition_distribution(plus, prev, some_ngram, cg.WalkConfig())
print(f"transition from {some_ngram} (arrived via {prev}):")
for node, p in sorted(dist.items(), key=lambda kv: -kv[1]):
    print(f"  -> {node}: {p:.3f}")

walks = cg.generate_walks(
    plus, cg.WalkConfig(walks_per_node=6, walk_length=32, seed=3)
)
print(f"\ngenerated {len(walks)} walks; first one starts:",
      " ".join(walks[0][:6]), "...")

table = cg.train_skipgram(
    walks, cg.TrainConfig(dim=50, window=3, negatives=5, epochs=5, seed=13)
)
print(f"trained {len(table)} vectors of dimension {table.dim}")

concept = info["concepts"][0]
print(f"\nnearest neighbors of <{concept}> (all languages):")
for key, sim in cg.nearest_neighbors(table, concept, 5):
    print(f"  {key}: {sim:.3f}")

print("\nplanted translations recovered per language:")
for lang in ("xx1", "xx2", "xx3"):
    hits = 0
    for c in info["concepts"]:
        top = cg.nearest_neighbors(table, c, 1, vocab_filter=lang)[0][0]
        hits += top == f"{lang}:${info['words'][lang][c]}$"
    print(f"  {lang}: {hits}/{len(info['concepts'])}")

# Verses embed as the mean of their matched units, so translated verses of
# the two languages land close to each other.
vid = corpus.verse_ids[0]
ve = cg.embed_verse(table, corpus, "eng", vid)
vx = cg.embed_verse(table, corpus, "xx1", vid)
cos = float(ve @ vx / (np.linalg.norm(ve) * np.linalg.norm(vx)))
print(f"\ncosine(eng verse {vid}, xx1 verse {vid}) = {cos:.3f}")
