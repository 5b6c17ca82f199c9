#!/usr/bin/env python3
"""Walk through colexification mining on a tiny hand-built corpus.

The corpus has 8 verses in English plus three synthetic languages. Two of
them (xx1, xx2) use a single word for both <hand> and <arm> -- the classic
colexification example -- while xx3 keeps every concept distinct.
"""

import tempfile
from pathlib import Path

import colexgraph as cg
from colexgraph.datagen import write_toy_corpus

workdir = Path(tempfile.mkdtemp(prefix="colexgraph-demo-"))
write_toy_corpus(workdir / "corpus")
corpus = cg.load_corpus(workdir / "corpus")

print("corpus languages:", ", ".join(corpus.languages))
print("verses:")
for vid in corpus.verse_ids:
    row = "  ".join(
        f"{lang}={' '.join(corpus.verse_tokens(lang, vid))}"
        for lang in corpus.languages
    )
    print(f"  {vid}: {row}")

# Concepts are pivot-language lemmata; the toy corpus is far below the
# production frequency window [5, 2000], so open it up.
pool = cg.build_concept_pool(corpus, min_freq=1, max_freq=2000)
print("\nconcept pool:", ", ".join(pool.sorted()))

index = cg.build_occurrence_index(corpus, "xx1")
print(f"\nxx1 occurrence index holds {len(index)} ngrams "
      f"over {index.doc_count} aligned verses")
print("verses containing '$ruka$':",
      sorted(corpus.verse_ids[i] for i in index.map["$ruka$"].ordinals()))

# The forward pass greedily picks the xx1 ngrams most associated with the
# verses of <hand>; the backward pass then asks which concepts those ngrams
# point back to. More than one concept = a colexification in xx1.
print("\nchi-squared of the (hand, $ruka$) table:", cg.chi_square(3, 0, 2, 3))
T = cg.forward_pass("hand", "xx1", pool, index)
print("forward pass for <hand> in xx1:", [n.text for n in T])
C = cg.backward_pass(T, "xx1", pool, index)
print("backward pass:", C)
print("=> xx1 colexifies", " and ".join(f"<{c}>" for c in C))

# <blow> is a *stable* concept in xx1: the roundtrip returns only itself.
T = cg.forward_pass("blow", "xx1", pool, index)
print("\nforward pass for <blow> in xx1:", [n.text for n in T])
print("backward pass:", cg.backward_pass(T, "xx1", pool, index))

# Run everything for all languages and collect the pattern records.
indexes = {
    lang: cg.build_occurrence_index(corpus, lang)
    for lang in corpus.languages
    if lang != corpus.pivot
}
records = cg.extract_patterns(pool, indexes.keys(), indexes)
print(f"\n{len(records)} pattern records:")
for rec in records:
    print(f"  {rec.language} <{rec.focal}> via {rec.ngrams} -> {rec.concepts}")
