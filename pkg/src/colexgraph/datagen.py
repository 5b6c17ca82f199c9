"""Deterministic synthetic corpora for tests, demos and desk-scale runs.

Two flavors:

* an 8-verse hand-built corpus where one language uses a single word for
  both <hand> and <arm> (so the backward pass surfaces a colexification) and
  wind/blow words are one-to-one, plus mirror languages;
* a generated corpus with configurable concept/verse counts where every
  concept has a unique word per language except for a chosen number of
  planted colexified pairs in one language, which share a word.

Generators also write the evaluation fixtures (gold colexification TSV,
classification splits, language groupings) and a ready-to-run pipeline
config, so `colexgraph all --config <dir>/toy.toml` works out of the box.
"""

from __future__ import annotations

import random
import string
from pathlib import Path
from typing import Optional, Sequence

# eng lemma content per verse; one list entry per verse v1..v8
TOY_ENG = [
    ["hand"], ["hand"], ["arm"], ["arm"],
    ["wind"], ["wind", "blow"], ["blow"], ["hand", "wind"],
]

# xx1 and xx2 colexify <hand>/<arm> through one word; xx3 is one-to-one
TOY_WORDS = {
    "xx1": {"hand": "ruka", "arm": "ruka", "wind": "veter", "blow": "duet"},
    "xx2": {"hand": "mano", "arm": "mano", "wind": "vento", "blow": "sopla"},
    "xx3": {"hand": "tema", "arm": "bilo", "wind": "wopa", "blow": "sude"},
}

TOY_CONCEPTS = ("arm", "blow", "hand", "wind")


def write_toy_corpus(directory: Path | str) -> Path:
    """Write the 8-verse corpus (eng + xx1..xx3) and return the directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    verse_ids = [f"v{i}" for i in range(1, 9)]
    lines = {"eng": [" ".join(c for c in concepts) for concepts in TOY_ENG]}
    for lang, words in TOY_WORDS.items():
        lines[lang] = [" ".join(words[c] for c in concepts) for concepts in TOY_ENG]
    for lang, texts in lines.items():
        with (directory / f"{lang}.txt").open("w", encoding="utf-8") as fh:
            for vid, text in zip(verse_ids, texts):
                fh.write(f"{vid}\t{text}\n")
    return directory


def _random_word(rng: random.Random, length: int, taken: set[str]) -> str:
    while True:
        w = "".join(rng.choice(string.ascii_lowercase) for _ in range(length))
        if w not in taken:
            taken.add(w)
            return w


def _deal_verses(
    rng: random.Random, concepts: Sequence[str], n_verses: int, per_verse: int,
    min_occurrences: int,
) -> list[list[str]]:
    """Deal concepts into verses so every concept occurs >= min_occurrences."""
    slots = n_verses * per_verse
    deck = [c for c in concepts for _ in range(min_occurrences)]
    if len(deck) > slots:
        raise ValueError("not enough verse slots for the minimum occurrence count")
    deck += rng.choices(list(concepts), k=slots - len(deck))
    rng.shuffle(deck)
    verses = [deck[i * per_verse : (i + 1) * per_verse] for i in range(n_verses)]
    # repair duplicate concepts within a verse by swapping across verses
    for i, verse in enumerate(verses):
        for j in range(per_verse):
            if verse[j] not in verse[:j]:
                continue
            swapped = False
            for i2 in range(n_verses):
                if i2 == i or swapped:
                    continue
                other = verses[i2]
                for j2 in range(per_verse):
                    cand = other[j2]
                    rest = other[:j2] + other[j2 + 1 :]
                    if cand not in verse and verse[j] not in rest:
                        verse[j], other[j2] = cand, verse[j]
                        swapped = True
                        break
            if not swapped:
                raise RuntimeError("could not deduplicate verse concepts")
    return verses


def synthetic_corpus(
    directory: Path | str,
    n_concepts: int = 40,
    n_verses: int = 200,
    languages: Sequence[str] = ("xx1", "xx2", "xx3"),
    colex_lang: Optional[str] = "xx3",
    n_colex: int = 5,
    concepts_per_verse: int = 3,
    word_len: int = 5,
    seed: int = 7,
    pivot: str = "eng",
) -> dict:
    """Generate a planted-translation corpus; returns concepts and planted pairs.

    Every concept gets one unique word per language; in `colex_lang`, the
    `n_colex` planted pairs (consecutive concepts) share a single word, so the
    pipeline should recover exactly those colexification edges. `n_colex=0`
    yields a pure one-to-one corpus for embedding-transfer experiments.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    taken: set[str] = set()
    concepts = sorted(_random_word(rng, word_len, taken) for _ in range(n_concepts))
    if n_colex * 2 > n_concepts:
        raise ValueError("not enough concepts for the planted pairs")
    planted = [(concepts[2 * i], concepts[2 * i + 1]) for i in range(n_colex)]

    words: dict[str, dict[str, str]] = {}
    for lang in languages:
        lang_taken: set[str] = set()
        words[lang] = {
            c: _random_word(rng, word_len, lang_taken) for c in concepts
        }
    if colex_lang is not None and n_colex:
        for a, b in planted:
            words[colex_lang][b] = words[colex_lang][a]

    verses = _deal_verses(rng, concepts, n_verses, concepts_per_verse, 5)
    verse_ids = [f"{i + 1:08d}" for i in range(n_verses)]

    with (directory / f"{pivot}.txt").open("w", encoding="utf-8") as fh:
        for vid, vc in zip(verse_ids, verses):
            fh.write(f"{vid}\t{' '.join(vc)}\n")
    for lang in languages:
        with (directory / f"{lang}.txt").open("w", encoding="utf-8") as fh:
            for vid, vc in zip(verse_ids, verses):
                fh.write(f"{vid}\t{' '.join(words[lang][c] for c in vc)}\n")
    return {
        "concepts": concepts,
        "planted": planted,
        "words": words,
        "verse_ids": verse_ids,
        "verses": verses,
    }


# ---------------------------------------------------------------------------
# Evaluation fixtures
# ---------------------------------------------------------------------------


def write_gold_colex(path: Path | str, pairs: Sequence[tuple[str, str]]) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for a, b in pairs:
            fh.write(f"{a}\t{b}\n")
    return path


def write_class_splits(
    splits_dir: Path | str,
    verse_ids: Sequence[str],
    labels: Sequence[str],
    languages: Sequence[str],
    train_lang: str = "eng",
    train_frac: float = 0.7,
    valid_frac: float = 0.15,
) -> Path:
    """Per-language `<iso>.<split>.tsv` files over a shared verse labeling."""
    splits_dir = Path(splits_dir)
    splits_dir.mkdir(parents=True, exist_ok=True)
    n = len(verse_ids)
    n_train = int(n * train_frac)
    n_valid = int(n * valid_frac)
    blocks = {
        "train": list(zip(verse_ids[:n_train], labels[:n_train])),
        "valid": list(zip(verse_ids[n_train : n_train + n_valid],
                          labels[n_train : n_train + n_valid])),
        "test": list(zip(verse_ids[n_train + n_valid :],
                         labels[n_train + n_valid :])),
    }
    for lang in [train_lang, *languages]:
        for split, rows in blocks.items():
            with (splits_dir / f"{lang}.{split}.tsv").open("w", encoding="utf-8") as fh:
                for vid, label in rows:
                    fh.write(f"{vid}\t{label}\n")
    return splits_dir


def class_labels(verses: Sequence[Sequence[str]], concepts: Sequence[str],
                 n_classes: int = 6) -> list[str]:
    """Label each verse by the class bucket of its first concept."""
    bucket = {c: f"k{i % n_classes}" for i, c in enumerate(sorted(concepts))}
    return [bucket[vc[0]] for vc in verses]


def write_grouping(path: Path | str, mapping: dict[str, str]) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for iso in sorted(mapping):
            fh.write(f"{iso}\t{mapping[iso]}\n")
    return path


# ---------------------------------------------------------------------------
# Ready-to-run toy project
# ---------------------------------------------------------------------------

_TOY_CONFIG = """\
seed = 42
output_dir = "out"
workers = 1

[corpus]
dir = "corpus"
pivot = "eng"
max_ngram_len = 8
unlimited_ngram_langs = []
min_ngram_verses = 2
concept_min_freq = 1
concept_max_freq = 2000

[patterns]
alpha = 0.9
max_iters = 3

[graph]
lambdas = [1, 2]
primary_lambda = 1

[walks]
p = 0.5
q = 2.0
walks_per_node = 10
walk_length = 20
dump_walks = true
uniform_weights = false

[train]
dim = 16
window = 3
negatives = 3
epochs = 3
learning_rate = 0.025

[clics]
gold = "gold_colex.tsv"

[roundtrip]
trials = 2
intermediates = 3

[retrieval]
query_lang = "eng"
verse_count = 8
min_coverage = 0.5

[classify]
train_lang = "eng"
splits_dir = "splits"
epochs = 200
learning_rate = 0.1
l2 = 0.0001

[analysis]
resolution = 1.0
louvain_seed = 114514
ari_runs = 3
family_grouping = "families.tsv"
area_grouping = "areas.tsv"
"""


def write_toy_project(root: Path | str) -> Path:
    """Write the toy corpus plus all fixtures and return the config path."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    write_toy_corpus(root / "corpus")
    write_gold_colex(root / "gold_colex.tsv", [("hand", "arm")])
    labels = {f"v{i + 1}": "body" if v[0] in ("hand", "arm") else "weather"
              for i, v in enumerate(TOY_ENG)}
    # interleave body/weather verses so the small train split sees both classes
    order = ["v1", "v5", "v2", "v6", "v3", "v7", "v4", "v8"]
    write_class_splits(
        root / "splits", order, [labels[v] for v in order], list(TOY_WORDS),
        train_frac=0.5, valid_frac=0.0,
    )
    write_grouping(root / "families.tsv",
                   {"xx1": "fam_a", "xx2": "fam_a", "xx3": "fam_b"})
    write_grouping(root / "areas.tsv",
                   {"xx1": "area_x", "xx2": "area_y", "xx3": "area_y"})
    config = root / "toy.toml"
    config.write_text(_TOY_CONFIG, encoding="utf-8")
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        description="write the toy project (corpus, fixtures, config)"
    )
    parser.add_argument("directory", help="target directory for the project")
    args = parser.parse_args(argv)
    config = write_toy_project(Path(args.directory))
    print(config)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
