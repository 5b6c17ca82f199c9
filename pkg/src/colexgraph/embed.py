"""Biased second-order random walks and skip-gram embeddings for graph nodes.

Walks on the bipartite concept-ngram graph use the two-parameter transition
bias: stepping back to the previous node is rescaled by 1/p, staying at
distance 1 keeps the edge weight, and moving outward is rescaled by 1/q. On a
strictly bipartite graph the distance between the previous node and any
candidate is 0 or 2, so with p < 1 < q the walk hugs its local neighborhood,
approximating breadth-first sampling.

The trainer is plain skip-gram with negative sampling over the walk
sequences: one pass per epoch, a fixed symmetric window, negatives drawn from
the unigram^0.75 distribution, and linearly decaying SGD. Training is
single-threaded and bit-deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .corpus import Corpus, unmark
from .graphs import ColexNetPlus


@dataclass(frozen=True)
class WalkConfig:
    p: float = 0.5
    q: float = 2.0
    walks_per_node: int = 10
    walk_length: int = 80
    seed: int = 1
    uniform_weights: bool = False

    def __post_init__(self) -> None:
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")
        if self.walk_length < 2:
            raise ValueError("walk_length must be >= 2")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")


@dataclass(frozen=True)
class TrainConfig:
    dim: int = 200
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    seed: int = 1

    def __post_init__(self) -> None:
        if self.dim < 1 or self.window < 1 or self.negatives < 1 or self.epochs < 1:
            raise ValueError("dim, window, negatives and epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


def is_ngram_key(key: str) -> bool:
    """Ngram node keys are `<iso>:<text>`; concept keys are bare lemmata."""
    return len(key) > 4 and key[3] == ":"


# ---------------------------------------------------------------------------
# Transition rule and walk generation
# ---------------------------------------------------------------------------


def _edge_weight(graph: ColexNetPlus, u: str, x: str, uniform: bool) -> float:
    return 1.0 if uniform else float(graph.adj[u][x])


def transition_distribution(
    graph: ColexNetPlus,
    prev: Optional[str],
    cur: str,
    cfg: WalkConfig = WalkConfig(),
) -> dict[str, float]:
    """Normalized next-step distribution over the neighbors of `cur`.

    With `prev` absent (first step) the bias factor is 1 everywhere and the
    distribution is plain weight-proportional.
    """
    nbrs = graph.adj.get(cur)
    if not nbrs:
        raise ValueError(f"node {cur!r} has no neighbors")
    if prev is not None and prev not in nbrs:
        raise ValueError(f"{prev!r} is not adjacent to {cur!r}")
    probs: dict[str, float] = {}
    for x in sorted(nbrs):
        w = _edge_weight(graph, cur, x, cfg.uniform_weights)
        if prev is None:
            alpha = 1.0
        elif x == prev:
            alpha = 1.0 / cfg.p
        elif graph.has_edge(prev, x):
            alpha = 1.0
        else:
            alpha = 1.0 / cfg.q
        probs[x] = alpha * w
    total = sum(probs.values())
    return {x: pi / total for x, pi in probs.items()}


def _sample(rng: random.Random, items: Sequence[str], cumweights: Sequence[float]) -> str:
    r = rng.random() * cumweights[-1]
    return items[bisect_right(cumweights, r, 0, len(items) - 1)]


def _single_walk(
    graph: ColexNetPlus,
    start: str,
    cfg: WalkConfig,
    rng: random.Random,
    nbrs: dict[str, list[str]],
    first_cum: dict[str, list[float]],
) -> list[str]:
    walk = [start]
    prev: Optional[str] = None
    cur = start
    while len(walk) < cfg.walk_length:
        options = nbrs[cur]
        if not options:
            break
        if prev is None:
            nxt = _sample(rng, options, first_cum[cur])
        else:
            weights = []
            for x in options:
                w = _edge_weight(graph, cur, x, cfg.uniform_weights)
                if x == prev:
                    w /= cfg.p
                elif not graph.has_edge(prev, x):
                    w /= cfg.q
                weights.append(w)
            nxt = _sample(rng, options, list(accumulate(weights)))
        walk.append(nxt)
        prev, cur = cur, nxt
    return walk


def generate_walks(graph: ColexNetPlus, cfg: WalkConfig = WalkConfig()) -> list[list[str]]:
    """`walks_per_node` seeded walks from every node, in shuffled start order.

    Each walk owns a generator seeded from (global seed, round, node ordinal),
    so the output is independent of scheduling and reproducible.
    """
    nodes = sorted(graph.nodes)
    if not nodes:
        raise ValueError("graph has no nodes")
    ordinal = {n: i for i, n in enumerate(nodes)}
    nbrs = {n: sorted(graph.adj.get(n, {})) for n in nodes}
    first_cum = {
        n: list(
            accumulate(
                _edge_weight(graph, n, x, cfg.uniform_weights) for x in nbrs[n]
            )
        )
        for n in nodes
        if nbrs[n]
    }
    order_rng = random.Random(cfg.seed)
    walks: list[list[str]] = []
    for rnd in range(cfg.walks_per_node):
        order = nodes[:]
        order_rng.shuffle(order)
        for node in order:
            if not nbrs[node]:
                walks.append([node])
                continue
            rng = random.Random(cfg.seed + 1_000_003 * (rnd * len(nodes) + ordinal[node]))
            walks.append(_single_walk(graph, node, cfg, rng, nbrs, first_cum))
    return walks


def dump_walks(walks: Iterable[Sequence[str]], path: Path | str) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for walk in walks:
            fh.write(" ".join(walk) + "\n")


# ---------------------------------------------------------------------------
# Skip-gram with negative sampling
# ---------------------------------------------------------------------------


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def skipgram_loss(
    center_vec: np.ndarray, out_vecs: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Negative-sampling loss and exact gradients for one training example.

    `out_vecs` stacks the context row (label 1) and negative rows (label 0).
    Returns (loss, grad wrt center_vec, grad wrt out_vecs).
    """
    scores = out_vecs @ center_vec
    # -log sigma(s) for positives, -log sigma(-s) for negatives, stably:
    loss = float(np.sum(np.logaddexp(0.0, np.where(labels == 1, -scores, scores))))
    factor = _sigmoid(scores) - labels
    grad_center = factor @ out_vecs
    grad_out = np.outer(factor, center_vec)
    return loss, grad_center, grad_out


class EmbeddingTable:
    """Immutable node-key -> vector lookup with cosine-similarity queries."""

    def __init__(self, keys: Sequence[str], vectors: np.ndarray):
        if len(keys) != vectors.shape[0]:
            raise ValueError("keys and vectors disagree on vocabulary size")
        self.keys: tuple[str, ...] = tuple(keys)
        self.vectors = vectors
        self.row: dict[str, int] = {k: i for i, k in enumerate(self.keys)}
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        self.unit = vectors / norms
        self._lang_texts: dict[str, dict[str, int]] = {}
        self._concept_rows: Optional[list[int]] = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __contains__(self, key: str) -> bool:
        return key in self.row

    def __len__(self) -> int:
        return len(self.keys)

    def vector(self, key: str) -> np.ndarray:
        return self.vectors[self.row[key]]

    def concept_rows(self) -> list[int]:
        if self._concept_rows is None:
            self._concept_rows = [
                i for i, k in enumerate(self.keys) if not is_ngram_key(k)
            ]
        return self._concept_rows

    def language_texts(self, iso: str) -> dict[str, int]:
        """Marked ngram text -> row, for one language's ngram nodes."""
        cached = self._lang_texts.get(iso)
        if cached is None:
            prefix = iso + ":"
            cached = {
                k[len(prefix):]: i
                for i, k in enumerate(self.keys)
                if k.startswith(prefix) and is_ngram_key(k)
            }
            self._lang_texts[iso] = cached
        return cached

    def save(self, path: Path | str) -> None:
        path = Path(path)
        with path.open("w", encoding="utf-8") as fh:
            fh.write(f"{len(self.keys)} {self.dim}\n")
            for key, vec in zip(self.keys, self.vectors):
                fh.write(key + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")

    @classmethod
    def load(cls, path: Path | str) -> "EmbeddingTable":
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            header = fh.readline().split()
            count, dim = int(header[0]), int(header[1])
            keys = []
            vectors = np.empty((count, dim), dtype=np.float64)
            for i in range(count):
                parts = fh.readline().rstrip("\n").split(" ")
                keys.append(parts[0])
                vectors[i] = [float(x) for x in parts[1:]]
        return cls(keys, vectors)


def train_skipgram(
    walks: Sequence[Sequence[str]], cfg: TrainConfig = TrainConfig()
) -> EmbeddingTable:
    """Train node embeddings on walk sequences; deterministic for a fixed seed.

    All context pairs of one center position are updated together (gradients
    taken at the pre-update parameters), which keeps the arithmetic identical
    across runs while letting numpy do the heavy lifting.
    """
    vocab = sorted({node for walk in walks for node in walk})
    if not vocab:
        raise ValueError("cannot train on an empty vocabulary")
    row = {k: i for i, k in enumerate(vocab)}
    n_vocab = len(vocab)

    seqs = [np.array([row[n] for n in walk], dtype=np.int64) for walk in walks if walk]
    counts = np.zeros(n_vocab, dtype=np.float64)
    for seq in seqs:
        np.add.at(counts, seq, 1.0)
    noise = counts ** 0.75
    noise_cum = np.cumsum(noise / noise.sum())

    pairs_per_epoch = 0
    for seq in seqs:
        n = len(seq)
        for i in range(n):
            pairs_per_epoch += min(n, i + cfg.window + 1) - max(0, i - cfg.window) - 1
    if pairs_per_epoch == 0:
        raise ValueError("walks contain no context pairs; increase walk length")
    total_pairs = pairs_per_epoch * cfg.epochs

    rng = np.random.default_rng(cfg.seed)
    w_in = (rng.random((n_vocab, cfg.dim)) - 0.5) / cfg.dim
    w_out = np.zeros((n_vocab, cfg.dim), dtype=np.float64)

    lr0 = cfg.learning_rate
    min_lr = lr0 * 1e-4
    done = 0
    for _ in range(cfg.epochs):
        draws = rng.random(pairs_per_epoch * cfg.negatives)
        neg_ids = np.minimum(np.searchsorted(noise_cum, draws), n_vocab - 1)
        ptr = 0
        for seq in seqs:
            n = len(seq)
            for i in range(n):
                lo = max(0, i - cfg.window)
                hi = min(n, i + cfg.window + 1)
                ctx = np.concatenate((seq[lo:i], seq[i + 1 : hi]))
                n_ctx = len(ctx)
                if n_ctx == 0:
                    continue
                negs = neg_ids[ptr : ptr + n_ctx * cfg.negatives].reshape(
                    n_ctx, cfg.negatives
                )
                ptr += n_ctx * cfg.negatives
                lr = max(lr0 * (1.0 - done / total_pairs), min_lr)
                done += n_ctx

                center = seq[i]
                rows = np.concatenate((ctx, negs.ravel()))
                out = w_out[rows]
                v = w_in[center]
                scores = out @ v
                np.clip(scores, -60.0, 60.0, out=scores)
                factor = 1.0 / (1.0 + np.exp(-scores))
                factor[:n_ctx] -= 1.0
                # a negative drawn equal to its own context is skipped
                factor[n_ctx:][(negs == ctx[:, None]).ravel()] = 0.0
                factor *= lr
                grad_v = factor @ out
                np.add.at(w_out, rows, -np.outer(factor, v))
                w_in[center] = v - grad_v
    return EmbeddingTable(vocab, w_in)


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


def nearest_neighbors(
    table: EmbeddingTable,
    query: str,
    k: int,
    vocab_filter: Optional[str] = None,
) -> list[tuple[str, float]]:
    """Top-k nodes by cosine, query excluded; ties break lexicographically.

    `vocab_filter` of "concepts" restricts candidates to concept nodes, a
    language code restricts to that language's ngram nodes, None allows all.
    """
    if query not in table.row:
        raise KeyError(f"query {query!r} not in vocabulary")
    qrow = table.row[query]
    if vocab_filter is None:
        cand = [i for i in range(len(table.keys)) if i != qrow]
    elif vocab_filter == "concepts":
        cand = [i for i in table.concept_rows() if i != qrow]
    else:
        prefix = vocab_filter + ":"
        cand = [
            i for i, key in enumerate(table.keys)
            if key.startswith(prefix) and i != qrow
        ]
    if not cand:
        raise ValueError(f"no candidates under filter {vocab_filter!r}")
    sims = table.unit[cand] @ table.unit[qrow]
    ranked = sorted(zip(cand, sims), key=lambda t: (-t[1], table.keys[t[0]]))
    return [(table.keys[i], float(s)) for i, s in ranked[:k]]


def embed_verse(
    table: EmbeddingTable, corpus: Corpus, language: str, verse: str
) -> Optional[np.ndarray]:
    """Mean vector of the verse's vocabulary units; None when nothing matches.

    For the pivot language, units are the concept nodes whose lemma occurs as
    a token of the verse; for any other language, units are the language's
    vocabulary ngrams occurring as substrings of the verse's marked tokens.
    """
    tokens = corpus.verse_tokens(language, verse)
    if not tokens:
        return None
    rows: set[int] = set()
    if language == corpus.pivot:
        for tok in tokens:
            r = table.row.get(unmark(tok))
            if r is not None and not is_ngram_key(table.keys[r]):
                rows.add(r)
    else:
        texts = table.language_texts(language)
        if texts:
            for tok in set(tokens):
                n = len(tok)
                for length in range(1, n + 1):
                    for start in range(0, n - length + 1):
                        r = texts.get(tok[start : start + length])
                        if r is not None:
                            rows.add(r)
    if not rows:
        return None
    return table.vectors[sorted(rows)].mean(axis=0)
