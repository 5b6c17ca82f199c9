"""Evaluation protocols: gold-colexification recall, roundtrip translation,
verse retrieval, and zero-shot verse classification.

The classifier is a from-scratch multinomial logistic regression trained by
full-batch gradient descent; everything here is pure numpy over immutable
inputs, so per-language evaluations are trivially parallel and merge in
deterministic language order.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .corpus import Corpus
from .embed import EmbeddingTable, embed_verse, nearest_neighbors
from .graphs import ColexNet

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Gold colexification recall
# ---------------------------------------------------------------------------


@dataclass
class GoldColexSet:
    """Symmetric gold-standard colexification graph over English glosses."""

    neighbors: dict[str, set[str]] = field(default_factory=dict)

    @property
    def concepts(self) -> set[str]:
        return set(self.neighbors)

    def add(self, a: str, b: str) -> None:
        self.neighbors.setdefault(a, set()).add(b)
        self.neighbors.setdefault(b, set()).add(a)


def load_gold_colex(path: Path | str) -> GoldColexSet:
    """TSV `gloss1<TAB>gloss2`; lowercased, multiword glosses skipped."""
    gold = GoldColexSet()
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected `gloss1<TAB>gloss2`")
            a, b = parts[0].strip().lower(), parts[1].strip().lower()
            if " " in a or " " in b or not a or not b:
                continue
            gold.add(a, b)
    return gold


@dataclass(frozen=True)
class ClicsReport:
    common_count: int
    micro_recall: float
    macro_recall: float
    aw_colex: float


def eval_clics(net: ColexNet, gold: GoldColexSet) -> ClicsReport:
    """Recall of gold colexifications among the net's edges.

    Start concepts are the gold/net-common concepts; gold neighbors are taken
    as-is, net neighbors exclude self-loops.
    """
    common = sorted(gold.concepts & net.nodes)
    if not common:
        raise ValueError("no common concepts between gold set and graph")
    hits = 0
    total = 0
    per_concept = []
    wrong = []
    for s in common:
        t_s = gold.neighbors[s]
        c_s = net.neighbors(s) - {s}
        inter = len(t_s & c_s)
        hits += inter
        total += len(t_s)
        per_concept.append(inter / len(t_s))
        wrong.append(len(c_s - t_s))
    return ClicsReport(
        common_count=len(common),
        micro_recall=hits / total,
        macro_recall=sum(per_concept) / len(common),
        aw_colex=sum(wrong) / len(common),
    )


# ---------------------------------------------------------------------------
# Roundtrip translation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RoundtripResult:
    success: dict[int, bool]
    path: tuple[str, ...]
    failed_hop: Optional[int] = None  # hop index whose filtered vocabulary was empty


def roundtrip_trial(
    table: EmbeddingTable,
    w0: str,
    langs: Sequence[str],
    ks: Sequence[int] = (1, 5, 10),
) -> RoundtripResult:
    """Hop w0 through the intermediate languages and back to the concepts.

    Each hop takes the nearest neighbor restricted to the next language's
    ngram vocabulary; the final hop ranks concept nodes and succeeds at k if
    w0 is among the top k.
    """
    if w0 not in table:
        raise KeyError(f"start word {w0!r} not in vocabulary")
    if len(set(langs)) != len(langs):
        raise ValueError("intermediate languages must be distinct")
    for l in langs:
        if w0.startswith(l + ":"):
            raise ValueError("intermediate languages must differ from the source")
    cur = w0
    path = [w0]
    for hop, l in enumerate(langs, start=1):
        try:
            nn = nearest_neighbors(table, cur, 1, vocab_filter=l)
        except ValueError:
            return RoundtripResult(
                success={k: False for k in ks}, path=tuple(path), failed_hop=hop
            )
        cur = nn[0][0]
        path.append(cur)
    try:
        final = nearest_neighbors(table, cur, max(ks), vocab_filter="concepts")
    except ValueError:
        return RoundtripResult(
            success={k: False for k in ks}, path=tuple(path), failed_hop=len(langs) + 1
        )
    ranked = [key for key, _ in final]
    path.append(ranked[0] if ranked else "")
    return RoundtripResult(
        success={k: w0 in ranked[:k] for k in ks}, path=tuple(path)
    )


def roundtrip_eval(
    table: EmbeddingTable,
    languages: Sequence[str],
    words: Optional[Sequence[str]] = None,
    trials: int = 10,
    intermediates: int = 3,
    ks: Sequence[int] = (1, 5, 10),
    seed: int = 1,
) -> dict:
    """Average roundtrip success over seeded trials of random language triples.

    Language tuples are sampled without repetition across trials (falling
    back to fewer trials when the pool is exhausted). `words` defaults to
    every concept node in the table.
    """
    langs = sorted(set(languages))
    if len(langs) < intermediates:
        raise ValueError(
            f"need at least {intermediates} target languages, got {len(langs)}"
        )
    if words is None:
        words = [table.keys[i] for i in table.concept_rows()]
    rng = random.Random(seed)
    seen: set[tuple[str, ...]] = set()
    chosen: list[tuple[str, ...]] = []
    attempts = 0
    while len(chosen) < trials and attempts < trials * 50:
        tup = tuple(rng.sample(langs, intermediates))
        attempts += 1
        if tup not in seen:
            seen.add(tup)
            chosen.append(tup)
    accs = {k: [] for k in ks}
    failed = 0
    per_trial = []
    for tup in chosen:
        succ = {k: 0 for k in ks}
        for w in words:
            res = roundtrip_trial(table, w, tup, ks)
            if res.failed_hop is not None:
                failed += 1
            for k in ks:
                succ[k] += res.success[k]
        per_trial.append(
            {"langs": list(tup), **{f"top{k}": succ[k] / len(words) for k in ks}}
        )
        for k in ks:
            accs[k].append(succ[k] / len(words))
    return {
        "trials": len(chosen),
        "words": len(words),
        "failed_hops": failed,
        **{f"top{k}": sum(accs[k]) / len(accs[k]) for k in ks},
        "per_trial": per_trial,
    }


# ---------------------------------------------------------------------------
# Verse retrieval
# ---------------------------------------------------------------------------


def eval_retrieval(
    table: EmbeddingTable,
    corpus: Corpus,
    query_lang: str,
    target_langs: Sequence[str],
    verse_ids: Sequence[str],
    ks: Sequence[int] = (1, 5, 10),
    min_coverage: float = 400 / 500,
) -> dict:
    """Top-k accuracy of cosine verse retrieval, verse- then language-averaged.

    Target languages covering less than `min_coverage` of the query verses
    are excluded. Query verses without an embedding are skipped; query verses
    whose correct target verse is missing or unembeddable count as failures.
    """
    verse_ids = list(verse_ids)
    if not verse_ids:
        raise ValueError("no verses to retrieve")
    queries: dict[str, np.ndarray] = {}
    skipped_queries = 0
    for vid in verse_ids:
        vec = embed_verse(table, corpus, query_lang, vid)
        if vec is None:
            skipped_queries += 1
        else:
            queries[vid] = vec
    if not queries:
        raise ValueError(f"no embeddable query verses in {query_lang!r}")

    eligible: list[str] = []
    excluded: list[str] = []
    for l in sorted(set(target_langs)):
        have = (
            sum(1 for vid in verse_ids if corpus.verse_tokens(l, vid))
            if l in corpus.tokens
            else 0
        )
        (eligible if have / len(verse_ids) >= min_coverage else excluded).append(l)
    if not eligible:
        raise ValueError("no target language meets the coverage threshold")

    per_language: dict[str, dict] = {}
    for l in eligible:
        tgt_ids = []
        tgt_vecs = []
        missing_targets = 0
        for vid in verse_ids:
            vec = embed_verse(table, corpus, l, vid)
            if vec is None:
                missing_targets += 1
            else:
                tgt_ids.append(vid)
                tgt_vecs.append(vec)
        hits = {k: 0 for k in ks}
        n_queries = 0
        if tgt_ids:
            mat = np.vstack(tgt_vecs)
            norms = np.linalg.norm(mat, axis=1)
            norms[norms == 0] = 1.0
            mat = mat / norms[:, None]
            pos = {vid: i for i, vid in enumerate(tgt_ids)}
            for vid, qvec in queries.items():
                n_queries += 1
                if vid not in pos:
                    continue  # correct verse unembeddable: counted as a miss
                qn = np.linalg.norm(qvec)
                sims = mat @ (qvec / qn if qn else qvec)
                rank = int(np.sum(sims > sims[pos[vid]]))
                for k in ks:
                    if rank < k:
                        hits[k] += 1
        else:
            n_queries = len(queries)
        per_language[l] = {
            **{f"top{k}": hits[k] / n_queries for k in ks},
            "queries": n_queries,
            "missing_targets": missing_targets,
        }
    return {
        "query_lang": query_lang,
        "skipped_queries": skipped_queries,
        "excluded_languages": excluded,
        "per_language": per_language,
        "average": {
            f"top{k}": sum(per_language[l][f"top{k}"] for l in eligible) / len(eligible)
            for k in ks
        },
    }


# ---------------------------------------------------------------------------
# Verse classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifierConfig:
    epochs: int = 500
    learning_rate: float = 0.1
    l2: float = 1e-4
    seed: int = 1


@dataclass
class Classifier:
    """Multinomial logistic regression; weights are (n_classes, dim + 1)."""

    weights: np.ndarray
    classes: tuple[str, ...]

    def probabilities(self, X: np.ndarray) -> np.ndarray:
        Xb = np.hstack([X, np.ones((X.shape[0], 1))])
        logits = Xb @ self.weights.T
        logits -= logits.max(axis=1, keepdims=True)
        ex = np.exp(logits)
        return ex / ex.sum(axis=1, keepdims=True)

    def predict(self, X: np.ndarray) -> list[str]:
        return [self.classes[i] for i in self.probabilities(X).argmax(axis=1)]


def softmax_cross_entropy(
    W: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray]:
    """Mean cross-entropy with L2 penalty (bias column unpenalized) and gradient.

    `X` already carries the bias column; `y` holds class indices.
    """
    n = X.shape[0]
    logits = X @ W.T
    logits -= logits.max(axis=1, keepdims=True)
    ex = np.exp(logits)
    probs = ex / ex.sum(axis=1, keepdims=True)
    nll = -np.log(np.maximum(probs[np.arange(n), y], 1e-300)).mean()
    penalty = 0.5 * l2 * float(np.sum(W[:, :-1] ** 2))
    grad_probs = probs.copy()
    grad_probs[np.arange(n), y] -= 1.0
    grad = grad_probs.T @ X / n
    grad[:, :-1] += l2 * W[:, :-1]
    return nll + penalty, grad


def train_classifier(
    X: np.ndarray,
    y: Sequence[str],
    cfg: ClassifierConfig = ClassifierConfig(),
    classes: Optional[Sequence[str]] = None,
) -> Classifier:
    """Fit by full-batch gradient descent from zero weights.

    Zero epochs therefore yield uniform class probabilities. Single-class
    input trains but is flagged with a warning.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] == 0 or X.shape[0] != len(y):
        raise ValueError("X and y must be non-empty and aligned")
    if classes is None:
        classes = sorted(set(y))
    classes = tuple(classes)
    if len(set(y)) < 2:
        logger.warning("training data contains a single class; classifier degenerate")
    class_idx = {c: i for i, c in enumerate(classes)}
    try:
        yi = np.array([class_idx[label] for label in y], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"label {exc.args[0]!r} not in class set {classes}") from exc
    Xb = np.hstack([X, np.ones((X.shape[0], 1))])
    W = np.zeros((len(classes), Xb.shape[1]), dtype=np.float64)
    for _ in range(cfg.epochs):
        _, grad = softmax_cross_entropy(W, Xb, yi, cfg.l2)
        W -= cfg.learning_rate * grad
    return Classifier(weights=W, classes=classes)


def macro_f1(
    y_true: Sequence[str], y_pred: Sequence[str], classes: Sequence[str]
) -> float:
    """Unweighted mean of per-class F1; a class with no P+R mass scores 0."""
    if len(y_true) != len(y_pred):
        raise ValueError("y_true and y_pred must be aligned")
    scores = []
    for c in classes:
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == c and p == c)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != c and p == c)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == c and p != c)
        denom = 2 * tp + fp + fn
        scores.append(2 * tp / denom if denom else 0.0)
    return sum(scores) / len(scores)


def load_split(path: Path | str) -> dict[str, str]:
    """TSV `VerseId<TAB>label`."""
    path = Path(path)
    out: dict[str, str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected `VerseId<TAB>label`")
            out[parts[0]] = parts[1]
    return out


def _embed_split(
    table: EmbeddingTable, corpus: Corpus, language: str, split: dict[str, str]
) -> tuple[np.ndarray, list[str], int]:
    vecs = []
    labels = []
    dropped = 0
    for vid in sorted(split):
        vec = embed_verse(table, corpus, language, vid)
        if vec is None:
            dropped += 1
        else:
            vecs.append(vec)
            labels.append(split[vid])
    X = np.vstack(vecs) if vecs else np.empty((0, table.dim))
    return X, labels, dropped


def eval_classification(
    table: EmbeddingTable,
    corpus: Corpus,
    train_lang: str,
    target_langs: Sequence[str],
    train_split: dict[str, str],
    test_splits: dict[str, dict[str, str]],
    cfg: ClassifierConfig = ClassifierConfig(),
) -> dict:
    """Zero-shot transfer: train on one language's split, test on the others.

    Verses without an embedding are excluded, with counts reported. Returns
    per-language macro F1 plus the language average.
    """
    X_train, y_train, dropped_train = _embed_split(table, corpus, train_lang, train_split)
    if X_train.shape[0] == 0:
        raise ValueError(f"no embeddable training verses for {train_lang!r}")
    classes = tuple(sorted(set(train_split.values())))
    clf = train_classifier(X_train, y_train, cfg, classes=classes)
    per_language: dict[str, dict] = {}
    scores = []
    for l in sorted(set(target_langs)):
        split = test_splits.get(l)
        if split is None:
            raise ValueError(f"missing test split for language {l!r}")
        X, y, dropped = _embed_split(table, corpus, l, split)
        if X.shape[0] == 0:
            per_language[l] = {"macro_f1": 0.0, "evaluated": 0, "dropped": dropped}
            scores.append(0.0)
            continue
        pred = clf.predict(X)
        f1 = macro_f1(y, pred, classes)
        per_language[l] = {"macro_f1": f1, "evaluated": len(y), "dropped": dropped}
        scores.append(f1)
    return {
        "train_lang": train_lang,
        "classes": list(classes),
        "dropped_train": dropped_train,
        "per_language": per_language,
        "average_macro_f1": sum(scores) / len(scores),
    }
