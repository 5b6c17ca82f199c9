"""Chi-squared association and the greedy concept/ngram alignment passes.

The forward pass starts from a concept's verse set and greedily selects the
target-language ngrams whose occurrences correlate best with it; the backward
pass reverses direction, selecting concepts that correlate with the verses of
the chosen ngrams. A backward pass returning more than one concept signals a
colexification in that language.

Both passes score candidates with Pearson's chi-squared on the 2x2 verse
contingency table and run at most `max_iters` rounds against a shrinking
residual of still-uncovered target verses, stopping once cumulative coverage
reaches `alpha`.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Optional

from .corpus import ConceptPool, OccurrenceIndex, VerseSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FPConfig:
    """Greedy search knobs: coverage threshold and round cap."""

    alpha: float = 0.9
    max_iters: int = 3

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


class Ngram(NamedTuple):
    language: str
    text: str

    @property
    def key(self) -> str:
        """Node-key rendering, e.g. ``otq:$ndöhi$``."""
        return f"{self.language}:{self.text}"


class ChiSquare(NamedTuple):
    score: float
    direction: int  # sign(ad - bc); 0 when any margin is empty


def chi_square(a: int, b: int, c: int, d: int) -> ChiSquare:
    """Pearson chi-squared for the 2x2 table [[a, b], [c, d]].

    Returns 0 with direction 0 when any row or column margin is empty.
    """
    if min(a, b, c, d) < 0:
        raise ValueError("cell counts must be non-negative")
    n = a + b + c + d
    if n <= 0:
        raise ValueError("table must contain at least one observation")
    r1, r2, c1, c2 = a + b, c + d, a + c, b + d
    if 0 in (r1, r2, c1, c2):
        return ChiSquare(0.0, 0)
    det = a * d - b * c
    score = n * det * det / (r1 * r2 * c1 * c2)
    direction = (det > 0) - (det < 0)
    return ChiSquare(score, direction)


def coverage(selected: VerseSet, target: VerseSet) -> float:
    """Fraction of `target` covered by `selected`."""
    t = target.cardinality()
    if t == 0:
        raise ValueError("coverage target must be non-empty")
    return (selected & target).cardinality() / t


def _greedy_select(
    candidates: dict[str, VerseSet],
    target: VerseSet,
    doc_count: int,
    cfg: FPConfig,
) -> list[tuple[str, float]]:
    """Shared residual-greedy core of the forward and backward passes.

    Each round scores every candidate against the residual target (a =
    overlap, b = residual remainder, c = candidate remainder, d = rest of the
    N aligned verses), keeps the positively associated maximum, and subtracts
    its verses from the residual. Ties break toward larger overlap, then
    longer candidate string, then lexicographically smaller.
    """
    if not target:
        return []
    picked: list[tuple[str, float]] = []
    covered = VerseSet(target.width)
    residual = target
    for _ in range(cfg.max_iters):
        r = residual.cardinality()
        best_key: Optional[tuple] = None
        best: Optional[tuple[str, float]] = None
        for name, vs in candidates.items():
            a = (vs & residual).cardinality()
            if a == 0:
                continue
            v = vs.cardinality()
            b = r - a
            c = v - a
            d = doc_count - a - b - c
            score, direction = chi_square(a, b, c, d)
            if direction <= 0:
                continue
            key = (-score, -a, -len(name), name)
            if best_key is None or key < best_key:
                best_key = key
                best = (name, score)
        if best is None:
            break
        picked.append(best)
        chosen = candidates[best[0]]
        covered = covered | chosen
        if coverage(covered, target) >= cfg.alpha:
            break
        residual = residual - chosen
    return picked


def _forward_scored(
    f: str,
    l: str,
    pool: ConceptPool,
    index: OccurrenceIndex,
    cfg: FPConfig,
) -> list[tuple[Ngram, float]]:
    if f not in pool:
        raise KeyError(f"concept {f!r} not in pool")
    target = pool.verse_sets[f] & index.aligned
    picked = _greedy_select(index.map, target, index.doc_count, cfg)
    return [(Ngram(l, text), score) for text, score in picked]


def forward_pass(
    f: str,
    l: str,
    pool: ConceptPool,
    index: OccurrenceIndex,
    cfg: FPConfig = FPConfig(),
) -> list[Ngram]:
    """Select the language's ngrams most associated with concept `f`.

    Selection order; empty when no candidate is positively associated in
    round one.
    """
    return [ng for ng, _ in _forward_scored(f, l, pool, index, cfg)]


def _backward_scored(
    T: list[Ngram],
    l: str,
    pool: ConceptPool,
    index: OccurrenceIndex,
    cfg: FPConfig,
) -> list[tuple[str, float]]:
    if not T:
        raise ValueError("backward pass requires a non-empty ngram list")
    v_t = VerseSet(index.aligned.width)
    for ng in T:
        v_t = v_t | index.map[ng.text]
    candidates = {
        lemma: pool.verse_sets[lemma] & index.aligned for lemma in pool.sorted()
    }
    return _greedy_select(candidates, v_t, index.doc_count, cfg)


def backward_pass(
    T: list[Ngram],
    l: str,
    pool: ConceptPool,
    index: OccurrenceIndex,
    cfg: FPConfig = FPConfig(),
) -> list[str]:
    """Select pool concepts most associated with the union of T's verse sets."""
    return [c for c, _ in _backward_scored(T, l, pool, index, cfg)]


@dataclass
class PatternRecord:
    """One (language, focal concept) alignment result."""

    language: str
    focal: str
    ngrams: list[str]                      # selection order, marked texts
    concepts: list[str]                    # selection order
    ngram_scores: dict[str, float] = field(default_factory=dict)
    concept_scores: dict[str, float] = field(default_factory=dict)


def extract_patterns(
    pool: ConceptPool,
    languages: Iterable[str],
    indexes: dict[str, OccurrenceIndex],
    cfg: FPConfig = FPConfig(),
    workers: int = 1,
) -> list[PatternRecord]:
    """Run FP then BP for every (language, concept) pair, skipping empty FPs.

    Per-pair failures are logged and skipped. Output is sorted by (language,
    concept) regardless of scheduling, so parallel runs are reproducible.
    """
    langs = sorted(set(languages))
    for l in langs:
        if l not in indexes:
            raise KeyError(f"no occurrence index for language {l!r}")
    records: list[PatternRecord] = []
    if workers > 1 and len(langs) > 1:
        try:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                futures = [
                    ex.submit(_patterns_for_language, pool, l, indexes[l], cfg)
                    for l in langs
                ]
                for fut in futures:
                    records.extend(fut.result())
        except (OSError, RuntimeError) as exc:
            # sandboxes without working process pools fall back to serial;
            # results are identical either way
            logger.warning("worker pool unavailable (%s); extracting serially", exc)
            records = []
            for l in langs:
                records.extend(_patterns_for_language(pool, l, indexes[l], cfg))
    else:
        for l in langs:
            records.extend(_patterns_for_language(pool, l, indexes[l], cfg))
    records.sort(key=lambda r: (r.language, r.focal))
    return records


def _patterns_for_language(
    pool: ConceptPool, l: str, index: OccurrenceIndex, cfg: FPConfig
) -> list[PatternRecord]:
    out: list[PatternRecord] = []
    for f in pool.sorted():
        try:
            fp = _forward_scored(f, l, pool, index, cfg)
            if not fp:
                continue
            T = [ng for ng, _ in fp]
            bp = _backward_scored(T, l, pool, index, cfg)
            out.append(
                PatternRecord(
                    language=l,
                    focal=f,
                    ngrams=[ng.text for ng in T],
                    concepts=[c for c, _ in bp],
                    ngram_scores={ng.text: s for ng, s in fp},
                    concept_scores={c: s for c, s in bp},
                )
            )
        except Exception:
            logger.exception("pattern extraction failed for (%s, %s); skipped", l, f)
    return out


# ---------------------------------------------------------------------------
# JSONL serialization (fixed field order, 6-decimal floats)
# ---------------------------------------------------------------------------


def _score_obj(scores: dict[str, float], keys: list[str]) -> str:
    inner = ",".join(f"{json.dumps(k)}:{scores[k]:.6f}" for k in keys)
    return "{" + inner + "}"


def pattern_to_json(rec: PatternRecord) -> str:
    compact = {"separators": (",", ":")}
    return (
        "{"
        f'"lang":{json.dumps(rec.language)},'
        f'"focal":{json.dumps(rec.focal)},'
        f'"ngrams":{json.dumps(rec.ngrams, **compact)},'
        f'"concepts":{json.dumps(rec.concepts, **compact)},'
        '"chi2":{'
        f'"ngrams":{_score_obj(rec.ngram_scores, rec.ngrams)},'
        f'"concepts":{_score_obj(rec.concept_scores, rec.concepts)}'
        "}}"
    )


def dump_patterns(records: Iterable[PatternRecord], path: Path | str) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(pattern_to_json(rec) + "\n")


def load_patterns(path: Path | str) -> list[PatternRecord]:
    path = Path(path)
    out: list[PatternRecord] = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            out.append(
                PatternRecord(
                    language=obj["lang"],
                    focal=obj["focal"],
                    ngrams=list(obj["ngrams"]),
                    concepts=list(obj["concepts"]),
                    ngram_scores=dict(obj["chi2"]["ngrams"]),
                    concept_scores=dict(obj["chi2"]["concepts"]),
                )
            )
    return out
