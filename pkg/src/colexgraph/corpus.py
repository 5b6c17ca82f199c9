"""Verse-aligned parallel corpus loading and exhaustive ngram indexing.

A corpus directory holds one UTF-8 file per language, named ``<iso>.txt``,
with lines ``VerseId<TAB>raw text``. All languages are aligned against a
pivot language (default ``eng``): verses absent from the pivot are dropped,
and every verse is addressed by its ordinal in the sorted pivot verse list.

Tokens are lowercased, stripped of edge punctuation and wrapped in ``$``
boundary markers (``Hand`` becomes ``$hand$``), so ngrams can encode
word-initial and word-final position.
"""

from __future__ import annotations

import json
import logging
import re
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

logger = logging.getLogger(__name__)

MARKER = "$"

_LANG_RE = re.compile(r"^[a-z][a-z0-9]{2}$")

# Stripped from token edges before marker wrapping; interior characters are
# kept verbatim except for the marker itself, which would corrupt ngram keys.
_EDGE_PUNCT = string.punctuation + "«»“”„‘’‹›¿¡…·—–、。，；：！？（）「」『』"


class CorpusFormatError(ValueError):
    """Raised when a corpus, lemma-map or cache file violates the format."""


def is_language_id(code: str) -> bool:
    """3 lowercase ASCII chars, letter-initial (digits allowed for synthetic languages)."""
    return bool(_LANG_RE.match(code))


# ---------------------------------------------------------------------------
# VerseSet: fixed-width bitset over the global verse ordering
# ---------------------------------------------------------------------------


class VerseSet:
    """Set of verses as a fixed-width bitset indexed by global verse ordinal.

    Backed by a single Python int, which makes intersection, union and
    popcount exact and fast even for corpora with tens of thousands of
    verses.
    """

    __slots__ = ("bits", "width")

    def __init__(self, width: int, bits: int = 0):
        if width < 0:
            raise ValueError("width must be >= 0")
        self.width = width
        self.bits = bits & ((1 << width) - 1) if width else 0

    @classmethod
    def from_ordinals(cls, width: int, ordinals: Iterable[int]) -> "VerseSet":
        bits = 0
        for i in ordinals:
            if not 0 <= i < width:
                raise ValueError(f"ordinal {i} out of range [0, {width})")
            bits |= 1 << i
        return cls(width, bits)

    @classmethod
    def full(cls, width: int) -> "VerseSet":
        return cls(width, (1 << width) - 1)

    def _check(self, other: "VerseSet") -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} != {other.width}")

    def __and__(self, other: "VerseSet") -> "VerseSet":
        self._check(other)
        return VerseSet(self.width, self.bits & other.bits)

    def __or__(self, other: "VerseSet") -> "VerseSet":
        self._check(other)
        return VerseSet(self.width, self.bits | other.bits)

    def __sub__(self, other: "VerseSet") -> "VerseSet":
        self._check(other)
        return VerseSet(self.width, self.bits & ~other.bits)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.cardinality()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, ordinal: int) -> bool:
        return 0 <= ordinal < self.width and bool(self.bits >> ordinal & 1)

    def issubset(self, other: "VerseSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def ordinals(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VerseSet)
            and self.width == other.width
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.width, self.bits))

    def __repr__(self) -> str:
        return f"VerseSet(width={self.width}, n={self.cardinality()})"


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


@dataclass
class Corpus:
    """Verse-aligned multilingual corpus keyed by the pivot's verse ordering."""

    pivot: str
    verse_ids: tuple[str, ...]                      # global ordering (sorted pivot ids)
    tokens: dict[str, dict[str, tuple[str, ...]]]   # lang -> verse id -> marked tokens
    ordinal: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.ordinal:
            self.ordinal = {vid: i for i, vid in enumerate(self.verse_ids)}

    @property
    def languages(self) -> tuple[str, ...]:
        return tuple(sorted(self.tokens))

    @property
    def n_verses(self) -> int:
        return len(self.verse_ids)

    def aligned_verses(self, language: str) -> VerseSet:
        """Verses shared between the pivot and `language`, as a global-width set."""
        if language not in self.tokens:
            raise KeyError(f"language {language!r} not in corpus")
        return VerseSet.from_ordinals(
            self.n_verses, (self.ordinal[v] for v in self.tokens[language])
        )

    def verse_tokens(self, language: str, verse_id: str) -> tuple[str, ...]:
        return self.tokens[language].get(verse_id, ())


def normalize_token(raw: str) -> str:
    """Lowercase, strip edge punctuation, drop marker chars; '' if nothing remains."""
    tok = raw.lower().replace(MARKER, "").strip(_EDGE_PUNCT)
    return tok


def mark(token: str) -> str:
    return f"{MARKER}{token}{MARKER}"


def unmark(marked: str) -> str:
    return marked.strip(MARKER)


def tokenize_line(text: str) -> tuple[str, ...]:
    out = []
    for raw in text.split():
        tok = normalize_token(raw)
        if tok:
            out.append(mark(tok))
    return tuple(out)


def load_lemma_map(path: Path | str) -> dict[str, str]:
    """TSV `surface<TAB>lemma`; surfaces are normalized like corpus tokens."""
    mapping: dict[str, str] = {}
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusFormatError(
                    f"{path}:{lineno}: expected `surface<TAB>lemma`, got {line!r}"
                )
            surface = normalize_token(parts[0])
            lemma = normalize_token(parts[1])
            if surface and lemma:
                mapping[surface] = lemma
    return mapping


def _read_language_file(path: Path) -> dict[str, str]:
    verses: dict[str, str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "\t" not in line:
                raise CorpusFormatError(
                    f"{path}:{lineno}: expected `VerseId<TAB>text`, got {line!r}"
                )
            vid, text = line.split("\t", 1)
            if not vid:
                raise CorpusFormatError(f"{path}:{lineno}: empty VerseId")
            if vid in verses:
                raise CorpusFormatError(f"{path}:{lineno}: duplicate VerseId {vid!r}")
            verses[vid] = text
    return verses


def load_corpus(
    directory: Path | str,
    pivot: str = "eng",
    lemma_map: Optional[Path | str] = None,
) -> Corpus:
    """Load every `<iso>.txt` in `directory`, aligned by intersection with the pivot.

    Pivot tokens are lemma-mapped when a mapping exists for their normalized
    surface form and kept verbatim otherwise.
    """
    directory = Path(directory)
    files = sorted(directory.glob("*.txt"))
    if not files:
        raise CorpusFormatError(f"no <iso>.txt corpus files in {directory}")
    langs: dict[str, Path] = {}
    for f in files:
        code = f.stem
        if not is_language_id(code):
            raise CorpusFormatError(
                f"{f}: file stem {code!r} is not a 3-character language code"
            )
        langs[code] = f
    if pivot not in langs:
        raise CorpusFormatError(f"pivot language file {pivot}.txt missing in {directory}")

    mapping = load_lemma_map(lemma_map) if lemma_map else {}

    pivot_raw = _read_language_file(langs[pivot])
    verse_ids = tuple(sorted(pivot_raw))
    keep = set(verse_ids)

    tokens: dict[str, dict[str, tuple[str, ...]]] = {}
    for code, path in sorted(langs.items()):
        raw = pivot_raw if code == pivot else _read_language_file(path)
        per_verse: dict[str, tuple[str, ...]] = {}
        for vid in sorted(raw):
            if vid not in keep:
                continue
            toks = tokenize_line(raw[vid])
            if code == pivot and mapping:
                toks = tuple(mark(mapping.get(unmark(t), unmark(t))) for t in toks)
            per_verse[vid] = toks
        tokens[code] = per_verse

    return Corpus(pivot=pivot, verse_ids=verse_ids, tokens=tokens)


# ---------------------------------------------------------------------------
# Ngram enumeration
# ---------------------------------------------------------------------------


def enumerate_ngrams(token: str, max_len: Optional[int] = None) -> set[str]:
    """All contiguous substrings of a marked token with >= 1 non-marker char.

    `max_len` bounds the raw substring length (marker characters included);
    `None` means unbounded.
    """
    n = len(token)
    if n <= 2:
        # "$$" or shorter: no inner characters
        return set()
    out: set[str] = set()
    limit = n if max_len is None else min(max_len, n)
    for length in range(1, limit + 1):
        for start in range(0, n - length + 1):
            sub = token[start : start + length]
            if sub.count(MARKER) < length:
                out.add(sub)
    return out


# ---------------------------------------------------------------------------
# Occurrence index
# ---------------------------------------------------------------------------


@dataclass
class OccurrenceIndex:
    """Per-language inverted index: ngram text -> VerseSet of global ordinals.

    `aligned` is the language's shared-verse mask; `doc_count` (the N of the
    association statistic) is its cardinality. `max_len` counts non-marker
    characters; None means unlimited.
    """

    language: str
    map: dict[str, VerseSet]
    aligned: VerseSet
    max_len: Optional[int] = None

    @property
    def doc_count(self) -> int:
        return self.aligned.cardinality()

    def __len__(self) -> int:
        return len(self.map)


def _token_ngrams(token: str, max_len: Optional[int]) -> set[str]:
    if max_len is None:
        return enumerate_ngrams(token, None)
    # max_len counts non-marker characters; enumerate with the raw bound
    # max_len + 2 (room for both markers) and filter by inner length.
    grams = enumerate_ngrams(token, max_len + 2)
    return {g for g in grams if len(g) - g.count(MARKER) <= max_len}


def build_occurrence_index(
    corpus: Corpus,
    language: str,
    max_len: Optional[int] = 8,
    min_verses: int = 2,
) -> OccurrenceIndex:
    """Index every ngram of every token in the language's aligned verses.

    Ngrams occurring in fewer than `min_verses` verses are dropped: a
    single-verse ngram carries no association signal and bloats the index.
    """
    if language not in corpus.tokens:
        raise KeyError(f"language {language!r} not in corpus")
    width = corpus.n_verses
    occurs: dict[str, int] = {}
    gram_cache: dict[str, set[str]] = {}
    for vid, toks in corpus.tokens[language].items():
        bit = 1 << corpus.ordinal[vid]
        seen: set[str] = set()
        for tok in toks:
            grams = gram_cache.get(tok)
            if grams is None:
                grams = _token_ngrams(tok, max_len)
                gram_cache[tok] = grams
            seen.update(grams)
        for g in seen:
            occurs[g] = occurs.get(g, 0) | bit
    mapping = {
        g: VerseSet(width, bits)
        for g, bits in occurs.items()
        if bits.bit_count() >= min_verses
    }
    return OccurrenceIndex(
        language=language,
        map=mapping,
        aligned=corpus.aligned_verses(language),
        max_len=max_len,
    )


def dump_index(index: OccurrenceIndex, tsv_path: Path | str, meta_path: Path | str) -> None:
    """Write `ngram<TAB>comma-separated verse ordinals` plus a JSON sidecar."""
    tsv_path, meta_path = Path(tsv_path), Path(meta_path)
    with tsv_path.open("w", encoding="utf-8") as fh:
        for gram in sorted(index.map):
            ords = ",".join(str(i) for i in index.map[gram].ordinals())
            fh.write(f"{gram}\t{ords}\n")
    meta = {
        "language": index.language,
        "width": index.aligned.width,
        "aligned": list(index.aligned.ordinals()),
        "max_len": index.max_len,
    }
    meta_path.write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")


def load_index(tsv_path: Path | str, meta_path: Path | str) -> OccurrenceIndex:
    tsv_path, meta_path = Path(tsv_path), Path(meta_path)
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    width = meta["width"]
    mapping: dict[str, VerseSet] = {}
    with tsv_path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                gram, ords = line.split("\t")
                vs = VerseSet.from_ordinals(
                    width, (int(x) for x in ords.split(",") if x != "")
                )
            except ValueError as exc:
                raise CorpusFormatError(f"{tsv_path}:{lineno}: {exc}") from exc
            mapping[gram] = vs
    return OccurrenceIndex(
        language=meta["language"],
        map=mapping,
        aligned=VerseSet.from_ordinals(width, meta["aligned"]),
        max_len=meta["max_len"],
    )


# ---------------------------------------------------------------------------
# Concept pool
# ---------------------------------------------------------------------------


@dataclass
class ConceptPool:
    """Pivot-language lemmata acting as concepts, with occurrence statistics."""

    concepts: frozenset[str]
    frequency: dict[str, int]
    verse_sets: dict[str, VerseSet]

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.concepts

    def __len__(self) -> int:
        return len(self.concepts)

    def sorted(self) -> list[str]:
        return sorted(self.concepts)


def build_concept_pool(
    corpus: Corpus, min_freq: int = 5, max_freq: int = 2000
) -> ConceptPool:
    """Concepts are pivot lemmata with total occurrence count in [min_freq, max_freq]."""
    freq: dict[str, int] = {}
    occurs: dict[str, int] = {}
    for vid, toks in corpus.tokens[corpus.pivot].items():
        bit = 1 << corpus.ordinal[vid]
        for tok in toks:
            lemma = unmark(tok)
            freq[lemma] = freq.get(lemma, 0) + 1
            occurs[lemma] = occurs.get(lemma, 0) | bit
    width = corpus.n_verses
    kept = {l for l, f in freq.items() if min_freq <= f <= max_freq}
    if not kept:
        logger.warning(
            "concept pool is empty for frequency range [%d, %d]", min_freq, max_freq
        )
    return ConceptPool(
        concepts=frozenset(kept),
        frequency={l: freq[l] for l in kept},
        verse_sets={l: VerseSet(width, occurs[l]) for l in kept},
    )


def dump_concept_pool(pool: ConceptPool, path: Path | str) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for lemma in pool.sorted():
            ords = ",".join(str(i) for i in pool.verse_sets[lemma].ordinals())
            fh.write(f"{lemma}\t{pool.frequency[lemma]}\t{ords}\n")


def load_concept_pool(path: Path | str, width: int) -> ConceptPool:
    path = Path(path)
    freq: dict[str, int] = {}
    verse_sets: dict[str, VerseSet] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                lemma, f, ords = line.split("\t")
                freq[lemma] = int(f)
                verse_sets[lemma] = VerseSet.from_ordinals(
                    width, (int(x) for x in ords.split(",") if x != "")
                )
            except ValueError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: {exc}") from exc
    return ConceptPool(
        concepts=frozenset(freq), frequency=freq, verse_sets=verse_sets
    )
