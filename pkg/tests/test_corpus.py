import pytest
from hypothesis import given, strategies as st

import colexgraph as cg
from colexgraph.corpus import (
    CorpusFormatError,
    VerseSet,
    dump_concept_pool,
    dump_index,
    load_concept_pool,
    load_index,
    load_corpus,
)

from oracles import naive_verse_sets, toy_raw_verses


# ---------------------------------------------------------------------------
# VerseSet
# ---------------------------------------------------------------------------

ordinals = st.lists(st.integers(min_value=0, max_value=63), max_size=30)


@given(ordinals, ordinals)
def test_verseset_ops_match_python_sets(a, b):
    va = VerseSet.from_ordinals(64, a)
    vb = VerseSet.from_ordinals(64, b)
    sa, sb = set(a), set(b)
    assert set((va & vb).ordinals()) == sa & sb
    assert set((va | vb).ordinals()) == sa | sb
    assert set((va - vb).ordinals()) == sa - sb
    assert (va & vb).cardinality() == len(sa & sb)
    assert va.issubset(va | vb)


def test_verseset_width_mismatch():
    with pytest.raises(ValueError):
        VerseSet(4) & VerseSet(5)
    with pytest.raises(ValueError):
        VerseSet.from_ordinals(4, [4])


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def test_load_toy_corpus(toy_corpus):
    assert toy_corpus.n_verses == 8
    assert toy_corpus.pivot == "eng"
    assert set(toy_corpus.languages) == {"eng", "xx1", "xx2", "xx3"}
    assert toy_corpus.verse_tokens("xx1", "v6") == ("$veter$", "$duet$")


def test_lemma_map_applied(tmp_path):
    (tmp_path / "eng.txt").write_text("v1\tHands up\n", encoding="utf-8")
    (tmp_path / "map.tsv").write_text("hands\thand\n", encoding="utf-8")
    corpus = load_corpus(tmp_path, lemma_map=tmp_path / "map.tsv")
    assert corpus.verse_tokens("eng", "v1") == ("$hand$", "$up$")


def test_verses_absent_from_pivot_dropped(tmp_path):
    (tmp_path / "eng.txt").write_text("v1\ta\nv2\tb\n", encoding="utf-8")
    (tmp_path / "xx1.txt").write_text("v1\tx\nv99\ty\n", encoding="utf-8")
    corpus = load_corpus(tmp_path)
    assert set(corpus.tokens["xx1"]) == {"v1"}
    assert set(corpus.aligned_verses("xx1").ordinals()) == {0}


def test_missing_pivot_fatal(tmp_path):
    (tmp_path / "xx1.txt").write_text("v1\tx\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError, match="pivot"):
        load_corpus(tmp_path)


def test_malformed_line_names_line_number(tmp_path):
    (tmp_path / "eng.txt").write_text("v1\ta\nno tab here\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError, match=r":2"):
        load_corpus(tmp_path)


def test_duplicate_verse_id_fatal(tmp_path):
    (tmp_path / "eng.txt").write_text("v1\ta\nv1\tb\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError, match="duplicate"):
        load_corpus(tmp_path)


def test_tokens_lowercased_and_stripped(tmp_path):
    (tmp_path / "eng.txt").write_text('v1\t"Hello," World!\n', encoding="utf-8")
    corpus = load_corpus(tmp_path)
    assert corpus.verse_tokens("eng", "v1") == ("$hello$", "$world$")


# ---------------------------------------------------------------------------
# Ngram enumeration
# ---------------------------------------------------------------------------


def test_enumerate_ngrams_ke():
    assert cg.enumerate_ngrams("$ke$") == {
        "$k", "$ke", "$ke$", "k", "ke", "ke$", "e", "e$"
    }


def test_enumerate_ngrams_single_char():
    assert cg.enumerate_ngrams("$a$") == {"$a", "$a$", "a", "a$"}


def test_enumerate_ngrams_bounded():
    assert cg.enumerate_ngrams("$abc$", max_len=2) == {
        "$a", "ab", "bc", "c$", "a", "b", "c"
    }


def test_enumerate_ngrams_empty_inner():
    assert cg.enumerate_ngrams("$$") == set()


@given(st.text(alphabet="abcdefghijklmnop", min_size=1, max_size=8).filter(
    lambda w: len(set(w)) == len(w)
))
def test_enumerate_ngrams_count_formula(word):
    m = len(word)
    grams = cg.enumerate_ngrams(f"${word}$")
    assert len(grams) == (m + 2) * (m + 3) // 2 - 2


# ---------------------------------------------------------------------------
# Occurrence index
# ---------------------------------------------------------------------------


def test_index_ruka_cardinality(toy_indexes):
    assert toy_indexes["xx1"].map["$ruka$"].cardinality() == 5


def test_index_superstring_subset(toy_indexes):
    index = toy_indexes["xx1"]
    for g, vs in index.map.items():
        for h, hs in index.map.items():
            if g != h and g in h:
                assert hs.issubset(vs)


def test_index_matches_naive_scan(toy_corpus, toy_indexes):
    raw = toy_raw_verses()
    for lang, index in toy_indexes.items():
        naive = naive_verse_sets(raw[lang])
        got = {
            g: {toy_corpus.verse_ids[i] for i in vs.ordinals()}
            for g, vs in index.map.items()
        }
        assert got == naive


def test_index_empty_language(tmp_path):
    (tmp_path / "eng.txt").write_text("v1\ta\n", encoding="utf-8")
    (tmp_path / "xx1.txt").write_text("v9\tzzz\n", encoding="utf-8")
    corpus = load_corpus(tmp_path)
    index = cg.build_occurrence_index(corpus, "xx1")
    assert len(index) == 0
    assert index.doc_count == 0


def test_index_respects_inner_length_cap(toy_corpus):
    index = cg.build_occurrence_index(toy_corpus, "xx1", max_len=3)
    assert "$ruka$" not in index.map  # 4 inner characters
    assert "$ruk" in index.map
    assert all(g.replace("$", "") and len(g.replace("$", "")) <= 3
               for g in index.map)


def test_index_unlimited_length(toy_corpus):
    index = cg.build_occurrence_index(toy_corpus, "xx1", max_len=None)
    assert "$ruka$" in index.map
    limited = cg.build_occurrence_index(toy_corpus, "xx1", max_len=8)
    assert index.map == limited.map  # toy words are all under 8 characters


def test_index_matches_naive_scan_at_scale(planted):
    corpus = planted["corpus"]
    index = planted["indexes"]["xx3"]
    raw = {
        vid: list(corpus.verse_tokens("xx3", vid)) for vid in corpus.verse_ids
    }
    naive = naive_verse_sets(raw)
    assert set(index.map) == set(naive)
    for g, vs in index.map.items():
        assert {corpus.verse_ids[i] for i in vs.ordinals()} == naive[g]


def test_index_roundtrip(tmp_path, toy_indexes):
    index = toy_indexes["xx1"]
    dump_index(index, tmp_path / "xx1.tsv", tmp_path / "xx1.meta.json")
    loaded = load_index(tmp_path / "xx1.tsv", tmp_path / "xx1.meta.json")
    assert loaded.language == index.language
    assert loaded.aligned == index.aligned
    assert loaded.map == index.map
    # second dump is byte-identical
    dump_index(loaded, tmp_path / "again.tsv", tmp_path / "again.meta.json")
    assert (tmp_path / "again.tsv").read_bytes() == (tmp_path / "xx1.tsv").read_bytes()


# ---------------------------------------------------------------------------
# Concept pool
# ---------------------------------------------------------------------------


def test_pool_frequency_boundaries(tmp_path):
    lines = ["v1\tfour four four four five five five five five"]
    lines += [f"v{i}\tfiller" for i in range(2, 5)]
    (tmp_path / "eng.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    corpus = load_corpus(tmp_path)
    pool = cg.build_concept_pool(corpus, min_freq=5, max_freq=2000)
    assert "five" in pool          # frequency 5: inclusive lower bound
    assert "four" not in pool      # frequency 4: below the window
    assert pool.frequency["five"] == 5


def test_pool_membership_is_frequency_interval(toy_corpus):
    pool = cg.build_concept_pool(toy_corpus, min_freq=3, max_freq=2000)
    assert set(pool.concepts) == {"hand", "wind"}  # both occur 3 times


def test_empty_pool_warns_not_fatal(toy_corpus, caplog):
    with caplog.at_level("WARNING"):
        pool = cg.build_concept_pool(toy_corpus, min_freq=100, max_freq=200)
    assert len(pool) == 0
    assert any("empty" in r.message for r in caplog.records)


def test_pool_roundtrip(tmp_path, toy_corpus, toy_pool):
    dump_concept_pool(toy_pool, tmp_path / "pool.tsv")
    loaded = load_concept_pool(tmp_path / "pool.tsv", toy_corpus.n_verses)
    assert loaded.concepts == toy_pool.concepts
    assert loaded.frequency == toy_pool.frequency
    assert loaded.verse_sets == toy_pool.verse_sets
