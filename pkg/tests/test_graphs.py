import pytest

import colexgraph as cg
from colexgraph.assoc import PatternRecord
from colexgraph.graphs import (
    dump_colexnet,
    dump_colexnetplus,
    load_colexnet,
    load_colexnetplus,
)


def rec(lang, focal, ngrams, concepts):
    return PatternRecord(
        language=lang, focal=focal, ngrams=list(ngrams), concepts=list(concepts)
    )


# ---------------------------------------------------------------------------
# build_colexnet
# ---------------------------------------------------------------------------


def test_toy_colexnet_edges(toy_net):
    edges = {e: sorted(l) for e, l in toy_net.attestations.items()}
    assert edges[("arm", "hand")] == ["xx1", "xx2"]
    assert edges[("blow", "blow")] == ["xx1", "xx2", "xx3"]
    assert edges[("wind", "wind")] == ["xx1", "xx2", "xx3"]
    # the non-stable records (hand -> [hand, arm]) do not self-loop hand
    assert ("hand", "hand") in edges and edges[("hand", "hand")] == ["xx3"]


def test_two_languages_weight_two():
    records = [
        rec("aaa", "f", ["$x$"], ["f", "g"]),
        rec("bbb", "f", ["$y$"], ["f", "g"]),
    ]
    net = cg.build_colexnet(records)
    assert net.weight("f", "g") == 2


def test_same_pair_from_both_directions_deduped():
    records = [
        rec("aaa", "f", ["$x$"], ["f", "g"]),
        rec("aaa", "g", ["$x$"], ["f", "g"]),
    ]
    net = cg.build_colexnet(records)
    assert net.weight("f", "g") == 1


def test_stable_record_self_loops():
    net = cg.build_colexnet([rec("aaa", "f", ["$x$"], ["f"])])
    assert net.weight("f", "f") == 1
    assert net.degree("f") == 2


def test_weight_bounded_by_language_count(planted):
    langs = set(planted["indexes"])
    for e, attesting in planted["net"].attestations.items():
        assert attesting <= langs
        assert 1 <= len(attesting) <= len(langs)


# ---------------------------------------------------------------------------
# prune
# ---------------------------------------------------------------------------


def test_prune_examples():
    records = [
        rec("aaa", "a", ["$x$"], ["a", "b"]),
        rec("bbb", "a", ["$y$"], ["a", "b"]),
        rec("aaa", "a", ["$x$"], ["a", "c"]),  # dedup keeps (a,c) at weight 1
        rec("ccc", "a", ["$z$"], ["a", "c"]),
    ]
    net = cg.build_colexnet(records)
    assert net.weight("a", "b") == 2 and net.weight("a", "c") == 2
    net.attestations[("a", "c")] = {"aaa"}  # force weight 1 for the example
    pruned = cg.prune(net, cg.PruneConfig(2))
    assert pruned.edges == {("a", "b")}
    assert pruned.nodes == {"a", "b"}


def test_prune_lambda_one_is_identity(toy_net):
    pruned = cg.prune(toy_net, cg.PruneConfig(1))
    assert pruned.attestations == toy_net.attestations


def test_prune_preserves_qualifying_self_loops(toy_net):
    pruned = cg.prune(toy_net, cg.PruneConfig(3))
    assert pruned.edges == {("blow", "blow"), ("wind", "wind")}
    assert pruned.nodes == {"blow", "wind"}


def test_prune_monotone(planted):
    net = planted["net"]
    prev_nodes, prev_edges = None, None
    for lam in (1, 2, 3, 5):
        pruned = cg.prune(net, cg.PruneConfig(lam))
        nodes, edges = pruned.nodes, pruned.edges
        if prev_nodes is not None:
            assert nodes <= prev_nodes
            assert edges <= prev_edges
        prev_nodes, prev_edges = nodes, edges


def test_prune_config_validation():
    with pytest.raises(ValueError):
        cg.PruneConfig(0)


# ---------------------------------------------------------------------------
# build_colexnetplus
# ---------------------------------------------------------------------------


def test_toy_plus_links_ruka_to_both(toy_plus):
    nbrs = toy_plus.neighbors("xx1:$ruka$")
    assert {"hand", "arm"} <= set(nbrs)


def test_plus_empty_when_lambda_exceeds_weights(toy_patterns, toy_net):
    pruned = cg.prune(toy_net, cg.PruneConfig(10))
    plus = cg.build_colexnetplus(toy_patterns, pruned)
    assert not plus.nodes


def test_plus_is_bipartite(toy_plus):
    for node, nbrs in toy_plus.adj.items():
        node_is_concept = toy_plus.is_concept(node)
        for other in nbrs:
            assert toy_plus.is_concept(other) != node_is_concept


def test_plus_every_ngram_has_degree(toy_plus):
    for node in toy_plus.ngram_nodes:
        assert toy_plus.degree(node) >= 1


def test_plus_connects_every_surviving_edge(toy_patterns, toy_net):
    pruned = cg.prune(toy_net, cg.PruneConfig(1))
    plus = cg.build_colexnetplus(toy_patterns, pruned)
    for (f1, f2) in pruned.edges:
        if f1 == f2:
            continue
        shared = set(plus.neighbors(f1)) & set(plus.neighbors(f2))
        assert shared, (f1, f2)


def test_plus_multiplicity_counts_additions():
    records = [
        rec("aaa", "f", ["$x$"], ["f", "g"]),
        rec("aaa", "g", ["$x$"], ["f", "g"]),
    ]
    net = cg.build_colexnet(records)
    plus = cg.build_colexnetplus(records, cg.prune(net, cg.PruneConfig(1)))
    # each record contributes one (f, x) and one (g, x) addition
    assert plus.adj["f"]["aaa:$x$"] == 2
    assert plus.adj["g"]["aaa:$x$"] == 2


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def test_colexnet_roundtrip(tmp_path, toy_net):
    path = tmp_path / "net.tsv"
    dump_colexnet(toy_net, path)
    loaded = load_colexnet(path)
    assert loaded.attestations == toy_net.attestations
    dump_colexnet(loaded, tmp_path / "again.tsv")
    assert (tmp_path / "again.tsv").read_bytes() == path.read_bytes()


def test_colexnetplus_roundtrip(tmp_path, toy_plus):
    path = tmp_path / "plus.tsv"
    dump_colexnetplus(toy_plus, path)
    loaded = load_colexnetplus(path)
    assert loaded.adj == toy_plus.adj
    assert loaded.concept_nodes == toy_plus.concept_nodes
    assert loaded.ngram_nodes == toy_plus.ngram_nodes
    dump_colexnetplus(loaded, tmp_path / "again.tsv")
    assert (tmp_path / "again.tsv").read_bytes() == path.read_bytes()


def test_colexnet_load_rejects_weight_mismatch(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("a\tb\t3\taaa,bbb\n", encoding="utf-8")
    with pytest.raises(ValueError, match="weight"):
        load_colexnet(bad)
