import itertools
import random
from collections import deque

import pytest
from hypothesis import given, strategies as st

import colexgraph as cg
from colexgraph.analysis import (
    Partition,
    ari_from_assignments,
    degree_distribution,
    load_grouping,
    pairwise_ari_matrix,
)
from colexgraph.graphs import ColexNet


def unweighted(edges):
    """Adjacency dict with unit weights from an undirected edge list."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, {})[v] = 1.0
        adj.setdefault(v, {})[u] = 1.0
    return adj


def two_cliques(n=5):
    edges = [(f"a{i}", f"a{j}") for i in range(n) for j in range(i + 1, n)]
    edges += [(f"b{i}", f"b{j}") for i in range(n) for j in range(i + 1, n)]
    edges.append(("a0", "b0"))
    return unweighted(edges)


def random_graph(rng, n_nodes, p_edge):
    nodes = [f"n{i}" for i in range(n_nodes)]
    adj = {n: {} for n in nodes}
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p_edge:
                w = float(rng.randint(1, 5))
                adj[nodes[i]][nodes[j]] = w
                adj[nodes[j]][nodes[i]] = w
    return adj


# ---------------------------------------------------------------------------
# graph_stats
# ---------------------------------------------------------------------------


def test_stats_triangle():
    stats = cg.graph_stats(unweighted([("a", "b"), ("b", "c"), ("a", "c")]))
    assert (stats["nodes"], stats["edges"], stats["avg_degree"],
            stats["components"]) == (3, 3, 2.0, 1)


def test_stats_two_disjoint_edges():
    stats = cg.graph_stats(unweighted([("a", "b"), ("c", "d")]))
    assert stats["components"] == 2


def test_stats_empty():
    assert cg.graph_stats({})["nodes"] == 0


def test_stats_self_loop_degree_and_component(toy_net):
    stats = cg.graph_stats(toy_net)
    # hand-arm edge plus hand/arm/wind/blow self-loops: 5 edges over 4 nodes
    assert stats["nodes"] == 4
    assert stats["edges"] == 5
    assert stats["avg_degree"] == pytest.approx(2.5)
    assert stats["edges_per_node"] == pytest.approx(1.25)
    assert stats["components"] == 3  # {hand, arm}, {wind}, {blow}


def test_degree_distribution_counts_self_loops():
    net = ColexNet()
    net.attestations[("a", "b")] = {"l1"}
    net.attestations[("a", "a")] = {"l2"}
    assert degree_distribution(net) == {1: 1, 3: 1}


# ---------------------------------------------------------------------------
# betweenness
# ---------------------------------------------------------------------------


def bfs_betweenness_oracle(adj):
    """Enumerate every shortest path between every pair, from the definition."""
    nodes = sorted(adj)
    score = {n: 0.0 for n in nodes}
    for s, t in itertools.combinations(nodes, 2):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w != v and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        if t not in dist:
            continue
        paths = []
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            if v == t:
                paths.append(path)
                continue
            for w in adj[v]:
                if w != v and dist.get(w) == dist[v] + 1 and dist[w] <= dist[t]:
                    stack.append((w, path + [w]))
        for path in paths:
            for v in path[1:-1]:
                score[v] += 1.0 / len(paths)
    return score


def test_betweenness_path():
    b = cg.betweenness(unweighted([("a", "b"), ("b", "c")]))
    assert b == {"a": 0.0, "b": 1.0, "c": 0.0}


def test_betweenness_star_closed_form():
    for n_total in (4, 6, 9):
        leaves = [f"l{i}" for i in range(n_total - 1)]
        adj = unweighted([("hub", leaf) for leaf in leaves])
        b = cg.betweenness(adj)
        assert b["hub"] == pytest.approx((n_total - 1) * (n_total - 2) / 2)
        assert all(b[leaf] == 0.0 for leaf in leaves)


def test_betweenness_complete_graph_zero():
    nodes = ["a", "b", "c", "d"]
    adj = unweighted(list(itertools.combinations(nodes, 2)))
    assert all(v == 0.0 for v in cg.betweenness(adj).values())


def test_betweenness_matches_bfs_oracle():
    rng = random.Random(5)
    for trial in range(6):
        adj = random_graph(rng, rng.randint(5, 20), 0.3)
        got = cg.betweenness(adj)
        want = bfs_betweenness_oracle(adj)
        for node in adj:
            assert got[node] == pytest.approx(want[node], abs=1e-9), (trial, node)


def test_betweenness_ignores_self_loops(toy_net):
    b = cg.betweenness(toy_net)
    assert all(v == 0.0 for v in b.values())  # hand-arm is the only real edge


# ---------------------------------------------------------------------------
# louvain
# ---------------------------------------------------------------------------


def test_louvain_recovers_two_cliques():
    adj = two_cliques()
    part = cg.louvain(adj, resolution=1.0, seed=114514)
    groups = part.communities()
    assert len(groups) == 2
    members = {frozenset(g) for g in groups.values()}
    assert members == {
        frozenset(f"a{i}" for i in range(5)),
        frozenset(f"b{i}" for i in range(5)),
    }
    # brute force over all 2-partitions confirms this is the optimum
    nodes = sorted(adj)
    best = max(
        (
            cg.modularity(adj, {n: int(i in chosen) for i, n in enumerate(nodes)}, 1.0)
            for mask in range(1, 2 ** (len(nodes) - 1))
            for chosen in [{i for i in range(len(nodes)) if mask >> i & 1}]
        )
    )
    assert part.modularity == pytest.approx(best)


def test_louvain_single_node():
    part = cg.louvain({"a": {}}, resolution=1.0)
    assert part.assignment == {"a": 0}
    assert part.modularity == 0.0


def test_louvain_empty_graph_errors():
    with pytest.raises(ValueError):
        cg.louvain({})


def test_louvain_deterministic(toy_net):
    a = cg.louvain(toy_net, resolution=1.0, seed=7)
    b = cg.louvain(toy_net, resolution=1.0, seed=7)
    assert a.assignment == b.assignment
    assert a.modularity == b.modularity


def test_louvain_modularity_nondecreasing_on_random_graphs():
    rng = random.Random(99)
    for trial in range(20):
        adj = random_graph(rng, rng.randint(4, 25), 0.25)
        if all(not nbrs for nbrs in adj.values()):
            continue
        part = cg.louvain(adj, resolution=1.0, seed=trial)
        mods = part.pass_modularities
        assert all(b >= a - 1e-9 for a, b in zip(mods, mods[1:])), trial
        assert part.modularity == pytest.approx(mods[-1])


def test_modularity_resolution_changes_granularity():
    adj = two_cliques()
    coarse = cg.louvain(adj, resolution=0.05, seed=1)
    fine = cg.louvain(adj, resolution=1.0, seed=1)
    assert coarse.n_communities() <= fine.n_communities()


# ---------------------------------------------------------------------------
# subnetwork
# ---------------------------------------------------------------------------


def test_subnetwork_all_languages_identity(toy_net):
    grouping = {"xx1": "g", "xx2": "g", "xx3": "g"}
    sub = cg.subnetwork(toy_net, grouping, "g")
    assert sub.attestations == toy_net.attestations


def test_subnetwork_drops_unattested_edges(toy_net):
    grouping = {"xx1": "a", "xx2": "a", "xx3": "b"}
    sub = cg.subnetwork(toy_net, grouping, "b")
    # xx3 is one-to-one: only the four stable self-loops survive
    assert set(sub.edges) == {("arm", "arm"), ("blow", "blow"),
                              ("hand", "hand"), ("wind", "wind")}
    assert ("arm", "hand") not in sub.edges


def test_subnetwork_weights_are_group_counts(toy_net):
    grouping = {"xx1": "a", "xx2": "b", "xx3": "b"}
    sub = cg.subnetwork(toy_net, grouping, "b")
    assert sub.weight("arm", "hand") == 1      # only xx2 in group b
    assert sub.weight("wind", "wind") == 2     # xx2 and xx3


def test_subnetwork_unknown_group(toy_net):
    with pytest.raises(KeyError):
        cg.subnetwork(toy_net, {"xx1": "a"}, "zzz")


def test_load_grouping(tmp_path):
    path = tmp_path / "families.tsv"
    path.write_text("xx1\tfam_a\nxx2\tfam_b\n", encoding="utf-8")
    assert load_grouping(path) == {"xx1": "fam_a", "xx2": "fam_b"}


# ---------------------------------------------------------------------------
# adjusted Rand index
# ---------------------------------------------------------------------------


def _partition(assignment):
    return Partition(assignment=assignment, modularity=0.0)


def test_ari_identical_partitions():
    p = _partition({"a": 0, "b": 0, "c": 1, "d": 1})
    assert cg.adjusted_rand_index(p, p) == 1.0


def test_ari_crossed_pairs():
    p1 = _partition({"a": 0, "b": 0, "c": 1, "d": 1})
    p2 = _partition({"a": 0, "b": 1, "c": 0, "d": 1})
    assert cg.adjusted_rand_index(p1, p2) == pytest.approx(-0.5)


def test_ari_label_permutation_invariant():
    p1 = _partition({"a": 0, "b": 0, "c": 1, "d": 2})
    p2 = _partition({"a": 5, "b": 5, "c": 9, "d": 7})
    assert cg.adjusted_rand_index(p1, p2) == 1.0


def test_ari_node_set_mismatch():
    with pytest.raises(ValueError):
        cg.adjusted_rand_index(_partition({"a": 0}), _partition({"b": 0}))


@given(
    st.lists(st.integers(0, 3), min_size=2, max_size=12),
    st.permutations(list(range(4))),
)
def test_ari_symmetric_and_permutation_invariant(labels, perm):
    nodes = [f"n{i}" for i in range(len(labels))]
    a1 = dict(zip(nodes, labels))
    a2 = dict(zip(nodes, labels[::-1]))
    assert ari_from_assignments(a1, a2) == pytest.approx(
        ari_from_assignments(a2, a1)
    )
    permuted = {n: perm[c] for n, c in a1.items()}
    assert ari_from_assignments(a1, permuted) == pytest.approx(1.0)


def test_pairwise_ari_matrix_shape(toy_net):
    grouping = {"xx1": "a", "xx2": "a", "xx3": "b"}
    nets = {"base": toy_net}
    for g in ("a", "b"):
        nets[g] = cg.subnetwork(toy_net, grouping, g)
    labels, matrix = pairwise_ari_matrix(nets, resolution=1.0, seed=3, runs=5)
    assert labels == ["a", "b", "base"]
    n = len(labels)
    for i in range(n):
        assert matrix[i][i] == 1.0
        for j in range(n):
            assert matrix[i][j] == matrix[j][i]
