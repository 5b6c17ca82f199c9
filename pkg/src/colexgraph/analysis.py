"""Structural analytics for the concept graph.

Betweenness uses the standard single-source accumulation over BFS shortest
paths. Community detection is the two-phase modularity heuristic (seeded
local moves, then aggregation, repeated to a fixed point) with a resolution
multiplier on the null-model term. Partition agreement is measured by the
adjusted Rand index. Functions accept either a ColexNet or a plain
``node -> {neighbor: weight}`` adjacency mapping.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Union

from .graphs import ColexNet

Adjacency = dict[str, dict[str, float]]
GraphLike = Union[ColexNet, Mapping[str, Mapping[str, float]]]


def _as_adjacency(net: GraphLike) -> Adjacency:
    if isinstance(net, ColexNet):
        return net.adjacency()
    return {u: dict(nbrs) for u, nbrs in net.items()}


# ---------------------------------------------------------------------------
# Basic statistics
# ---------------------------------------------------------------------------


def graph_stats(net: GraphLike) -> dict:
    """Node/edge counts, average degree and connected components.

    Degree counts self-loops twice, so avg_degree is 2*edges/nodes; the plain
    edges/nodes ratio is reported as `edges_per_node` because both
    conventions are in circulation.
    """
    adj = _as_adjacency(net)
    nodes = sorted(adj)
    if not nodes:
        return {"nodes": 0, "edges": 0, "avg_degree": 0.0, "components": 0,
                "edges_per_node": 0.0}
    n_edges = sum(
        1 for u, nbrs in adj.items() for v in nbrs if u < v or u == v
    )

    parent = {n: n for n in nodes}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, nbrs in adj.items():
        for v in nbrs:
            if u != v:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
    components = len({find(n) for n in nodes})
    return {
        "nodes": len(nodes),
        "edges": n_edges,
        "avg_degree": 2 * n_edges / len(nodes),
        "components": components,
        "edges_per_node": n_edges / len(nodes),
    }


def degree_distribution(net: GraphLike) -> dict[int, int]:
    """degree -> node count; a self-loop contributes 2 to its node's degree."""
    adj = _as_adjacency(net)
    dist: dict[int, int] = {}
    for u, nbrs in adj.items():
        deg = sum(2 if v == u else 1 for v in nbrs)
        dist[deg] = dist.get(deg, 0) + 1
    return dict(sorted(dist.items()))


# ---------------------------------------------------------------------------
# Betweenness centrality (exact, unweighted, self-loops ignored)
# ---------------------------------------------------------------------------


def betweenness(net: GraphLike) -> dict[str, float]:
    """Shortest-path betweenness via per-source BFS accumulation.

    Raw pair counts on the undirected graph: each unordered pair contributes
    once, endpoints excluded.
    """
    adj = _as_adjacency(net)
    neighbors = {u: sorted(v for v in nbrs if v != u) for u, nbrs in adj.items()}
    cb = {n: 0.0 for n in neighbors}
    for s in sorted(neighbors):
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in neighbors}
        sigma = dict.fromkeys(neighbors, 0.0)
        dist: dict[str, int] = {s: 0}
        sigma[s] = 1.0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in neighbors[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(stack, 0.0)
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return {n: b / 2.0 for n, b in cb.items()}


# ---------------------------------------------------------------------------
# Modularity and community detection
# ---------------------------------------------------------------------------


@dataclass
class Partition:
    """Community assignment with the modularity it achieves."""

    assignment: dict[str, int]
    modularity: float
    pass_modularities: list[float] = field(default_factory=list)

    def communities(self) -> dict[int, set[str]]:
        out: dict[int, set[str]] = {}
        for node, com in self.assignment.items():
            out.setdefault(com, set()).add(node)
        return out

    def n_communities(self) -> int:
        return len(set(self.assignment.values()))


def modularity(
    net: GraphLike, assignment: Mapping[str, object], resolution: float = 1.0
) -> float:
    """Weighted modularity with the resolution multiplier on the null term."""
    adj = _as_adjacency(net)
    m = 0.0
    deg: dict[str, float] = {}
    for u, nbrs in adj.items():
        d = 0.0
        for v, w in nbrs.items():
            if v == u:
                d += 2 * w
                m += w
            else:
                d += w
                if u < v:
                    m += w
        deg[u] = d
    if m == 0:
        return 0.0
    inner: dict[object, float] = {}
    tot: dict[object, float] = {}
    for u, nbrs in adj.items():
        cu = assignment[u]
        tot[cu] = tot.get(cu, 0.0) + deg[u]
        for v, w in nbrs.items():
            if cu == assignment[v] and (u < v or u == v):
                inner[cu] = inner.get(cu, 0.0) + w
    q = 0.0
    for com in tot:
        q += inner.get(com, 0.0) / m - resolution * (tot[com] / (2 * m)) ** 2
    return q


def _one_level(
    adj: Adjacency,
    part: dict[str, int],
    tot: dict[int, float],
    deg: dict[str, float],
    two_m: float,
    resolution: float,
    rng: random.Random,
) -> bool:
    """Sweep local moves until none improves modularity; True if any moved."""
    nodes = sorted(adj)
    moved_any = False
    while True:
        order = nodes[:]
        rng.shuffle(order)
        moved = False
        for node in order:
            com = part[node]
            k_i = deg[node]
            link_w: dict[int, float] = {}
            for nbr, w in adj[node].items():
                if nbr != node:
                    c = part[nbr]
                    link_w[c] = link_w.get(c, 0.0) + w
            tot[com] -= k_i
            best_com = com
            best_gain = link_w.get(com, 0.0) - resolution * tot[com] * k_i / two_m
            for c in sorted(link_w):
                if c == com:
                    continue
                gain = link_w[c] - resolution * tot[c] * k_i / two_m
                if gain > best_gain + 1e-12:
                    best_gain = gain
                    best_com = c
            tot[best_com] += k_i
            part[node] = best_com
            if best_com != com:
                moved = True
                moved_any = True
        if not moved:
            break
    return moved_any


def _aggregate(adj: Adjacency, part: Mapping[str, int]) -> Adjacency:
    """Collapse communities to supernodes; internal weight becomes a self-loop."""
    out: Adjacency = {}
    for u in adj:
        out.setdefault(str(part[u]), {})
    for u, nbrs in adj.items():
        cu = str(part[u])
        for v, w in nbrs.items():
            cv = str(part[v])
            if u == v:
                out[cu][cu] = out[cu].get(cu, 0.0) + w
            elif u < v:
                if cu == cv:
                    out[cu][cu] = out[cu].get(cu, 0.0) + w
                else:
                    out[cu][cv] = out[cu].get(cv, 0.0) + w
                    out[cv][cu] = out[cv].get(cu, 0.0) + w
    return out


def louvain(net: GraphLike, resolution: float = 0.1, seed: int = 114514) -> Partition:
    """Seeded two-phase modularity optimization.

    `pass_modularities` records the flat-partition modularity after each
    local-move level; it is non-decreasing because every accepted move has
    positive gain and aggregation preserves modularity.
    """
    orig = _as_adjacency(net)
    if not orig:
        raise ValueError("cannot partition an empty graph")
    if any(n not in orig for nbrs in orig.values() for n in nbrs):
        raise ValueError("adjacency mentions a neighbor without a node entry")
    two_m = 0.0
    for u, nbrs in orig.items():
        for v, w in nbrs.items():
            two_m += 2 * w if u == v else w
    if two_m == 0:
        assignment = {n: i for i, n in enumerate(sorted(orig))}
        return Partition(assignment=assignment, modularity=0.0,
                         pass_modularities=[0.0])

    rng = random.Random(seed)
    adj = {u: dict(nbrs) for u, nbrs in orig.items()}
    node_of = {n: n for n in orig}  # original node -> current level node key
    history: list[float] = []
    for _ in range(200):  # level cap; modularity gain bounds real depth far lower
        deg = {
            u: sum(2 * w if v == u else w for v, w in nbrs.items())
            for u, nbrs in adj.items()
        }
        part = {n: i for i, n in enumerate(sorted(adj))}
        tot = {part[n]: deg[n] for n in adj}
        moved = _one_level(adj, part, tot, deg, two_m, resolution, rng)
        node_of = {n: str(part[key]) for n, key in node_of.items()}
        history.append(modularity(orig, node_of, resolution))
        if not moved:
            break
        adj = _aggregate(adj, part)

    canonical: dict[str, int] = {}
    assignment = {}
    for node in sorted(orig):
        com = node_of[node]
        if com not in canonical:
            canonical[com] = len(canonical)
        assignment[node] = canonical[com]
    return Partition(
        assignment=assignment,
        modularity=modularity(orig, assignment, resolution),
        pass_modularities=history,
    )


# ---------------------------------------------------------------------------
# Language-group subnetworks
# ---------------------------------------------------------------------------


def load_grouping(path: Path | str) -> dict[str, str]:
    """TSV `iso<TAB>group` mapping languages to families or areas."""
    path = Path(path)
    out: dict[str, str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1]:
                raise ValueError(f"{path}:{lineno}: expected `iso<TAB>group`")
            out[parts[0]] = parts[1]
    return out


def subnetwork(net: ColexNet, grouping: Mapping[str, str], group: str) -> ColexNet:
    """Restrict the net to edges attested by the group's languages.

    Edge weights become the within-group attestation counts; zero-degree
    nodes disappear with their edges.
    """
    members = {iso for iso, g in grouping.items() if g == group}
    if not members:
        raise KeyError(f"group {group!r} not present in grouping")
    kept: dict[tuple[str, str], set[str]] = {}
    for e, langs in net.attestations.items():
        shared = langs & members
        if shared:
            kept[e] = set(shared)
    return ColexNet(attestations=kept)


# ---------------------------------------------------------------------------
# Adjusted Rand index
# ---------------------------------------------------------------------------


def _comb2(n: int) -> int:
    return n * (n - 1) // 2


def ari_from_assignments(
    a1: Mapping[str, object], a2: Mapping[str, object]
) -> float:
    """ARI from the pair-counting contingency table over the shared key set."""
    keys = sorted(set(a1) & set(a2))
    if not keys:
        raise ValueError("assignments share no nodes")
    table: dict[tuple[object, object], int] = {}
    rows: dict[object, int] = {}
    cols: dict[object, int] = {}
    for k in keys:
        c1, c2 = a1[k], a2[k]
        table[(c1, c2)] = table.get((c1, c2), 0) + 1
        rows[c1] = rows.get(c1, 0) + 1
        cols[c2] = cols.get(c2, 0) + 1
    index = sum(_comb2(n) for n in table.values())
    sum_rows = sum(_comb2(n) for n in rows.values())
    sum_cols = sum(_comb2(n) for n in cols.values())
    total = _comb2(len(keys))
    # (index - expected) / (max - expected), scaled by 2*total so the whole
    # computation stays in exact integer arithmetic until one final division
    num = 2 * (index * total - sum_rows * sum_cols)
    den = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols
    if den == 0:
        return 1.0  # both partitions trivial and identical in pair structure
    return num / den


def adjusted_rand_index(p1: Partition, p2: Partition) -> float:
    """ARI between two partitions of the same node set."""
    if set(p1.assignment) != set(p2.assignment):
        raise ValueError("partitions cover different node sets")
    return ari_from_assignments(p1.assignment, p2.assignment)


def pairwise_ari_matrix(
    nets: Mapping[str, ColexNet],
    resolution: float = 0.1,
    seed: int = 114514,
    runs: int = 50,
) -> tuple[list[str], list[list[float]]]:
    """Mean pairwise ARI between per-group community structures.

    Each run re-partitions every net with a different seed; a pair's ARI is
    computed on the node intersection of the two nets and averaged over runs.
    Diagonal entries are 1 by construction.
    """
    labels = sorted(nets)
    parts: dict[str, list[dict[str, int]]] = {l: [] for l in labels}
    for r in range(runs):
        for l in labels:
            parts[l].append(louvain(nets[l], resolution, seed + r).assignment)
    n = len(labels)
    matrix = [[1.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            vals = []
            for r in range(runs):
                try:
                    vals.append(ari_from_assignments(parts[labels[i]][r],
                                                     parts[labels[j]][r]))
                except ValueError:
                    continue  # disjoint node sets
            score = sum(vals) / len(vals) if vals else 0.0
            matrix[i][j] = matrix[j][i] = score
    return labels, matrix
