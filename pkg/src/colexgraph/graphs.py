"""Concept graph and bipartite concept-ngram graph built from pattern records.

`ColexNet` is an undirected weighted graph whose nodes are concepts and whose
edge weight counts the languages attesting a colexification of the two
endpoints. A concept whose backward pass returns only itself in some language
is a *stable* concept and gets a self-loop, which keeps it alive under
zero-degree removal. `ColexNetPlus` expands every surviving edge through the
ngrams that realize it, yielding a strictly bipartite concept-ngram graph
suitable for random-walk embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .assoc import PatternRecord


@dataclass(frozen=True)
class PruneConfig:
    """Minimum number of attesting languages for an edge to survive."""

    lam: int = 50

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")


def _edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass
class ColexNet:
    """Weighted undirected concept graph; weight(e) == len(attestations(e))."""

    attestations: dict[tuple[str, str], set[str]] = field(default_factory=dict)

    @property
    def edges(self) -> set[tuple[str, str]]:
        return set(self.attestations)

    def weight(self, u: str, v: str) -> int:
        return len(self.attestations.get(_edge(u, v), ()))

    @property
    def nodes(self) -> set[str]:
        out: set[str] = set()
        for u, v in self.attestations:
            out.add(u)
            out.add(v)
        return out

    def neighbors(self, node: str) -> set[str]:
        out: set[str] = set()
        for u, v in self.attestations:
            if u == node:
                out.add(v)
            elif v == node:
                out.add(u)
        return out

    def adjacency(self) -> dict[str, dict[str, int]]:
        """node -> neighbor -> weight; self-loops appear as adj[n][n]."""
        adj: dict[str, dict[str, int]] = {}
        for (u, v), langs in self.attestations.items():
            w = len(langs)
            adj.setdefault(u, {})[v] = w
            if u != v:
                adj.setdefault(v, {})[u] = w
        return adj

    def degree(self, node: str) -> int:
        """Self-loops count twice, as usual for undirected degree."""
        deg = 0
        for (u, v) in self.attestations:
            if u == node:
                deg += 2 if u == v else 1
            elif v == node:
                deg += 1
        return deg

    def n_edges(self) -> int:
        return len(self.attestations)


def build_colexnet(patterns: Iterable[PatternRecord]) -> ColexNet:
    """Fold pattern records into an unpruned ColexNet.

    Each record (l, f, C) attests the unordered pair {f, c} for every c in C
    other than f itself; a language attests a pair at most once no matter how
    many records produce it. The focal concept only loops onto itself when
    the backward pass returned exactly [f] (the stable case), so self-loops
    mark stability rather than appearing on every record that echoes f back.
    """
    net = ColexNet()
    for rec in patterns:
        stable = rec.concepts == [rec.focal]
        for c in rec.concepts:
            if c == rec.focal and not stable:
                continue
            net.attestations.setdefault(_edge(rec.focal, c), set()).add(rec.language)
    return net


def prune(net: ColexNet, cfg: PruneConfig) -> ColexNet:
    """Drop edges below the language threshold, then zero-degree nodes.

    Node removal is implicit: nodes exist only through their edges, and a
    surviving self-loop keeps its node alive.
    """
    kept = {
        e: set(langs) for e, langs in net.attestations.items() if len(langs) >= cfg.lam
    }
    return ColexNet(attestations=kept)


@dataclass
class ColexNetPlus:
    """Strictly bipartite concept-ngram graph with integer edge multiplicity."""

    concept_nodes: set[str] = field(default_factory=set)
    ngram_nodes: set[str] = field(default_factory=set)
    adj: dict[str, dict[str, int]] = field(default_factory=dict)

    def add_edge(self, concept: str, ngram_key: str, multiplicity: int = 1) -> None:
        if multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        self.concept_nodes.add(concept)
        self.ngram_nodes.add(ngram_key)
        self.adj.setdefault(concept, {})
        self.adj.setdefault(ngram_key, {})
        self.adj[concept][ngram_key] = self.adj[concept].get(ngram_key, 0) + multiplicity
        self.adj[ngram_key][concept] = self.adj[ngram_key].get(concept, 0) + multiplicity

    @property
    def nodes(self) -> set[str]:
        return self.concept_nodes | self.ngram_nodes

    def neighbors(self, node: str) -> dict[str, int]:
        return self.adj[node]

    def has_edge(self, u: str, v: str) -> bool:
        return u in self.adj and v in self.adj[u]

    def is_concept(self, node: str) -> bool:
        return node in self.concept_nodes

    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj.values()) // 2

    def degree(self, node: str) -> int:
        return len(self.adj.get(node, ()))


def build_colexnetplus(
    patterns: Iterable[PatternRecord], pruned_net: ColexNet
) -> ColexNetPlus:
    """Expand every surviving ColexNet edge through its realizing ngrams.

    For a record (l, f, T, C) and each c in C whose edge {f, c} survived
    pruning, every t in T gains edges to both f and c (one edge when c == f).
    Ngram nodes are keyed ``<iso>:<text>``. Concepts that end up with no
    ngram edge are dropped, so every node has degree >= 1.
    """
    surviving = pruned_net.edges
    plus = ColexNetPlus()
    for rec in patterns:
        keys = [f"{rec.language}:{t}" for t in rec.ngrams]
        for c in rec.concepts:
            if _edge(rec.focal, c) not in surviving:
                continue
            for key in keys:
                plus.add_edge(rec.focal, key)
                if c != rec.focal:
                    plus.add_edge(c, key)
    return plus


# ---------------------------------------------------------------------------
# TSV serialization (round-trippable bit-exactly)
# ---------------------------------------------------------------------------


def dump_colexnet(net: ColexNet, path: Path | str) -> None:
    """Lines `concept1<TAB>concept2<TAB>weight<TAB>comma-separated-langs`, sorted."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for (u, v) in sorted(net.attestations):
            langs = sorted(net.attestations[(u, v)])
            fh.write(f"{u}\t{v}\t{len(langs)}\t{','.join(langs)}\n")


def load_colexnet(path: Path | str) -> ColexNet:
    path = Path(path)
    attestations: dict[tuple[str, str], set[str]] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tab-separated fields")
            u, v, w, langs = parts
            attested = set(langs.split(",")) if langs else set()
            if len(attested) != int(w):
                raise ValueError(
                    f"{path}:{lineno}: weight {w} != {len(attested)} attesting languages"
                )
            attestations[_edge(u, v)] = attested
    return ColexNet(attestations=attestations)


def dump_colexnetplus(plus: ColexNetPlus, path: Path | str) -> None:
    """Lines `concept<TAB>iso:ngram<TAB>multiplicity`, sorted."""
    path = Path(path)
    rows = []
    for concept in sorted(plus.concept_nodes):
        for key, mult in sorted(plus.adj[concept].items()):
            rows.append(f"{concept}\t{key}\t{mult}\n")
    with path.open("w", encoding="utf-8") as fh:
        fh.writelines(rows)


def load_colexnetplus(path: Path | str) -> ColexNetPlus:
    path = Path(path)
    plus = ColexNetPlus()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            concept, key, mult = parts
            plus.add_edge(concept, key, int(mult))
    return plus
