"""Pipeline orchestration: subcommands over one TOML config.

Every stage reads upstream artifacts from the output directory, writes its
own artifacts plus a JSON run manifest (inputs, config hash, seed, wall
time), and is reproducible byte-for-byte for a fixed config and seed
(manifest timestamps aside). Exit codes: 0 success, 1 validation error,
2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import analysis, assoc, corpus as corpus_mod, embed as embed_mod, evalsuite
from . import graphs as graphs_mod

SUBCOMMANDS = (
    "index", "patterns", "graphs", "embed", "eval-clics", "eval-roundtrip",
    "eval-retrieval", "eval-classify", "analyze", "all",
)

USAGE = """\
usage: colexgraph <subcommand> --config CONFIG [options]

subcommands:
  index           build per-language ngram occurrence indexes and the concept pool
  patterns        run the forward/backward association passes
  graphs          build the concept graph and its bipartite ngram expansion
  embed           generate random walks and train node embeddings
  eval-clics      score graph edges against a gold colexification list
  eval-roundtrip  nearest-neighbor roundtrip translation accuracy
  eval-retrieval  crosslingual verse retrieval accuracy
  eval-classify   zero-shot verse classification (macro F1)
  analyze         graph statistics, centrality, communities, group subnetworks
  all             run every stage in order

options:
  --config PATH    pipeline config (TOML); required
  --output-dir DIR override the config output_dir (env: COLEXGRAPH_OUTPUT_DIR)
  --seed N         override the global seed
  --workers N      worker processes for pattern extraction
  --lambda N       pruning threshold; repeatable, overrides the config list
  --query-lang ISO retrieval query language
  --deterministic  force single-worker, serial execution
"""


class ConfigError(ValueError):
    """Invalid configuration or unusable inputs (exit code 1)."""


class MissingArtifact(ConfigError):
    """An upstream artifact is missing; message names the file."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class PipelineConfig:
    seed: int
    output_dir: Path
    workers: int
    corpus_dir: Path
    pivot: str
    lemma_map: Optional[Path]
    max_ngram_len: Optional[int]
    unlimited_ngram_langs: tuple[str, ...]
    min_ngram_verses: int
    concept_min_freq: int
    concept_max_freq: int
    fp: assoc.FPConfig
    lambdas: tuple[int, ...]
    primary_lambda: int
    walks: embed_mod.WalkConfig
    dump_walks: bool
    train: embed_mod.TrainConfig
    gold_colex: Optional[Path]
    roundtrip_trials: int
    roundtrip_intermediates: int
    retrieval_query_lang: str
    retrieval_verse_count: int
    retrieval_min_coverage: float
    retrieval_target_langs: tuple[str, ...]
    classify_train_lang: str
    splits_dir: Optional[Path]
    classifier: evalsuite.ClassifierConfig
    resolution: float
    louvain_seed: int
    ari_runs: int
    family_grouping: Optional[Path]
    area_grouping: Optional[Path]
    config_path: Path
    raw: dict = field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        # hash the fully resolved configuration so CLI/env overrides are
        # fingerprinted too, not just the TOML contents
        canon = dataclasses.asdict(self)
        canon.pop("raw")
        canon.pop("config_path")
        return hashlib.sha256(
            json.dumps(canon, sort_keys=True, default=str).encode("utf-8")
        ).hexdigest()[:16]


def _resolve(base: Path, value: Optional[str]) -> Optional[Path]:
    if value is None:
        return None
    p = Path(value)
    return p if p.is_absolute() else base / p


def load_config(path: Path | str, overrides: Optional[dict] = None) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    with path.open("rb") as fh:
        raw = tomllib.load(fh)
    overrides = overrides or {}
    base = path.parent

    seed = int(overrides.get("seed", raw.get("seed", 42)))
    out_value = overrides.get("output_dir") or os.environ.get(
        "COLEXGRAPH_OUTPUT_DIR"
    ) or raw.get("output_dir", "out")
    output_dir = _resolve(base, str(out_value))
    workers = int(
        overrides.get("workers", raw.get("workers", os.cpu_count() or 1))
    )
    if overrides.get("deterministic"):
        workers = 1

    c = raw.get("corpus", {})
    corpus_dir = _resolve(base, c.get("dir", "corpus"))
    lemma_map = _resolve(base, c.get("lemma_map"))
    max_len = int(c.get("max_ngram_len", 8))
    p = raw.get("patterns", {})
    g = raw.get("graph", {})
    lambdas = overrides.get("lambdas") or g.get("lambdas", [50])
    lambdas = tuple(sorted(set(int(x) for x in lambdas)))
    primary = int(g.get("primary_lambda", lambdas[-1] if lambdas else 50))
    if overrides.get("lambdas"):
        primary = lambdas[0] if primary not in lambdas else primary
    w = raw.get("walks", {})
    t = raw.get("train", {})
    cl = raw.get("clics", {})
    rt = raw.get("roundtrip", {})
    rv = raw.get("retrieval", {})
    cf = raw.get("classify", {})
    an = raw.get("analysis", {})

    try:
        fp_cfg = assoc.FPConfig(
            alpha=float(p.get("alpha", 0.9)), max_iters=int(p.get("max_iters", 3))
        )
        walk_cfg = embed_mod.WalkConfig(
            p=float(w.get("p", 0.5)),
            q=float(w.get("q", 2.0)),
            walks_per_node=int(w.get("walks_per_node", 10)),
            walk_length=int(w.get("walk_length", 80)),
            seed=seed + 1,
            uniform_weights=bool(w.get("uniform_weights", False)),
        )
        train_cfg = embed_mod.TrainConfig(
            dim=int(t.get("dim", 200)),
            window=int(t.get("window", 5)),
            negatives=int(t.get("negatives", 5)),
            epochs=int(t.get("epochs", 5)),
            learning_rate=float(t.get("learning_rate", 0.025)),
            seed=seed + 2,
        )
        clf_cfg = evalsuite.ClassifierConfig(
            epochs=int(cf.get("epochs", 500)),
            learning_rate=float(cf.get("learning_rate", 0.1)),
            l2=float(cf.get("l2", 1e-4)),
            seed=seed + 5,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = PipelineConfig(
        seed=seed,
        output_dir=output_dir,
        workers=max(1, workers),
        corpus_dir=corpus_dir,
        pivot=str(c.get("pivot", "eng")),
        lemma_map=lemma_map,
        max_ngram_len=None if max_len == 0 else max_len,
        unlimited_ngram_langs=tuple(c.get("unlimited_ngram_langs", [])),
        min_ngram_verses=int(c.get("min_ngram_verses", 2)),
        concept_min_freq=int(c.get("concept_min_freq", 5)),
        concept_max_freq=int(c.get("concept_max_freq", 2000)),
        fp=fp_cfg,
        lambdas=lambdas,
        primary_lambda=primary,
        walks=walk_cfg,
        dump_walks=bool(w.get("dump_walks", False)),
        train=train_cfg,
        gold_colex=_resolve(base, cl.get("gold")),
        roundtrip_trials=int(rt.get("trials", 10)),
        roundtrip_intermediates=int(rt.get("intermediates", 3)),
        retrieval_query_lang=str(
            overrides.get("query_lang") or rv.get("query_lang", "eng")
        ),
        retrieval_verse_count=int(rv.get("verse_count", 500)),
        retrieval_min_coverage=float(rv.get("min_coverage", 400 / 500)),
        retrieval_target_langs=tuple(rv.get("target_langs", [])),
        classify_train_lang=str(cf.get("train_lang", "eng")),
        splits_dir=_resolve(base, cf.get("splits_dir")),
        classifier=clf_cfg,
        resolution=float(an.get("resolution", 0.1)),
        louvain_seed=int(an.get("louvain_seed", 114514)),
        ari_runs=int(an.get("ari_runs", 50)),
        family_grouping=_resolve(base, an.get("family_grouping")),
        area_grouping=_resolve(base, an.get("area_grouping")),
        config_path=path,
        raw=raw,
    )

    if not cfg.corpus_dir.is_dir():
        raise ConfigError(f"corpus dir not found: {cfg.corpus_dir}")
    for label, p_ in (
        ("lemma_map", cfg.lemma_map),
        ("clics gold", cfg.gold_colex),
        ("splits_dir", cfg.splits_dir),
        ("family_grouping", cfg.family_grouping),
        ("area_grouping", cfg.area_grouping),
    ):
        if p_ is not None and not p_.exists():
            raise ConfigError(f"configured {label} path not found: {p_}")
    if cfg.primary_lambda not in cfg.lambdas:
        raise ConfigError(
            f"primary_lambda {cfg.primary_lambda} not in lambdas {list(cfg.lambdas)}"
        )
    return cfg


# ---------------------------------------------------------------------------
# Artifact helpers
# ---------------------------------------------------------------------------


def _round6(obj):
    if isinstance(obj, float):
        return round(obj, 6)
    if isinstance(obj, dict):
        return {k: _round6(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round6(v) for v in obj]
    return obj


def _write_json(path: Path, obj: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_round6(obj), indent=2) + "\n", encoding="utf-8")


def _write_tsv(path: Path, rows: Sequence[Sequence[object]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write("\t".join(
                f"{x:.6f}" if isinstance(x, float) else str(x) for x in row
            ) + "\n")


def _require(path: Path) -> Path:
    if not path.exists():
        raise MissingArtifact(
            f"missing upstream artifact: {path} (run the producing stage first)"
        )
    return path


class _Manifest:
    def __init__(self, cfg: PipelineConfig, stage: str):
        self.cfg = cfg
        self.stage = stage
        self.inputs: list[str] = [str(cfg.config_path)]
        self.outputs: list[str] = []
        self.start = time.perf_counter()

    def read(self, path: Path) -> Path:
        self.inputs.append(str(path))
        return path

    def write(self, path: Path) -> Path:
        self.outputs.append(str(path))
        return path

    def finish(self) -> Path:
        path = self.cfg.output_dir / "manifests" / f"{self.stage}.json"
        self.write(path)
        _write_json(path, {
            "stage": self.stage,
            "created_utc": datetime.now(timezone.utc).isoformat(),
            "wall_time_s": round(time.perf_counter() - self.start, 3),
            "seed": self.cfg.seed,
            "config_hash": self.cfg.config_hash,
            "inputs": sorted(set(self.inputs)),
            "outputs": sorted(set(self.outputs)),
        })
        return path


def _load_corpus(cfg: PipelineConfig) -> corpus_mod.Corpus:
    try:
        return corpus_mod.load_corpus(cfg.corpus_dir, cfg.pivot, cfg.lemma_map)
    except corpus_mod.CorpusFormatError as exc:
        raise ConfigError(str(exc)) from exc


def _target_languages(corpus: corpus_mod.Corpus, cfg: PipelineConfig) -> list[str]:
    return [l for l in corpus.languages if l != cfg.pivot]


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------


def stage_index(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "index")
    man.inputs.append(str(cfg.corpus_dir))
    corpus = _load_corpus(cfg)
    out = cfg.output_dir / "index"
    out.mkdir(parents=True, exist_ok=True)
    for lang in _target_languages(corpus, cfg):
        max_len = None if lang in cfg.unlimited_ngram_langs else cfg.max_ngram_len
        index = corpus_mod.build_occurrence_index(
            corpus, lang, max_len, cfg.min_ngram_verses
        )
        corpus_mod.dump_index(
            index, man.write(out / f"{lang}.tsv"), man.write(out / f"{lang}.meta.json")
        )
    pool = corpus_mod.build_concept_pool(
        corpus, cfg.concept_min_freq, cfg.concept_max_freq
    )
    corpus_mod.dump_concept_pool(pool, man.write(cfg.output_dir / "pool.tsv"))
    _write_json(man.write(cfg.output_dir / "index" / "corpus.json"), {
        "pivot": corpus.pivot,
        "n_verses": corpus.n_verses,
        "languages": list(corpus.languages),
        "concepts": len(pool),
    })
    man.finish()


def stage_patterns(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "patterns")
    meta_path = _require(cfg.output_dir / "index" / "corpus.json")
    meta = json.loads(man.read(meta_path).read_text(encoding="utf-8"))
    pool = corpus_mod.load_concept_pool(
        man.read(_require(cfg.output_dir / "pool.tsv")), meta["n_verses"]
    )
    targets = [l for l in meta["languages"] if l != meta["pivot"]]
    indexes = {}
    for lang in targets:
        tsv = _require(cfg.output_dir / "index" / f"{lang}.tsv")
        mjson = _require(cfg.output_dir / "index" / f"{lang}.meta.json")
        indexes[lang] = corpus_mod.load_index(man.read(tsv), man.read(mjson))
    records = assoc.extract_patterns(pool, targets, indexes, cfg.fp, cfg.workers)
    assoc.dump_patterns(records, man.write(cfg.output_dir / "patterns.jsonl"))
    man.finish()


def stage_graphs(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "graphs")
    records = assoc.load_patterns(
        man.read(_require(cfg.output_dir / "patterns.jsonl"))
    )
    out = cfg.output_dir / "graphs"
    out.mkdir(parents=True, exist_ok=True)
    net = graphs_mod.build_colexnet(records)
    graphs_mod.dump_colexnet(net, man.write(out / "colexnet.unpruned.tsv"))
    for lam in cfg.lambdas:
        pruned = graphs_mod.prune(net, graphs_mod.PruneConfig(lam))
        graphs_mod.dump_colexnet(pruned, man.write(out / f"colexnet.l{lam}.tsv"))
        plus = graphs_mod.build_colexnetplus(records, pruned)
        graphs_mod.dump_colexnetplus(
            plus, man.write(out / f"colexnetplus.l{lam}.tsv")
        )
    man.finish()


def stage_embed(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "embed")
    plus_path = _require(
        cfg.output_dir / "graphs" / f"colexnetplus.l{cfg.primary_lambda}.tsv"
    )
    plus = graphs_mod.load_colexnetplus(man.read(plus_path))
    walks = embed_mod.generate_walks(plus, cfg.walks)
    out = cfg.output_dir / "embed"
    out.mkdir(parents=True, exist_ok=True)
    if cfg.dump_walks:
        embed_mod.dump_walks(walks, man.write(out / "walks.txt"))
    table = embed_mod.train_skipgram(walks, cfg.train)
    table.save(man.write(out / "embeddings.txt"))
    man.finish()


def _load_table(cfg: PipelineConfig, man: _Manifest) -> embed_mod.EmbeddingTable:
    path = _require(cfg.output_dir / "embed" / "embeddings.txt")
    return embed_mod.EmbeddingTable.load(man.read(path))


def stage_eval_clics(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "eval-clics")
    if cfg.gold_colex is None:
        raise ConfigError("eval-clics requires a [clics] gold path in the config")
    gold = evalsuite.load_gold_colex(man.read(cfg.gold_colex))
    net = graphs_mod.load_colexnet(
        man.read(_require(cfg.output_dir / "graphs" / "colexnet.unpruned.tsv"))
    )
    reports = []
    for lam in cfg.lambdas:
        pruned = graphs_mod.prune(net, graphs_mod.PruneConfig(lam))
        try:
            rep = evalsuite.eval_clics(pruned, gold)
        except ValueError as exc:
            reports.append({"lambda": lam, "error": str(exc)})
            continue
        reports.append({
            "lambda": lam,
            "common_count": rep.common_count,
            "micro_recall": rep.micro_recall,
            "macro_recall": rep.macro_recall,
            "aw_colex": rep.aw_colex,
        })
    out = cfg.output_dir / "reports"
    _write_json(man.write(out / "clics.json"), {"reports": reports})
    _write_tsv(
        man.write(out / "clics.tsv"),
        [("lambda", "common_count", "micro_recall", "macro_recall", "aw_colex")]
        + [
            (r["lambda"], r["common_count"], r["micro_recall"],
             r["macro_recall"], r["aw_colex"])
            for r in reports
            if "error" not in r
        ],
    )
    man.finish()


def stage_eval_roundtrip(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "eval-roundtrip")
    table = _load_table(cfg, man)
    langs = sorted({k[:3] for k in table.keys if embed_mod.is_ngram_key(k)})
    report = evalsuite.roundtrip_eval(
        table,
        langs,
        trials=cfg.roundtrip_trials,
        intermediates=cfg.roundtrip_intermediates,
        seed=cfg.seed + 4,
    )
    out = cfg.output_dir / "reports"
    _write_json(man.write(out / "roundtrip.json"), report)
    _write_tsv(
        man.write(out / "roundtrip.tsv"),
        [("trial", "langs", "top1", "top5", "top10")]
        + [
            (i, ",".join(t["langs"]), t["top1"], t["top5"], t["top10"])
            for i, t in enumerate(report["per_trial"])
        ],
    )
    man.finish()


def stage_eval_retrieval(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "eval-retrieval")
    corpus = _load_corpus(cfg)
    man.inputs.append(str(cfg.corpus_dir))
    table = _load_table(cfg, man)
    query = cfg.retrieval_query_lang
    if query not in corpus.tokens:
        raise ConfigError(f"retrieval query language {query!r} not in corpus")
    targets = list(cfg.retrieval_target_langs) or [
        l for l in corpus.languages if l != query
    ]
    rng = random.Random(cfg.seed + 3)
    count = min(cfg.retrieval_verse_count, corpus.n_verses)
    verse_ids = sorted(rng.sample(list(corpus.verse_ids), count))
    report = evalsuite.eval_retrieval(
        table, corpus, query, targets, verse_ids,
        min_coverage=cfg.retrieval_min_coverage,
    )
    out = cfg.output_dir / "reports"
    _write_json(man.write(out / "retrieval.json"), report)
    per = report["per_language"]
    _write_tsv(
        man.write(out / "retrieval.tsv"),
        [("language", "top1", "top5", "top10", "queries", "missing_targets")]
        + [
            (l, per[l]["top1"], per[l]["top5"], per[l]["top10"],
             per[l]["queries"], per[l]["missing_targets"])
            for l in sorted(per)
        ],
    )
    man.finish()


def stage_eval_classify(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "eval-classify")
    if cfg.splits_dir is None:
        raise ConfigError("eval-classify requires a [classify] splits_dir in the config")
    corpus = _load_corpus(cfg)
    man.inputs.append(str(cfg.corpus_dir))
    table = _load_table(cfg, man)
    train_path = cfg.splits_dir / f"{cfg.classify_train_lang}.train.tsv"
    if not train_path.exists():
        raise MissingArtifact(f"missing train split: {train_path}")
    train_split = evalsuite.load_split(man.read(train_path))
    test_splits = {}
    for path in sorted(cfg.splits_dir.glob("*.test.tsv")):
        lang = path.name.split(".")[0]
        if lang != cfg.classify_train_lang:
            test_splits[lang] = evalsuite.load_split(man.read(path))
    if not test_splits:
        raise MissingArtifact(f"no `<iso>.test.tsv` files in {cfg.splits_dir}")
    report = evalsuite.eval_classification(
        table, corpus, cfg.classify_train_lang, sorted(test_splits),
        train_split, test_splits, cfg.classifier,
    )
    out = cfg.output_dir / "reports"
    _write_json(man.write(out / "classification.json"), report)
    per = report["per_language"]
    _write_tsv(
        man.write(out / "classification.tsv"),
        [("language", "macro_f1", "evaluated", "dropped")]
        + [
            (l, per[l]["macro_f1"], per[l]["evaluated"], per[l]["dropped"])
            for l in sorted(per)
        ],
    )
    man.finish()


def stage_analyze(cfg: PipelineConfig) -> None:
    man = _Manifest(cfg, "analyze")
    lam = cfg.primary_lambda
    net = graphs_mod.load_colexnet(
        man.read(_require(cfg.output_dir / "graphs" / f"colexnet.l{lam}.tsv"))
    )
    plus = graphs_mod.load_colexnetplus(
        man.read(_require(cfg.output_dir / "graphs" / f"colexnetplus.l{lam}.tsv"))
    )
    out = cfg.output_dir / "analysis"
    out.mkdir(parents=True, exist_ok=True)

    part = analysis.louvain(net, cfg.resolution, cfg.louvain_seed)
    stats = {
        "lambda": lam,
        "colexnet": analysis.graph_stats(net),
        "colexnetplus": analysis.graph_stats(plus.adj),
        "communities": part.n_communities(),
        "modularity": part.modularity,
        "resolution": cfg.resolution,
    }
    _write_json(man.write(out / "stats.json"), stats)
    _write_tsv(
        man.write(out / "degree_distribution.tsv"),
        [("degree", "count")] + list(analysis.degree_distribution(net).items()),
    )
    btw = analysis.betweenness(net)
    _write_tsv(
        man.write(out / "betweenness.tsv"),
        [("node", "betweenness")] + [(n, btw[n]) for n in sorted(btw)],
    )
    _write_tsv(
        man.write(out / "communities.tsv"),
        [("node", "community")]
        + [(n, part.assignment[n]) for n in sorted(part.assignment)],
    )

    for kind, grouping_path in (
        ("family", cfg.family_grouping), ("area", cfg.area_grouping)
    ):
        if grouping_path is None:
            continue
        grouping = analysis.load_grouping(man.read(grouping_path))
        groups = sorted(set(grouping.values()))
        nets = {"base": net}
        sub_rows = [("group", "nodes", "edges", "avg_degree", "components")]
        for group in groups:
            sub = analysis.subnetwork(net, grouping, group)
            nets[group] = sub
            st = analysis.graph_stats(sub)
            sub_rows.append(
                (group, st["nodes"], st["edges"], st["avg_degree"], st["components"])
            )
        labels, matrix = analysis.pairwise_ari_matrix(
            nets, cfg.resolution, cfg.louvain_seed, cfg.ari_runs
        )
        _write_tsv(
            man.write(out / f"subnetwork_stats.{kind}.tsv"), sub_rows
        )
        _write_tsv(
            man.write(out / f"ari_{kind}.tsv"),
            [("group", *labels)]
            + [(labels[i], *matrix[i]) for i in range(len(labels))],
        )
    man.finish()


_STAGES = {
    "index": stage_index,
    "patterns": stage_patterns,
    "graphs": stage_graphs,
    "embed": stage_embed,
    "eval-clics": stage_eval_clics,
    "eval-roundtrip": stage_eval_roundtrip,
    "eval-retrieval": stage_eval_retrieval,
    "eval-classify": stage_eval_classify,
    "analyze": stage_analyze,
}

_ALL_ORDER = (
    "index", "patterns", "graphs", "embed", "eval-clics", "eval-roundtrip",
    "eval-retrieval", "eval-classify", "analyze",
)


def _run_all(cfg: PipelineConfig) -> None:
    for stage in _ALL_ORDER:
        if stage == "eval-clics" and cfg.gold_colex is None:
            continue
        if stage == "eval-classify" and cfg.splits_dir is None:
            continue
        _STAGES[stage](cfg)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); we map usage to 1
        raise ConfigError(message)


def run(argv: Sequence[str]) -> int:
    """Entry point used by the console script; returns the exit code."""
    argv = list(argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0 if argv else 1
    sub = argv[0]
    if sub not in SUBCOMMANDS:
        sys.stderr.write(f"unknown subcommand: {sub!r}\n\n{USAGE}")
        return 1
    parser = _Parser(prog=f"colexgraph {sub}", add_help=True)
    parser.add_argument("--config", required=True)
    parser.add_argument("--output-dir", default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--lambda", dest="lambdas", type=int, action="append")
    parser.add_argument("--query-lang", default=None)
    parser.add_argument("--deterministic", action="store_true")
    try:
        args = parser.parse_args(argv[1:])
        overrides = {
            k: v
            for k, v in {
                "output_dir": args.output_dir,
                "seed": args.seed,
                "workers": args.workers,
                "lambdas": args.lambdas,
                "query_lang": args.query_lang,
                "deterministic": args.deterministic or None,
            }.items()
            if v is not None
        }
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except SystemExit:
        # argparse --help prints and raises SystemExit(0)
        return 0

    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    try:
        if sub == "all":
            _run_all(cfg)
        else:
            _STAGES[sub](cfg)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Exception as exc:  # runtime failure
        sys.stderr.write(f"runtime failure: {type(exc).__name__}: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
