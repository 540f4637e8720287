"""End-to-end runs: cloze file in, knowledge graph plus run report out.

A run manifest names one (model, dataset) pair and the files it needs.
Runs with a predictions file build the model graph; runs without build the
ground-truth graph from gold labels. All joins go through record ids, not
surface text, since filled text differs per model.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .conllu import ParsedSentence, parse_conllu
from .corpus import (RecordInvariantError, fill_mask, gold_sentence,
                     load_cloze, load_predictions)
from .embedding import EmbeddingConfig, embed_graph, euclidean
from .extract import RuleConfig, Triple, extract_triples, load_rule_config, write_triples
from .ged import aed
from .graph import KnowledgeGraph, build_graph, write_graph


@dataclass(frozen=True)
class RunManifest:
    model_id: str
    dataset: str
    cloze_path: Path
    parses_path: Path
    out_dir: Path
    predictions_path: Path | None = None    # absent = ground-truth run
    rules_path: Path | None = None
    cloze_format: str = "native"
    strict: bool = False
    rank: int = 1
    threads: int = 1

    def __post_init__(self):
        for path in (self.cloze_path, self.parses_path,
                     self.predictions_path, self.rules_path):
            if path is not None and not Path(path).is_file():
                raise FileNotFoundError(f"manifest references missing file: {path}")
        if self.threads < 1:
            raise ValueError("thread count must be >= 1")

    @classmethod
    def from_json(cls, path: str | Path) -> "RunManifest":
        """Manifest file: a JSON object with model_id, dataset, cloze,
        parses, out_dir and optional predictions, rules, cloze_format,
        strict, rank, threads. Relative paths resolve against the file."""
        path = Path(path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        base = path.parent

        def resolve(key):
            return (base / payload[key]) if key in payload else None

        required = [k for k in ("model_id", "dataset", "cloze", "parses", "out_dir")
                    if k not in payload]
        if required:
            raise ValueError(f"{path}: manifest missing fields: {required}")
        return cls(
            model_id=payload["model_id"],
            dataset=payload["dataset"],
            cloze_path=base / payload["cloze"],
            parses_path=base / payload["parses"],
            out_dir=base / payload["out_dir"],
            predictions_path=resolve("predictions"),
            rules_path=resolve("rules"),
            cloze_format=payload.get("cloze_format", "native"),
            strict=bool(payload.get("strict", False)),
            rank=int(payload.get("rank", 1)),
            threads=int(payload.get("threads", 1)),
        )


@dataclass
class RunReport:
    model_id: str
    dataset: str
    provenance: str
    records: int = 0
    filled: int = 0
    parsed: int = 0
    triples: int = 0
    unique_triples: int = 0
    nodes: int = 0
    edges: int = 0
    triples_per_rule: dict[str, int] = field(default_factory=dict)
    skipped_records: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, ensure_ascii=False, indent=2, sort_keys=True)


def run_extraction(manifest: RunManifest) -> tuple[KnowledgeGraph, RunReport]:
    """corpus -> fill -> parse-join -> extract -> graph for one manifest.

    Writes graph.json, triples.jsonl and report.json into the output
    directory. Per-record problems abort in strict mode and are collected
    into the report otherwise.
    """
    records, record_errors = load_cloze(manifest.cloze_path, format=manifest.cloze_format,
                                        strict=manifest.strict)
    provenance = "model" if manifest.predictions_path else "gold"
    report = RunReport(model_id=manifest.model_id, dataset=manifest.dataset,
                       provenance=provenance)
    report.records = len(records)
    report.skipped_records.extend(record_errors)

    filled = {}
    if manifest.predictions_path:
        predictions, prediction_errors = load_predictions(manifest.predictions_path,
                                                          strict=manifest.strict)
        report.skipped_records.extend(prediction_errors)
        by_id = {p.id: p for p in predictions}
        for record in records:
            preds = by_id.get(record.id)
            if preds is None:
                message = f"record {record.id!r}: no predictions"
                if manifest.strict:
                    raise RecordInvariantError(message)
                report.skipped_records.append(message)
                continue
            filled[record.id] = fill_mask(record, preds, rank=manifest.rank)
    else:
        for record in records:
            filled[record.id] = gold_sentence(record)
    report.filled = len(filled)

    sentences, parse_warnings = parse_conllu(manifest.parses_path)
    report.warnings.extend(parse_warnings)
    parses: dict[str, ParsedSentence] = {}
    for sentence in sentences:
        if sentence.id in filled:
            parses[sentence.id] = sentence
    for record_id in sorted(filled):
        if record_id not in parses:
            report.warnings.append(f"record {record_id!r}: no parse found, skipped")
    report.parsed = len(parses)

    rules = load_rule_config(manifest.rules_path) if manifest.rules_path else RuleConfig()
    ordered = [parses[k] for k in sorted(parses)]
    if manifest.threads > 1:
        with ThreadPoolExecutor(max_workers=manifest.threads) as pool:
            per_sentence = list(pool.map(lambda s: extract_triples(s, rules), ordered))
    else:
        per_sentence = [extract_triples(s, rules) for s in ordered]
    triples: list[Triple] = [t for batch in per_sentence for t in batch]
    report.triples = len(triples)
    for triple in triples:
        report.triples_per_rule[triple.rule_id] = \
            report.triples_per_rule.get(triple.rule_id, 0) + 1

    graph = build_graph(triples)
    report.unique_triples = graph.edge_count
    report.nodes = graph.node_count
    report.edges = graph.edge_count

    out_dir = Path(manifest.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_graph(graph, out_dir / "graph.json")
    write_triples(triples, out_dir / "triples.jsonl")
    (out_dir / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
    return graph, report


def compare_all(graphs: list[tuple[str, KnowledgeGraph]], reference_id: str,
                methods: set[str] = frozenset({"aed", "embedding"}),
                embedding_config: EmbeddingConfig | None = None,
                threads: int = 1) -> list[dict]:
    """One row per non-reference graph with the requested metric columns."""
    if len(graphs) < 2:
        raise ValueError("need at least two graphs to compare")
    by_id = dict(graphs)
    if len(by_id) != len(graphs):
        raise ValueError("graph ids must be unique")
    if reference_id not in by_id:
        raise ValueError(f"reference id {reference_id!r} not among the graphs")
    unknown = set(methods) - {"aed", "embedding"}
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")

    reference = by_id[reference_id]
    reference_embedding = None
    if "embedding" in methods:
        cfg = embedding_config if embedding_config is not None else EmbeddingConfig()
        reference_embedding = embed_graph(reference, cfg)

    others = [(gid, g) for gid, g in graphs if gid != reference_id]

    def row(item: tuple[str, KnowledgeGraph]) -> dict:
        gid, graph = item
        entry: dict = {"id": gid, "nodes": graph.node_count, "edges": graph.edge_count}
        if "aed" in methods:
            entry["aed"] = aed(reference, graph).cost
        if "embedding" in methods:
            cfg = embedding_config if embedding_config is not None else EmbeddingConfig()
            entry["euclidean"] = euclidean(reference_embedding, embed_graph(graph, cfg))
        return entry

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, others))
    return [row(item) for item in others]
