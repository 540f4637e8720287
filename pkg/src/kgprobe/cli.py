"""Command-line surface: extract, ged, embed, posor, report.

Outputs are machine-readable (JSON/CSV) by default; --pretty adds a human
table on stdout. Exit codes: 0 success, 1 validation error (bad flags,
unreadable inputs), 2 per-record failures under --strict. Commands write
only below their --out path.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .conllu import parse_conllu
from .corpus import ClozeFormatError, RecordInvariantError
from .diagnostics import (REPORT_TAGS, pos_counts, pos_frequencies, posor,
                          radar_values, render_value)
from .embedding import EmbeddingConfig, embed_graph, euclidean
from .extract import read_triples
from .ged import BACKEND, UNIT_COSTS, aed, exact_ged
from .graph import read_graph
from .pipeline import RunManifest, compare_all, run_extraction


@dataclass(frozen=True)
class GlobalConfig:
    strictness: str = "lenient"          # "strict" | "lenient"
    threads: int = 1
    out_dir: Path | None = None
    seed: int = 0                        # for randomized test utilities only

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("thread hint must be >= 1")
        if self.strictness not in ("strict", "lenient"):
            raise ValueError(f"unknown strictness {self.strictness!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):   # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _default_threads() -> int:
    raw = os.environ.get("KGPROBE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgprobe",
                     description="Knowledge-graph probing of masked language models")
    parser.add_argument("--version", action="version",
                        version=f"kgprobe {__version__} (assignment backend: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[], help="run the cloze-to-graph pipeline")
    p.add_argument("--manifest", type=Path,
                   help="run manifest file; overrides the per-file flags")
    p.add_argument("--cloze", type=Path)
    p.add_argument("--preds", type=Path, help="predictions file; omit for a ground-truth run")
    p.add_argument("--parses", type=Path)
    p.add_argument("--gold-parses", type=Path,
                   help="also build the ground-truth graph from these parses (under <out>/gold)")
    p.add_argument("--rules", type=Path)
    p.add_argument("--out", type=Path, help="output directory (required without --manifest)")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--format", choices=("native", "lama"), default="native")
    p.add_argument("--source", default="other")
    p.add_argument("--model-id", default="model")
    p.add_argument("--dataset", default="other")
    p.add_argument("--rank", type=int, default=1,
                   help="candidate rank to fill with (1 = most likely)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized test utilities (the pipeline itself "
                        "is deterministic)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("ged", help="edit distance between graph files")
    p.add_argument("graphs", nargs="+", type=Path)
    p.add_argument("--method", choices=("exact", "aed"), default="aed")
    p.add_argument("--node-limit", type=int, default=8)
    p.add_argument("--out", type=Path,
                   help="CSV distance matrix (required for more than two graphs)")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_ged)

    p = sub.add_parser("embed", help="embed graphs; optionally emit pairwise distances")
    p.add_argument("graphs", nargs="+", type=Path)
    p.add_argument("--theta-max", type=float, default=2.5)
    p.add_argument("--eval-points", type=int, default=25)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--out", required=True, type=Path, help="embeddings file (JSON lines)")
    p.add_argument("--distances", type=Path, help="also write a pairwise distance CSV")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("posor", help="part-of-speech overprediction report")
    p.add_argument("--lm-graph", required=True, type=Path)
    p.add_argument("--gt-graph", required=True, type=Path)
    p.add_argument("--lm-triples", type=Path,
                   help="defaults to triples.jsonl next to --lm-graph")
    p.add_argument("--gt-triples", type=Path,
                   help="defaults to triples.jsonl next to --gt-graph")
    p.add_argument("--parses", required=True, type=Path, action="append",
                   help="CoNLL-U file(s) for the model graph's sentences (repeatable)")
    p.add_argument("--gt-parses", type=Path, action="append",
                   help="CoNLL-U file(s) for the ground-truth graph; defaults to --parses")
    p.add_argument("--model-id", default="model")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_posor)

    p = sub.add_parser("report", help="comparison table across graphs")
    p.add_argument("--graph", required=True, action="append", metavar="ID=PATH")
    p.add_argument("--reference", required=True)
    p.add_argument("--methods", default="aed,embedding")
    p.add_argument("--posor", action="append", metavar="ID=PATH", default=[],
                   help="posor.json files to merge into a per-model tag table")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_report)

    return parser


def cmd_extract(args) -> int:
    config = GlobalConfig(strictness="strict" if args.strict else "lenient",
                          threads=args.threads, out_dir=args.out, seed=args.seed)
    if args.manifest is not None:
        manifest = RunManifest.from_json(args.manifest)
    else:
        if args.cloze is None or args.parses is None or args.out is None:
            raise ValueError("either --manifest or all of --cloze, --parses "
                             "and --out are required")
        manifest = RunManifest(
            model_id=args.model_id, dataset=args.dataset,
            cloze_path=args.cloze, parses_path=args.parses,
            predictions_path=args.preds, rules_path=args.rules,
            out_dir=args.out, cloze_format=args.format,
            strict=config.strictness == "strict", rank=args.rank,
            threads=config.threads,
        )
    _, report = run_extraction(manifest)
    print(f"extract: {report.nodes} nodes, {report.edges} edges, "
          f"{report.triples} triples ({report.unique_triples} unique), "
          f"{len(report.skipped_records)} skipped")
    if args.gold_parses is not None:
        gold = RunManifest(
            model_id=manifest.model_id, dataset=manifest.dataset,
            cloze_path=manifest.cloze_path, parses_path=args.gold_parses,
            rules_path=manifest.rules_path,
            out_dir=Path(manifest.out_dir) / "gold",
            cloze_format=manifest.cloze_format, strict=manifest.strict,
            threads=manifest.threads,
        )
        _, gold_report = run_extraction(gold)
        print(f"extract (gold): {gold_report.nodes} nodes, {gold_report.edges} edges")
    return 0


def _load_graphs(paths: list[Path]) -> list[tuple[str, object]]:
    loaded = []
    for path in paths:
        loaded.append((path.stem, read_graph(path)))
    return loaded


def cmd_ged(args) -> int:
    graphs = _load_graphs(args.graphs)
    if len(graphs) < 2:
        raise ValueError("ged needs at least two graph files")

    def distance(a, b) -> float:
        if args.method == "exact":
            return exact_ged(a, b, UNIT_COSTS, node_limit=args.node_limit).cost
        return aed(a, b, UNIT_COSTS).cost

    if len(graphs) > 2 and not args.out:
        raise ValueError("--out is required when more than two graphs are given")
    ids = [gid for gid, _ in graphs]
    matrix = []
    for i, (_, a) in enumerate(graphs):
        row = []
        for j, (_, b) in enumerate(graphs):
            row.append(0.0 if i == j else distance(a, b))
        matrix.append(row)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["graph"] + ids)
            for gid, row in zip(ids, matrix):
                writer.writerow([gid] + [_format_number(v) for v in row])
    if len(graphs) == 2:
        print(_format_number(matrix[0][1]))
    if args.pretty:
        print("\t".join(["graph"] + ids))
        for gid, row in zip(ids, matrix):
            print("\t".join([gid] + [_format_number(v) for v in row]))
    return 0


def cmd_embed(args) -> int:
    cfg = EmbeddingConfig(theta_max=args.theta_max, eval_points=args.eval_points,
                          order=args.order)
    graphs = _load_graphs(args.graphs)
    embeddings = [(gid, embed_graph(g, cfg)) for gid, g in graphs]
    with open(args.out, "w", encoding="utf-8") as handle:
        for gid, emb in embeddings:
            handle.write(json.dumps({
                "graph_id": gid,
                "config_fingerprint": emb.config_fingerprint,
                "vector": [float(x) for x in emb.vector],
            }) + "\n")
    if args.distances:
        if len(embeddings) < 2:
            raise ValueError("--distances needs at least two graphs")
        ids = [gid for gid, _ in embeddings]
        with open(args.distances, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["graph"] + ids)
            for gid, emb in embeddings:
                row = [euclidean(emb, other) for _, other in embeddings]
                writer.writerow([gid] + [_format_number(v) for v in row])
    print(f"embed: wrote {len(embeddings)} embeddings "
          f"({cfg.dimension} dimensions, fingerprint {cfg.fingerprint()})")
    return 0


def cmd_posor(args) -> int:
    lm_triples_path = args.lm_triples or args.lm_graph.parent / "triples.jsonl"
    gt_triples_path = args.gt_triples or args.gt_graph.parent / "triples.jsonl"
    for path in (args.lm_graph, args.gt_graph, lm_triples_path, gt_triples_path):
        if not Path(path).is_file():
            raise ValueError(f"missing input file: {path}")
    read_graph(args.lm_graph)     # validate the graphs the triples belong to
    read_graph(args.gt_graph)

    warnings: list[str] = []

    def load_parses(paths):
        index = {}
        for parse_path in paths:
            sentences, parse_warnings = parse_conllu(parse_path)
            warnings.extend(parse_warnings)
            for sentence in sentences:
                index[sentence.id] = sentence
        return index

    lm_parses = load_parses(args.parses)
    gt_parses = load_parses(args.gt_parses) if args.gt_parses else lm_parses

    lm_counts, lm_warnings = pos_counts(read_triples(lm_triples_path), lm_parses)
    gt_counts, gt_warnings = pos_counts(read_triples(gt_triples_path), gt_parses)
    warnings.extend(lm_warnings)
    warnings.extend(gt_warnings)
    report = posor(lm_counts, gt_counts)
    radar = radar_values(report)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "model_id": args.model_id,
        "posor": {tag: report.values[tag] for tag in REPORT_TAGS},
        "lm_counts": dict(report.lm_counts.counts, X=report.lm_counts.x_count),
        "gt_counts": dict(report.gt_counts.counts, X=report.gt_counts.x_count),
        "radar": radar,
        "radar_semantics": "100 minus absolute overprediction rate, floored at 0",
        "warnings": warnings,
    }
    (out_dir / "posor.json").write_text(
        json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    with open(out_dir / "posor.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["model"] + list(REPORT_TAGS))
        writer.writerow([args.model_id] + [render_value(report.values[t]) for t in REPORT_TAGS])
    (out_dir / "radar.json").write_text(
        json.dumps({args.model_id: radar}, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8")
    with open(out_dir / "frequencies.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["graph"] + list(REPORT_TAGS))
        for name, counts in (("lm", lm_counts), ("gt", gt_counts)):
            freqs = pos_frequencies(counts)
            writer.writerow([name] + [f"{freqs[t]:.1f}" for t in REPORT_TAGS])
    if args.pretty:
        print("tag   " + "  ".join(f"{t:>6}" for t in REPORT_TAGS))
        print("posor " + "  ".join(f"{render_value(report.values[t]):>6}" for t in REPORT_TAGS))
    print(f"posor: lm {lm_counts.total} tokens, gt {gt_counts.total} tokens, "
          f"{len(warnings)} warnings")
    return 0


def _parse_id_paths(entries: list[str], flag: str) -> list[tuple[str, Path]]:
    pairs = []
    for entry in entries:
        if "=" not in entry:
            raise ValueError(f"{flag} expects ID=PATH, got {entry!r}")
        gid, _, path = entry.partition("=")
        pairs.append((gid, Path(path)))
    return pairs


def cmd_report(args) -> int:
    pairs = _parse_id_paths(args.graph, "--graph")
    graphs = [(gid, read_graph(path)) for gid, path in pairs]
    methods = {m.strip() for m in args.methods.split(",") if m.strip()}
    rows = compare_all(graphs, args.reference, methods=methods, threads=args.threads)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    columns = ["id", "nodes", "edges"]
    if "aed" in methods:
        columns.append("aed")
    if "embedding" in methods:
        columns.append("euclidean")
    with open(out_dir / "comparison.csv", "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in columns])
    if args.pretty:
        print("\t".join(columns))
        for row in rows:
            print("\t".join(str(_format_cell(row[c])) for c in columns))

    if args.posor:
        table_rows = []
        for gid, path in _parse_id_paths(args.posor, "--posor"):
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
            table_rows.append((gid, payload["posor"]))
        with open(out_dir / "posor_table.csv", "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["model"] + list(REPORT_TAGS))
            for gid, values in table_rows:
                writer.writerow([gid] + [render_value(values.get(t)) for t in REPORT_TAGS])
    print(f"report: {len(rows)} comparison rows against {args.reference!r}")
    return 0


def _format_number(value: float) -> str:
    return f"{value:.6g}"


def _format_cell(value):
    if isinstance(value, float):
        return _format_number(value)
    return value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except RecordInvariantError as exc:
        print(f"kgprobe: record failure in strict mode: {exc}", file=sys.stderr)
        return 2
    except (ClozeFormatError, FileNotFoundError, ValueError, OSError) as exc:
        print(f"kgprobe: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
