"""Adapter command line: predict, parse, or both in one run."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .jobs import AdapterJob
from .parsing import parse_sentences
from .predict import predict_masks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgprobe-adapter",
        description="Produce kgprobe inputs from a masked language model")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cloze", required=True, type=Path)
    common.add_argument("--format", choices=("native", "lama"), default="native")
    common.add_argument("--device", default="cpu")

    p = sub.add_parser("predict", parents=[common],
                       help="top-5 fill-mask predictions per record")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--top-k", type=int, default=5)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("parse", parents=[common],
                       help="CoNLL-U parses of filled and gold sentences")
    p.add_argument("--preds", type=Path, help="predictions file (for model parses)")
    p.add_argument("--out-model", type=Path)
    p.add_argument("--out-gold", type=Path)
    p.add_argument("--parser", choices=("auto", "spacy", "heuristic"), default="auto")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("run", parents=[common],
                       help="predict then parse into one output directory")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--top-k", type=int, default=5)
    p.add_argument("--parser", choices=("auto", "spacy", "heuristic"), default="auto")
    p.set_defaults(func=cmd_run)

    return parser


def cmd_predict(args) -> int:
    job = AdapterJob(model=args.model, cloze_path=args.cloze,
                     predictions_path=args.out, cloze_format=args.format,
                     device=args.device, top_k=args.top_k)
    warnings = predict_masks(job)
    _report("predict", warnings)
    return 0


def cmd_parse(args) -> int:
    if args.out_model is None and args.out_gold is None:
        raise ValueError("nothing to do: pass --out-model and/or --out-gold")
    job = AdapterJob(model="-", cloze_path=args.cloze,
                     predictions_path=args.preds,
                     model_parses_path=args.out_model,
                     gold_parses_path=args.out_gold,
                     cloze_format=args.format, device=args.device)
    warnings = parse_sentences(job, backend=args.parser)
    _report("parse", warnings)
    return 0


def cmd_run(args) -> int:
    out = Path(args.out)
    job = AdapterJob(model=args.model, cloze_path=args.cloze,
                     predictions_path=out / "preds.jsonl",
                     model_parses_path=out / "parses_model.conllu",
                     gold_parses_path=out / "parses_gold.conllu",
                     cloze_format=args.format, device=args.device,
                     top_k=args.top_k)
    warnings = predict_masks(job)
    warnings += parse_sentences(job, backend=args.parser)
    _report("run", warnings)
    return 0


def _report(step: str, warnings: list[str]) -> None:
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{step}: done ({len(warnings)} warnings)")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"kgprobe-adapter: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
