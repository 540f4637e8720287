from pathlib import Path

import pytest

from kgprobe.corpus import RecordInvariantError
from kgprobe.graph import read_graph
from kgprobe.pipeline import RunManifest, compare_all, run_extraction

from conftest import DATA, make_graph

CORPUS = DATA / "corpus"


def model_manifest(out_dir: Path, **overrides) -> RunManifest:
    kwargs = dict(
        model_id="toy", dataset="squad",
        cloze_path=CORPUS / "cloze.jsonl",
        parses_path=CORPUS / "parses_model.conllu",
        predictions_path=CORPUS / "preds.jsonl",
        rules_path=CORPUS / "rules.json",
        out_dir=out_dir,
    )
    kwargs.update(overrides)
    return RunManifest(**kwargs)


def gold_manifest(out_dir: Path, **overrides) -> RunManifest:
    kwargs = dict(
        model_id="ground-truth", dataset="squad",
        cloze_path=CORPUS / "cloze.jsonl",
        parses_path=CORPUS / "parses_gold.conllu",
        rules_path=CORPUS / "rules.json",
        out_dir=out_dir,
    )
    kwargs.update(overrides)
    return RunManifest(**kwargs)


def test_model_run_counts(tmp_path):
    graph, report = run_extraction(model_manifest(tmp_path))
    assert report.records == 10
    assert report.filled == 10
    assert report.parsed == 10
    assert graph.node_count == 19
    assert graph.edge_count == 10
    assert report.unique_triples == 10
    assert report.skipped_records == []
    assert (tmp_path / "graph.json").is_file()
    assert (tmp_path / "triples.jsonl").is_file()
    assert (tmp_path / "report.json").is_file()


def test_gold_run_counts(tmp_path):
    graph, report = run_extraction(gold_manifest(tmp_path))
    assert report.provenance == "gold"
    assert graph.node_count == 20
    assert graph.edge_count == 11


def test_single_record_composition(tmp_path):
    cloze = tmp_path / "one.jsonl"
    cloze.write_text('{"id": "q01", "masked_sentence": "Einstein developed '
                     '[MASK] .", "gold_label": "relativity", "source": "squad"}\n',
                     encoding="utf-8")
    preds = tmp_path / "preds.jsonl"
    preds.write_text('{"id": "q01", "candidates": [{"token": "relativity", '
                     '"score": 0.9}]}\n', encoding="utf-8")
    manifest = model_manifest(tmp_path / "out", cloze_path=cloze,
                              predictions_path=preds)
    graph, _ = run_extraction(manifest)
    assert graph.node_count == 2 and graph.edge_count == 1


def test_gold_and_model_identical_when_fill_matches(tmp_path):
    cloze = tmp_path / "one.jsonl"
    cloze.write_text('{"id": "q01", "masked_sentence": "Einstein developed '
                     '[MASK] .", "gold_label": "relativity", "source": "squad"}\n',
                     encoding="utf-8")
    preds = tmp_path / "preds.jsonl"
    preds.write_text('{"id": "q01", "candidates": [{"token": "relativity", '
                     '"score": 0.9}]}\n', encoding="utf-8")
    model_graph, _ = run_extraction(model_manifest(
        tmp_path / "m", cloze_path=cloze, predictions_path=preds,
        parses_path=CORPUS / "parses_gold.conllu"))
    gold_graph, _ = run_extraction(gold_manifest(
        tmp_path / "g", cloze_path=cloze))
    assert model_graph == gold_graph


def test_reproducible_bytes(tmp_path):
    run_extraction(model_manifest(tmp_path / "first"))
    run_extraction(model_manifest(tmp_path / "second"))
    for name in ("graph.json", "triples.jsonl", "report.json"):
        assert (tmp_path / "first" / name).read_bytes() == \
            (tmp_path / "second" / name).read_bytes()


def test_threaded_run_matches_sequential(tmp_path):
    sequential, _ = run_extraction(model_manifest(tmp_path / "seq"))
    threaded, _ = run_extraction(model_manifest(tmp_path / "thr", threads=4))
    assert sequential == threaded
    assert (tmp_path / "seq" / "graph.json").read_bytes() == \
        (tmp_path / "thr" / "graph.json").read_bytes()


def test_missing_parse_is_a_warning(tmp_path):
    trimmed = tmp_path / "trimmed.conllu"
    blocks = (CORPUS / "parses_model.conllu").read_text(encoding="utf-8").split("\n\n")
    trimmed.write_text("\n\n".join(blocks[:-1]).rstrip() + "\n", encoding="utf-8")
    manifest = model_manifest(tmp_path / "out", parses_path=trimmed)
    graph, report = run_extraction(manifest)
    assert report.parsed == 9
    assert sum("no parse found" in w for w in report.warnings) == 1


def test_missing_predictions_strict_vs_lenient(tmp_path):
    preds = tmp_path / "partial.jsonl"
    lines = (CORPUS / "preds.jsonl").read_text(encoding="utf-8").splitlines()
    preds.write_text("\n".join(lines[1:]) + "\n", encoding="utf-8")
    lenient = model_manifest(tmp_path / "out", predictions_path=preds)
    _, report = run_extraction(lenient)
    assert any("no predictions" in s for s in report.skipped_records)
    with pytest.raises(RecordInvariantError):
        run_extraction(model_manifest(tmp_path / "strict", predictions_path=preds,
                                      strict=True))


def test_manifest_missing_file_rejected(tmp_path):
    with pytest.raises(FileNotFoundError):
        model_manifest(tmp_path, cloze_path=tmp_path / "nope.jsonl")


def test_compare_all_identical_copy(tmp_path):
    graph, _ = run_extraction(gold_manifest(tmp_path))
    rows = compare_all([("a", graph), ("a-copy", graph)], "a")
    assert len(rows) == 1
    assert rows[0]["id"] == "a-copy"
    assert rows[0]["aed"] == 0.0
    assert rows[0]["euclidean"] == 0.0


def test_compare_all_requires_reference():
    g = make_graph(["a"], [])
    with pytest.raises(ValueError, match="reference"):
        compare_all([("x", g), ("y", g)], "missing")


def test_compare_all_requires_two_graphs():
    g = make_graph(["a"], [])
    with pytest.raises(ValueError, match="at least two"):
        compare_all([("x", g)], "x")


def test_compare_all_row_count(tmp_path):
    g = make_graph(["a"], [])
    h = make_graph(["a", "b"], [("a", "b", "r")])
    rows = compare_all([("x", g), ("y", h), ("z", g)], "x", methods={"aed"})
    assert [r["id"] for r in rows] == ["y", "z"]
    assert all("euclidean" not in r for r in rows)


def test_written_graph_loads_back(tmp_path):
    graph, _ = run_extraction(model_manifest(tmp_path))
    assert read_graph(tmp_path / "graph.json") == graph
