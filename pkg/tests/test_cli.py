"""Command-line behaviour, including the golden-file pipeline run.

The golden files under tests/data/golden were produced once by the
reference run of the full pipeline over the bundled 10-sentence corpus
and reviewed by hand; the CLI must reproduce them byte for byte.
"""

import json

import pytest

from kgprobe.cli import main

from conftest import DATA

CORPUS = DATA / "corpus"
GOLDEN = DATA / "golden"


def run(argv) -> int:
    return main([str(a) for a in argv])


def test_full_pipeline_matches_golden_files(tmp_path, capsys):
    assert run(["extract", "--cloze", CORPUS / "cloze.jsonl",
                "--preds", CORPUS / "preds.jsonl",
                "--parses", CORPUS / "parses_model.conllu",
                "--rules", CORPUS / "rules.json",
                "--out", tmp_path / "model",
                "--model-id", "toy", "--dataset", "squad"]) == 0
    assert run(["extract", "--cloze", CORPUS / "cloze.jsonl",
                "--parses", CORPUS / "parses_gold.conllu",
                "--rules", CORPUS / "rules.json",
                "--out", tmp_path / "gold",
                "--model-id", "ground-truth", "--dataset", "squad"]) == 0
    assert run(["report", "--graph", f"toy={tmp_path / 'model' / 'graph.json'}",
                "--graph", f"gt={tmp_path / 'gold' / 'graph.json'}",
                "--reference", "gt", "--out", tmp_path / "report"]) == 0
    assert run(["posor", "--lm-graph", tmp_path / "model" / "graph.json",
                "--gt-graph", tmp_path / "gold" / "graph.json",
                "--parses", CORPUS / "parses_model.conllu",
                "--gt-parses", CORPUS / "parses_gold.conllu",
                "--out", tmp_path / "posor", "--model-id", "toy"]) == 0
    capsys.readouterr()

    for relative in ("model/graph.json", "model/triples.jsonl", "model/report.json",
                     "gold/graph.json", "gold/triples.jsonl", "gold/report.json",
                     "report/comparison.csv", "posor/posor.json", "posor/posor.csv",
                     "posor/radar.json", "posor/frequencies.csv"):
        produced = (tmp_path / relative).read_bytes()
        expected = (GOLDEN / relative).read_bytes()
        assert produced == expected, f"{relative} differs from golden file"


def test_ged_same_graph_prints_zero(capsys):
    code = run(["ged", GOLDEN / "gold" / "graph.json", GOLDEN / "gold" / "graph.json"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "0"


def test_ged_pair_value(capsys):
    code = run(["ged", GOLDEN / "model" / "graph.json", GOLDEN / "gold" / "graph.json"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "6"


def test_ged_matrix(tmp_path, capsys):
    out = tmp_path / "matrix.csv"
    code = run(["ged", GOLDEN / "model" / "graph.json",
                GOLDEN / "gold" / "graph.json",
                GOLDEN / "model" / "graph.json", "--out", out])
    assert code == 0
    rows = out.read_text(encoding="utf-8").strip().splitlines()
    assert rows[0] == "graph,graph,graph,graph"
    assert rows[1].split(",")[1:] == ["0", "6", "0"]


def test_extract_missing_parses_flag_is_usage_error(capsys):
    code = run(["extract", "--cloze", CORPUS / "cloze.jsonl", "--out", "x"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_extract_from_manifest_file(tmp_path):
    manifest = tmp_path / "run.json"
    manifest.write_text(json.dumps({
        "model_id": "toy", "dataset": "squad",
        "cloze": str(CORPUS / "cloze.jsonl"),
        "predictions": str(CORPUS / "preds.jsonl"),
        "parses": str(CORPUS / "parses_model.conllu"),
        "rules": str(CORPUS / "rules.json"),
        "out_dir": str(tmp_path / "out"),
    }), encoding="utf-8")
    assert run(["extract", "--manifest", manifest]) == 0
    assert (tmp_path / "out" / "graph.json").read_bytes() == \
        (GOLDEN / "model" / "graph.json").read_bytes()


def test_unknown_flag_exits_one(capsys):
    code = run(["ged", "--definitely-not-a-flag"])
    assert code == 1


def test_missing_input_file_exits_one(tmp_path, capsys):
    code = run(["extract", "--cloze", tmp_path / "absent.jsonl",
                "--parses", CORPUS / "parses_model.conllu",
                "--out", tmp_path / "out"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_strict_record_failure_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "x", "masked_sentence": "no mask here", '
                   '"gold_label": "y", "source": "other"}\n', encoding="utf-8")
    code = run(["extract", "--cloze", bad,
                "--parses", CORPUS / "parses_model.conllu",
                "--out", tmp_path / "out", "--strict"])
    assert code == 2


def test_embed_command(tmp_path, capsys):
    out = tmp_path / "embeddings.jsonl"
    distances = tmp_path / "distances.csv"
    code = run(["embed", GOLDEN / "model" / "graph.json",
                GOLDEN / "gold" / "graph.json",
                "--out", out, "--distances", distances])
    assert code == 0
    lines = [json.loads(l) for l in out.read_text(encoding="utf-8").splitlines()]
    assert len(lines) == 2
    assert len(lines[0]["vector"]) == 100
    assert lines[0]["config_fingerprint"] == lines[1]["config_fingerprint"]
    header = distances.read_text(encoding="utf-8").splitlines()[0]
    assert header == "graph,graph,graph"


def test_report_includes_posor_table(tmp_path):
    code = run(["report", "--graph", f"toy={GOLDEN / 'model' / 'graph.json'}",
                "--graph", f"gt={GOLDEN / 'gold' / 'graph.json'}",
                "--reference", "gt",
                "--posor", f"toy={GOLDEN / 'posor' / 'posor.json'}",
                "--out", tmp_path])
    assert code == 0
    table = (tmp_path / "posor_table.csv").read_text(encoding="utf-8").splitlines()
    assert table[0].startswith("model,VERB,NOUN")
    assert table[1].startswith("toy,-9.1,-9.1")


def test_outputs_stay_under_out(tmp_path, monkeypatch):
    workdir = tmp_path / "cwd"
    workdir.mkdir()
    monkeypatch.chdir(workdir)
    out = tmp_path / "sandbox"
    assert run(["extract", "--cloze", CORPUS / "cloze.jsonl",
                "--preds", CORPUS / "preds.jsonl",
                "--parses", CORPUS / "parses_model.conllu",
                "--out", out]) == 0
    assert list(workdir.iterdir()) == []


def test_idempotent_outputs(tmp_path):
    for _ in range(2):
        assert run(["extract", "--cloze", CORPUS / "cloze.jsonl",
                    "--preds", CORPUS / "preds.jsonl",
                    "--parses", CORPUS / "parses_model.conllu",
                    "--out", tmp_path / "out"]) == 0
    # second run overwrote with identical bytes
    assert (tmp_path / "out" / "graph.json").read_bytes() == \
        (GOLDEN / "model" / "graph.json").read_bytes()


def test_gold_parses_twin_run(tmp_path):
    assert run(["extract", "--cloze", CORPUS / "cloze.jsonl",
                "--preds", CORPUS / "preds.jsonl",
                "--parses", CORPUS / "parses_model.conllu",
                "--gold-parses", CORPUS / "parses_gold.conllu",
                "--out", tmp_path]) == 0
    assert (tmp_path / "graph.json").read_bytes() == \
        (GOLDEN / "model" / "graph.json").read_bytes()
    assert (tmp_path / "gold" / "graph.json").read_bytes() == \
        (GOLDEN / "gold" / "graph.json").read_bytes()