"""Dependency parsing of filled and gold sentences into CoNLL-U.

Backends: spaCy with a UD-trained English model when one is installed,
otherwise the built-in rule parser. The backend that produced a file is
recorded in a comment header so runs stay attributable.
"""

from __future__ import annotations

from .jobs import MASK, AdapterJob, atomic_write, read_cloze, read_predictions
from . import heuristic


def _spacy_backend():
    try:
        import spacy
    except ImportError:
        return None
    for model_name in ("en_core_web_sm", "en_core_web_md"):
        try:
            pipeline = spacy.load(model_name, exclude=["ner", "lemmatizer"])
        except OSError:
            continue

        def run(text: str, _pipeline=pipeline):
            doc = _pipeline(text)
            rows = []
            for token in doc:
                head = 0 if token.head is token else token.head.i + 1
                deprel = "root" if head == 0 else token.dep_.lower()
                rows.append((token.i + 1, token.text, token.lemma_ or token.text.lower(),
                             token.pos_, head, deprel))
            return rows
        return (f"spacy:{model_name}", run)
    return None


def get_backend(name: str = "auto"):
    """Returns (backend_name, text -> rows)."""
    if name in ("auto", "spacy"):
        backend = _spacy_backend()
        if backend is not None:
            return backend
        if name == "spacy":
            raise RuntimeError("spaCy backend requested but no model is installed")
    return (heuristic.NAME, heuristic.parse_text)


def _conllu_block(sent_id: str, rows) -> str:
    lines = [f"# sent_id = {sent_id}"]
    for index, surface, lemma, upos, head, deprel in rows:
        lines.append("\t".join([str(index), surface, lemma, upos, "_", "_",
                                str(head), deprel, "_", "_"]))
    return "\n".join(lines) + "\n"


def parse_sentences(job: AdapterJob, backend: str = "auto") -> list[str]:
    """Parse model-filled and/or gold sentences per the job; returns warnings.

    Model parses need the predictions file (the top candidate fills the
    mask); gold parses substitute the gold label.
    """
    backend_name, run = get_backend(backend)
    records, warnings = read_cloze(job.cloze_path, job.cloze_format)
    header = f"# generator = kgprobe-adapter, parser = {backend_name}\n"

    if job.model_parses_path is not None:
        if job.predictions_path is None:
            raise ValueError("model parses requested but the job has no predictions path")
        predictions = read_predictions(job.predictions_path)
        blocks = []
        for record in records:
            candidates = predictions.get(record["id"])
            if not candidates:
                warnings.append(f"record {record['id']!r}: no predictions, "
                                "model parse skipped")
                continue
            text = record["masked_sentence"].replace(MASK, candidates[0][0])
            rows = run(text)
            if rows:
                blocks.append(_conllu_block(record["id"], rows))
        atomic_write(job.model_parses_path, header + "\n".join(blocks))

    if job.gold_parses_path is not None:
        blocks = []
        for record in records:
            text = record["masked_sentence"].replace(MASK, record["gold_label"])
            rows = run(text)
            if rows:
                blocks.append(_conllu_block(record["id"], rows))
        atomic_write(job.gold_parses_path, header + "\n".join(blocks))
    return warnings
