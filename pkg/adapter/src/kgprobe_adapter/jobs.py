"""Job description and the cloze/prediction file formats.

The formats mirror kgprobe's corpus module: line-delimited JSON, one
record per line, UTF-8 throughout. Reading is deliberately minimal here;
full validation belongs to the consumer.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

MASK = "[MASK]"


@dataclass(frozen=True)
class AdapterJob:
    model: str                       # HF model name or local checkpoint path
    cloze_path: Path
    predictions_path: Path | None = None
    model_parses_path: Path | None = None
    gold_parses_path: Path | None = None
    cloze_format: str = "native"     # "native" | "lama"
    device: str = "cpu"
    top_k: int = 5

    def __post_init__(self):
        if not Path(self.cloze_path).is_file():
            raise FileNotFoundError(f"cloze file not found: {self.cloze_path}")
        if self.cloze_format not in ("native", "lama"):
            raise ValueError(f"unknown cloze format {self.cloze_format!r}")
        if not 1 <= self.top_k <= 5:
            raise ValueError("top_k must be between 1 and 5")


def read_cloze(path: Path, fmt: str) -> tuple[list[dict], list[str]]:
    """Minimal cloze reader; returns (records, warnings). Records with a
    mask count other than one are skipped with a warning."""
    records: list[dict] = []
    warnings: list[str] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            payload = json.loads(raw)
            if fmt == "native":
                record_id = str(payload["id"])
                sentence = payload["masked_sentence"]
                gold = payload["gold_label"]
            else:
                record_id = str(payload.get("id") or payload["uuid"])
                sentence = payload["masked_sentences"][0]
                gold = payload["obj_label"]
            if sentence.count(MASK) != 1:
                warnings.append(f"{path}:{lineno}: record {record_id!r} has "
                                f"{sentence.count(MASK)} masks, skipped")
                continue
            records.append({"id": record_id, "masked_sentence": sentence,
                            "gold_label": gold})
    return records, warnings


def read_predictions(path: Path) -> dict[str, list[tuple[str, float]]]:
    by_id: dict[str, list[tuple[str, float]]] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            if not raw.strip():
                continue
            payload = json.loads(raw)
            by_id[str(payload["id"])] = [
                (c["token"], float(c["score"])) for c in payload["candidates"]]
    return by_id


def atomic_write(path: Path, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        os.unlink(tmp_name)
        raise
