"""Cloze datasets, model predictions, and mask filling.

Two on-disk cloze formats are accepted, both line-delimited JSON:

* native: ``{"id", "masked_sentence", "gold_label", "source"}``
* lama:   ``{"id" or "uuid", "masked_sentences": [...], "obj_label"}``
  (first element of masked_sentences is used)

Predictions are line-delimited JSON ``{"id", "candidates": [{"token",
"score"}, ...]}`` with at most five candidates per record.

Record-level invariant violations (mask count, multi-token answers,
duplicate ids) are collected; in lenient mode the offending record is
skipped, in strict mode loading aborts. Lines that are not valid JSON
abort in either mode, naming the line.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

MASK = "[MASK]"

SOURCES = ("squad", "re_place_birth", "re_date_birth", "re_place_death", "other")


class ClozeFormatError(ValueError):
    """Unreadable input line (carries file location in the message)."""


class RecordInvariantError(ValueError):
    """A record that violates cloze invariants, raised in strict mode."""


@dataclass(frozen=True)
class ClozeRecord:
    id: str
    masked_sentence: str
    gold_label: str
    source: str = "other"

    def __post_init__(self):
        if self.masked_sentence.count(MASK) != 1:
            raise ValueError(
                f"record {self.id!r}: masked_sentence must contain {MASK} exactly once "
                f"(found {self.masked_sentence.count(MASK)})")
        if not self.gold_label or any(ch.isspace() for ch in self.gold_label):
            raise ValueError(f"record {self.id!r}: gold_label must be a single non-empty token")
        if self.source not in SOURCES:
            raise ValueError(f"record {self.id!r}: unknown source {self.source!r}")


@dataclass(frozen=True)
class PredictionSet:
    id: str
    candidates: tuple[tuple[str, float], ...]   # (token, score), best first

    def __post_init__(self):
        if not 1 <= len(self.candidates) <= 5:
            raise ValueError(f"predictions {self.id!r}: need 1-5 candidates, got {len(self.candidates)}")
        scores = [s for _, s in self.candidates]
        if any(not math.isfinite(s) or s < 0 for s in scores):
            raise ValueError(f"predictions {self.id!r}: scores must be finite and >= 0")
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValueError(f"predictions {self.id!r}: candidates must be sorted by descending score")


@dataclass(frozen=True)
class FilledSentence:
    id: str
    text: str
    filled_token: str
    provenance: str      # "model" | "gold"

    def __post_init__(self):
        if MASK in self.text:
            raise ValueError(f"sentence {self.id!r}: text still contains {MASK}")
        if self.provenance not in ("model", "gold"):
            raise ValueError(f"sentence {self.id!r}: provenance must be model or gold")


def load_cloze(path: str | Path, format: str = "native",
               strict: bool = False, source: str = "other") -> tuple[list[ClozeRecord], list[str]]:
    """Load cloze records; returns (records, per-record error messages).

    ``source`` tags records loaded from LAMA files, which carry no source
    field of their own; native records override it per line.
    """
    if format not in ("native", "lama"):
        raise ValueError(f"unknown cloze format {format!r}")
    records: list[ClozeRecord] = []
    errors: list[str] = []
    seen_ids: set[str] = set()
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                payload = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ClozeFormatError(f"{path}:{lineno}: not valid JSON: {exc}") from exc
            try:
                record = _record_from(payload, format, source, path, lineno)
                if record.id in seen_ids:
                    raise ValueError(f"record {record.id!r}: duplicate id")
            except (ValueError, KeyError) as exc:
                message = f"{path}:{lineno}: {exc}"
                if strict:
                    raise RecordInvariantError(message) from exc
                errors.append(message)
                continue
            seen_ids.add(record.id)
            records.append(record)
    return records, errors


def _record_from(payload: dict, format: str, source: str,
                 path: Path, lineno: int) -> ClozeRecord:
    if not isinstance(payload, dict):
        raise ValueError(f"expected a JSON object, got {type(payload).__name__}")
    if format == "native":
        return ClozeRecord(
            id=str(payload["id"]),
            masked_sentence=payload["masked_sentence"],
            gold_label=payload["gold_label"],
            source=payload.get("source", source),
        )
    record_id = payload.get("id") or payload.get("uuid")
    if record_id is None:
        raise ValueError("lama record carries neither 'id' nor 'uuid'")
    masked = payload["masked_sentences"]
    if not isinstance(masked, list) or not masked:
        raise ValueError("'masked_sentences' must be a non-empty list")
    return ClozeRecord(
        id=str(record_id),
        masked_sentence=masked[0],
        gold_label=payload["obj_label"],
        source=source,
    )


def load_predictions(path: str | Path, strict: bool = False) -> tuple[list[PredictionSet], list[str]]:
    """Load prediction sets; same error contract as load_cloze."""
    predictions: list[PredictionSet] = []
    errors: list[str] = []
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                payload = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ClozeFormatError(f"{path}:{lineno}: not valid JSON: {exc}") from exc
            try:
                candidates = tuple(
                    (c["token"], float(c["score"])) for c in payload["candidates"])
                predictions.append(PredictionSet(id=str(payload["id"]), candidates=candidates))
            except (ValueError, KeyError, TypeError) as exc:
                message = f"{path}:{lineno}: {exc}"
                if strict:
                    raise RecordInvariantError(message) from exc
                errors.append(message)
    return predictions, errors


def fill_mask(record: ClozeRecord, preds: PredictionSet, rank: int = 1) -> FilledSentence:
    """Fill the mask with the candidate at ``rank`` (1 = most likely).

    Candidates are already sorted by descending score; equal scores keep
    their original order, so rank 1 on a tie is the earliest candidate.
    """
    if preds.id != record.id:
        raise ValueError(f"prediction id {preds.id!r} does not match record id {record.id!r}")
    if not 1 <= rank <= len(preds.candidates):
        raise ValueError(f"record {record.id!r}: rank {rank} out of range "
                         f"1..{len(preds.candidates)}")
    token = preds.candidates[rank - 1][0]
    return FilledSentence(
        id=record.id,
        text=record.masked_sentence.replace(MASK, token),
        filled_token=token,
        provenance="model",
    )


def gold_sentence(record: ClozeRecord) -> FilledSentence:
    """The sentence with the mask replaced by the gold label."""
    return FilledSentence(
        id=record.id,
        text=record.masked_sentence.replace(MASK, record.gold_label),
        filled_token=record.gold_label,
        provenance="gold",
    )
