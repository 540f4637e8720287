"""Fill-mask inference: top-k candidates with probabilities per record.

Inference is single-threaded and grad-free so that two runs over the same
checkpoint produce byte-identical prediction files. Candidate tokens that
are special tokens, subword continuations, or contain whitespace are not
usable as fill tokens and are skipped before taking the top k.
"""

from __future__ import annotations

import json
import logging

from .jobs import MASK, AdapterJob, atomic_write, read_cloze

logger = logging.getLogger(__name__)


def predict_masks(job: AdapterJob) -> list[str]:
    """Write the predictions file; returns warnings (skipped records)."""
    import torch
    from transformers import AutoModelForMaskedLM, AutoTokenizer

    if job.predictions_path is None:
        raise ValueError("job has no predictions output path")
    torch.set_num_threads(1)
    tokenizer = AutoTokenizer.from_pretrained(job.model)
    model = AutoModelForMaskedLM.from_pretrained(job.model)
    model.to(job.device)
    model.eval()
    if tokenizer.mask_token is None:
        raise ValueError(f"model {job.model!r} has no mask token; not a masked LM")

    records, warnings = read_cloze(job.cloze_path, job.cloze_format)
    special_ids = set(tokenizer.all_special_ids)
    lines = []
    for record in records:
        text = record["masked_sentence"].replace(MASK, tokenizer.mask_token)
        try:
            candidates = _top_candidates(model, tokenizer, text, special_ids,
                                         job.top_k, job.device, torch)
        except Exception as exc:  # per-record inference failure: omit + log
            warnings.append(f"record {record['id']!r}: inference failed: {exc}")
            logger.warning("record %r: inference failed: %s", record["id"], exc)
            continue
        if not candidates:
            warnings.append(f"record {record['id']!r}: no usable candidates")
            continue
        lines.append(json.dumps({
            "id": record["id"],
            "candidates": [{"token": token, "score": round(score, 8)}
                           for token, score in candidates],
        }, ensure_ascii=False))
    atomic_write(job.predictions_path, "\n".join(lines) + ("\n" if lines else ""))
    return warnings


def _top_candidates(model, tokenizer, text, special_ids, top_k, device, torch):
    encoded = tokenizer(text, return_tensors="pt").to(device)
    mask_positions = (encoded["input_ids"][0] == tokenizer.mask_token_id).nonzero()
    if len(mask_positions) != 1:
        raise ValueError(f"expected one mask position, found {len(mask_positions)}")
    position = int(mask_positions[0, 0])
    with torch.no_grad():
        logits = model(**encoded).logits[0, position]
    probabilities = torch.softmax(logits, dim=-1)
    scores, ids = torch.sort(probabilities, descending=True)
    candidates = []
    for score, token_id in zip(scores.tolist(), ids.tolist()):
        if token_id in special_ids:
            continue
        token = tokenizer.convert_ids_to_tokens(token_id)
        token = tokenizer.convert_tokens_to_string([token]).strip()
        if not token or any(ch.isspace() for ch in token):
            continue
        candidates.append((token, float(score)))
        if len(candidates) == top_k:
            break
    return candidates
