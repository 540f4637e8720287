import json

import pytest
from hypothesis import given, strategies as st

from kgprobe.corpus import (MASK, ClozeFormatError, ClozeRecord, PredictionSet,
                            RecordInvariantError, fill_mask, gold_sentence,
                            load_cloze, load_predictions)


def _write_lines(tmp_path, lines, name="cloze.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


RELATIVITY = {"id": "r1",
              "masked_sentence": "The theory of relativity was developed by [MASK].",
              "gold_label": "Einstein", "source": "squad"}


def test_load_native_single_record(tmp_path):
    records, errors = load_cloze(_write_lines(tmp_path, [json.dumps(RELATIVITY)]))
    assert errors == []
    assert len(records) == 1
    assert records[0].gold_label == "Einstein"
    assert records[0].masked_sentence.count(MASK) == 1


def test_load_empty_file(tmp_path):
    records, errors = load_cloze(_write_lines(tmp_path, [""]))
    assert records == [] and errors == []


def test_two_masks_is_a_record_error(tmp_path):
    bad = dict(RELATIVITY, id="r2",
               masked_sentence="[MASK] was developed by [MASK].")
    path = _write_lines(tmp_path, [json.dumps(RELATIVITY), json.dumps(bad)])
    records, errors = load_cloze(path)
    assert [r.id for r in records] == ["r1"]
    assert len(errors) == 1 and "r2" in errors[0]
    with pytest.raises(RecordInvariantError):
        load_cloze(path, strict=True)


def test_malformed_json_names_line(tmp_path):
    path = _write_lines(tmp_path, [json.dumps(RELATIVITY), "{not json"])
    with pytest.raises(ClozeFormatError, match=":2:"):
        load_cloze(path)


def test_duplicate_ids_rejected(tmp_path):
    path = _write_lines(tmp_path, [json.dumps(RELATIVITY), json.dumps(RELATIVITY)])
    records, errors = load_cloze(path)
    assert len(records) == 1
    assert len(errors) == 1 and "duplicate" in errors[0]


def test_multi_token_gold_label_rejected(tmp_path):
    bad = dict(RELATIVITY, gold_label="Albert Einstein")
    records, errors = load_cloze(_write_lines(tmp_path, [json.dumps(bad)]))
    assert records == [] and len(errors) == 1


def test_load_lama_format(tmp_path):
    lama = {"uuid": "abc-123",
            "masked_sentences": ["Dante was born in [MASK]."],
            "obj_label": "Florence"}
    path = _write_lines(tmp_path, [json.dumps(lama)])
    records, errors = load_cloze(path, format="lama", source="re_place_birth")
    assert errors == []
    assert records[0].id == "abc-123"
    assert records[0].source == "re_place_birth"
    assert records[0].masked_sentence == "Dante was born in [MASK]."


def test_load_predictions(tmp_path):
    line = {"id": "r1", "candidates": [
        {"token": "Einstein", "score": 0.7}, {"token": "Newton", "score": 0.2}]}
    preds, errors = load_predictions(_write_lines(tmp_path, [json.dumps(line)]))
    assert errors == []
    assert preds[0].candidates[0] == ("Einstein", 0.7)


def test_predictions_must_be_sorted(tmp_path):
    line = {"id": "r1", "candidates": [
        {"token": "Newton", "score": 0.2}, {"token": "Einstein", "score": 0.7}]}
    preds, errors = load_predictions(_write_lines(tmp_path, [json.dumps(line)]))
    assert preds == [] and len(errors) == 1


def _record():
    return ClozeRecord(**RELATIVITY)


def test_fill_mask_takes_argmax():
    preds = PredictionSet(id="r1", candidates=(("Einstein", 0.7), ("Newton", 0.2)))
    filled = fill_mask(_record(), preds)
    assert filled.text == "The theory of relativity was developed by Einstein."
    assert filled.filled_token == "Einstein"
    assert filled.provenance == "model"


def test_fill_mask_tie_breaks_by_rank():
    preds = PredictionSet(id="r1", candidates=(("a", 0.5), ("b", 0.5)))
    assert fill_mask(_record(), preds).filled_token == "a"


def test_fill_mask_rank_selection():
    preds = PredictionSet(id="r1", candidates=(("a", 0.5), ("b", 0.4)))
    assert fill_mask(_record(), preds, rank=2).filled_token == "b"
    with pytest.raises(ValueError, match="rank"):
        fill_mask(_record(), preds, rank=3)


def test_fill_mask_id_mismatch():
    preds = PredictionSet(id="other", candidates=(("a", 0.5),))
    with pytest.raises(ValueError, match="does not match"):
        fill_mask(_record(), preds)


def test_empty_candidates_rejected_at_construction():
    with pytest.raises(ValueError):
        PredictionSet(id="r1", candidates=())


def test_gold_sentence():
    filled = gold_sentence(_record())
    assert filled.text == "The theory of relativity was developed by Einstein."
    assert filled.provenance == "gold"


def test_gold_sentence_nintendo():
    record = ClozeRecord(
        id="sb", masked_sentence="During Super Bowl 50 the [MASK] gaming company "
                                 "debuted their ad for the first time.",
        gold_label="Nintendo", source="squad")
    assert "the Nintendo gaming company debuted" in gold_sentence(record).text


def test_whitespace_gold_label_is_invalid():
    with pytest.raises(ValueError):
        ClozeRecord(id="x", masked_sentence="a [MASK] b", gold_label="two words")


token_strategy = st.text(
    alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd")),
    min_size=1, max_size=12)


@given(token=token_strategy, score=st.floats(0, 1))
def test_fill_mask_length_law(token, score):
    record = _record()
    preds = PredictionSet(id="r1", candidates=((token, score),))
    filled = fill_mask(record, preds)
    assert len(filled.text) == \
        len(record.masked_sentence) - len(MASK) + len(token)


@given(token=token_strategy)
def test_fill_mask_deterministic(token):
    record = _record()
    preds = PredictionSet(id="r1", candidates=((token, 0.9), ("other", 0.1)))
    assert fill_mask(record, preds) == fill_mask(record, preds)


def test_gold_label_lands_where_mask_was():
    record = _record()
    filled = gold_sentence(record)
    prefix = record.masked_sentence.index(MASK)
    assert filled.text[prefix:prefix + len("Einstein")] == "Einstein"
