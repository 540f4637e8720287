import pytest

from kgprobe.conllu import ParsedSentence, Token
from kgprobe.diagnostics import (PosCounts, REPORT_TAGS, pos_counts,
                                 pos_frequencies, posor, radar_values,
                                 render_value)
from kgprobe.extract import Triple


def _counts(**kwargs) -> PosCounts:
    counts = {t: 0 for t in REPORT_TAGS}
    counts.update({k: v for k, v in kwargs.items() if k != "x_count"})
    return PosCounts(counts=counts, x_count=kwargs.get("x_count", 0))


def _sentence():
    return ParsedSentence(id="s1", tokens=(
        Token(1, "Einstein", "Einstein", "PROPN", 2, "nsubj"),
        Token(2, "developed", "develop", "VERB", 0, "root"),
        Token(3, "relativity", "relativity", "NOUN", 2, "obj"),
        Token(4, "by", "by", "ADP", 2, "case"),
    ))


def _triple(subject="Einstein", relation="developed", obj="relativity"):
    return Triple(subject=subject, relation=relation, object=obj,
                  sentence_id="s1", rule_id="active_svo")


def test_pos_counts_basic_mapping():
    counts, warnings = pos_counts([_triple()], {"s1": _sentence()})
    assert warnings == []
    assert counts.counts["NOUN"] == 2      # PROPN folds into NOUN
    assert counts.counts["VERB"] == 1
    assert counts.total == 3


def test_pos_counts_empty():
    counts, warnings = pos_counts([], {})
    assert counts.total == 0 and counts.x_count == 0 and warnings == []


def test_pos_counts_adp():
    counts, _ = pos_counts([_triple(relation="developed by")], {"s1": _sentence()})
    assert counts.counts["ADP"] == 1


def test_unlocatable_token_goes_to_x_with_warning():
    counts, warnings = pos_counts([_triple(relation="is")], {"s1": _sentence()})
    assert counts.x_count == 1
    assert len(warnings) == 1 and "'is'" in warnings[0]
    # the X bucket is excluded from total but kept in the token tally
    assert counts.total + counts.x_count == 3


def test_total_matches_token_count():
    triples = [_triple(), _triple(subject="Einstein", relation="developed by",
                                  obj="relativity")]
    counts, _ = pos_counts(triples, {"s1": _sentence()})
    token_count = sum(len(t.subject.split()) + len(t.relation.split()) +
                      len(t.object.split()) for t in triples)
    assert counts.total + counts.x_count == token_count


def test_posor_formula():
    report = posor(_counts(NOUN=10), _counts(NOUN=8))
    assert report.values["NOUN"] == pytest.approx(25.0)


def test_posor_equal_counts_all_zero():
    lm = _counts(NOUN=4, VERB=2, ADP=1)
    report = posor(lm, lm)
    assert all(v == 0.0 for v in report.values.values())


def test_posor_undefined_marker():
    report = posor(_counts(NOUN=3), _counts())
    assert report.values["NOUN"] is None
    assert render_value(report.values["NOUN"]) == "—"


def test_posor_zero_over_zero_is_zero():
    report = posor(_counts(), _counts())
    assert report.values["ADV"] == 0.0


def test_posor_scale_invariance():
    lm = _counts(NOUN=7, VERB=3, ADP=2)
    gt = _counts(NOUN=5, VERB=4, ADP=2)
    double = lambda c: _counts(**{t: 2 * c.counts[t] for t in REPORT_TAGS})
    base = posor(lm, gt)
    scaled = posor(double(lm), double(gt))
    for tag in REPORT_TAGS:
        assert scaled.values[tag] == base.values[tag]


def test_pos_frequencies():
    freqs = pos_frequencies(_counts(NOUN=1, VERB=1))
    assert freqs["NOUN"] == 50.0 and freqs["VERB"] == 50.0


def test_pos_frequencies_single_tag():
    assert pos_frequencies(_counts(ADJ=5))["ADJ"] == 100.0


def test_pos_frequencies_zero_total_is_error():
    with pytest.raises(ValueError):
        pos_frequencies(_counts())


def test_pos_frequencies_sum_to_100():
    freqs = pos_frequencies(_counts(NOUN=22, VERB=11, ADP=3))
    assert sum(freqs.values()) == pytest.approx(100.0)


def test_radar_values():
    report = posor(_counts(NOUN=10, VERB=5, ADJ=2), _counts(NOUN=8, VERB=20, ADJ=2))
    radar = radar_values(report)
    assert radar["NOUN"] == pytest.approx(75.0)     # posor +25
    assert radar["VERB"] == pytest.approx(25.0)     # posor -75
    assert radar["ADJ"] == 100.0                    # posor 0


def test_radar_clamps_at_zero():
    report = posor(_counts(NOUN=10), _counts(NOUN=4))  # posor +150
    assert radar_values(report)["NOUN"] == 0.0


def test_radar_omits_undefined():
    report = posor(_counts(NOUN=3), _counts())
    assert "NOUN" not in radar_values(report)
    assert all(0.0 <= v <= 100.0 for v in radar_values(report).values())


def test_counts_merge():
    merged = _counts(NOUN=1, x_count=1).merge(_counts(NOUN=2, VERB=1))
    assert merged.counts["NOUN"] == 3
    assert merged.counts["VERB"] == 1
    assert merged.x_count == 1


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        _counts(NOUN=-1)
