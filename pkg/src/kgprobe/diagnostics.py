"""Part-of-speech counting over triples and the overprediction rate.

Triple tokens are located in their source parse by surface match and
counted under a coarse tagset (the NLTK universal categories); UPOS tags
map onto it as PROPN->NOUN, AUX->VERB, CCONJ/SCONJ->CONJ, PART->PRT,
PUNCT/SYM->PUNCT and INTJ/X->X. Unlocatable tokens land in X with a
warning. The X bucket is tracked but excluded from rates and frequencies.

The overprediction rate per tag compares a model graph's counts against
the ground-truth graph's: (lm - gt) * 100 / gt. A tag the ground truth
never produced but the model did has no meaningful rate and is reported
as undefined (rendered as an em dash), never coerced to a number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conllu import ParsedSentence
from .extract import Triple

REPORT_TAGS = ("VERB", "NOUN", "PRON", "ADJ", "ADV", "ADP", "CONJ", "DET",
               "NUM", "PRT", "PUNCT")

UPOS_TO_REPORT = {
    "VERB": "VERB", "AUX": "VERB",
    "NOUN": "NOUN", "PROPN": "NOUN",
    "PRON": "PRON", "ADJ": "ADJ", "ADV": "ADV", "ADP": "ADP",
    "CCONJ": "CONJ", "SCONJ": "CONJ",
    "DET": "DET", "NUM": "NUM",
    "PART": "PRT",
    "PUNCT": "PUNCT", "SYM": "PUNCT",
    "INTJ": "X", "X": "X",
}

UNDEFINED = "—"


@dataclass(frozen=True)
class PosCounts:
    counts: dict[str, int] = field(default_factory=lambda: {t: 0 for t in REPORT_TAGS})
    x_count: int = 0

    def __post_init__(self):
        missing = [t for t in REPORT_TAGS if t not in self.counts]
        if missing:
            raise ValueError(f"counts missing tags: {missing}")
        if any(v < 0 for v in self.counts.values()) or self.x_count < 0:
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "PosCounts") -> "PosCounts":
        return PosCounts(
            counts={t: self.counts[t] + other.counts[t] for t in REPORT_TAGS},
            x_count=self.x_count + other.x_count,
        )


@dataclass(frozen=True)
class PosorReport:
    values: dict[str, float | None]    # None = undefined (gt 0, lm > 0)
    lm_counts: PosCounts
    gt_counts: PosCounts


def pos_counts(triples: list[Triple],
               parses: dict[str, ParsedSentence]) -> tuple[PosCounts, list[str]]:
    """Count report tags over every token of every triple phrase.

    Returns (counts, warnings); each unlocatable token produces one
    warning and one X count.
    """
    counts = {t: 0 for t in REPORT_TAGS}
    x_count = 0
    warnings: list[str] = []
    for triple in triples:
        sentence = parses.get(triple.sentence_id)
        for phrase in (triple.subject, triple.relation, triple.object):
            for word in phrase.split():
                upos = _locate_upos(word, sentence)
                if upos is None:
                    x_count += 1
                    warnings.append(
                        f"token {word!r} of sentence {triple.sentence_id!r} "
                        f"not found in its parse; counted as X")
                    continue
                tag = UPOS_TO_REPORT.get(upos, "X")
                if tag == "X":
                    x_count += 1
                else:
                    counts[tag] += 1
    return PosCounts(counts=counts, x_count=x_count), warnings


def _locate_upos(word: str, sentence: ParsedSentence | None) -> str | None:
    if sentence is None:
        return None
    for token in sentence.tokens:
        if token.surface == word:
            return token.upos
    return None


def posor(lm: PosCounts, gt: PosCounts) -> PosorReport:
    """Overprediction rate per tag: (lm - gt) * 100 / gt."""
    values: dict[str, float | None] = {}
    for tag in REPORT_TAGS:
        lm_n, gt_n = lm.counts[tag], gt.counts[tag]
        if gt_n > 0:
            values[tag] = (lm_n - gt_n) * 100.0 / gt_n
        elif lm_n == 0:
            values[tag] = 0.0
        else:
            values[tag] = None
    return PosorReport(values=values, lm_counts=lm, gt_counts=gt)


def pos_frequencies(counts: PosCounts) -> dict[str, float]:
    """Percentage of each tag among all counted (non-X) tokens."""
    if counts.total == 0:
        raise ValueError("cannot compute frequencies of zero counts")
    return {tag: 100.0 * counts.counts[tag] / counts.total for tag in REPORT_TAGS}


def radar_values(report: PosorReport) -> dict[str, float]:
    """Accuracy-style radar values in [0, 100]: 100 minus the absolute
    rate, floored at 0; undefined tags are omitted."""
    values = {}
    for tag, rate in report.values.items():
        if rate is not None:
            values[tag] = max(0.0, 100.0 - abs(rate))
    return values


def render_value(value: float | None) -> str:
    """One-decimal rendering with the undefined marker."""
    return UNDEFINED if value is None else f"{value:.1f}"
