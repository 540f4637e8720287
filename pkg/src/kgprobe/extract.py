"""Rule-based subject-relation-object extraction over dependency parses.

Five rules fire independently on each parsed sentence; none suppresses
another, so disabling a rule can only remove triples. Rules match deprels
through a configurable alias table that covers both UD labels ("obj",
"obl", "nsubj:pass") and the legacy scheme ("dobj", "pobj", "nsubjpass"),
since different parser generations emit different inventories.

Entity phrases are materialized with subtree_span, cutting clausal and
prepositional branches so entities stay compact, then normalized (leading
determiners and punctuation dropped).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .conllu import ParsedSentence, Token, subtree_span

NOMINAL_UPOS = frozenset({"NOUN", "PROPN", "PRON", "NUM"})
ATTRIBUTE_UPOS = NOMINAL_UPOS | {"ADJ"}
BE_FORMS = frozenset({"be", "is", "are", "was", "were", "am", "been", "being"})

RULE_PRIORITY = {
    "active_svo": 1,
    "passive_agent": 2,
    "participle_prep": 3,
    "copular_attribute": 4,
    "xcomp_inversion": 5,
}

DEFAULT_ALIASES: dict[str, frozenset[str]] = {
    "subject": frozenset({"nsubj"}),
    "passive_subject": frozenset({"nsubj:pass", "nsubjpass"}),
    "object": frozenset({"obj", "dobj"}),
    "oblique": frozenset({"obl", "nmod"}),
    "agent": frozenset({"obl:agent", "agent"}),
    "case": frozenset({"case"}),
    "prep": frozenset({"prep"}),
    "prep_object": frozenset({"pobj"}),
    "clausal_modifier": frozenset({"acl", "partmod", "vmod", "rcmod"}),
    "open_complement": frozenset({"xcomp"}),
    "copula": frozenset({"cop"}),
    "attribute": frozenset({"attr", "acomp"}),
}

# branches cut off when materializing an entity phrase
DEFAULT_SPAN_EXCLUDE = frozenset({
    "acl", "advcl", "appos", "aux", "case", "cc", "ccomp", "conj", "cop",
    "csubj", "dep", "discourse", "expl", "list", "mark", "nsubj", "nmod",
    "obl", "orphan", "parataxis", "prep", "punct", "rcmod", "vmod",
    "partmod", "xcomp",
})


@dataclass(frozen=True)
class Triple:
    subject: str
    relation: str
    object: str
    sentence_id: str
    rule_id: str

    def __post_init__(self):
        if not (self.subject and self.relation and self.object):
            raise ValueError(f"triple from {self.sentence_id!r} has an empty phrase")
        if self.subject == self.object:
            raise ValueError(f"triple from {self.sentence_id!r}: subject equals object")

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.subject, self.relation, self.object)


@dataclass(frozen=True)
class RuleConfig:
    enabled_rules: frozenset[str] = frozenset(RULE_PRIORITY)
    aliases: dict[str, frozenset[str]] = field(default_factory=lambda: dict(DEFAULT_ALIASES))
    span_exclude: frozenset[str] = DEFAULT_SPAN_EXCLUDE
    r3_prep_as_by: bool = False   # render "shown by" instead of "shown during"

    def __post_init__(self):
        unknown = self.enabled_rules - set(RULE_PRIORITY)
        if unknown:
            raise ValueError(f"unknown rule ids: {sorted(unknown)}")

    def role(self, name: str) -> frozenset[str]:
        return self.aliases.get(name, DEFAULT_ALIASES[name])


def load_rule_config(path: str | Path) -> RuleConfig:
    """Read a rule configuration file (JSON; absent fields keep defaults)."""
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    aliases = dict(DEFAULT_ALIASES)
    for role, labels in payload.get("deprel_aliases", {}).items():
        aliases[role] = frozenset(labels)
    return RuleConfig(
        enabled_rules=frozenset(payload.get("enabled_rules", RULE_PRIORITY)),
        aliases=aliases,
        span_exclude=frozenset(payload.get("span_exclude", DEFAULT_SPAN_EXCLUDE)),
        r3_prep_as_by=bool(payload.get("r3_prep_as_by", False)),
    )


def normalize_phrase(tokens: list[Token]) -> str:
    """Join surfaces with single spaces; drop punctuation and, when more
    than one token remains, leading determiners."""
    if not tokens:
        raise ValueError("cannot normalize an empty token list")
    kept = [t for t in tokens if t.upos != "PUNCT"]
    if not kept:
        raise ValueError("phrase contains only punctuation")
    while len(kept) > 1 and kept[0].upos == "DET":
        kept = kept[1:]
    return " ".join(t.surface for t in kept)


def _matches(deprel: str, labels: frozenset[str]) -> bool:
    return deprel in labels or deprel.split(":")[0] in labels


def _children_in_role(sentence: ParsedSentence, index: int, labels: frozenset[str]) -> list[Token]:
    return [t for t in sentence.children(index) if _matches(t.deprel, labels)]


def _prep_dependents(sentence: ParsedSentence, index: int, cfg: RuleConfig) -> list[tuple[Token, Token]]:
    """(preposition, object-head) pairs attached to the token at ``index``.

    UD style: an oblique/nmod child carrying a case-marked preposition.
    Legacy style: a prep child (the ADP itself) with a pobj child below it.
    """
    pairs: list[tuple[Token, Token]] = []
    for child in sentence.children(index):
        if _matches(child.deprel, cfg.role("oblique")) or _matches(child.deprel, cfg.role("agent")):
            markers = _children_in_role(sentence, child.index, cfg.role("case"))
            if markers:
                pairs.append((min(markers, key=lambda t: t.index), child))
        elif _matches(child.deprel, cfg.role("prep")) and child.upos == "ADP":
            objects = _children_in_role(sentence, child.index, cfg.role("prep_object"))
            if objects:
                pairs.append((child, min(objects, key=lambda t: t.index)))
    return sorted(pairs, key=lambda pair: pair[1].index)


def _phrase(sentence: ParsedSentence, index: int, cfg: RuleConfig) -> str | None:
    tokens = subtree_span(sentence, index, cfg.span_exclude)
    try:
        return normalize_phrase(tokens)
    except ValueError:
        return None


@dataclass(frozen=True)
class _Candidate:
    subject_index: int
    relation: str
    object_index: int
    rule_id: str


def _rule_active_svo(sentence: ParsedSentence, cfg: RuleConfig) -> list[_Candidate]:
    out = []
    for verb in sentence.tokens:
        if verb.upos != "VERB":
            continue
        subjects = [t for t in _children_in_role(sentence, verb.index, cfg.role("subject"))
                    if t.upos in NOMINAL_UPOS]
        objects = [t for t in _children_in_role(sentence, verb.index, cfg.role("object"))
                   if t.upos in NOMINAL_UPOS]
        for subj in subjects:
            for obj in objects:
                out.append(_Candidate(subj.index, verb.surface, obj.index, "active_svo"))
    return out


def _rule_passive_agent(sentence: ParsedSentence, cfg: RuleConfig) -> list[_Candidate]:
    out = []
    for verb in sentence.tokens:
        if verb.upos != "VERB":
            continue
        subjects = _children_in_role(sentence, verb.index, cfg.role("passive_subject"))
        if not subjects:
            continue
        agents = []
        for prep, obj in _prep_dependents(sentence, verb.index, cfg):
            if prep.surface.lower() == "by" or _matches(obj.deprel, cfg.role("agent")):
                agents.append(obj)
        # legacy scheme attaches the agent noun directly, no case marker
        for obj in _children_in_role(sentence, verb.index, cfg.role("agent")):
            if all(a.index != obj.index for a in agents):
                agents.append(obj)
        for subj in subjects:
            for agent in agents:
                out.append(_Candidate(subj.index, verb.surface + " by", agent.index,
                                      "passive_agent"))
    return out


def _rule_participle_prep(sentence: ParsedSentence, cfg: RuleConfig) -> list[_Candidate]:
    out = []
    for part in sentence.tokens:
        if part.upos != "VERB" or part.head == 0:
            continue
        if not _matches(part.deprel, cfg.role("clausal_modifier")):
            continue
        noun = sentence.token(part.head)
        if noun.upos not in NOMINAL_UPOS:
            continue
        for prep, obj in _prep_dependents(sentence, part.index, cfg):
            marker = "by" if cfg.r3_prep_as_by else prep.surface.lower()
            out.append(_Candidate(noun.index, f"{part.surface} {marker}", obj.index,
                                  "participle_prep"))
    return out


def _rule_copular_attribute(sentence: ParsedSentence, cfg: RuleConfig) -> list[_Candidate]:
    out = []
    for token in sentence.tokens:
        # UD: the attribute heads the clause and carries a "be" copula child
        if token.upos in ATTRIBUTE_UPOS:
            copulas = [t for t in _children_in_role(sentence, token.index, cfg.role("copula"))
                       if t.lemma.lower() in BE_FORMS or t.surface.lower() in BE_FORMS]
            subjects = [t for t in _children_in_role(sentence, token.index, cfg.role("subject"))
                        if t.upos in NOMINAL_UPOS]
            if copulas and subjects:
                for subj in subjects:
                    out.append(_Candidate(subj.index, "is", token.index, "copular_attribute"))
        # legacy: "be" is the head verb with an attr/acomp child
        if token.upos in ("VERB", "AUX") and \
                (token.lemma.lower() in BE_FORMS or token.surface.lower() in BE_FORMS):
            subjects = [t for t in _children_in_role(sentence, token.index, cfg.role("subject"))
                        if t.upos in NOMINAL_UPOS]
            attributes = _children_in_role(sentence, token.index, cfg.role("attribute"))
            for subj in subjects:
                for attr in attributes:
                    out.append(_Candidate(subj.index, "is", attr.index, "copular_attribute"))
    return out


def _rule_xcomp_inversion(sentence: ParsedSentence, cfg: RuleConfig) -> list[_Candidate]:
    out = []
    for matrix in sentence.tokens:
        if matrix.upos != "VERB":
            continue
        objects = [t for t in _children_in_role(sentence, matrix.index, cfg.role("object"))
                   if t.upos in NOMINAL_UPOS]
        complements = _children_in_role(sentence, matrix.index, cfg.role("open_complement"))
        if not objects or not complements:
            continue
        # descend the open-complement chain to the innermost verb
        inner = min(complements, key=lambda t: t.index)
        while True:
            deeper = _children_in_role(sentence, inner.index, cfg.role("open_complement"))
            if not deeper:
                break
            inner = min(deeper, key=lambda t: t.index)
        if inner.upos != "VERB":
            continue
        for _, location in _prep_dependents(sentence, inner.index, cfg):
            for obj in objects:
                out.append(_Candidate(location.index, inner.surface, obj.index,
                                      "xcomp_inversion"))
    return out


_RULES = {
    "active_svo": _rule_active_svo,
    "passive_agent": _rule_passive_agent,
    "participle_prep": _rule_participle_prep,
    "copular_attribute": _rule_copular_attribute,
    "xcomp_inversion": _rule_xcomp_inversion,
}


def write_triples(triples: list[Triple], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for t in triples:
            handle.write(json.dumps({
                "subject": t.subject, "relation": t.relation, "object": t.object,
                "sentence_id": t.sentence_id, "rule_id": t.rule_id,
            }, ensure_ascii=False) + "\n")


def read_triples(path: str | Path) -> list[Triple]:
    triples = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                triples.append(Triple(**json.loads(raw)))
            except (json.JSONDecodeError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return triples


def extract_triples(sentence: ParsedSentence, rules: RuleConfig | None = None) -> list[Triple]:
    """All triples the enabled rules produce for one sentence.

    Output order is deterministic: subject token index, then rule
    priority, then object token index. Candidates whose subject and
    object normalize to the same phrase are dropped.
    """
    cfg = rules if rules is not None else RuleConfig()
    candidates: list[_Candidate] = []
    for rule_id in sorted(cfg.enabled_rules, key=RULE_PRIORITY.__getitem__):
        candidates.extend(_RULES[rule_id](sentence, cfg))
    candidates.sort(key=lambda c: (c.subject_index, RULE_PRIORITY[c.rule_id],
                                   c.object_index, c.relation))
    triples: list[Triple] = []
    for cand in candidates:
        subject = _phrase(sentence, cand.subject_index, cfg)
        obj = _phrase(sentence, cand.object_index, cfg)
        if subject is None or obj is None or subject == obj:
            continue
        triples.append(Triple(subject=subject, relation=cand.relation, object=obj,
                              sentence_id=sentence.id, rule_id=cand.rule_id))
    return triples
