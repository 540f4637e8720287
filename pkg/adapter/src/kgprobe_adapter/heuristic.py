"""Deterministic rule-based English dependency parser.

A fallback backend for environments where no trained UD parser can be
installed. It handles the simple declarative patterns the probing corpora
are made of (SVO, passives with by-agents, copular sentences, participial
modifiers, to-infinitive chains) with lexicon plus suffix tagging and
positional attachment. Output is always a valid single-root tree; anything
the rules cannot place attaches to the root as "dep".

Quality is far below a trained parser; the parser name is recorded in the
output metadata so downstream runs can tell which backend produced them.
"""

from __future__ import annotations

NAME = "heuristic-v1"

PUNCTUATION = set(".,;:!?\"'()[]{}")
DETERMINERS = {"a", "an", "the", "this", "that", "these", "those", "his",
               "her", "its", "their", "our", "my", "your", "no", "every",
               "each", "some", "any"}
BE_FORMS = {"is", "are", "was", "were", "am", "be", "been", "being"}
AUXILIARIES = BE_FORMS | {"has", "have", "had", "do", "does", "did", "will",
                          "would", "can", "could", "shall", "should", "may",
                          "might", "must"}
ADPOSITIONS = {"of", "in", "on", "at", "by", "for", "with", "from", "to",
               "during", "into", "over", "under", "about", "after", "before",
               "between", "through", "against", "without", "within", "near",
               "across", "around", "along", "since", "until", "upon",
               "toward", "towards", "onto", "off"}
PRONOUNS = {"he", "she", "it", "they", "we", "i", "you", "him", "her",
            "them", "us", "me", "who", "whom", "which", "something",
            "someone", "anyone", "nothing"}
CONJUNCTIONS = {"and", "or", "but", "nor", "yet"}
IRREGULAR_VERBS = {"made", "make", "taught", "teach", "read", "wrote",
                   "write", "broke", "break", "built", "bought", "brought",
                   "caught", "chose", "came", "come", "drew", "drove", "ate",
                   "fell", "felt", "fought", "found", "flew", "gave", "give",
                   "went", "grew", "heard", "held", "kept", "knew", "led",
                   "left", "lost", "met", "paid", "pay", "put", "ran", "run",
                   "said", "say", "saw", "see", "sold", "sent", "set",
                   "sang", "sat", "spoke", "spent", "stood", "took", "take",
                   "threw", "told", "tell", "thought", "won", "became",
                   "become", "began", "begin"}
PARTICIPLES = {"made", "taught", "read", "paid", "shown", "known", "given",
               "taken", "thrown", "told", "sold", "born", "borne", "built",
               "brought", "caught", "chosen", "done", "drawn", "driven",
               "eaten", "fallen", "felt", "fought", "found", "flown",
               "gone", "grown", "heard", "held", "kept", "left", "lost",
               "met", "put", "run", "said", "seen", "sent", "set", "spoken",
               "spent", "understood", "won", "written", "broken"}
NOMINAL = {"NOUN", "PROPN", "PRON", "NUM"}


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for chunk in text.split():
        head = 0
        while head < len(chunk) and chunk[head] in PUNCTUATION:
            tokens.append(chunk[head])
            head += 1
        tail: list[str] = []
        end = len(chunk)
        while end > head and chunk[end - 1] in PUNCTUATION:
            tail.append(chunk[end - 1])
            end -= 1
        if end > head:
            tokens.append(chunk[head:end])
        tokens.extend(reversed(tail))
    return tokens


def tag(tokens: list[str]) -> list[str]:
    tags: list[str] = []
    for surface in tokens:
        low = surface.lower()
        if all(ch in PUNCTUATION for ch in surface):
            tags.append("PUNCT")
        elif low in DETERMINERS:
            tags.append("DET")
        elif low in AUXILIARIES:
            tags.append("AUX")
        elif low == "to":
            tags.append("ADP")      # may flip to PART below
        elif low in ADPOSITIONS:
            tags.append("ADP")
        elif low in PRONOUNS:
            tags.append("PRON")
        elif low in CONJUNCTIONS:
            tags.append("CCONJ")
        elif surface.isdigit():
            tags.append("NUM")
        elif low in IRREGULAR_VERBS or low in PARTICIPLES:
            tags.append("VERB")
        elif len(low) > 3 and low.endswith("ed"):
            tags.append("VERB")
        elif len(low) > 4 and low.endswith("ing"):
            tags.append("VERB")
        elif len(low) > 3 and low.endswith("ly"):
            tags.append("ADV")
        elif surface[:1].isupper():
            tags.append("PROPN")
        else:
            tags.append("NOUN")
    # "to" heading an infinitive is a particle, not a preposition
    for i, surface in enumerate(tokens):
        if surface.lower() == "to" and tags[i] == "ADP":
            j = i + 1
            while j < len(tokens) and tags[j] == "AUX":
                j += 1
            if j < len(tokens) and tags[j] == "VERB":
                tags[i] = "PART"
    return tags


def _is_participle(surface: str) -> bool:
    low = surface.lower()
    return low in PARTICIPLES or (len(low) > 3 and low.endswith("ed"))


def parse(tokens: list[str], tags: list[str]) -> list[tuple[int, str, str, str, int, str]]:
    """Returns CoNLL-U-shaped rows (index, surface, lemma, upos, head, deprel)."""
    n = len(tokens)
    heads = [-1] * n
    deprels = [""] * n

    verbs = [i for i in range(n) if tags[i] == "VERB"]
    xcomp_verbs = set()
    for v in verbs:
        j = v - 1
        while j >= 0 and tags[j] == "AUX":
            j -= 1
        if j >= 0 and tags[j] == "PART":
            xcomp_verbs.add(v)
    acl_verbs = set()
    for v in verbs:
        if v in xcomp_verbs:
            continue
        later_main = any(w > v and w not in xcomp_verbs for w in verbs)
        if v > 0 and tags[v - 1] in NOMINAL and later_main and _is_participle(tokens[v]):
            acl_verbs.add(v)

    root_candidates = [v for v in verbs if v not in xcomp_verbs and v not in acl_verbs]
    copular_root = None
    if root_candidates:
        root = root_candidates[0]
    else:
        be_positions = [i for i in range(n) if tokens[i].lower() in BE_FORMS]
        after_be = [i for i in range(n) if tags[i] in NOMINAL
                    and be_positions and i > be_positions[0]]
        nominals = [i for i in range(n) if tags[i] in NOMINAL]
        if after_be:
            root = copular_root = after_be[0]
        elif verbs:
            root = verbs[0]
        elif nominals:
            root = nominals[-1]
        else:
            root = 0
    heads[root] = 0
    deprels[root] = "root"

    # noun-phrase runs: the last nominal heads the run
    np_head_of = {}
    i = 0
    while i < n:
        if tags[i] in NOMINAL:
            j = i
            while j + 1 < n and tags[j + 1] in NOMINAL:
                j += 1
            for k in range(i, j + 1):
                np_head_of[k] = j
                if k != j and heads[k] == -1:
                    heads[k] = j + 1
                    deprels[k] = "compound"
            i = j + 1
        else:
            i += 1
    np_heads = sorted({h for h in np_head_of.values()})

    def next_np_head(position: int) -> int | None:
        for h in np_heads:
            if h > position:
                return h
        return None

    def nearest_verb_before(position: int) -> int | None:
        before = [v for v in verbs if v < position]
        return before[-1] if before else None

    case_of: dict[int, int] = {}      # np head -> adposition index

    for i in range(n):
        if heads[i] != -1 or i == root:
            continue
        upos, low = tags[i], tokens[i].lower()
        if upos == "PUNCT":
            heads[i], deprels[i] = root + 1, "punct"
        elif upos == "DET":
            target = next_np_head(i)
            if target is None and copular_root is not None:
                target = copular_root
            heads[i], deprels[i] = (target + 1, "det") if target is not None \
                else (root + 1, "dep")
        elif upos == "ADJ":
            target = next_np_head(i)
            heads[i], deprels[i] = (target + 1, "amod") if target is not None \
                else (root + 1, "dep")
        elif upos == "ADP":
            target = next_np_head(i)
            if target is not None:
                heads[i], deprels[i] = target + 1, "case"
                case_of.setdefault(target, i)
            else:
                heads[i], deprels[i] = root + 1, "dep"
        elif upos == "PART":
            following = [v for v in verbs if v > i]
            heads[i], deprels[i] = (following[0] + 1, "mark") if following \
                else (root + 1, "dep")
        elif upos == "AUX":
            following = [v for v in verbs if v > i]
            if following:
                verb = following[0]
                passive = low in BE_FORMS and _is_participle(tokens[verb])
                heads[i], deprels[i] = verb + 1, "aux:pass" if passive else "aux"
            elif copular_root is not None:
                heads[i], deprels[i] = copular_root + 1, "cop"
            else:
                heads[i], deprels[i] = root + 1, "dep"
        elif upos == "CCONJ":
            target = next_np_head(i)
            heads[i], deprels[i] = (target + 1, "cc") if target is not None \
                else (root + 1, "dep")
        elif upos == "VERB":
            if i in xcomp_verbs:
                anchor = nearest_verb_before(i)
                heads[i], deprels[i] = (anchor + 1, "xcomp") if anchor is not None \
                    else (root + 1, "dep")
            elif i in acl_verbs:
                heads[i], deprels[i] = np_head_of[i - 1] + 1, "acl"
            else:
                heads[i], deprels[i] = root + 1, "conj"
        elif upos == "ADV":
            anchor = nearest_verb_before(i)
            heads[i], deprels[i] = (anchor + 1, "advmod") if anchor is not None \
                else (root + 1, "advmod")
        elif i in np_heads:
            continue    # nominal heads handled below
        else:
            heads[i], deprels[i] = root + 1, "dep"

    root_is_passive = tags[root] == "VERB" and any(
        tags[j] == "AUX" and tokens[j].lower() in BE_FORMS
        and heads[j] == root + 1 for j in range(n)) and _is_participle(tokens[root])

    for h in np_heads:
        if heads[h] != -1 or h == root:
            continue
        if h in case_of:
            anchor = nearest_verb_before(case_of[h])
            if anchor is not None:
                heads[h], deprels[h] = anchor + 1, "obl"
            else:
                heads[h], deprels[h] = root + 1, \
                    "nmod" if tags[root] in NOMINAL else "obl"
        elif h < root:
            deprel = "nsubj:pass" if root_is_passive else "nsubj"
            heads[h], deprels[h] = root + 1, deprel
        else:
            anchor = nearest_verb_before(h)
            if anchor is not None:
                heads[h], deprels[h] = anchor + 1, "obj"
            else:
                heads[h], deprels[h] = root + 1, "dep"

    for i in range(n):
        if heads[i] == -1:
            heads[i], deprels[i] = root + 1, "dep"
        if heads[i] == i + 1:       # never self-headed
            heads[i], deprels[i] = root + 1, "dep"

    # guarantee acyclicity: walk up from each token, reattach strays to root
    for i in range(n):
        seen = set()
        current = i
        while heads[current] != 0:
            if current in seen:
                heads[i], deprels[i] = root + 1, "dep"
                break
            seen.add(current)
            current = heads[current] - 1

    return [(i + 1, tokens[i], tokens[i].lower(), tags[i], heads[i], deprels[i])
            for i in range(n)]


def parse_text(text: str) -> list[tuple[int, str, str, str, int, str]]:
    tokens = tokenize(text)
    if not tokens:
        return []
    return parse(tokens, tag(tokens))
