"""Reader for dependency-annotated sentences in 10-column CoNLL-U layout.

Sentences are keyed by a mandatory ``# sent_id = <id>`` comment so they can
be joined back to the cloze record that produced them. Multiword-range
lines (``1-2``) and empty nodes (``1.1``) are skipped. Sentences whose head
links do not form a tree are dropped with a warning rather than aborting
the whole file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})


class ConlluError(ValueError):
    """Malformed CoNLL-U input (carries file location in the message)."""


@dataclass(frozen=True)
class Token:
    index: int          # 1-based position in the sentence
    surface: str
    lemma: str
    upos: str
    head: int           # 0 = root
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} cannot be its own head")


@dataclass(frozen=True)
class ParsedSentence:
    id: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        n = len(self.tokens)
        indices = [t.index for t in self.tokens]
        if indices != list(range(1, n + 1)):
            raise ValueError(f"sentence {self.id!r}: token indices not contiguous 1..{n}")
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise ValueError(f"sentence {self.id!r}: expected exactly one root, found {len(roots)}")
        for t in self.tokens:
            if t.head > n:
                raise ValueError(f"sentence {self.id!r}: token {t.index} head {t.head} out of range")
        _check_tree(self.id, self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"token index {index} out of range 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    def children(self, index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == index]

    @property
    def root(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)


def _check_tree(sent_id: str, tokens: tuple[Token, ...]) -> None:
    n = len(tokens)
    for t in tokens:
        current = t
        for _ in range(n):
            if current.head == 0:
                break
            current = tokens[current.head - 1]
        else:
            raise ValueError(f"sentence {sent_id!r}: head links from token {t.index} form a cycle")


def parse_conllu(path: str | Path) -> tuple[list[ParsedSentence], list[str]]:
    """Read a CoNLL-U file; returns (sentences, warnings).

    Format violations (wrong column count, bad indices, missing sent_id)
    raise ConlluError with the offending line number. Sentences that fail
    the tree invariant are reported in warnings and dropped.
    """
    sentences: list[ParsedSentence] = []
    warnings: list[str] = []
    sent_id: str | None = None
    rows: list[tuple[int, list[str]]] = []   # (line number, columns)
    path = Path(path)

    def flush(end_line: int) -> None:
        nonlocal sent_id, rows
        if not rows:
            sent_id = None
            return
        if sent_id is None:
            raise ConlluError(f"{path}:{end_line}: sentence block without '# sent_id =' comment")
        tokens = []
        for lineno, cols in rows:
            try:
                tokens.append(Token(
                    index=int(cols[0]),
                    surface=cols[1],
                    lemma=cols[2],
                    upos=cols[3],
                    head=int(cols[6]),
                    deprel=cols[7],
                ))
            except ValueError as exc:
                raise ConlluError(f"{path}:{lineno}: {exc}") from exc
        try:
            sentences.append(ParsedSentence(id=sent_id, tokens=tuple(tokens)))
        except ValueError as exc:
            warnings.append(f"{path}: dropped sentence {sent_id!r}: {exc}")
        sent_id = None
        rows = []

    with open(path, encoding="utf-8") as handle:
        lineno = 0
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush(lineno)
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    if key.strip() == "sent_id":
                        sent_id = value.strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise ConlluError(f"{path}:{lineno}: expected 10 tab-separated columns, got {len(cols)}")
            if "-" in cols[0] or "." in cols[0]:
                continue    # multiword range / empty node
            rows.append((lineno, cols))
        flush(lineno + 1)
    return sentences, warnings


def write_conllu(sentences: list[ParsedSentence], path: str | Path) -> None:
    """Debug writer: emits the columns parse_conllu consumes, '_' elsewhere."""
    with open(path, "w", encoding="utf-8") as handle:
        for sentence in sentences:
            handle.write(f"# sent_id = {sentence.id}\n")
            for t in sentence.tokens:
                cols = [str(t.index), t.surface, t.lemma, t.upos, "_", "_",
                        str(t.head), t.deprel, "_", "_"]
                handle.write("\t".join(cols) + "\n")
            handle.write("\n")


def subtree_span(sentence: ParsedSentence, index: int,
                 exclude_deprels: frozenset[str] | set[str] = frozenset()) -> list[Token]:
    """The token at ``index`` plus its transitive dependents, in surface order.

    Dependents reached through an excluded deprel are cut off together with
    everything below them. A deprel is excluded when it matches exactly or
    by its base label (the part before ':').
    """
    anchor = sentence.token(index)

    def excluded(deprel: str) -> bool:
        return deprel in exclude_deprels or deprel.split(":")[0] in exclude_deprels

    collected = [anchor]
    queue = [anchor]
    while queue:
        node = queue.pop()
        for child in sentence.children(node.index):
            if excluded(child.deprel):
                continue
            collected.append(child)
            queue.append(child)
    return sorted(collected, key=lambda t: t.index)
