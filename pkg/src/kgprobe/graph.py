"""Knowledge graphs built from triples, with stemming-based node identity.

Node identity is the Porter stem of the lowercased phrase, which merges
inflectional variants ("college"/"colleges") and so increases graph
connectivity. Relation labels keep their surface form for readable edges;
a stemmed copy is carried alongside for diagnostics but does not take part
in edge identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .extract import Triple
from .porter import stem_word


class GraphFormatError(ValueError):
    """Malformed graph file (carries location context in the message)."""


def stem_phrase(phrase: str) -> str:
    """Lowercase, split on whitespace, Porter-stem each token, rejoin."""
    if not phrase or not phrase.strip():
        raise ValueError("cannot stem an empty phrase")
    return " ".join(stem_word(tok) for tok in phrase.lower().split())


@dataclass(frozen=True)
class Node:
    id: str                      # stemmed label
    surfaces: frozenset[str]     # original phrases that collapsed here


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str
    sentence_ids: frozenset[str]
    label_stem: str = ""

    def key(self) -> tuple[str, str, str]:
        return (self.source, self.target, self.label)


@dataclass(frozen=True)
class KnowledgeGraph:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: dict[tuple[str, str, str], Edge] = field(default_factory=dict)

    def __post_init__(self):
        for key, edge in self.edges.items():
            if edge.source not in self.nodes or edge.target not in self.nodes:
                raise ValueError(f"edge {key} references a node that is not in the graph")

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def node_ids(self) -> list[str]:
        return sorted(self.nodes)

    def edge_list(self) -> list[Edge]:
        return [self.edges[k] for k in sorted(self.edges)]

    def undirected_pairs(self) -> set[tuple[str, str]]:
        """Distinct undirected node pairs with at least one edge, no self loops."""
        pairs = set()
        for source, target, _ in self.edges:
            if source != target:
                pairs.add((source, target) if source <= target else (target, source))
        return pairs

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            {k: v.surfaces for k, v in self.nodes.items()}
            == {k: v.surfaces for k, v in other.nodes.items()}
            and {k: v.sentence_ids for k, v in self.edges.items()}
            == {k: v.sentence_ids for k, v in other.edges.items()}
        )


def build_graph(triples: list[Triple]) -> KnowledgeGraph:
    """One node per distinct stemmed phrase, one edge per distinct
    (stemmed source, stemmed target, relation surface); duplicates merge
    and sentence provenance accumulates. Input order does not matter."""
    surfaces: dict[str, set[str]] = {}
    sentence_ids: dict[tuple[str, str, str], set[str]] = {}
    for triple in triples:
        source = stem_phrase(triple.subject)
        target = stem_phrase(triple.object)
        surfaces.setdefault(source, set()).add(triple.subject)
        surfaces.setdefault(target, set()).add(triple.object)
        sentence_ids.setdefault((source, target, triple.relation), set()).add(triple.sentence_id)
    nodes = {nid: Node(id=nid, surfaces=frozenset(surf)) for nid, surf in surfaces.items()}
    edges = {
        key: Edge(source=key[0], target=key[1], label=key[2],
                  sentence_ids=frozenset(ids), label_stem=stem_phrase(key[2]))
        for key, ids in sentence_ids.items()
    }
    return KnowledgeGraph(nodes=nodes, edges=edges)


def write_graph(graph: KnowledgeGraph, path: str | Path) -> None:
    """Serialize with stable ordering so identical graphs give identical bytes."""
    payload = {
        "nodes": [
            {"id": node.id, "surfaces": sorted(node.surfaces)}
            for node in (graph.nodes[nid] for nid in sorted(graph.nodes))
        ],
        "edges": [
            {"source": edge.source, "target": edge.target, "label": edge.label,
             "sentence_ids": sorted(edge.sentence_ids)}
            for edge in graph.edge_list()
        ],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2)
        handle.write("\n")


def read_graph(path: str | Path) -> KnowledgeGraph:
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: not valid JSON: {exc}") from exc
    for required in ("nodes", "edges"):
        if required not in payload:
            raise GraphFormatError(f"{path}: missing {required!r} field")
    nodes: dict[str, Node] = {}
    for i, entry in enumerate(payload["nodes"]):
        try:
            nodes[entry["id"]] = Node(id=entry["id"], surfaces=frozenset(entry["surfaces"]))
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"{path}: nodes[{i}]: {exc}") from exc
    edges: dict[tuple[str, str, str], Edge] = {}
    for i, entry in enumerate(payload["edges"]):
        try:
            edge = Edge(source=entry["source"], target=entry["target"],
                        label=entry["label"],
                        sentence_ids=frozenset(entry["sentence_ids"]),
                        label_stem=stem_phrase(entry["label"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"{path}: edges[{i}]: {exc}") from exc
        if edge.source not in nodes or edge.target not in nodes:
            raise GraphFormatError(
                f"{path}: edges[{i}] references a node that is not in the graph")
        edges[edge.key()] = edge
    return KnowledgeGraph(nodes=nodes, edges=edges)
