import random
from pathlib import Path

import pytest

from kgprobe.graph import Edge, KnowledgeGraph, Node

DATA = Path(__file__).parent / "data"


def make_graph(nodes: list[str], edges: list[tuple[str, str, str]],
               sentence_id: str = "s") -> KnowledgeGraph:
    """Build a labeled graph directly; node ids double as labels."""
    node_map = {n: Node(id=n, surfaces=frozenset({n})) for n in nodes}
    edge_map = {}
    for source, target, label in edges:
        edge_map[(source, target, label)] = Edge(
            source=source, target=target, label=label,
            sentence_ids=frozenset({sentence_id}), label_stem=label)
    return KnowledgeGraph(nodes=node_map, edges=edge_map)


def random_graph(rng: random.Random, max_nodes: int = 6,
                 label_pool: tuple[str, ...] = ("a", "b", "c"),
                 relation_pool: tuple[str, ...] = ("r", "s")) -> KnowledgeGraph:
    """Small random labeled digraph; node ids are label-prefixed to allow
    duplicate labels mapping to distinct nodes being rare but possible."""
    n = rng.randint(0, max_nodes)
    nodes = []
    for i in range(n):
        # a few id collisions on purpose: identical labels on distinct nodes
        label = rng.choice(label_pool)
        nodes.append(f"{label}{i}" if rng.random() < 0.5 else label)
    nodes = sorted(set(nodes))
    edges = []
    for source in nodes:
        for target in nodes:
            if source != target and rng.random() < 0.3:
                edges.append((source, target, rng.choice(relation_pool)))
    return make_graph(nodes, edges)


@pytest.fixture
def corpus_dir() -> Path:
    return DATA / "corpus"


@pytest.fixture
def table1_path() -> Path:
    return DATA / "table1.conllu"
