"""Whole-graph embeddings from characteristic functions of node features.

A graph becomes a fixed-length vector: take the undirected simple view of
the knowledge graph, give every node a self-loop, and let W be the
row-normalized adjacency (a random-walk matrix). For each feature x, walk
scale s = 1..r and evaluation point theta_j = j * theta_max / d, the
per-node characteristic function is

    Re phi_u = sum_w (W^s)_{u,w} cos(theta_j * x_w)
    Im phi_u = sum_w (W^s)_{u,w} sin(theta_j * x_w)

and the embedding mean-pools these over nodes. Coordinate order is fixed:
for each feature, all real parts (scale-major, then theta ascending), then
all imaginary parts in the same order. The defaults (one feature, d = 25,
r = 2) give 2 * 1 * 25 * 2 = 100 dimensions.

Everything is deterministic; an embedding records a fingerprint of its
configuration so vectors from different configurations can never be
compared silently.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .graph import KnowledgeGraph


def _log_degree(degrees: np.ndarray, neighbors: list[set[int]]) -> np.ndarray:
    return np.log1p(degrees.astype(np.float64))


def _clustering(degrees: np.ndarray, neighbors: list[set[int]]) -> np.ndarray:
    """Local clustering coefficient of the undirected simple view."""
    values = np.zeros(len(neighbors))
    for u, nbrs in enumerate(neighbors):
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(1 for v in nbrs for w in nbrs if v < w and w in neighbors[v])
        values[u] = 2.0 * links / (k * (k - 1))
    return values


FEATURES = {
    "log_degree": _log_degree,
    "clustering": _clustering,
}


@dataclass(frozen=True)
class EmbeddingConfig:
    theta_max: float = 2.5
    eval_points: int = 25
    order: int = 2
    features: tuple[str, ...] = ("log_degree",)

    def __post_init__(self):
        if self.theta_max <= 0:
            raise ValueError("theta_max must be positive")
        if self.eval_points < 1 or self.order < 1:
            raise ValueError("eval_points and order must be positive")
        unknown = [f for f in self.features if f not in FEATURES]
        if unknown:
            raise ValueError(f"unknown features: {unknown} (have {sorted(FEATURES)})")

    @property
    def dimension(self) -> int:
        return 2 * len(self.features) * self.eval_points * self.order

    def fingerprint(self) -> str:
        payload = json.dumps({
            "theta_max": self.theta_max,
            "eval_points": self.eval_points,
            "order": self.order,
            "features": list(self.features),
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class GraphEmbedding:
    vector: np.ndarray
    config_fingerprint: str

    def __post_init__(self):
        if not np.isfinite(self.vector).all():
            raise ValueError("embedding contains non-finite entries")


def embed_graph(graph: KnowledgeGraph, cfg: EmbeddingConfig | None = None) -> GraphEmbedding:
    cfg = cfg if cfg is not None else EmbeddingConfig()
    ids = graph.node_ids()
    n = len(ids)
    if n == 0:
        return GraphEmbedding(vector=np.zeros(cfg.dimension),
                              config_fingerprint=cfg.fingerprint())

    index = {node: i for i, node in enumerate(ids)}
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for a, b in graph.undirected_pairs():
        neighbors[index[a]].add(index[b])
        neighbors[index[b]].add(index[a])
    degrees = np.array([len(nbrs) for nbrs in neighbors], dtype=np.intp)

    adjacency = np.eye(n)                      # self-loops keep W stochastic
    for u, nbrs in enumerate(neighbors):
        for v in nbrs:
            adjacency[u, v] = 1.0
    walk = adjacency / adjacency.sum(axis=1, keepdims=True)

    theta = cfg.theta_max * np.arange(1, cfg.eval_points + 1) / cfg.eval_points
    blocks = []
    for feature in cfg.features:
        x = FEATURES[feature](degrees, neighbors)
        angles = np.outer(x, theta)            # (n, d)
        cos_part = np.cos(angles)
        sin_part = np.sin(angles)
        real_rows, imag_rows = [], []
        pooled = np.full(n, 1.0 / n)           # mean over u of (W^s)_{u, .}
        for _ in range(cfg.order):
            pooled = pooled @ walk
            real_rows.append(pooled @ cos_part)
            imag_rows.append(pooled @ sin_part)
        blocks.append(np.concatenate(real_rows))
        blocks.append(np.concatenate(imag_rows))
    return GraphEmbedding(vector=np.concatenate(blocks),
                          config_fingerprint=cfg.fingerprint())


def euclidean(a: GraphEmbedding, b: GraphEmbedding) -> float:
    """L2 distance; refuses embeddings from different configurations."""
    if a.config_fingerprint != b.config_fingerprint:
        raise ValueError(
            f"embedding configurations differ "
            f"({a.config_fingerprint} vs {b.config_fingerprint})")
    return float(math.sqrt(np.sum((a.vector - b.vector) ** 2)))
