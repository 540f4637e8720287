"""Graph edit distance between knowledge graphs.

Two methods share one cost model:

* exact_ged - branch-and-bound over all partial injections of the smaller
  node set into the larger; feasible only for small graphs.
* aed - assignment edit distance: one linear assignment over node
  substitution/deletion/insertion costs (with a nested assignment over
  incident-edge labels estimating local edge cost), whose recovered node
  mapping is then priced exactly. Because the reported number is the
  induced cost of a feasible mapping, aed is always an upper bound on the
  exact distance. aed solves the assignment in both directions and keeps
  the cheaper mapping, which also makes it symmetric under symmetric cost
  models.

Node labels are the stemmed node ids; under the default unit cost model a
substitution costs 0 exactly when the labels are equal, and every other
operation costs 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..graph import KnowledgeGraph
from .assignment import AssignmentProblem, BACKEND, solve_assignment

__all__ = [
    "AssignmentProblem", "BACKEND", "CostModel", "GedResult", "UNIT_COSTS",
    "aed", "build_assignment_problem", "exact_ged", "induced_cost",
    "solve_assignment",
]


def _label_mismatch(a: str, b: str) -> float:
    return 0.0 if a == b else 1.0


@dataclass(frozen=True)
class CostModel:
    """Edit-operation costs; the default is the unit model."""

    node_sub: Callable[[str, str], float] = _label_mismatch
    node_del: float = 1.0
    node_ins: float = 1.0
    edge_sub: Callable[[str, str], float] = _label_mismatch
    edge_del: float = 1.0
    edge_ins: float = 1.0

    def __post_init__(self):
        for name in ("node_del", "node_ins", "edge_del", "edge_ins"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


UNIT_COSTS = CostModel()


@dataclass(frozen=True)
class GedResult:
    cost: float
    mapping: dict[str, str]        # partial injection, g1 node id -> g2 node id
    method: str                    # "exact" | "aed"
    assignment_objective: float | None = None   # raw LSAP objective, aed only


def _edge_labels(graph: KnowledgeGraph) -> dict[tuple[str, str], tuple[str, ...]]:
    """Labels per ordered node pair, sorted for determinism."""
    pairs: dict[tuple[str, str], list[str]] = {}
    for source, target, label in graph.edges:
        pairs.setdefault((source, target), []).append(label)
    return {pair: tuple(sorted(labels)) for pair, labels in pairs.items()}


def induced_cost(g1: KnowledgeGraph, g2: KnowledgeGraph,
                 mapping: dict[str, str], cm: CostModel = UNIT_COSTS) -> float:
    """Edit cost the node mapping induces.

    Mapped node pairs are substitutions; unmapped g1 nodes are deletions,
    unhit g2 nodes insertions. An edge is substituted exactly when both
    endpoints are mapped and the image pair carries an edge; otherwise it
    is deleted (g1 side) or inserted (g2 side).
    """
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise ValueError("mapping is not injective")
    for source, target in mapping.items():
        if source not in g1.nodes:
            raise ValueError(f"mapped node {source!r} is not in the first graph")
        if target not in g2.nodes:
            raise ValueError(f"mapped node {target!r} is not in the second graph")

    cost = 0.0
    for source, target in mapping.items():
        cost += cm.node_sub(source, target)
    cost += cm.node_del * sum(1 for n in g1.nodes if n not in mapping)
    hit = set(targets)
    cost += cm.node_ins * sum(1 for n in g2.nodes if n not in hit)

    edges1 = _edge_labels(g1)
    edges2 = _edge_labels(g2)
    consumed: set[tuple[str, str]] = set()
    for (u, ve), labels1 in edges1.items():
        if u in mapping and ve in mapping:
            image = (mapping[u], mapping[ve])
            labels2 = edges2.get(image, ())
            consumed.add(image)
            cost += _reconcile_labels(labels1, labels2, cm)
        else:
            cost += cm.edge_del * len(labels1)
    for pair, labels2 in edges2.items():
        if pair not in consumed:
            cost += cm.edge_ins * len(labels2)
    return cost


def _reconcile_labels(labels1: tuple[str, ...], labels2: tuple[str, ...],
                      cm: CostModel) -> float:
    """Edge cost between one mapped pair: exact matches substitute first,
    remainders pair in sorted order, leftovers delete/insert."""
    rest2 = list(labels2)
    rest1 = []
    cost = 0.0
    for label in labels1:
        if label in rest2:
            rest2.remove(label)
            cost += cm.edge_sub(label, label)
        else:
            rest1.append(label)
    paired = min(len(rest1), len(rest2))
    for a, b in zip(sorted(rest1)[:paired], sorted(rest2)[:paired]):
        cost += cm.edge_sub(a, b)
    cost += cm.edge_del * (len(rest1) - paired)
    cost += cm.edge_ins * (len(rest2) - paired)
    return cost


def _identity_candidate(g1: KnowledgeGraph, g2: KnowledgeGraph) -> dict[str, str] | None:
    if set(g1.nodes) == set(g2.nodes) and set(g1.edges) == set(g2.edges):
        return {n: n for n in g1.nodes}
    return None


def exact_ged(g1: KnowledgeGraph, g2: KnowledgeGraph, cm: CostModel = UNIT_COSTS,
              node_limit: int = 8) -> GedResult:
    """Minimum induced cost over all partial injections (branch and bound).

    Exponential in node count; refuses graphs above node_limit.
    """
    n1, n2 = g1.node_count, g2.node_count
    if max(n1, n2) > node_limit:
        raise ValueError(
            f"exact search over {max(n1, n2)} nodes exceeds the limit of "
            f"{node_limit}; use aed for graphs this size")

    ids1 = g1.node_ids()
    ids2 = g2.node_ids()
    edges1 = _edge_labels(g1)
    edges2 = _edge_labels(g2)

    best_cost = np.inf
    best_mapping: dict[str, str] = {}
    identity = _identity_candidate(g1, g2)
    if identity is not None:
        best_cost = induced_cost(g1, g2, identity, cm)
        best_mapping = identity
    empty_cost = induced_cost(g1, g2, {}, cm)
    if empty_cost < best_cost:
        best_cost = empty_cost
        best_mapping = {}

    assignment: list[str | None] = []

    def pair_cost_with_decided(i: int, target: str | None) -> float:
        """Edge costs between g1 node i and already-decided g1 nodes,
        including i's own self-loops."""
        cost = 0.0
        self_labels = edges1.get((ids1[i], ids1[i]), ())
        if target is None:
            cost += cm.edge_del * len(self_labels)
        else:
            cost += _reconcile_labels(self_labels, edges2.get((target, target), ()), cm)
        for j in range(i):
            other = assignment[j]
            for a, b in ((ids1[i], ids1[j]), (ids1[j], ids1[i])):
                labels1 = edges1.get((a, b), ())
                if target is None or other is None:
                    cost += cm.edge_del * len(labels1)
                    continue
                image = (target, other) if a == ids1[i] else (other, target)
                labels2 = edges2.get(image, ())
                cost += _reconcile_labels(labels1, labels2, cm)
        return cost

    def leaf_cost(used: set[str]) -> float:
        cost = cm.node_ins * sum(1 for n in ids2 if n not in used)
        for (x, y), labels2 in edges2.items():
            if x not in used or y not in used:
                cost += cm.edge_ins * len(labels2)
        return cost

    def search(i: int, used: set[str], partial: float) -> None:
        nonlocal best_cost, best_mapping
        if partial >= best_cost:
            return
        if i == n1:
            total = partial + leaf_cost(used)
            if total < best_cost:
                best_cost = total
                best_mapping = {ids1[k]: assignment[k] for k in range(n1)
                                if assignment[k] is not None}
            return
        label = ids1[i]
        for target in ids2:
            if target in used:
                continue
            step = cm.node_sub(label, target) + pair_cost_with_decided(i, target)
            assignment.append(target)
            used.add(target)
            search(i + 1, used, partial + step)
            used.discard(target)
            assignment.pop()
        step = cm.node_del + pair_cost_with_decided(i, None)
        assignment.append(None)
        search(i + 1, used, partial + step)
        assignment.pop()

    search(0, set(), 0.0)
    return GedResult(cost=float(best_cost), mapping=best_mapping, method="exact")


def _incident_labels(graph: KnowledgeGraph) -> dict[str, tuple[str, ...]]:
    incident: dict[str, list[str]] = {n: [] for n in graph.nodes}
    for source, target, label in graph.edges:
        incident[source].append(label)
        incident[target].append(label)
    return {n: tuple(sorted(labels)) for n, labels in incident.items()}


def _nested_edge_estimate(labels1: tuple[str, ...], labels2: tuple[str, ...],
                          cm: CostModel) -> float:
    """Assignment over two incident-edge label multisets."""
    p, q = len(labels1), len(labels2)
    if p == 0 and q == 0:
        return 0.0
    size = p + q
    matrix = np.full((size, size), np.inf)
    for i, a in enumerate(labels1):
        for j, b in enumerate(labels2):
            matrix[i, j] = cm.edge_sub(a, b)
    for i in range(p):
        matrix[i, q + i] = cm.edge_del
    for j in range(q):
        matrix[p + j, j] = cm.edge_ins
    matrix[p:, q:] = 0.0
    _, total = solve_assignment(AssignmentProblem(matrix))
    return total


def build_assignment_problem(g1: KnowledgeGraph, g2: KnowledgeGraph,
                             cm: CostModel = UNIT_COSTS) -> AssignmentProblem:
    """The (n+m) x (n+m) node assignment matrix behind aed.

    Substitution block entries carry the node substitution cost plus the
    nested incident-edge estimate; deletion/insertion blocks are diagonal
    (node cost plus degree times edge cost) with off-diagonal infinity;
    the dummy block is zero.
    """
    ids1 = g1.node_ids()
    ids2 = g2.node_ids()
    n, m = len(ids1), len(ids2)
    incident1 = _incident_labels(g1)
    incident2 = _incident_labels(g2)
    matrix = np.full((n + m, n + m), np.inf)
    for i, a in enumerate(ids1):
        for j, b in enumerate(ids2):
            matrix[i, j] = cm.node_sub(a, b) + _nested_edge_estimate(
                incident1[a], incident2[b], cm)
    for i, a in enumerate(ids1):
        matrix[i, m + i] = cm.node_del + cm.edge_del * len(incident1[a])
    for j, b in enumerate(ids2):
        matrix[n + j, j] = cm.node_ins + cm.edge_ins * len(incident2[b])
    matrix[n:, m:] = 0.0
    return AssignmentProblem(matrix)


def _aed_mapping(g1: KnowledgeGraph, g2: KnowledgeGraph,
                 cm: CostModel) -> tuple[dict[str, str], float]:
    """Solve the node assignment; returns (mapping, raw objective)."""
    ids1 = g1.node_ids()
    ids2 = g2.node_ids()
    assignment, objective = solve_assignment(build_assignment_problem(g1, g2, cm))
    mapping = {
        ids1[i]: ids2[assignment[i]]
        for i in range(len(ids1)) if assignment[i] < len(ids2)
    }
    return mapping, objective


def aed(g1: KnowledgeGraph, g2: KnowledgeGraph, cm: CostModel = UNIT_COSTS) -> GedResult:
    """Assignment edit distance: upper bound on exact_ged, any graph sizes.

    Solves the node assignment for both argument orders, prices each
    recovered mapping with induced_cost, and reports the cheaper one.
    """
    forward_mapping, objective = _aed_mapping(g1, g2, cm)
    backward_mapping, _ = _aed_mapping(g2, g1, cm)
    candidates = [forward_mapping, {v: k for k, v in backward_mapping.items()}]
    identity = _identity_candidate(g1, g2)
    if identity is not None:
        candidates.append(identity)
    best_cost = np.inf
    best_mapping: dict[str, str] = {}
    for candidate in candidates:
        cost = induced_cost(g1, g2, candidate, cm)
        if cost < best_cost:
            best_cost = cost
            best_mapping = candidate
    return GedResult(cost=float(best_cost), mapping=best_mapping, method="aed",
                     assignment_objective=objective)
