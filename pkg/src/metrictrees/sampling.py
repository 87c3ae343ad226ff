"""Random trees and point samples for randomized verification runs."""

from __future__ import annotations

import numpy as np

from .core import MetricTree, Tolerance, TreePoint

__all__ = ["random_tree", "random_point", "random_points", "edge_samples"]


def random_tree(
    rng: np.random.Generator,
    n_nodes: int | None = None,
    max_nodes: int = 12,
    length_range: tuple[float, float] = (0.2, 2.5),
    tol: Tolerance | None = None,
) -> MetricTree:
    """Uniform random attachment tree with lengths drawn from length_range."""
    if n_nodes is None:
        n_nodes = int(rng.integers(1, max_nodes + 1))
    lo, hi = length_range
    edges = [
        (int(rng.integers(0, i)), i, float(rng.uniform(lo, hi)))
        for i in range(1, n_nodes)
    ]
    return MetricTree(n_nodes, edges, tol=tol)


def random_point(rng: np.random.Generator, tree: MetricTree) -> TreePoint:
    """Random location: a node with probability 1/4, else uniform on an edge."""
    if not tree.edges or rng.random() < 0.25:
        return tree.node_point(int(rng.integers(0, tree.n_nodes)))
    e = int(rng.integers(0, len(tree.edges)))
    u, v = tree.edge_nodes(e)
    return tree.edge_point(u, v, float(rng.uniform(0.0, tree.edge_length(e))))


def random_points(rng: np.random.Generator, tree: MetricTree, k: int) -> list[TreePoint]:
    return [random_point(rng, tree) for _ in range(k)]


def edge_samples(tree: MetricTree, per_edge: int = 3) -> list[TreePoint]:
    """Deterministic dense sample: every node plus interior edge points."""
    pts = [tree.node_point(i) for i in range(tree.n_nodes)]
    for e, (u, v, length) in enumerate(tree.edges):
        for j in range(1, per_edge + 1):
            pts.append(tree.edge_point(u, v, length * j / (per_edge + 1)))
    return pts
