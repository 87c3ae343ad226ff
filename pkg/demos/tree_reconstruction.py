"""Recognizing and reconstructing tree metrics from distance matrices.

A metric comes from a tree exactly when every quadruple satisfies the
four-point condition: among the three pairing sums, the two largest agree.
When it holds, the realizing tree is unique and can be rebuilt exactly.
"""

import math

import numpy as np

from metrictrees import (
    DistanceMatrix,
    NotTreeMetric,
    check_four_point,
    matrix_from_points,
    random_points,
    random_tree,
    serialize_tree,
    tree_from_distances,
    TreeDocument,
)

# A hand-written additive matrix: three taxa around a hub.
m = DistanceMatrix(("a", "b", "c"), np.array([
    [0.0, 3.0, 4.0],
    [3.0, 0.0, 5.0],
    [4.0, 5.0, 0.0],
]))
ok, _ = check_four_point(m)
print("3x3 matrix passes four-point (vacuously):", ok)

tree, pts = tree_from_distances(m)
print("reconstructed:", tree)
for x in "abc":
    for y in "abc":
        print(f"  d({x}, {y}) = {tree.distance(pts[x], pts[y])}", end="")
    print()

print("\nserialized tree document:")
print(serialize_tree(TreeDocument(tree, pts)))

# Euclidean distances on the unit square are a metric but not a tree metric.
s = math.sqrt(2.0)
square = DistanceMatrix(("p", "q", "r", "s"), np.array([
    [0, 1, s, 1],
    [1, 0, 1, s],
    [s, 1, 0, 1],
    [1, s, 1, 0],
]))
ok, quad = check_four_point(square)
print("unit square is a tree metric?", ok, "(violating quadruple:", quad, ")")
try:
    tree_from_distances(square)
except NotTreeMetric as exc:
    print("reconstruction refuses:", exc)

# Round trip on a random tree: sample points, extract distances, rebuild,
# re-measure.
rng = np.random.default_rng(11)
source = random_tree(rng, n_nodes=14)
sample = random_points(rng, source, 7)
matrix = matrix_from_points(source, sample)
rebuilt, named = tree_from_distances(matrix)
again = matrix_from_points(rebuilt, [named[l] for l in matrix.labels])
print("\nround-trip deviation on a random 14-node tree:",
      float(abs(again.values - matrix.values).max()))
