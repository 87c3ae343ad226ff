"""Leaf decompositions and the Lifschitz characteristic of a metric tree.

Every point of a finite metric tree lies on a geodesic from any chosen base
point to some leaf, so the tree is the union of those base-to-leaf segments.
The second half of the demo measures the tree's Lifschitz characteristic:
radius-r "caps" of two-ball intersections exist for every shape parameter
b < 2 and fail for b = 2, pinning the characteristic at exactly 2.
"""

import numpy as np

from metrictrees import (
    edge_samples,
    gallery,
    kappa_probe,
    leaf_cover_check,
    leaf_through,
    leaves,
    lifschitz_counterexample,
    lifschitz_witness,
    random_tree,
    validate_tree,
)

doc = gallery("comb_noncompact", n=5)
tree = doc.tree
origin = doc.points["origin"]

print("leaves of comb_noncompact(5):", sorted(p.node for p in leaves(tree)))

# A point halfway up tooth 3 projects forward to that tooth's tip.
m = tree.edge_point(*tree.edge_nodes(7), 0.5)
f = leaf_through(origin, m)
print("witness leaf for a mid-tooth point:", f, "-> tip3 is", doc.points["tip3"])

ok, _ = leaf_cover_check(tree, origin, edge_samples(tree, per_edge=4))
print("dense sample covered by base-to-leaf segments:", ok)

# --- Lifschitz characteristic ------------------------------------------
# b < 2: choose a = 1 + eps and b = 2 - 2*eps.  The point z at distance
# eps*r from x along [x, y] caps the intersection of B(x; a*r) and
# B(y; b*r) inside B(z; r).
path = validate_tree(11, [(i, i + 1, 1.0) for i in range(10)])
x, y = path.node_point(0), path.node_point(10)
witness, verification = lifschitz_witness(
    path, x, y, r=4.0, eps=0.25, test_points=edge_samples(path, 8)
)
print("\nwitness on a length-10 path (r=4, eps=0.25):")
print("  a =", witness.a, " b =", witness.b, " z =", witness.z)
print("  applicable test points:", verification.applicable,
      " failures:", len(verification.failures))

# b = 2: on a path of length 4r, the segment [u, v] sits inside both
# B(x; a*r) and B(y; 2r) yet has diameter > 2r, so no radius-r ball holds it.
rec = lifschitz_counterexample(r=1.0, a=1.5)
print("\ncounterexample at b = 2 (r=1, a=1.5):")
print("  u =", rec.u, " v =", rec.v, " diam[u,v] =", rec.uv_diameter)
print("  inside both balls:", rec.containment_ok,
      " exceeds 2r:", rec.diameter_exceeds_2r,
      " no small ball:", rec.no_small_ball_ok)

rec = lifschitz_counterexample(r=1.0, a=3.8)
print("large a clamps u to the path end:", rec.clamped, "-> still verified:", rec.passed)

# Randomized two-sided probe on an arbitrary tree.
rng_tree = random_tree(np.random.default_rng(5), n_nodes=15)
report = kappa_probe(rng_tree, trials=50, rng=5)
print("\nkappa probe on a random 15-node tree:")
print("  witness trials:", report.witness_trials,
      " failures:", report.witness_failures)
print("  counterexample templates verified:",
      report.counterexample_trials - report.counterexample_failures)
print("  consistent with characteristic 2:", report.consistent)
