"""Optimal covers and the covering profiles alpha_n, beta_n, beta*_n.

For a finite set A in a metric tree:

  beta_n   = smallest radius so that n closed balls cover A
  alpha_n  = smallest bound so that A splits into n blocks of that diameter
  beta*_n  = smallest bound so that n balls of that diameter cover A

On trees these are locked together: alpha_n = beta*_n = 2 * beta_n, because
a cluster of diameter d always fits in one closed ball of radius d/2 around
the midpoint of its farthest pair, and never in anything smaller.
"""

import numpy as np

from metrictrees import (
    PointSet,
    alpha_profile,
    beta_profile,
    beta_star_profile,
    circumcenter,
    diameter,
    gallery,
    measure_report,
    min_ball_cover,
    oracle_profiles,
    random_points,
    random_tree,
)

# The n-spoke star: any two tips are 2 apart, so no radius below 1 covers
# two of them with one ball.  Covering n tips takes n balls until the
# radius reaches 1, at which point the hub alone suffices.
doc = gallery("star", n=5)
tips = [doc.points[f"tip{i}"] for i in range(1, 6)]
ps = PointSet(doc.tree, tips)

print("star(5): diameter =", diameter(ps)[0])
print("circumcenter:", circumcenter(ps))
for r in (0.5, 0.99, 1.0):
    print(f"  min cover at radius {r}: {len(min_ball_cover(ps, r).centers)} ball(s)")

print("\nprofiles over n = 1..5:")
print("  beta :", beta_profile(ps, 5).values)
print("  alpha:", alpha_profile(ps, 5).values)
print("  beta*:", beta_star_profile(ps, 5).values)

# The comb with unit teeth keeps beta_n = 1 for every n below the tooth
# count: the finite shadow of a non-totally-bounded ball.
comb = gallery("comb_noncompact", n=6)
comb_tips = [comb.points[f"tip{i}"] for i in range(1, 7)]
cps = PointSet(comb.tree, comb_tips)
print("\ncomb_noncompact(6) tip profiles:")
print("  beta :", tuple(round(v, 6) for v in beta_profile(cps, 6).values))

# Shrinking teeth make the profile decay instead: compactness in miniature.
comb_c = gallery("comb_compact", n=6)
cc_tips = [comb_c.points[f"tip{i}"] for i in range(1, 7)]
ccps = PointSet(comb_c.tree, cc_tips)
print("comb_compact(6) tip profiles:")
print("  beta :", tuple(round(v, 6) for v in beta_profile(ccps, 6).values))

# measure_report bundles the three profiles with the relation checks; the
# exhaustive partition oracle agrees on random instances.
rng = np.random.default_rng(23)
tree = random_tree(rng, n_nodes=18)
rps = PointSet(tree, random_points(rng, tree, 7))
rep = measure_report(rps)
print("\nrandom 7-point set: relations hold?", rep.passed)
print("  alpha :", tuple(round(v, 6) for v in rep.alpha.values))
print("  2*beta:", tuple(round(2 * v, 6) for v in rep.beta.values))
oa, ob = oracle_profiles(rps, len(rps.distinct))
print("  oracle:", tuple(round(v, 6) for v in oa))
