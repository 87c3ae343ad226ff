"""Tests for diameter, circumcenter, optimal covers, and profiles.

Every optimized routine is compared against an independent brute force:
all-pairs scans for the diameter, dense center enumeration for the
circumcenter and one-ball coverability, and exhaustive partition
enumeration for cover counts and profiles.
"""

import itertools

import pytest

from metrictrees import (
    EmptySet,
    NegativeDiameter,
    NegativeRadius,
    PointSet,
    TooLargeForOracle,
    alpha_profile,
    ball_diameter,
    beta_profile,
    beta_star_profile,
    circumcenter,
    diameter,
    edge_samples,
    gallery,
    min_ball_cover,
    min_diameter_partition,
    oracle_min_cover,
    oracle_profiles,
    random_points,
    random_tree,
)

from conftest import star_tips


def all_pairs_diameter(ps):
    pts = ps.distinct
    best = 0.0
    for p, q in itertools.combinations(pts, 2):
        best = max(best, ps.tree.distance(p, q))
    return best


def candidate_centers(ps):
    """Dense center candidates: all nodes plus all pair midpoints (the
    degenerate pair i == j contributes the point itself)."""
    tree = ps.tree
    cands = [tree.node_point(i) for i in range(tree.n_nodes)]
    cands.extend(ps.distinct)
    for p, q in itertools.combinations(ps.distinct, 2):
        cands.append(tree.midpoint(p, q))
    return cands


def random_instance(rng, max_nodes=10, max_points=8):
    tree = random_tree(rng, max_nodes=max_nodes)
    k = int(rng.integers(1, max_points + 1))
    return PointSet(tree, random_points(rng, tree, k))


class TestDiameter:
    def test_singleton(self, simple_doc):
        ps = PointSet(simple_doc.tree, [simple_doc.points["A"]])
        d, (x, y) = diameter(ps)
        assert d == 0.0 and x == y

    def test_star_tips(self, star_doc):
        doc = star_doc(3)
        ps = PointSet(doc.tree, star_tips(doc))
        assert diameter(ps)[0] == pytest.approx(2.0)

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_comb_noncompact_formula(self, n):
        doc = gallery("comb_noncompact", n=n)
        ps = PointSet(doc.tree, [doc.points[f"tip{i}"] for i in range(1, n + 1)])
        assert diameter(ps)[0] == pytest.approx(2.0 + (1.0 - 1.0 / n), abs=1e-12)

    def test_two_sweep_matches_all_pairs(self, rng):
        for _ in range(80):
            ps = random_instance(rng)
            d, (x, y) = diameter(ps)
            assert d == pytest.approx(all_pairs_diameter(ps), abs=1e-9)
            assert ps.tree.distance(x, y) == pytest.approx(d, abs=1e-12)

    def test_empty(self, simple_doc):
        with pytest.raises(EmptySet):
            diameter(PointSet(simple_doc.tree, []))


class TestCircumcenter:
    def test_singleton(self, simple_doc):
        p = simple_doc.points["A"]
        m, r = circumcenter(PointSet(simple_doc.tree, [p]))
        assert m == p and r == 0.0

    def test_two_points(self, simple_doc):
        t, p = simple_doc.tree, simple_doc.points
        m, r = circumcenter(PointSet(t, [p["A"], p["C"]]))
        assert r == pytest.approx(1.5)
        assert t.distance(m, p["A"]) == pytest.approx(1.5)

    def test_star_tips(self, star_doc):
        doc = star_doc(3)
        m, r = circumcenter(PointSet(doc.tree, star_tips(doc)))
        assert m == doc.points["hub"]
        assert r == pytest.approx(1.0)

    def test_covers_at_half_diameter_and_is_optimal(self, rng):
        for _ in range(60):
            ps = random_instance(rng)
            m, r = circumcenter(ps)
            worst = max(ps.tree.distance(m, q) for q in ps.distinct)
            assert worst <= r + 1e-9
            best_possible = min(
                max(ps.tree.distance(c, q) for q in ps.distinct)
                for c in candidate_centers(ps)
            )
            assert best_possible >= r - 1e-9


class TestMinBallCover:
    def test_one_ball_at_half_diameter(self, rng):
        for _ in range(30):
            ps = random_instance(rng)
            d, _ = diameter(ps)
            cover = min_ball_cover(ps, 0.5 * d + 0.1)
            assert len(cover.centers) == 1

    def test_star_tips_small_radius(self, star_doc):
        doc = star_doc(3)
        ps = PointSet(doc.tree, star_tips(doc))
        assert len(min_ball_cover(ps, 0.9).centers) == 3

    def test_star_tips_radius_one_hits_hub(self, star_doc):
        doc = star_doc(3)
        ps = PointSet(doc.tree, star_tips(doc))
        cover = min_ball_cover(ps, 1.0)
        assert len(cover.centers) == 1
        assert cover.centers[0] == doc.points["hub"]

    def test_zero_radius(self, star_doc):
        doc = star_doc(4)
        tips = star_tips(doc)
        ps = PointSet(doc.tree, tips + tips)  # duplicates collapse
        cover = min_ball_cover(ps, 0.0)
        assert len(cover.centers) == 4

    def test_negative_radius(self, simple_doc):
        ps = PointSet(simple_doc.tree, [simple_doc.points["A"]])
        with pytest.raises(NegativeRadius):
            min_ball_cover(ps, -0.5)

    def test_assignment_is_valid(self, rng):
        for _ in range(40):
            ps = random_instance(rng)
            r = float(rng.uniform(0.0, 2.0))
            cover = min_ball_cover(ps, r)
            assert len(cover.assignment) == len(ps.points)
            for i, p in enumerate(ps.points):
                c = cover.centers[cover.assignment[i]]
                assert ps.tree.distance(c, p) <= r + 1e-9

    def test_greedy_count_matches_oracle(self, rng):
        for _ in range(120):
            ps = random_instance(rng, max_points=7)
            r = float(rng.uniform(0.0, 0.6)) * (diameter(ps)[0] + 0.2)
            assert len(min_ball_cover(ps, r).centers) == oracle_min_cover(ps, r, "ball")

    def test_count_nonincreasing_in_radius(self, rng):
        for _ in range(20):
            ps = random_instance(rng)
            d, _ = diameter(ps)
            radii = sorted(rng.uniform(0.0, 0.6 * d + 0.1, size=5))
            counts = [len(min_ball_cover(ps, float(r)).centers) for r in radii]
            assert all(a >= b for a, b in zip(counts, counts[1:]))


class TestMinDiameterPartition:
    def test_one_block_at_diameter(self, rng):
        for _ in range(20):
            ps = random_instance(rng)
            d, _ = diameter(ps)
            part = min_diameter_partition(ps, d)
            assert len(part.blocks) == 1

    def test_star_tips(self, star_doc):
        doc = star_doc(3)
        ps = PointSet(doc.tree, star_tips(doc))
        assert len(min_diameter_partition(ps, 1.8).blocks) == 3
        assert len(min_diameter_partition(ps, 2.0).blocks) == 1

    def test_blocks_respect_bound_and_partition(self, rng):
        for _ in range(40):
            ps = random_instance(rng)
            bound = float(rng.uniform(0.0, 1.0)) * (diameter(ps)[0] + 0.1)
            part = min_diameter_partition(ps, bound)
            seen = sorted(i for block in part.blocks for i in block)
            assert seen == list(range(len(ps.points)))
            for block in part.blocks:
                for i in block:
                    for j in block:
                        d = ps.tree.distance(ps.points[i], ps.points[j])
                        assert d <= bound + 1e-9

    def test_count_matches_oracle(self, rng):
        for _ in range(80):
            ps = random_instance(rng, max_points=7)
            bound = float(rng.uniform(0.0, 1.2)) * (diameter(ps)[0] + 0.2)
            got = len(min_diameter_partition(ps, bound).blocks)
            assert got == oracle_min_cover(ps, bound, "diameter")

    def test_negative_bound(self, simple_doc):
        ps = PointSet(simple_doc.tree, [simple_doc.points["A"]])
        with pytest.raises(NegativeDiameter):
            min_diameter_partition(ps, -1.0)


class TestProfiles:
    def test_beta_one_is_half_diameter(self, rng):
        for _ in range(30):
            ps = random_instance(rng)
            assert beta_profile(ps, 1).values[0] == pytest.approx(
                0.5 * diameter(ps)[0], abs=1e-12
            )

    def test_alpha_one_is_diameter(self, rng):
        for _ in range(30):
            ps = random_instance(rng)
            assert alpha_profile(ps, 1).values[0] == pytest.approx(
                diameter(ps)[0], abs=1e-12
            )

    def test_star4_profiles(self, star_doc):
        doc = star_doc(4)
        ps = PointSet(doc.tree, star_tips(doc))
        assert beta_profile(ps, 5).values == (1.0, 1.0, 1.0, 0.0, 0.0)
        assert alpha_profile(ps, 5).values == (2.0, 2.0, 2.0, 0.0, 0.0)
        assert beta_star_profile(ps, 4).values == (2.0, 2.0, 2.0, 0.0)

    def test_singleton_profiles_zero(self, simple_doc):
        ps = PointSet(simple_doc.tree, [simple_doc.points["A"]])
        assert beta_profile(ps, 3).values == (0.0, 0.0, 0.0)
        assert beta_star_profile(ps, 3).values == (0.0, 0.0, 0.0)

    def test_monotone_and_vanishing(self, rng):
        for _ in range(30):
            ps = random_instance(rng)
            k = len(ps.distinct)
            vals = beta_profile(ps, k + 2).values
            assert all(vals[i] >= vals[i + 1] - 1e-12 for i in range(len(vals) - 1))
            assert vals[k - 1] == pytest.approx(0.0, abs=1e-12)

    def test_relations_exact(self, rng):
        for _ in range(50):
            ps = random_instance(rng)
            n_max = len(ps.distinct)
            a = alpha_profile(ps, n_max).values
            b = beta_profile(ps, n_max).values
            bs = beta_star_profile(ps, n_max).values
            for k in range(n_max):
                assert a[k] == 2.0 * b[k]
                assert bs[k] == 2.0 * b[k]
                assert b[k] <= a[k] <= 2.0 * b[k] + 1e-12

    def test_profiles_match_oracle(self, rng):
        for _ in range(60):
            ps = random_instance(rng, max_points=7)
            n_max = len(ps.distinct) + 1
            oa, ob = oracle_profiles(ps, n_max)
            assert alpha_profile(ps, n_max).values == pytest.approx(oa, abs=1e-9)
            assert beta_profile(ps, n_max).values == pytest.approx(ob, abs=1e-9)

    def test_witnesses_realize_values(self, star_doc):
        doc = star_doc(4)
        ps = PointSet(doc.tree, star_tips(doc))
        prof = beta_profile(ps, 2)
        cover = prof.witnesses[1]
        assert len(cover.centers) <= 2
        for i, p in enumerate(ps.points):
            c = cover.centers[cover.assignment[i]]
            assert doc.tree.distance(c, p) <= prof.values[1] + 1e-9


class TestOracle:
    def test_singleton(self, simple_doc):
        ps = PointSet(simple_doc.tree, [simple_doc.points["A"]])
        assert oracle_min_cover(ps, 0.0, "ball") == 1

    def test_zero_radius_counts_distinct(self, star_doc):
        doc = star_doc(5)
        ps = PointSet(doc.tree, star_tips(doc))
        assert oracle_min_cover(ps, 0.0, "ball") == 5

    def test_guard(self, rng):
        tree = random_tree(rng, n_nodes=14)
        pts = [tree.node_point(i) for i in range(tree.n_nodes)]
        with pytest.raises(TooLargeForOracle):
            oracle_min_cover(PointSet(tree, pts), 1.0, "ball")

    def test_one_ball_coverability_matches_dense_centers(self, rng):
        """A block fits in one closed r-ball iff its diameter is <= 2r;
        direction one realized by the circumcenter, direction two by the
        triangle inequality.  Validates the oracle's block feasibility."""
        for _ in range(60):
            ps = random_instance(rng, max_nodes=8, max_points=5)
            d, _ = diameter(ps)
            r = float(rng.uniform(0.0, 0.8)) * (d + 0.2)
            by_diameter = d <= 2.0 * r + 1e-9
            by_centers = any(
                all(ps.tree.distance(c, q) <= r + 1e-9 for q in ps.distinct)
                for c in candidate_centers(ps)
            )
            assert by_diameter == by_centers


class TestBallDiameter:
    def test_ball_at_hub(self, star_doc):
        doc = star_doc(3)
        assert ball_diameter(doc.tree, doc.points["hub"], 0.5) == pytest.approx(1.0)
        assert ball_diameter(doc.tree, doc.points["hub"], 5.0) == pytest.approx(2.0)

    def test_ball_at_leaf_reaches_one_way(self, star_doc):
        doc = star_doc(3)
        assert ball_diameter(doc.tree, doc.points["tip1"], 0.3) == pytest.approx(0.3)

    def test_ball_around_edge_interior(self, simple_doc):
        t = simple_doc.tree
        c = t.edge_point(0, 1, 1.0)
        assert ball_diameter(t, c, 0.5) == pytest.approx(1.0)

    def test_bounded_by_twice_radius(self, rng):
        for _ in range(40):
            tree = random_tree(rng, max_nodes=9)
            c = random_points(rng, tree, 1)[0]
            rho = float(rng.uniform(0.0, 3.0))
            assert ball_diameter(tree, c, rho) <= 2.0 * rho + 1e-9

    def test_matches_dense_in_ball_sampling(self, rng):
        """Brute force: max pairwise distance over a dense sample of
        in-ball points, which can only fall short of the exact value by
        the sampling resolution."""
        for _ in range(25):
            tree = random_tree(rng, max_nodes=8)
            c = random_points(rng, tree, 1)[0]
            rho = float(rng.uniform(0.1, 3.0))
            exact = ball_diameter(tree, c, rho)
            dense = [
                p for p in edge_samples(tree, per_edge=40) if tree.distance(p, c) <= rho
            ]
            longest = max((tree.edge_length(e) for e in range(len(tree.edges))), default=0.0)
            resolution = 2.0 * longest / 41
            approx = 0.0
            for i in range(len(dense)):
                for j in range(i + 1, len(dense)):
                    approx = max(approx, tree.distance(dense[i], dense[j]))
            assert approx <= exact + 1e-9
            assert approx >= exact - resolution

    def test_beta_star_witness_balls_fit_bound(self, rng):
        for _ in range(20):
            ps = random_instance(rng, max_points=6)
            n_max = len(ps.distinct)
            prof = beta_star_profile(ps, n_max)
            for k, cover in enumerate(prof.witnesses):
                for c in cover.centers:
                    assert ball_diameter(ps.tree, c, cover.radius) <= prof.values[k] + 1e-9
