"""Tests for leaves, leaf decompositions, and Lifschitz constructions."""

import pytest

from metrictrees import (
    BadParams,
    PointSet,
    PreconditionViolation,
    circumcenter,
    diameter,
    edge_samples,
    kappa_probe,
    leaf_cover_check,
    leaf_through,
    leaves,
    lifschitz_counterexample,
    lifschitz_witness,
    random_point,
    random_points,
    random_tree,
    validate_tree,
)



def _path_tree(k, step=1.0):
    return validate_tree(k + 1, [(i, i + 1, step) for i in range(k)])


class TestLeaves:
    def test_path(self):
        t = _path_tree(2)
        assert {p.node for p in leaves(t)} == {0, 2}

    def test_star(self, star_doc):
        doc = star_doc(5)
        assert {p.node for p in leaves(doc.tree)} == {1, 2, 3, 4, 5}

    def test_simple_fixture(self, simple_doc):
        got = {p.node for p in leaves(simple_doc.tree)}
        assert got == {simple_doc.points[k].node for k in "ACD"}

    def test_single_node(self):
        t = validate_tree(1, [])
        assert [p.node for p in leaves(t)] == [0]

    def test_degree_one_exactly(self, rng):
        for _ in range(20):
            tree = random_tree(rng, max_nodes=10)
            got = {p.node for p in leaves(tree)}
            want = {i for i in range(tree.n_nodes) if tree.degree(i) == 1}
            assert got == (want or {0})

    def test_removing_a_leaf_updates_predictably(self, rng):
        for _ in range(20):
            tree = random_tree(rng, max_nodes=10)
            if tree.n_nodes < 3:
                continue
            drop = max(p.node for p in leaves(tree))
            (nbr, _e) = tree.neighbors(drop)[0]
            keep = [i for i in range(tree.n_nodes) if i != drop]
            relabel = {old: new for new, old in enumerate(keep)}
            edges = [
                (relabel[u], relabel[v], l)
                for u, v, l in tree.edges
                if drop not in (u, v)
            ]
            smaller = validate_tree(tree.n_nodes - 1, edges)
            got = {p.node for p in leaves(smaller)}
            want = {relabel[p.node] for p in leaves(tree) if p.node != drop}
            if smaller.degree(relabel[nbr]) == 1:
                want.add(relabel[nbr])
            assert got == want


class TestLeafThrough:
    def test_base_point_returns_first_leaf(self, star_doc):
        doc = star_doc(3)
        hub = doc.points["hub"]
        f = leaf_through(hub, hub)
        assert f == leaves(doc.tree).points[0]

    def test_path(self):
        t = _path_tree(2)
        f = leaf_through(t.node_point(0), t.node_point(1))
        assert f.node == 2

    def test_simple_tree_branch(self, simple_doc):
        t, p = simple_doc.tree, simple_doc.points
        m = t.edge_point(1, 2, 0.5)  # interior of B--C
        assert leaf_through(p["A"], m) == p["C"]

    def test_m_already_a_leaf(self, simple_doc):
        t, p = simple_doc.tree, simple_doc.points
        assert leaf_through(p["A"], p["C"]) == p["C"]

    def test_random_witnesses(self, rng):
        for _ in range(60):
            tree = random_tree(rng, max_nodes=10)
            a = random_point(rng, tree)
            m = random_point(rng, tree)
            f = leaf_through(a, m)
            assert tree.degree(f.node) <= 1 or tree.n_nodes == 1
            assert tree.is_between(a, m, f)


class TestLeafCover:
    def test_star_from_hub(self, star_doc):
        doc = star_doc(3)
        pts = edge_samples(doc.tree, per_edge=4)
        ok, bad = leaf_cover_check(doc.tree, doc.points["hub"], pts)
        assert ok and bad is None

    def test_comb_from_origin(self):
        from metrictrees import gallery

        doc = gallery("comb_noncompact", n=5)
        pts = edge_samples(doc.tree, per_edge=3)
        ok, _ = leaf_cover_check(doc.tree, doc.points["origin"], pts)
        assert ok

    def test_random_trees_dense(self, rng):
        for _ in range(25):
            tree = random_tree(rng, max_nodes=10)
            a = random_point(rng, tree)
            ok, _ = leaf_cover_check(tree, a, edge_samples(tree, per_edge=3))
            assert ok


class TestLifschitzWitness:
    def test_path_example(self):
        t = _path_tree(10)
        x, y = t.node_point(0), t.node_point(10)
        w, verification = lifschitz_witness(t, x, y, 4.0, 0.25, edge_samples(t, 6))
        assert verification.passed
        assert verification.applicable > 0
        assert w.a == 1.25 and w.b == 1.5
        assert t.distance(x, w.z) == pytest.approx(1.0)

    def test_vacuous_when_no_point_applies(self, star_doc):
        doc = star_doc(3)
        t = doc.tree
        x, y = doc.points["tip1"], doc.points["tip2"]
        far = [doc.points["tip3"]]
        _w, verification = lifschitz_witness(t, x, y, 1.5, 0.9, far)
        assert verification.applicable == 0
        assert verification.passed

    def test_preconditions(self, star_doc):
        doc = star_doc(3)
        t = doc.tree
        x, y = doc.points["tip1"], doc.points["tip2"]
        with pytest.raises(PreconditionViolation):
            lifschitz_witness(t, x, y, 2.5, 0.5, [])  # d(x, y) = 2 <= r
        with pytest.raises(PreconditionViolation):
            lifschitz_witness(t, x, y, 1.0, 1.5, [])
        with pytest.raises(PreconditionViolation):
            lifschitz_witness(t, x, y, -1.0, 0.5, [])

    def test_random_trees(self, rng):
        done = 0
        while done < 60:
            tree = random_tree(rng, max_nodes=10)
            x, y = random_points(rng, tree, 2)
            d = tree.distance(x, y)
            if d <= 1e-9:
                continue
            r = float(rng.uniform(0.05, 0.95)) * d
            eps = float(rng.uniform(0.05, 0.95))
            _w, verification = lifschitz_witness(
                tree, x, y, r, eps, edge_samples(tree, 4)
            )
            assert verification.passed
            done += 1


class TestLifschitzCounterexample:
    def test_moderate_a(self):
        rec = lifschitz_counterexample(1.0, 1.5)
        assert rec.passed
        assert rec.uv_diameter > 2.0
        assert not rec.clamped

    def test_large_a_clamps_to_endpoint(self):
        rec = lifschitz_counterexample(1.0, 3.8)
        assert rec.clamped
        assert rec.u == rec.w
        assert rec.passed
        assert rec.uv_diameter == pytest.approx(4.0)

    def test_a_three(self):
        # d(y, x) lives in (r, min(a,2)r), so u = x - a*r stays inside the
        # path for a = 3; the construction verifies without clamping
        rec = lifschitz_counterexample(1.0, 3.0)
        assert rec.passed

    def test_scales_with_r(self):
        for r in (0.25, 2.0, 7.5):
            rec = lifschitz_counterexample(r, 1.8)
            assert rec.passed
            assert rec.uv_diameter > 2.0 * r

    def test_bad_params(self):
        with pytest.raises(BadParams):
            lifschitz_counterexample(0.0, 1.5)
        with pytest.raises(BadParams):
            lifschitz_counterexample(-1.0, 1.5)
        with pytest.raises(BadParams):
            lifschitz_counterexample(1.0, 1.0)


class TestKappaProbe:
    def test_random_tree_consistent(self, rng):
        tree = random_tree(rng, max_nodes=10)
        rep = kappa_probe(tree, trials=30, rng=5)
        assert rep.consistent
        assert rep.witness_trials > 0

    def test_fixed_eps(self, star_doc):
        doc = star_doc(4)
        rep = kappa_probe(doc.tree, trials=25, rng=1, eps=0.5)
        assert rep.consistent

    def test_single_node_vacuous(self):
        t = validate_tree(1, [])
        rep = kappa_probe(t, trials=10, rng=0)
        assert rep.vacuous
        assert rep.consistent

    def test_determinism(self, star_doc):
        doc = star_doc(3)
        r1 = kappa_probe(doc.tree, trials=15, rng=42)
        r2 = kappa_probe(doc.tree, trials=15, rng=42)
        assert r1 == r2

    def test_bad_trials(self, star_doc):
        with pytest.raises(BadParams):
            kappa_probe(star_doc(3).tree, trials=0)


class TestEnclosingBallBound:
    def test_half_diameter_beats_every_sub2_fraction(self, rng):
        """The circumball radius diam/2 is at most diam/b for any b < 2."""
        for _ in range(40):
            tree = random_tree(rng, max_nodes=10)
            ps = PointSet(tree, random_points(rng, tree, 6))
            d, _ = diameter(ps)
            m, r = circumcenter(ps)
            worst = max(tree.distance(m, q) for q in ps.distinct)
            b = float(rng.uniform(0.05, 1.95))
            if d > 0:
                assert worst <= d / b + 1e-9
                assert worst == pytest.approx(0.5 * d, abs=1e-9)