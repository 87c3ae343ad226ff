"""Relations between covering measures, embedding invariance, and
contraction constants of sampled maps between metric trees.

The per-n covering profiles stand in for the classical Kuratowski (set) and
Hausdorff (ball) measures of noncompactness at finite scale.  On metric
trees the set measure is exactly twice the ball measure, so the two notions
of a k-contractive map coincide; ``measure_report`` and
``contraction_constants`` make those identities checkable on concrete data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import MetricTree, TreePoint
from .covering import (
    CoverProfile,
    PointSet,
    alpha_profile,
    beta_profile,
    beta_star_profile,
)
from .errors import BadParams, EmptySet, ForeignPoint, NotIsometric

__all__ = [
    "PointMap",
    "MeasureReport",
    "EmbeddingReport",
    "ContractionReport",
    "BoundCheckReport",
    "measure_report",
    "embedding_invariance_check",
    "contraction_constants",
    "contraction_bound_check",
]


@dataclass(frozen=True)
class PointMap:
    """A map between two trees sampled at finitely many points.

    ``pairs[k]`` is (source point, image point).  Source points must be
    distinct after canonicalization so the map is well defined on the
    sample.
    """

    source: MetricTree
    target: MetricTree
    pairs: tuple[tuple[TreePoint, TreePoint], ...]

    def __init__(
        self,
        source: MetricTree,
        target: MetricTree,
        pairs: Sequence[tuple[TreePoint, TreePoint]],
    ):
        pair_tuple = tuple((p, q) for p, q in pairs)
        seen: set[TreePoint] = set()
        for p, q in pair_tuple:
            if p.tree is not source:
                raise ForeignPoint("source point belongs to a different tree")
            if q.tree is not target:
                raise ForeignPoint("image point belongs to a different tree")
            if p in seen:
                raise BadParams(f"duplicate source point {p!r}")
            seen.add(p)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "pairs", pair_tuple)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class MeasureReport:
    """All three covering profiles of one point set plus relation checks."""

    n_max: int
    alpha: CoverProfile
    beta: CoverProfile
    beta_star: CoverProfile
    alpha_twice_beta: tuple[bool, ...]
    beta_star_twice_beta: tuple[bool, ...]
    ratios: tuple[float | None, ...]  # alpha_n / beta_n where beta_n > 0

    @property
    def passed(self) -> bool:
        return all(self.alpha_twice_beta) and all(self.beta_star_twice_beta)


def measure_report(ps: PointSet, n_max: int | None = None) -> MeasureReport:
    """Compute alpha/beta/beta* profiles and check the tree identities.

    Checks, for every n up to n_max (default: the number of distinct
    points): alpha_n == 2 * beta_n and beta_star_n == 2 * beta_n, within
    the tree's tolerance.  Witness covers/partitions ride along inside the
    profiles.
    """
    if not ps.points:
        raise EmptySet("measure report of an empty point set")
    if n_max is None:
        n_max = len(ps.distinct)
    tol = ps.tree.tol
    a = alpha_profile(ps, n_max)
    b = beta_profile(ps, n_max)
    bs = beta_star_profile(ps, n_max)
    a2b = tuple(tol.close(a.values[k], 2.0 * b.values[k]) for k in range(n_max))
    bs2b = tuple(tol.close(bs.values[k], 2.0 * b.values[k]) for k in range(n_max))
    ratios = tuple(
        (a.values[k] / b.values[k]) if b.values[k] > tol.abs_eps else None
        for k in range(n_max)
    )
    return MeasureReport(n_max, a, b, bs, a2b, bs2b, ratios)


@dataclass(frozen=True)
class EmbeddingReport:
    """Intrinsic vs ambient profiles of an isometrically embedded set."""

    n_max: int
    source_alpha: tuple[float, ...]
    source_beta: tuple[float, ...]
    host_alpha: tuple[float, ...]
    host_beta: tuple[float, ...]
    alpha_invariant: tuple[bool, ...]
    beta_invariant: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.alpha_invariant) and all(self.beta_invariant)


def embedding_invariance_check(
    ps: PointSet,
    host: MetricTree,
    images: Sequence[TreePoint],
    n_max: int | None = None,
) -> EmbeddingReport:
    """Verify covering profiles do not change under an isometric embedding.

    ``images`` gives, for each point of ``ps``, its copy in the host tree.
    The mapping must preserve pairwise distances (NotIsometric otherwise);
    the report then compares alpha and beta profiles computed intrinsically
    and in the host.  Ball centers range over the ambient tree in each case,
    so the beta comparison is a genuine invariance statement, not bookkeeping.
    """
    if len(images) != len(ps.points):
        raise BadParams(
            f"need one image per point: {len(ps.points)} points, {len(images)} images"
        )
    for q in images:
        if q.tree is not host:
            raise ForeignPoint("image point does not belong to the host tree")
    if not ps.points:
        raise EmptySet("embedding check of an empty point set")
    tol = ps.tree.tol
    pts = ps.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d_src = ps.tree.distance(pts[i], pts[j])
            d_host = host.distance(images[i], images[j])
            if not tol.close(d_src, d_host):
                raise NotIsometric(
                    f"distance ({i}, {j}) changes from {d_src!r} to {d_host!r}",
                    pair=(i, j),
                )
    # align the host set with the source's distinct representatives so both
    # profiles see the same multiset
    index = {p: k for k, p in enumerate(pts)}
    host_ps = PointSet(host, [images[index[p]] for p in ps.distinct])
    if n_max is None:
        n_max = len(ps.distinct)
    sa = alpha_profile(ps, n_max).values
    sb = beta_profile(ps, n_max).values
    ha = alpha_profile(host_ps, n_max).values
    hb = beta_profile(host_ps, n_max).values
    return EmbeddingReport(
        n_max,
        sa,
        sb,
        ha,
        hb,
        tuple(tol.close(sa[k], ha[k]) for k in range(n_max)),
        tuple(tol.close(sb[k], hb[k]) for k in range(n_max)),
    )


@dataclass(frozen=True)
class ContractionReport:
    """Per-n contraction ratios of a sampled map on a chosen subsample.

    ``set_ratios[k]``/``ball_ratios[k]`` compare the image profiles with the
    source profiles at n = ns[k]; indices with alpha_n = 0 are reported in
    ``skipped`` rather than divided through.
    """

    ns: tuple[int, ...]
    set_ratios: tuple[float, ...]
    ball_ratios: tuple[float, ...]
    skipped: tuple[int, ...]
    k_set: float | None
    k_ball: float | None


def contraction_constants(
    pm: PointMap,
    subset: Sequence[int] | None = None,
    n_max: int | None = None,
) -> ContractionReport:
    """Set- and ball-contraction ratios of a sampled map.

    For each n with alpha_n(A) > 0, the set ratio is
    alpha_n(T(A)) / alpha_n(A) and the ball ratio is
    beta_n(T(A)) / beta_n(A).  On trees the two coincide exactly because
    both measures halve together.
    """
    idx = list(range(len(pm.pairs))) if subset is None else list(subset)
    if not idx:
        raise EmptySet("contraction ratios of an empty sample")
    for k in idx:
        if not 0 <= k < len(pm.pairs):
            raise BadParams(f"subset index {k} out of range")
    src = PointSet(pm.source, [pm.pairs[k][0] for k in idx])
    img = PointSet(pm.target, [pm.pairs[k][1] for k in idx])
    if n_max is None:
        n_max = len(src.distinct)
    tol = pm.source.tol
    a_src = alpha_profile(src, n_max).values
    b_src = beta_profile(src, n_max).values
    a_img = alpha_profile(img, n_max).values
    b_img = beta_profile(img, n_max).values
    ns, set_ratios, ball_ratios, skipped = [], [], [], []
    for k in range(n_max):
        if a_src[k] <= tol.abs_eps:
            skipped.append(k + 1)
            continue
        ns.append(k + 1)
        set_ratios.append(a_img[k] / a_src[k])
        ball_ratios.append(b_img[k] / b_src[k])
    return ContractionReport(
        tuple(ns),
        tuple(set_ratios),
        tuple(ball_ratios),
        tuple(skipped),
        max(set_ratios, default=None),
        max(ball_ratios, default=None),
    )


@dataclass(frozen=True)
class BoundCheckReport:
    """Cross-measure contraction bounds checked on a sampled map.

    A k-set-contractive map is always 2k-ball-contractive and vice versa
    (in any metric space); on trees the ratios agree outright, so both
    inequalities hold with slack.
    """

    ns: tuple[int, ...]
    ball_le_2set: tuple[bool, ...]
    set_le_2ball: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.ball_le_2set) and all(self.set_le_2ball)


def contraction_bound_check(
    pm: PointMap,
    subset: Sequence[int] | None = None,
    n_max: int | None = None,
) -> BoundCheckReport:
    """Check ball_ratio <= 2*set_ratio and set_ratio <= 2*ball_ratio per n."""
    rep = contraction_constants(pm, subset=subset, n_max=n_max)
    tol = pm.source.tol
    ball_le = tuple(
        tol.leq(rep.ball_ratios[k], 2.0 * rep.set_ratios[k])
        for k in range(len(rep.ns))
    )
    set_le = tuple(
        tol.leq(rep.set_ratios[k], 2.0 * rep.ball_ratios[k])
        for k in range(len(rep.ns))
    )
    return BoundCheckReport(rep.ns, ball_le, set_le)
