"""Distance-matrix ingestion, tree-metric recognition and reconstruction,
the line-oriented tree document format, and the example-tree gallery.

Matrix formats
--------------
CSV: first row is ``,label1,label2,...``; each following row is
``label,value,value,...``.  Whitespace: row ``i`` is the label followed by
the ``i`` strict-lower-triangle values (the first row is a bare label).

Tree documents
--------------
Line-oriented UTF-8 text.  ``#`` starts a comment.  Lines:

    node <id>                       (optional; required only for a
                                     single-node tree)
    edge <u> <v> <length>
    point <name> node <id>
    point <name> edge <u> <v> <offset>
"""

from __future__ import annotations

import csv
import io
import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import MetricTree, Tolerance, TreePoint, validate_tree
from .errors import (
    BadParams,
    InvalidDistanceMatrix,
    NotAMetric,
    NotTreeMetric,
    TreeParseError,
    UnknownGallery,
)

__all__ = [
    "DistanceMatrix",
    "TreeDocument",
    "check_four_point",
    "tree_from_distances",
    "parse_tree",
    "serialize_tree",
    "gallery",
    "parse_matrix",
    "format_matrix_csv",
    "matrix_from_points",
]


@dataclass(frozen=True)
class DistanceMatrix:
    """Labeled symmetric nonnegative matrix with zero diagonal."""

    labels: tuple[str, ...]
    values: np.ndarray
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InvalidDistanceMatrix("labels must be unique")
        if values.shape != (n, n):
            raise InvalidDistanceMatrix(
                f"matrix shape {values.shape} does not match {n} labels"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidDistanceMatrix("matrix entries must be finite")
        if np.any(values < 0):
            i, j = map(int, np.argwhere(values < 0)[0])
            raise InvalidDistanceMatrix(f"negative entry at ({i}, {j})")
        scale = float(values.max(initial=0.0))
        slack = self.tol.slack(scale)
        if np.any(np.abs(values - values.T) > slack):
            i, j = map(int, np.argwhere(np.abs(values - values.T) > slack)[0])
            raise InvalidDistanceMatrix(f"asymmetric at ({i}, {j})")
        if np.any(np.abs(np.diag(values)) > slack):
            i = int(np.argmax(np.abs(np.diag(values))))
            raise InvalidDistanceMatrix(f"nonzero diagonal at ({i}, {i})")
        values = 0.5 * (values + values.T)
        np.fill_diagonal(values, 0.0)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> float:
        return float(self.values[i, j])

    def metric_violation(self) -> tuple[int, int, int] | None:
        """First triple (i, j, k) with d(i,k) > d(i,j) + d(j,k), or None."""
        d = self.values
        n = self.size
        slack = self.tol.slack(float(d.max(initial=0.0)))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i, k] > d[i, j] + d[j, k] + slack:
                        return (i, j, k)
        return None


def check_four_point(
    matrix: DistanceMatrix,
) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Test the four-point condition; returns (ok, violating quadruple).

    For every quadruple, the two largest of the three pairing sums
    ``d(i,j)+d(k,l)``, ``d(i,k)+d(j,l)``, ``d(i,l)+d(j,k)`` must be equal
    (up to tolerance); equivalently each sum is bounded by the maximum of
    the other two.  Raises NotAMetric when the matrix is not even a metric.
    """
    triple = matrix.metric_violation()
    if triple is not None:
        raise NotAMetric(f"triangle inequality fails on {triple}", triple=triple)
    d = matrix.values
    n = matrix.size
    slack = matrix.tol.slack(2.0 * float(d.max(initial=0.0)))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    sums = sorted(
                        (d[i, j] + d[k, l], d[i, k] + d[j, l], d[i, l] + d[j, k])
                    )
                    if sums[2] - sums[1] > slack:
                        return False, (i, j, k, l)
    return True, None


# --------------------------------------------------------------------- #
# Reconstruction from additive distances                                  #
# --------------------------------------------------------------------- #


class _Builder:
    """Mutable weighted tree used only during reconstruction."""

    def __init__(self) -> None:
        self.adj: dict[int, dict[int, float]] = {0: {}}

    def add_node(self) -> int:
        node = len(self.adj)
        self.adj[node] = {}
        return node

    def add_edge(self, u: int, v: int, length: float) -> None:
        self.adj[u][v] = length
        self.adj[v][u] = length

    def path(self, u: int, v: int) -> tuple[list[int], list[float]]:
        """Node sequence u..v and cumulative distances along it."""
        parent: dict[int, int] = {u: -1}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                break
            for b in self.adj[a]:
                if b not in parent:
                    parent[b] = a
                    queue.append(b)
        nodes = [v]
        while nodes[-1] != u:
            nodes.append(parent[nodes[-1]])
        nodes.reverse()
        cum = [0.0]
        for a, b in zip(nodes, nodes[1:]):
            cum.append(cum[-1] + self.adj[a][b])
        return nodes, cum

    def locate(self, u: int, v: int, t: float, snap: float) -> int:
        """Node at distance t from u on the path to v, splitting an edge
        when t falls strictly inside one."""
        nodes, cum = self.path(u, v)
        for k, c in enumerate(cum):
            if abs(c - t) <= snap:
                return nodes[k]
        for k in range(len(nodes) - 1):
            if cum[k] < t < cum[k + 1]:
                a, b = nodes[k], nodes[k + 1]
                length = self.adj[a][b]
                del self.adj[a][b]
                del self.adj[b][a]
                m = self.add_node()
                self.add_edge(a, m, t - cum[k])
                self.add_edge(m, b, length - (t - cum[k]))
                return m
        # t beyond the path end (can only be float slop): clamp to v
        return v

    def edges(self) -> list[tuple[int, int, float]]:
        out = []
        for u, nbrs in self.adj.items():
            for v, length in nbrs.items():
                if u < v:
                    out.append((u, v, length))
        return out


def tree_from_distances(
    matrix: DistanceMatrix,
) -> tuple[MetricTree, dict[str, TreePoint]]:
    """Reconstruct the unique tree realizing an additive distance matrix.

    Labels are attached one at a time: the attachment point of a new label x
    relative to a reference label i sits at distance
    ``max_j (d(i,x) + d(i,j) - d(j,x)) / 2`` from i along the path to the
    maximizing j, which for additive distances is exactly where the geodesic
    from x meets the span of the already-placed labels.  Split points landing
    inside an edge create an interior node, so labeled points may end up at
    leaves or interior nodes.

    Raises NotAMetric / NotTreeMetric when the input cannot be realized.
    """
    ok, quad = check_four_point(matrix)
    if not ok:
        raise NotTreeMetric(f"four-point condition fails on {quad}", quadruple=quad)
    d = matrix.values
    n = matrix.size
    tol = matrix.tol
    snap = tol.slack(float(d.max(initial=1.0))) * 4.0

    builder = _Builder()
    position = [0] * n  # node id per label; label 0 starts at node 0
    for x in range(1, n):
        dup = next((j for j in range(x) if d[j, x] <= snap), None)
        if dup is not None:
            position[x] = position[dup]
            continue
        i = 0
        best_t, best_j = 0.0, None
        for j in range(1, x):
            t = 0.5 * (d[i, x] + d[i, j] - d[j, x])
            if best_j is None or t > best_t:
                best_t, best_j = t, j
        if best_j is None:
            attach = position[i]
        else:
            best_t = min(max(best_t, 0.0), float(d[i, best_j]))
            attach = builder.locate(position[i], position[best_j], best_t, snap)
        rem = float(d[i, x]) - best_t if best_j is not None else float(d[i, x])
        if rem <= snap:
            position[x] = attach
        else:
            leaf = builder.add_node()
            builder.add_edge(attach, leaf, rem)
            position[x] = leaf

    tree = validate_tree(len(builder.adj), builder.edges(), tol=tol)
    points = {matrix.labels[k]: tree.node_point(position[k]) for k in range(n)}

    verify_slack = tol.slack(float(d.max(initial=1.0))) * 16.0
    for a in range(n):
        for b in range(a + 1, n):
            got = tree.distance(points[matrix.labels[a]], points[matrix.labels[b]])
            if abs(got - d[a, b]) > verify_slack:
                raise NotTreeMetric(
                    f"matrix is not additive: labels ({a}, {b}) re-measure to "
                    f"{got!r}, expected {d[a, b]!r}"
                )
    return tree, points


# --------------------------------------------------------------------- #
# Tree document format                                                     #
# --------------------------------------------------------------------- #


@dataclass
class TreeDocument:
    """A metric tree plus named points, as read from / written to text."""

    tree: MetricTree
    points: dict[str, TreePoint]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeDocument):
            return NotImplemented
        if not self.tree.same_structure(other.tree):
            return False
        if self.points.keys() != other.points.keys():
            return False
        return all(
            self.points[k].record() == other.points[k].record() for k in self.points
        )

    __hash__ = None  # type: ignore[assignment]


_TOKEN = re.compile(r"\S+")


def parse_tree(text: str, tol: Tolerance | None = None) -> TreeDocument:
    """Parse a tree document; raises TreeParseError with line/column."""
    node_ids: set[int] = set()
    edge_lines: list[tuple[int, tuple[int, int, float]]] = []
    point_lines: list[tuple[int, str, list[str], list[int]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        words = [t for t, _ in tokens]
        cols = [c for _, c in tokens]

        def want_int(k: int) -> int:
            try:
                return int(words[k])
            except ValueError:
                raise TreeParseError(f"expected integer, got {words[k]!r}", lineno, cols[k])

        def want_float(k: int) -> float:
            try:
                return float(words[k])
            except ValueError:
                raise TreeParseError(f"expected number, got {words[k]!r}", lineno, cols[k])

        kind = words[0]
        if kind == "node":
            if len(words) != 2:
                raise TreeParseError("node line takes one id", lineno, cols[0])
            node_ids.add(want_int(1))
        elif kind == "edge":
            if len(words) != 4:
                raise TreeParseError("edge line takes: edge <u> <v> <length>", lineno, cols[0])
            u, v = want_int(1), want_int(2)
            edge_lines.append((lineno, (u, v, want_float(3))))
            node_ids.update((u, v))
        elif kind == "point":
            if len(words) < 3:
                raise TreeParseError(
                    "point line takes: point <name> node <id> | edge <u> <v> <offset>",
                    lineno,
                    cols[0],
                )
            name, mode = words[1], words[2]
            if mode == "node" and len(words) == 4:
                point_lines.append((lineno, name, ["node"], [want_int(3)]))
            elif mode == "edge" and len(words) == 6:
                point_lines.append(
                    (lineno, name, ["edge", words[5]], [want_int(3), want_int(4)])
                )
                _ = want_float(5)
            else:
                raise TreeParseError("malformed point line", lineno, cols[0])
        else:
            raise TreeParseError(f"unknown directive {kind!r}", lineno, cols[0])

    if not node_ids:
        raise TreeParseError("document defines no nodes", 1, 1)
    n_nodes = max(node_ids) + 1
    tree = validate_tree(n_nodes, [e for _, e in edge_lines], tol=tol)

    points: dict[str, TreePoint] = {}
    for lineno, name, mode, ids in point_lines:
        if name in points:
            raise TreeParseError(f"duplicate point name {name!r}", lineno)
        if mode[0] == "node":
            points[name] = tree.node_point(ids[0])
        else:
            points[name] = tree.edge_point(ids[0], ids[1], float(mode[1]))
    return TreeDocument(tree, points)


def serialize_tree(doc: TreeDocument) -> str:
    """Render a TreeDocument; floats use shortest round-trip form."""
    out = []
    if not doc.tree.edges:
        for i in range(doc.tree.n_nodes):
            out.append(f"node {i}")
    for u, v, length in doc.tree.edges:
        out.append(f"edge {u} {v} {length!r}")
    for name, p in doc.points.items():
        rec = p.record()
        if rec["kind"] == "node":
            out.append(f"point {name} node {rec['node']}")
        else:
            out.append(f"point {name} edge {rec['u']} {rec['v']} {rec['offset']!r}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------- #
# Gallery                                                                  #
# --------------------------------------------------------------------- #


def gallery(name: str, tol: Tolerance | None = None, **params) -> TreeDocument:
    """Named example trees with labeled points.

    simple
        Two-unit trunk A--B with unit branches B--C and B--D; the smallest
        tree exhibiting a genuine branch point.
    star(n, spoke_len=1.0)
        Hub with n spokes; all tip-to-tip distances are 2*spoke_len.
    comb_compact(n)
        Spine [0, 1] with nodes at x = 1/k (k = 1..n) carrying teeth of
        length 1/k; teeth shrink toward the accumulation end.
    comb_noncompact(n)
        Same spine, every tooth of length 1; tip-to-tip distances never
        drop below 2 no matter how many teeth.
    """
    known = {"simple", "star", "comb_compact", "comb_noncompact"}
    if name not in known:
        raise UnknownGallery(f"unknown gallery tree {name!r}; choose from {sorted(known)}")

    def want_pos_int(key: str, default=None) -> int:
        val = params.pop(key, default)
        if val is None:
            raise BadParams(f"gallery {name!r} requires parameter {key!r}")
        if int(val) != val or int(val) < 1:
            raise BadParams(f"parameter {key!r} must be a positive integer")
        return int(val)

    if name == "simple":
        if params:
            raise BadParams(f"gallery 'simple' takes no parameters, got {sorted(params)}")
        tree = validate_tree(4, [(0, 1, 2.0), (1, 2, 1.0), (1, 3, 1.0)], tol=tol)
        points = {nm: tree.node_point(i) for i, nm in enumerate("ABCD")}
        return TreeDocument(tree, points)

    if name == "star":
        n = want_pos_int("n")
        spoke_len = float(params.pop("spoke_len", 1.0))
        if params:
            raise BadParams(f"unexpected parameters {sorted(params)}")
        if not spoke_len > 0:
            raise BadParams("spoke_len must be positive")
        edges = [(0, i, spoke_len) for i in range(1, n + 1)]
        tree = validate_tree(n + 1, edges, tol=tol)
        points = {"hub": tree.node_point(0)}
        points.update({f"tip{i}": tree.node_point(i) for i in range(1, n + 1)})
        return TreeDocument(tree, points)

    # combs: spine node 0 at x=0, spine node k at x=1/(n+1-k) for k=1..n,
    # tooth tip node n+k hangs off spine node k.
    n = want_pos_int("n")
    if params:
        raise BadParams(f"unexpected parameters {sorted(params)}")
    xs = [1.0 / k for k in range(n, 0, -1)]  # ascending positions 1/n .. 1
    edges = []
    prev_x = 0.0
    prev_node = 0
    for k, x in enumerate(xs, start=1):
        edges.append((prev_node, k, x - prev_x))
        prev_x, prev_node = x, k
    for k, x in enumerate(xs, start=1):
        tooth = x if name == "comb_compact" else 1.0
        edges.append((k, n + k, tooth))
    tree = validate_tree(2 * n + 1, edges, tol=tol)
    points = {"origin": tree.node_point(0)}
    for k, x in enumerate(xs, start=1):
        i = round(1.0 / x)  # tooth index: spine node k sits at x = 1/i
        points[f"base{i}"] = tree.node_point(k)
        points[f"tip{i}"] = tree.node_point(n + k)
    return TreeDocument(tree, points)


# --------------------------------------------------------------------- #
# Matrix text formats                                                      #
# --------------------------------------------------------------------- #


def parse_matrix(text: str, tol: Tolerance | None = None) -> DistanceMatrix:
    """Parse CSV (with label header) or whitespace lower-triangle text."""
    tol = tol if tol is not None else Tolerance()
    stripped = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not stripped:
        raise InvalidDistanceMatrix("empty matrix document")
    if "," in stripped[0]:
        rows = list(csv.reader(io.StringIO("\n".join(stripped))))
        labels = [c.strip() for c in rows[0][1:]]
        n = len(labels)
        if len(rows) != n + 1:
            raise InvalidDistanceMatrix(f"expected {n} data rows, got {len(rows) - 1}")
        values = np.zeros((n, n))
        for i, row in enumerate(rows[1:]):
            if len(row) != n + 1:
                raise InvalidDistanceMatrix(f"row {i + 1} has {len(row) - 1} values, expected {n}")
            if row[0].strip() != labels[i]:
                raise InvalidDistanceMatrix(
                    f"row label {row[0].strip()!r} does not match column label {labels[i]!r}"
                )
            try:
                values[i] = [float(c) for c in row[1:]]
            except ValueError as exc:
                raise InvalidDistanceMatrix(f"row {i + 1}: {exc}")
        return DistanceMatrix(tuple(labels), values, tol=tol)

    labels = []
    tri: list[list[float]] = []
    for i, line in enumerate(stripped):
        toks = line.split()
        labels.append(toks[0])
        try:
            vals = [float(t) for t in toks[1:]]
        except ValueError as exc:
            raise InvalidDistanceMatrix(f"row {i}: {exc}")
        if len(vals) != i:
            raise InvalidDistanceMatrix(
                f"row {i} ({toks[0]!r}) has {len(vals)} values, expected {i}"
            )
        tri.append(vals)
    n = len(labels)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i):
            values[i, j] = values[j, i] = tri[i][j]
    return DistanceMatrix(tuple(labels), values, tol=tol)


def format_matrix_csv(matrix: DistanceMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([""] + list(matrix.labels))
    for i, lab in enumerate(matrix.labels):
        writer.writerow([lab] + [repr(float(v)) for v in matrix.values[i]])
    return out.getvalue()


def matrix_from_points(
    tree: MetricTree,
    points: dict[str, TreePoint] | list[TreePoint],
    tol: Tolerance | None = None,
) -> DistanceMatrix:
    """Extract the pairwise distance matrix of named or listed points."""
    if isinstance(points, dict):
        labels = tuple(points.keys())
        pts = list(points.values())
    else:
        pts = list(points)
        labels = tuple(f"p{i}" for i in range(len(pts)))
    n = len(pts)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = tree.distance(pts[i], pts[j])
    return DistanceMatrix(labels, values, tol=tol if tol is not None else tree.tol)
