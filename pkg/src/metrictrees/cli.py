"""Command-line front end.

Subcommands
-----------
check    MATRIX            verify a distance matrix is a tree metric
build    MATRIX --out T    reconstruct a tree document from a tree metric
measure  TREE [NAME...]    covering profiles and relation checks
cover    TREE [NAME...]    one optimal cover (--radius R) or partition
                           (--diameter D)
kappa    TREE              randomized Lifschitz-characteristic probe
gallery  NAME [k=v...]     write a named example tree

Exit codes: 0 success, 1 I/O or usage error, 2 mathematical verdict "no"
(not a tree metric, or a relation check failed).  Reports are emitted in
full or not at all; with a fixed --seed the JSON output is byte-identical
across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import reports
from .core import Tolerance
from .covering import PointSet, min_ball_cover, min_diameter_partition
from .errors import (
    MetricTreeError,
    NotAMetric,
    NotTreeMetric,
    UnknownPoint,
)
from .ingest import (
    TreeDocument,
    check_four_point,
    gallery,
    matrix_from_points,
    parse_matrix,
    parse_tree,
    serialize_tree,
    tree_from_distances,
)
from .noncompactness import measure_report
from .structure import kappa_probe

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems map to exit 1, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    # the common options are accepted before or after the subcommand; the
    # SUPPRESS defaults keep a subcommand-level occurrence from being
    # overwritten by the parent's default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, metavar="EPS",
                        help="absolute and relative comparison tolerance")
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")

    parser = _Parser(
        prog="metrictrees", description=__doc__.splitlines()[0], parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="is the matrix a tree metric?", parents=[common])
    p.add_argument("matrix")

    p = sub.add_parser("build", help="reconstruct a tree from a matrix", parents=[common])
    p.add_argument("matrix")
    p.add_argument("--tree-out", required=True, metavar="FILE",
                   help="write the reconstructed tree document here")

    p = sub.add_parser("measure", help="covering profiles of named points", parents=[common])
    p.add_argument("tree")
    p.add_argument("names", nargs="*")
    p.add_argument("--n", type=int, default=None, help="largest part count")

    p = sub.add_parser("cover", help="optimal ball cover or diameter partition", parents=[common])
    p.add_argument("tree")
    p.add_argument("names", nargs="*")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--radius", type=float)
    group.add_argument("--diameter", type=float)

    p = sub.add_parser("kappa", help="randomized Lifschitz probe", parents=[common])
    p.add_argument("tree")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=None)

    p = sub.add_parser("gallery", help="write a named example tree", parents=[common])
    p.add_argument("name")
    p.add_argument("params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--tree-out", default=None, metavar="FILE",
                   help="write the tree document here (default: stdout)")
    return parser


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1).rstrip("\n"))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _resolve_points(doc, names):
    if names:
        pts = []
        for name in names:
            if name not in doc.points:
                raise UnknownPoint(f"point {name!r} is not defined in the tree document")
            pts.append(doc.points[name])
        return pts
    if doc.points:
        return list(doc.points.values())
    return [doc.tree.node_point(i) for i in range(doc.tree.n_nodes)]


def _cmd_check(args, tol) -> int:
    base = {"schema": reports.SCHEMA_VERSION, "command": "check", "input": args.matrix}
    try:
        matrix = parse_matrix(_read(args.matrix), tol=tol)
        ok, quad = check_four_point(matrix)
    except NotAMetric as exc:
        _emit({**base, "is_tree_metric": False, "reason": "not a metric",
               "violating_triple": list(exc.triple or ())}, args)
        return 2
    if ok:
        _emit({**base, "is_tree_metric": True, "labels": list(matrix.labels)}, args)
        return 0
    _emit({**base, "is_tree_metric": False, "reason": "four-point condition fails",
           "violating_quadruple": [matrix.labels[i] for i in quad]}, args)
    return 2


def _cmd_build(args, tol) -> int:
    base = {"schema": reports.SCHEMA_VERSION, "command": "build", "input": args.matrix}
    matrix = parse_matrix(_read(args.matrix), tol=tol)
    try:
        tree, points = tree_from_distances(matrix)
    except NotAMetric as exc:
        _emit({**base, "built": False, "reason": "not a metric",
               "violating_triple": list(exc.triple or ())}, args)
        return 2
    except NotTreeMetric as exc:
        _emit({**base, "built": False, "reason": "not a tree metric",
               "violating_quadruple": list(exc.quadruple or ())}, args)
        return 2
    doc = TreeDocument(tree, points)
    with open(args.tree_out, "w", encoding="utf-8") as fh:
        fh.write(serialize_tree(doc))
    rebuilt = matrix_from_points(tree, points)
    deviation = float(abs(rebuilt.values - matrix.values).max(initial=0.0))
    _emit({**base, "built": True, "tree_file": args.tree_out,
           "n_nodes": tree.n_nodes,
           "points": {name: reports.point_obj(p) for name, p in points.items()},
           "max_deviation": deviation}, args)
    return 0


def _cmd_measure(args, tol) -> int:
    doc = parse_tree(_read(args.tree), tol=tol)
    pts = _resolve_points(doc, args.names)
    ps = PointSet(doc.tree, pts)
    report = measure_report(ps, n_max=args.n)
    body = {
        "schema": reports.SCHEMA_VERSION,
        "command": "measure",
        "input": args.tree,
        "points": [reports.point_obj(p) for p in pts],
        "report": reports.measure_obj(report),
    }
    _emit(body, args)
    return 0 if report.passed else 2


def _cmd_cover(args, tol) -> int:
    doc = parse_tree(_read(args.tree), tol=tol)
    pts = _resolve_points(doc, args.names)
    ps = PointSet(doc.tree, pts)
    base = {
        "schema": reports.SCHEMA_VERSION,
        "command": "cover",
        "input": args.tree,
        "points": [reports.point_obj(p) for p in pts],
    }
    if args.radius is not None:
        cover = min_ball_cover(ps, args.radius)
        _emit({**base, "mode": "radius", "cover": reports.ball_cover_obj(cover)}, args)
    else:
        partition = min_diameter_partition(ps, args.diameter)
        _emit({**base, "mode": "diameter",
               "partition": reports.partition_obj(partition)}, args)
    return 0


def _cmd_kappa(args, tol) -> int:
    doc = parse_tree(_read(args.tree), tol=tol)
    report = kappa_probe(doc.tree, args.trials, rng=args.seed, eps=args.eps)
    body = {
        "schema": reports.SCHEMA_VERSION,
        "command": "kappa",
        "input": args.tree,
        "seed": args.seed,
        "report": reports.kappa_obj(report),
    }
    _emit(body, args)
    return 0 if report.consistent else 2


def _parse_params(raw: list[str]) -> dict:
    params = {}
    for item in raw:
        if "=" not in item:
            raise _UsageError(f"gallery parameters look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key] = int(value)
        except ValueError:
            try:
                params[key] = float(value)
            except ValueError:
                raise _UsageError(f"parameter {key!r} needs a numeric value, got {value!r}")
    return params


def _cmd_gallery(args, tol) -> int:
    doc = gallery(args.name, tol=tol, **_parse_params(args.params))
    text = serialize_tree(doc)
    if args.tree_out:
        with open(args.tree_out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"schema": reports.SCHEMA_VERSION, "command": "gallery",
               "name": args.name, "tree_file": args.tree_out,
               "n_nodes": doc.tree.n_nodes,
               "point_names": list(doc.points)}, args)
    else:
        sys.stdout.write(text)
    return 0


_DISPATCH = {
    "check": _cmd_check,
    "build": _cmd_build,
    "measure": _cmd_measure,
    "cover": _cmd_cover,
    "kappa": _cmd_kappa,
    "gallery": _cmd_gallery,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        # the common options carry SUPPRESS defaults (so a pre-subcommand
        # occurrence survives the subparser); fill the fallbacks here
        for key, default in (("tol", 1e-9), ("format", "json"), ("out", None)):
            if not hasattr(args, key):
                setattr(args, key, default)
        tol = Tolerance(args.tol, args.tol)
        return _DISPATCH[args.command](args, tol)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    except MetricTreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
