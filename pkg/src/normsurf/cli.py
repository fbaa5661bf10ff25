"""
Command-line front end.

Every command prints a ``key=value`` summary on stdout and, when
``--output`` is given, writes its artifact there.  Exit status: 0 for
success or a true verdict, 1 for a false verdict, 2 for errors, 64 for
usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import abstract, cone, detect, gadgets, normal, triangulation
from .errors import NormSurfError

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


class Summary:
    def __init__(self) -> None:
        self.items: list[tuple[str, object]] = []

    def __setitem__(self, key: str, value: object) -> None:
        self.items.append((key, value))

    def render(self) -> str:
        out = []
        for k, v in self.items:
            if isinstance(v, bool):
                v = str(v).lower()
            elif isinstance(v, (list, tuple)):
                v = ",".join(str(a) for a in v)
            out.append(f"{k}={v}")
        return "\n".join(out) + "\n"


def _read(path: str) -> str:
    return Path(path).read_text()


def _write(args: argparse.Namespace, text: str, suffix: str = "") -> None:
    if args.output:
        Path(args.output + suffix).write_text(text)


def _load_tri(path: str) -> triangulation.Triangulation:
    return triangulation.from_text(_read(path))


def _describe(T: triangulation.Triangulation, s: Summary) -> None:
    sk = T.skeleton
    s["tetrahedra"] = T.n
    s["gluings"] = len(T.gluings)
    s["closed"] = T.is_closed()
    s["valid"] = sk.valid
    s["vertices"] = len(sk.vertices)
    s["boundary_vertices"] = sum(v.boundary for v in sk.vertices)
    s["edges"] = len(sk.edges)
    s["edge_degrees"] = sk.degree_multiset()
    s["boundary_faces"] = len(sk.boundary_faces)
    if T.is_connected():
        s["orientable"] = triangulation.is_orientable(T)
    if sk.valid:
        s["vertex_links"] = [l.classification for l in triangulation.vertex_links(T)]
        s["manifold"] = triangulation.is_3manifold(T)


# -- commands ------------------------------------------------------------------

def cmd_build(args: argparse.Namespace, s: Summary) -> int:
    if args.what == "torus":
        T = gadgets.triangular_solid_torus()
    elif args.what == "pillow":
        T = gadgets.triangular_pillow()
    else:
        T, labels = gadgets.node_gadget()
        _write(args, json.dumps(labels.to_dict(), indent=2, sort_keys=True) + "\n", ".labels.json")
    _describe(T, s)
    _write(args, triangulation.to_text(T))
    return EXIT_TRUE


def cmd_reduce(args: argparse.Namespace, s: Summary) -> int:
    if args.what == "sat":
        C = abstract.clauses_from_text(_read(args.input))
        I = abstract.reduce_sat(C)
        comp = abstract.check_compatible(I.M, I.p)
        s["clauses"] = len(C)
        s["variables"] = len(C.variables)
        s["tetrahedra"] = I.p
        s["dimension"] = I.dim
        s["equations"] = len(I.M)
        s["compatible"] = comp.compatible
        _write(args, abstract.instance_to_text(I))
        return EXIT_TRUE
    path = Path(args.input)
    if not path.exists() and args.input in gadgets.NAMED_GRAPHS:
        G = gadgets.NAMED_GRAPHS[args.input]()
    else:
        G = gadgets.graph_from_text(_read(args.input))
    R = gadgets.build_T_G(G)
    s["nodes"] = G.n
    s["arcs"] = len(G.arcs)
    _describe(R.triangulation, s)
    _write(args, triangulation.to_text(R.triangulation))
    _write(args, R.sidecar_text(), ".labels.json")
    return EXIT_TRUE


def cmd_detect(args: argparse.Namespace, s: Summary) -> int:
    T = _load_tri(args.input)
    s["tetrahedra"] = T.n
    if args.what == "splitting":
        x = detect.find_splitting_surface(T)
    else:
        if args.enumerate_all:
            every = list(detect.iter_spanning_central(T, budget=args.budget))
            connected = [v for v in every if detect.is_connected_surface(T, v)]
            s["spanning_central"] = len(every)
            s["count"] = len(connected)
        stats = detect.SearchStats()
        x = detect.find_connected_spanning_central(T, budget=args.budget, stats=stats)
        s["search_nodes"] = stats.nodes
    s["verdict"] = x is not None
    if x is not None:
        info = normal.surface_complex(T, x)
        s["euler"] = info.euler
        s["orientable_surface"] = info.orientable
        s["witness"] = x
        _write(args, normal.vector_to_text(x))
    return EXIT_TRUE if x is not None else EXIT_FALSE


def cmd_enumerate(args: argparse.Namespace, s: Summary) -> int:
    text = _read(args.input)
    if text.lstrip().startswith("p "):
        I = abstract.instance_from_text(text)
        sys_ = I.cone_system()
    else:
        T = triangulation.from_text(text)
        ms = normal.matching_system(T)
        sys_ = cone.ConeSystem.from_sparse(ms.dim, ms.rows, quad_pattern=normal.quad_pattern(T.n))
    rays = cone.extreme_rays(sys_)
    adm = cone.filter_admissible(rays, sys_.quad_pattern)
    s["dimension"] = sys_.dim
    s["equations"] = len(sys_.rows)
    s["rays"] = len(rays)
    s["admissible_rays"] = len(adm)
    s["max_entry_bits"] = max((max(r).bit_length() for r in rays), default=0)
    _write(args, cone.rays_to_text(rays))
    return EXIT_TRUE


def cmd_solve(args: argparse.Namespace, s: Summary) -> int:
    I = abstract.instance_from_text(_read(args.input))
    d = abstract.decide_instance(I)
    s["tetrahedra"] = I.p
    s["verdict"] = d.verdict
    if d.witness is not None:
        s["chi"] = I.chi_value(d.witness)
        s["witness"] = d.witness
        _write(args, normal.vector_to_text(d.witness))
    return EXIT_TRUE if d.verdict else EXIT_FALSE


def cmd_verify(args: argparse.Namespace, s: Summary) -> int:
    T = _load_tri(args.input)
    x = normal.vector_from_text(_read(args.vector))
    ok = detect.verify_certificate(T, x)
    s["valid"] = ok
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_skeleton(args: argparse.Namespace, s: Summary) -> int:
    _describe(_load_tri(args.input), s)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", help="artifact path")
    common.add_argument("--budget", type=int, default=detect.DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--threads", type=int, default=1, help="accepted for scripting; work is single-threaded")
    common.add_argument("--enumerate-all", action="store_true", help="also count every connected surface")
    common.add_argument("--verbose", action="store_true", help="report timing on stderr")

    p = _Parser(prog="normsurf", description="Normal surface constructions, reductions and detectors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="build a gadget triangulation")
    b.add_argument("what", choices=["torus", "pillow", "node-gadget"])
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("reduce", parents=[common], help="run a reduction")
    r.add_argument("what", choices=["sat", "ham"])
    r.add_argument("input", help="clause file or graph file (or a named graph for ham)")
    r.set_defaults(func=cmd_reduce)

    d = sub.add_parser("detect", parents=[common], help="search for surfaces")
    d.add_argument("what", choices=["splitting", "spanning"])
    d.add_argument("input", help="triangulation file")
    d.set_defaults(func=cmd_detect)

    e = sub.add_parser("enumerate", parents=[common], help="enumerate extreme rays")
    e.add_argument("what", choices=["rays"])
    e.add_argument("input", help="triangulation or abstract instance file")
    e.set_defaults(func=cmd_enumerate)

    so = sub.add_parser("solve", parents=[common], help="decide an abstract instance")
    so.add_argument("what", choices=["abstract"])
    so.add_argument("input")
    so.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a certificate")
    v.add_argument("what", choices=["cert"])
    v.add_argument("input", help="triangulation file")
    v.add_argument("vector", help="normal vector file")
    v.set_defaults(func=cmd_verify)

    sk = sub.add_parser("skeleton", parents=[common], help="describe a triangulation")
    sk.add_argument("input")
    sk.set_defaults(func=cmd_skeleton)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    s = Summary()
    start = time.perf_counter()
    try:
        code = args.func(args, s)
    except (NormSurfError, OSError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=stderr)
        return EXIT_ERROR
    stdout.write(s.render())
    if args.verbose:
        print(f"{args.command}: {time.perf_counter() - start:.3f}s", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
