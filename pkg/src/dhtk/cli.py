"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 the
enumeration budget refused the computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cylinder import (
    boundary_inclusion,
    cone,
    cube_boundary,
    distance_criterion,
    double_mapping_cylinder,
    edge_collapse_square,
    is_n_skeletal_pushout,
    iterated_suspension,
    open_box,
    parallel_edge_square,
    subgraph_square,
)
from .fseq import FSeqParseError, expanded_forms, f_boundary, f_graph, f_interior, parse_fseq, reduce
from .gamma import builtin_rp2, cubify, gamma, gamma_of_complex
from .graph import Graph, cube, cycle, graph_isomorphic, identity, interval, iter_cube_maps, point
from .homology import BudgetExceeded, chain_complex, current_budget, estimate_cubes, is_degenerate, report_sizes
from .io import FormatError, dumps_graph, load_complex, load_cylinder_spec, load_graph, load_square, write_triplets
from .semicube import cycle_semicubical, nerve_cube_sets, standard_cube

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

GEN_KINDS = ("interval", "cycle", "cube", "cube-boundary", "open-box", "suspension", "cone",
             "cylinder", "f-graph", "gamma", "rp2-gamma")


class UsageError(Exception):
    pass


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"{args.kind} needs --{n.replace('_', '-')}" if len(n) > 1 else f"{args.kind} needs -{n}")


def parse_base(spec: str) -> Graph:
    """point | interval:M | cycle:L | cube:M,N | cube-boundary:M,N | file:PATH | PATH.json"""
    if spec.endswith(".json") and ":" not in spec:
        return load_graph(spec)
    name, _, arg = spec.partition(":")
    if name == "file":
        return load_graph(arg)
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise UsageError(f"bad base graph parameters {arg!r}") from None
    table = {"point": (0, lambda: point()), "interval": (1, lambda: interval(*nums)),
             "cycle": (1, lambda: cycle(*nums)), "cube": (2, lambda: cube(*nums)),
             "cube-boundary": (2, lambda: cube_boundary(*nums))}
    if name not in table:
        raise UsageError(f"unknown base graph {name!r}")
    arity, make = table[name]
    if len(nums) != arity:
        raise UsageError(f"base graph {name!r} takes {arity} parameter(s)")
    return make()


def build_graph(args) -> Graph:
    k = args.kind
    if k == "interval":
        _need(args, "m")
        return interval(args.m)
    if k == "cycle":
        _need(args, "n")
        return cycle(args.n)
    if k in ("cube", "cube-boundary", "open-box", "f-graph"):
        _need(args, "m", "n")
        return {"cube": cube, "cube-boundary": cube_boundary, "open-box": open_box, "f-graph": f_graph}[k](args.m, args.n)
    if k in ("suspension", "cone"):
        _need(args, "m", "base")
        G = parse_base(args.base)
        return iterated_suspension(G, args.m, args.times) if k == "suspension" else cone(G, args.m)
    if k == "cylinder":
        _need(args, "m")
        if args.spec:
            f, g = load_cylinder_spec(args.spec)
        else:
            _need(args, "n")
            i = boundary_inclusion(args.m, args.n)
            if args.preset == "boundary":
                f, g = i, i
            else:
                f, g = i, identity(i.source)
        return double_mapping_cylinder(f, g, args.m).graph
    if k == "gamma":
        _need(args, "m")
        if args.complex:
            return gamma_of_complex(load_complex(args.complex), args.m).graph
        if args.cube is not None:
            return gamma(standard_cube(args.cube), args.m).graph
        if args.cycle is not None:
            return gamma(cycle_semicubical(args.cycle), args.m).graph
        raise UsageError("gamma needs --complex, --cube or --cycle")
    if k == "rp2-gamma":
        _need(args, "m")
        return gamma_of_complex(builtin_rp2(), args.m).graph
    raise UsageError(f"unknown kind {k!r}")


def cmd_gen(args) -> int:
    text = dumps_graph(build_graph(args))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_homology(args) -> int:
    G = load_graph(args.graph)
    max_dim = args.max_dim if args.max_dim is not None else args.k + 1
    if max_dim < args.k + 1:
        raise UsageError(f"H_{args.k} needs --max-dim >= {args.k + 1}")
    cc = chain_complex(G, max_dim, convention=args.convention, budget=args.budget)
    rows = []
    for k in range(args.k + 1):
        h = cc.homology(k)
        row = h.as_dict(k)
        if args.mod_p is not None:
            row["p"] = args.mod_p
            row["mod_p_rank"] = cc.homology_mod_p(k, args.mod_p)
        rows.append((h, row))
    if args.dump_boundary:
        for k in range(1, max_dim + 1):
            with open(f"{args.dump_boundary}.d{k}.txt", "w") as fh:
                write_triplets(cc.boundaries[k], fh)
    if args.json:
        out = {"groups": [r for _, r in rows]}
        if args.sizes:
            out["sizes"] = report_sizes(cc)
        print(json.dumps(out))
        return EXIT_OK
    for h, row in rows:
        line = f"H_{row['k']} = {h}"
        if "mod_p_rank" in row:
            line += f"    dim H_{row['k']}(Z/{row['p']}) = {row['mod_p_rank']}"
        print(line)
    if args.sizes:
        for r in report_sizes(cc):
            extra = f"  boundary {r['boundary'][0]}x{r['boundary'][1]} nnz {r['nnz']}" if "boundary" in r else ""
            print(f"# dim {r['k']}: {r['cubes']} cubes, {r['nondegenerate']} non-degenerate{extra}")
    return EXIT_OK


def _report(args, name: str, ok: bool, detail: str) -> int:
    if args.json:
        print(json.dumps({"check": name, "pass": ok, "detail": detail}))
    else:
        print(("PASS" if ok else "FAIL") + f" {name}: {detail}")
    return EXIT_OK if ok else EXIT_FAIL


def _iso_explanation(G: Graph, H: Graph) -> str:
    if len(G) != len(H):
        return f"vertex counts differ ({len(G)} vs {len(H)})"
    if G.num_edges != H.num_edges:
        return f"edge counts differ ({G.num_edges} vs {H.num_edges})"
    dg = sorted(G.degree(v) for v in G)
    dh = sorted(H.degree(v) for v in H)
    if dg != dh:
        k = next(i for i, (a, b) in enumerate(zip(dg, dh)) if a != b)
        return f"degree sequences differ at rank {k} ({dg[k]} vs {dh[k]})"
    return "same vertex, edge and degree counts but no isomorphism exists"


def _labels(arg: str) -> list[str]:
    if arg.endswith(".json") and Path(arg).exists():
        data = json.loads(Path(arg).read_text())
        if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
            raise FormatError(f"{arg}: expected a JSON list of vertex names")
        return data
    return [x for x in arg.split(",") if x]


def cmd_check(args) -> int:
    what = args.what
    if what == "iso":
        G, H = load_graph(args.first), load_graph(args.second)
        ok, _ = graph_isomorphic(G, H)
        detail = f"{len(G)} vertices, {G.num_edges} edges" if ok else _iso_explanation(G, H)
        return _report(args, "iso", ok, detail)
    if what == "skeletal-pushout":
        if args.example:
            sq = {"remark1": edge_collapse_square, "remark2": parallel_edge_square}[args.example]()
        else:
            sq = load_square(args.square)
        rep = is_n_skeletal_pushout(sq, args.n, report=True)
        if rep.ok:
            return _report(args, "skeletal-pushout", True, f"set pushouts of k-cube maps agree for k <= {args.n}")
        return _report(args, "skeletal-pushout", False,
                       f"dimension {rep.dimension}: {rep.reason}; witness cube {list(rep.witness[0])}")
    if what == "distance":
        G = load_graph(args.graph)
        A, B = _labels(args.a), _labels(args.b)
        unknown = [v for v in A + B if v not in G]
        if unknown:
            raise FormatError(f"unknown vertices {unknown[:5]}")
        ok = distance_criterion(G, A, B, args.n)
        detail = (f"vertices outside A and outside B are at distance >= {args.n + 1}" if ok
                  else f"some vertex outside A is within distance {args.n} of a vertex outside B")
        if args.verify:
            sk = is_n_skeletal_pushout(subgraph_square(G, A, B), args.n)
            detail += f"; direct {args.n}-skeletal test: {'pass' if sk else 'fail'}"
        return _report(args, "distance", ok, detail)
    if what == "faces":
        if args.complex:
            X = cubify(load_complex(args.complex))
        elif args.cube is not None:
            X = standard_cube(args.cube)
        else:
            X = nerve_cube_sets(load_graph(args.nerve), args.max_dim)
        bad = X.face_identity_violation()
        if bad is None:
            return _report(args, "faces", True, f"face identities hold; cube counts {X.counts()}")
        n, x, i, j, e, e2 = bad
        return _report(args, "faces", False, f"cube {x!r} of dimension {n}: identity fails for i={i}, j={j}, "
                                             f"eps={e}, eps'={e2}")
    raise UsageError(f"unknown check {what!r}")


def cmd_fseq(args) -> int:
    if args.action == "count":
        total, bd, inner = len(f_graph(args.m, args.n)), len(f_boundary(args.m, args.n)), len(f_interior(args.m, args.n))
        if args.interior:
            print(inner)
        elif args.boundary:
            print(bd)
        else:
            print(f"vertices {total}\nboundary {bd}\ninterior {inner}")
        return EXIT_OK
    s = parse_fseq(args.expr, args.m)
    if args.action == "reduce":
        print(reduce(s))
    else:
        forms = expanded_forms(s)
        if args.count:
            print(len(forms))
        else:
            for f in forms:
                print(f)
            print(f"# {len(forms)} expanded forms")
    return EXIT_OK


def cmd_nerve(args) -> int:
    G = load_graph(args.graph)
    limit = current_budget(args.budget)
    rows = []
    for k in range(args.max_dim + 1):
        est = estimate_cubes(G, k, args.m)
        if est > limit:
            raise BudgetExceeded(est, limit, k)
        total = nondeg = 0
        for c in iter_cube_maps(G, k, args.m):
            total += 1
            if k == 0 or not is_degenerate(c, args.m):
                nondeg += 1
        rows.append({"k": k, "cubes": total, "nondegenerate": nondeg})
    if args.json:
        print(json.dumps(rows))
    else:
        for r in rows:
            print(f"dim {r['k']}: {r['cubes']} cubes, {r['nondegenerate']} non-degenerate")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dhtk", description="Discrete homotopy toolkit for graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap; computations currently run in a single thread")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a graph as JSON")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("-m", type=int, help="edge length / cylinder length")
    g.add_argument("-n", type=int, help="dimension, or cycle length")
    g.add_argument("--base", help="base graph for suspension and cone, e.g. cycle:5 or file:g.json")
    g.add_argument("--times", type=int, default=1, help="number of suspensions")
    g.add_argument("--preset", choices=("boundary", "open-box"), default="boundary",
                   help="cylinder of the boundary inclusion with itself, or with the identity")
    g.add_argument("--spec", help="cylinder spec file with A, B, C, f, g")
    g.add_argument("--complex", help="simplicial complex JSON for gamma")
    g.add_argument("--cube", type=int, help="gamma of the standard n-cube")
    g.add_argument("--cycle", type=int, help="gamma of the L-gon as a semicubical set")
    g.add_argument("--out", help="write to a file instead of stdout")
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("homology", help="integer homology of a graph")
    h.add_argument("graph")
    h.add_argument("--k", type=int, default=1, help="report H_0 .. H_k")
    h.add_argument("--max-dim", type=int, help="top cube dimension (default k+1)")
    h.add_argument("--mod-p", type=int, help="also report ranks over Z/p")
    h.add_argument("--convention", choices=("index", "twisted"), default="index")
    h.add_argument("--budget", type=float, help="enumeration budget (overrides DHT_BUDGET)")
    h.add_argument("--sizes", action="store_true", help="report cube counts and boundary matrix shapes")
    h.add_argument("--dump-boundary", metavar="PREFIX", help="write PREFIX.d<k>.txt triplet files")
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_homology)

    c = sub.add_parser("check", help="pass/fail checks")
    cs = c.add_subparsers(dest="what", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable result")
    ci = cs.add_parser("iso", parents=[common], help="are two graph files isomorphic")
    ci.add_argument("first")
    ci.add_argument("second")
    cp = cs.add_parser("skeletal-pushout", parents=[common], help="is a square an n-skeletal pushout")
    src = cp.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", choices=("remark1", "remark2"),
                     help="remark1: edge collapse square; remark2: parallel edge square")
    src.add_argument("--square", help="square JSON file")
    cp.add_argument("--n", type=int, default=1)
    cd = cs.add_parser("distance", parents=[common], help="distance criterion for a two-subgraph cover")
    cd.add_argument("graph")
    cd.add_argument("--a", required=True, help="comma-separated vertices of A, or a JSON list file")
    cd.add_argument("--b", required=True, help="vertices of B, same format")
    cd.add_argument("--n", type=int, default=1)
    cd.add_argument("--verify", action="store_true", help="also run the direct skeletal test")
    cf = cs.add_parser("faces", parents=[common], help="face identities of a semicubical set")
    fsrc = cf.add_mutually_exclusive_group(required=True)
    fsrc.add_argument("--complex", help="cubify this simplicial complex")
    fsrc.add_argument("--cube", type=int, help="the standard n-cube")
    fsrc.add_argument("--nerve", help="nerve of this graph")
    cf.add_argument("--max-dim", type=int, default=2, help="nerve: top dimension")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("fseq", help="F-sequence utilities")
    fs = f.add_subparsers(dest="action", required=True)
    fr = fs.add_parser("reduce", help="print the reduced form")
    fr.add_argument("expr")
    fr.add_argument("-m", type=int, required=True)
    fe = fs.add_parser("expand", help="list the expanded forms")
    fe.add_argument("expr")
    fe.add_argument("-m", type=int, required=True)
    fe.add_argument("--count", action="store_true", help="print only the number of forms")
    fc = fs.add_parser("count", help="vertex counts of F(m, n)")
    fc.add_argument("-m", type=int, required=True)
    fc.add_argument("-n", type=int, required=True)
    part = fc.add_mutually_exclusive_group()
    part.add_argument("--interior", action="store_true")
    part.add_argument("--boundary", action="store_true")
    f.set_defaults(func=cmd_fseq)

    n = sub.add_parser("nerve", help="cube counts per dimension")
    n.add_argument("graph")
    n.add_argument("--max-dim", type=int, default=2)
    n.add_argument("-m", type=int, default=1)
    n.add_argument("--budget", type=float)
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_nerve)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "budget", None) is not None:
        args.budget = int(args.budget)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}; raise --budget or DHT_BUDGET to proceed", file=sys.stderr)
        return EXIT_BUDGET
    except FSeqParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
