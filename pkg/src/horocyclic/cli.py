"""Command-line front end.

Coordinate syntax:

  tree vertex   ``level:digits``, e.g. ``0:11`` (digits >= 10 need dots: ``2:1.12.0``)
  DL vertex     ``x1,x2``, e.g. ``1:1,-1:``
  HT point      ``level:digits[^up]@x``; ``up`` in [0, 1) moves the point up the
                edge towards the predecessor, ``x`` is the real part in H_q
  Sol point     ``x,y,z``

Exit codes: 0 pass, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import dl as D
from . import sol as S
from . import tree as T
from . import treebolic as HT
from . import verify as V
from . import walks as W
from .hyperbolic import dist_h

SCHEMA_VERSION = "1.0"


class ParseError(ValueError):
    def __init__(self, token: str, why: str = ""):
        super().__init__(f"cannot parse {token!r}" + (f": {why}" if why else ""))
        self.token = token


class MissingSeed(ValueError):
    pass


class UsageError(ValueError):
    pass


# ------------------------------------------------------------- parsing

def parse_tree(text: str, p: int) -> T.TreeVertex:
    try:
        v = T.TreeVertex.parse(text)
        T.check_digits(v, p)
    except ValueError as e:
        raise ParseError(text, str(e)) from None
    return v


def parse_dl(text: str, pr: D.DlParams) -> D.DlVertex:
    a, sep, b = text.partition(",")
    if not sep:
        raise ParseError(text, "expected x1,x2")
    x1, x2 = parse_tree(a, pr.p), parse_tree(b, pr.q)
    try:
        return D.DlVertex(x1, x2)
    except ValueError as e:
        raise ParseError(text, str(e)) from None


def parse_ht(text: str, pr: HT.HtParams) -> HT.HtPoint:
    head, sep, x = text.partition("@")
    if not sep:
        raise ParseError(text, "expected level:digits[^up]@x")
    vert, _, up = head.partition("^")
    try:
        w = T.TreePoint(parse_tree(vert, pr.p), float(up) if up else 0.0)
        return HT.HtPoint.at(w, float(x), pr)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(text, str(e)) from None


def parse_sol(text: str) -> S.SolPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(text, "expected x,y,z")
    try:
        return S.SolEl(*(float(t) for t in parts))
    except ValueError:
        bad = next(t for t in parts if not _is_float(t))
        raise ParseError(bad, f"not a number in {text!r}") from None


def _is_float(t: str) -> bool:
    try:
        float(t)
    except ValueError:
        return False
    return True


# --------------------------------------------------------------- ball

def _ball_graph(args) -> tuple[str, dict, D.Ball]:
    r = args.radius
    if r > args.cap:
        raise D.RadiusTooLarge(f"radius {r} exceeds cap {args.cap}")
    if args.dl:
        p, q = args.dl
        pr = D.DlParams(p, q)
        return f"DL({p},{q})", {"p": p, "q": q}, D.bfs_ball(D.DL_ORIGIN, r, pr, args.cap)
    if args.grandmother:
        p = args.grandmother
        ball = D.bfs_generic(T.ORIGIN, r, lambda v: T.grandmother_neighbors(v, p))
        return f"grandmother({p})", {"p": p}, ball
    p = args.tree
    return f"T({p})", {"p": p}, D.bfs_generic(T.ORIGIN, r, lambda v: T.tree_neighbors(v, p))


def export_json(name: str, params: dict, radius: int, ball: D.Ball) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "graph": name,
        "params": params,
        "radius": radius,
        "generator": f"horocyclic {__version__}",
        "vertices": [{"id": i, "coords": str(v), "level": v.level, "dist": ball.dist[v]}
                     for i, v in enumerate(ball.vertices)],
        "edges": [list(e) for e in ball.edges],
    }


def export_dot(name: str, params: dict, radius: int, ball: D.Ball) -> str:
    lines = [f'graph "{name}" {{',
             f'  comment="radius {radius}, horocyclic {__version__}";',
             "  node [shape=circle];"]
    by_level: dict[int, list[int]] = {}
    for i, v in enumerate(ball.vertices):
        lines.append(f'  n{i} [label="{v}", level={v.level}];')
        by_level.setdefault(v.level, []).append(i)
    # one rank per level, highest level at the top
    for lev in sorted(by_level, reverse=True):
        ids = " ".join(f"n{i}" for i in by_level[lev])
        lines.append(f"  {{ rank=same; {ids} }}")
    for i, j in ball.edges:
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_ball(args) -> int:
    name, params, ball = _ball_graph(args)
    if args.format == "json":
        text = json.dumps(export_json(name, params, args.radius, ball), indent=1) + "\n"
    else:
        text = export_dot(name, params, args.radius, ball)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------- dist

def _report(space: str, a: str, b: str, formula: float, oracle: dict | None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "space": space, "a": a, "b": b,
           "formula": formula, "oracle": oracle, "gap": None}
    if oracle is not None:
        if "value" in oracle:
            out["gap"] = abs(formula - oracle["value"])
        else:
            out["gap"] = max(oracle["lower"] - formula, formula - oracle["upper"], 0.0)
    return out


def cmd_dist(args) -> int:
    space, a_txt, b_txt = args.space, args.a, args.b
    if space == "tree":
        a, b = parse_tree(a_txt, args.p), parse_tree(b_txt, args.p)
        f = T.tree_distance(a, b)
        o = D.bfs_distance(a, b, lambda v: T.tree_neighbors(v, args.p), limit=args.bfs_limit)
        rep = _report(space, a_txt, b_txt, f, {"name": "bfs", "value": o})
    elif space == "dl":
        pr = D.DlParams(args.p, args.q)
        a, b = parse_dl(a_txt, pr), parse_dl(b_txt, pr)
        f = D.formula_dist(a, b)
        o = D.bfs_distance(a, b, lambda v: D.neighbors(v, pr), limit=args.bfs_limit)
        rep = _report(space, a_txt, b_txt, f, {"name": "bfs", "value": o})
    elif space == "ht":
        pr = HT.HtParams(args.p, args.q)
        a, b = parse_ht(a_txt, pr), parse_ht(b_txt, pr)
        f = HT.ht_dist(a, b, pr)
        if HT.same_sheet(a.w, b.w):
            o = {"name": "same-sheet", "value": dist_h(a.z, b.z)}
        else:
            y = pr.q ** T.confluent_ancestor(a.w.vertex, b.w.vertex).level
            o = {"name": "grid", "value": V.grid_minimum(a.z, b.z, y)}
        rep = _report(space, a_txt, b_txt, f, o)
    else:
        pr = S.SolParams(args.p, args.q)
        a, b = parse_sol(a_txt), parse_sol(b_txt)
        r = S.dist_upper(a, b, pr)
        rep = _report(space, a_txt, b_txt, r.value,
                      {"name": "sandwich", "lower": r.lower, "upper": r.upper})
        rep["converged"] = r.converged
    print(json.dumps(rep, indent=1))
    return 0


# ------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    checks = V.run(args.suite)
    ok = all(c.passed for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}", file=sys.stderr)
    summary = {"schema_version": SCHEMA_VERSION, "suite": args.suite, "passed": ok,
               "checks": [c.to_json() for c in checks]}
    print(json.dumps(summary, indent=1, default=str))
    return 0 if ok else 1


# --------------------------------------------------------------- walk

def cmd_walk(args) -> int:
    if args.seed is None:
        raise MissingSeed("--seed is required so that runs can be reproduced")
    if args.lamplighter:
        p = args.lamplighter
        stats = W.lamplighter_walk(W.WalkConfig(p, p, args.steps, args.trials, args.seed, True))
    else:
        p, q = args.dl
        stats = W.srw_run(W.WalkConfig(p, q, args.steps, args.trials, args.seed))
    out = {"schema_version": SCHEMA_VERSION, **stats.to_json()}
    print(json.dumps(out, indent=1))
    return 0


# --------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="horocyclic", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("ball", help="export a ball around the origin")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--dl", nargs=2, type=int, metavar=("P", "Q"))
    g.add_argument("--grandmother", type=int, metavar="P")
    g.add_argument("--tree", type=int, metavar="P")
    b.add_argument("-r", "--radius", type=int, required=True)
    b.add_argument("--format", choices=["dot", "json"], default="json")
    b.add_argument("--cap", type=int, default=D.DEFAULT_CAP, help="largest allowed radius")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_ball)

    d = sub.add_parser("dist", help="distance by formula next to its oracle")
    d.add_argument("space", choices=["tree", "dl", "ht", "sol"])
    d.add_argument("a")
    d.add_argument("b")
    d.add_argument("--p", type=float, default=2)
    d.add_argument("--q", type=float, default=2)
    d.add_argument("--bfs-limit", type=int, default=24)
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="one of: " + ", ".join([*V.SUITES, "all"]))
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("walk", help="simple random walk statistics")
    g = w.add_mutually_exclusive_group(required=True)
    g.add_argument("--dl", nargs=2, type=int, metavar=("P", "Q"))
    g.add_argument("--lamplighter", type=int, metavar="P")
    w.add_argument("-n", "--steps", type=int, default=10_000)
    w.add_argument("-T", "--trials", type=int, default=200)
    w.add_argument("--seed", type=int)
    w.set_defaults(func=cmd_walk)
    return ap


def _coerce(args) -> None:
    # integer parameters for the discrete spaces
    if getattr(args, "space", None) in ("tree", "dl"):
        for k in ("p", "q"):
            val = getattr(args, k)
            if val != int(val):
                raise UsageError(f"--{k} must be an integer for {args.space}")
            setattr(args, k, int(val))
    if getattr(args, "space", None) == "ht":
        if args.p != int(args.p):
            raise UsageError("--p must be an integer for ht")
        args.p = int(args.p)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _coerce(args)
        return args.func(args)
    except V.UnknownSuite as e:
        print(f"UnknownSuite: {e.args[0]!r}; choose from {', '.join([*V.SUITES, 'all'])}",
              file=sys.stderr)
    except ParseError as e:
        print(f"ParseError: {e} (token {e.token!r})", file=sys.stderr)
    except MissingSeed as e:
        print(f"MissingSeed: {e}", file=sys.stderr)
    except D.RadiusTooLarge as e:
        print(f"RadiusTooLarge: {e}", file=sys.stderr)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
