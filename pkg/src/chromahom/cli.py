"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage errors, bad graph input and exceeded resource caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cocycles import cocycle_report, generators_subtop, generators_top
from .complete import recursion_check, tower_check
from .graphs import GraphError, OrderedGraph, chromatic_polynomial, family, kpartial
from .homology import euler_matches, graded_euler, homology_table, support_region_check
from .polynomial import evaluate_at_one_plus_q
from .reports import Case, Report, merge
from .sequences import (
    gamma_zero_report,
    kpartial_triple,
    les_report,
    make_triple,
    phi_section_check,
    ses_report,
    verify_split,
)
from .states import ResourceCapExceeded, check_cap

CLAIMS = ("euler", "ses", "les", "gamma-zero", "split", "cocycles", "tower", "recursion", "support")


class UsageError(Exception):
    pass


def load_graph(args) -> OrderedGraph:
    if not args.graph:
        raise UsageError("--graph is required for this command")
    descriptor = args.graph
    if descriptor.startswith("random:") and descriptor.count(",") == 1:
        descriptor = f"{descriptor},{args.seed}"
    graph = family(descriptor)
    check_cap(graph, args.max_edges)
    return graph


def resolve_edge(graph: OrderedGraph, selector: str) -> int:
    """``u,v`` names an edge by endpoints; a bare integer is an edge id."""
    text = selector.strip()
    if "," in text:
        try:
            u, v = (int(x) for x in text.split(","))
        except ValueError:
            raise UsageError(f"bad edge selector {selector!r}") from None
        key = (min(u, v), max(u, v))
        hits = [k for k, pair in enumerate(graph.edges) if pair == key]
        if not hits:
            raise UsageError(f"no edge {u},{v} in the graph")
        if len(hits) > 1:
            raise UsageError(f"edge {u},{v} is parallel; select it by id instead")
        return hits[0]
    try:
        k = int(text)
    except ValueError:
        raise UsageError(f"bad edge selector {selector!r}") from None
    graph._check_edge(k)
    return k


def edges_for(graph: OrderedGraph, args) -> list[int]:
    if args.edge:
        return [resolve_edge(graph, args.edge)]
    return [k for k in range(graph.num_edges) if not graph.is_loop(k)]


def need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for this claim")


def kpartial_range(args) -> list[int]:
    need(args, "n")
    if args.m is not None:
        if not 2 <= args.m <= args.n - 1:
            raise UsageError(f"need 2 <= m <= n-1, got n={args.n}, m={args.m}")
        return [args.m]
    return list(range(2, args.n))


def check_kpartial_cap(args, n: int) -> None:
    check_cap(kpartial(n, n - 1), args.max_edges)


# -- reports per claim -------------------------------------------------------


def euler_report(graph: OrderedGraph, args) -> Report:
    table = homology_table(graph, jobs=args.jobs, max_edges=args.max_edges)
    lhs = graded_euler(table)
    rhs = evaluate_at_one_plus_q(chromatic_polynomial(graph))
    return Report("euler", {"graph": str(graph)}, [Case(None, None, lhs == rhs, f"{lhs} vs {rhs}")])


def support_report(graph: OrderedGraph, args) -> Report:
    if not graph.is_connected() or graph.has_isolated_vertex():
        raise UsageError("support check needs a connected graph without isolated vertices")
    table = homology_table(graph, jobs=args.jobs, max_edges=args.max_edges)
    rep = support_region_check(table, graph.n)
    cases = [Case(None, None, rep.ok, "; ".join(rep.violations) or "inside the region")]
    cases.append(Case(None, None, rep.only_order_two, f"invariant factors seen: {rep.factors_seen}"))
    return Report("support", {"graph": str(graph)}, cases)


def build_report(claim: str, args) -> Report:
    if claim == "euler":
        return euler_report(load_graph(args), args)
    if claim == "support":
        return support_report(load_graph(args), args)
    if claim in ("ses", "les"):
        graph = load_graph(args)
        builder = ses_report if claim == "ses" else les_report
        parts = [builder(make_triple(graph, k)) for k in edges_for(graph, args)]
        if len(parts) == 1:
            return parts[0]
        return merge(claim, {"graph": str(graph)}, parts)
    if claim == "gamma-zero":
        ms = kpartial_range(args)
        check_kpartial_cap(args, args.n)
        return merge("gamma-zero", {"n": args.n}, [gamma_zero_report(args.n, m) for m in ms])
    if claim == "split":
        if args.graph:
            graph = load_graph(args)
            if not args.edge:
                raise UsageError("split on an arbitrary graph needs --edge (non-bridge)")
            return verify_split(make_triple(graph, resolve_edge(graph, args.edge)), non_bridge=True)
        ms = kpartial_range(args)
        check_kpartial_cap(args, args.n)
        parts = []
        for m in ms:
            triple = kpartial_triple(args.n, m)
            rep = verify_split(triple)
            section = phi_section_check(triple, args.n)
            rep.cases.append(
                Case(1, args.n - 1, section.ok, f"section on H^(1,n-1); literal map kills the image: {section.literal_kills_image}")
            )
            parts.append(rep)
        return merge("split", {"n": args.n}, parts)
    if claim == "cocycles":
        need(args, "n")
        check_kpartial_cap(args, args.n)
        ms = [args.m] if args.m is not None else list(range(1, args.n))
        return merge("cocycles", {"n": args.n}, [cocycle_report(args.n, m) for m in ms])
    if claim == "tower":
        need(args, "n")
        check_kpartial_cap(args, args.n)
        return tower_check(args.n, jobs=args.jobs, max_edges=args.max_edges)
    if claim == "recursion":
        need(args, "n")
        check_kpartial_cap(args, args.n)
        return recursion_check(args.n, jobs=args.jobs, max_edges=args.max_edges).to_report()
    raise UsageError(f"unknown claim {claim!r}")


def emit(report: Report, fmt: str | None) -> int:
    if fmt == "pretty":
        print(report.render())
    else:
        print(report.dumps())
    return 0 if report.passed else 1


# -- commands ------------------------------------------------------------------


def cmd_table(args) -> int:
    graph = load_graph(args)
    table = homology_table(graph, jobs=args.jobs, max_edges=args.max_edges, name=args.graph)
    ok = euler_matches(graph, table)
    fmt = args.format or "pretty"
    if fmt == "json":
        payload = table.to_json(graph)
        payload["euler_pass"] = ok
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        sys.stdout.write(table.to_csv())
    else:
        poly = chromatic_polynomial(graph)
        print(f"graph: {args.graph} ({graph.n} vertices, {graph.num_edges} edges)")
        print(table.render())
        print(f"P(lambda)   = {poly}")
        print(f"P(1+q)      = {evaluate_at_one_plus_q(poly)}")
        print(f"euler(H)    = {graded_euler(table)}")
        print(f"Euler identity: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_euler_check(args) -> int:
    return emit(euler_report(load_graph(args), args), args.format)


def cmd_verify(args) -> int:
    return emit(build_report(args.claim, args), args.format)


def cmd_cocycle_check(args) -> int:
    need(args, "n")
    check_kpartial_cap(args, args.n)
    ms = [args.m] if args.m is not None else list(range(1, args.n))
    if args.m is not None and not 1 <= args.m <= args.n - 1:
        raise UsageError(f"need 1 <= m <= n-1, got m={args.m}")
    report = merge("cocycles", {"n": args.n}, [cocycle_report(args.n, m) for m in ms])
    code = emit(report, args.format)
    if args.dump:
        for m in ms:
            graph = kpartial(args.n, m)
            for i in range(args.n + 1):
                for build in (generators_top, generators_subtop):
                    fam = build(graph, i)
                    if len(fam):
                        print(f"# kpartial({args.n},{m}) H^({fam.i},{fam.j})")
                        for line in fam.dump():
                            print(line)
    return code


def cmd_les(args) -> int:
    args.claim = "les"
    return cmd_verify(args)


def cmd_named(claim: str):
    def run(args) -> int:
        args.claim = claim
        return cmd_verify(args)

    return run


def add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="complete:N, cycle:N, path:N, kpartial:N,M, random:N,E[,SEED] or file:PATH")
    p.add_argument("--edge", help="edge as 'u,v' or an edge id")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--format", choices=("pretty", "json", "csv"))
    p.add_argument("--max-edges", type=int, dest="max_edges", help="edge cap (env CHROMA_MAX_EDGES)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0, help="seed for random:N,E")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromahom", description="Integral chromatic homology of graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="bigraded homology table and Euler check")
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("euler-check", help="graded Euler characteristic against P(1+q)")
    add_common(p)
    p.set_defaults(func=cmd_euler_check)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("claim", choices=CLAIMS)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cocycle-check", help="cocycle families for kpartial(n, m)")
    add_common(p)
    p.add_argument("--dump", action="store_true", help="print every generator")
    p.set_defaults(func=cmd_cocycle_check)

    p = sub.add_parser("les", help="exactness of the deletion/contraction long exact sequence")
    add_common(p)
    p.set_defaults(func=cmd_les)

    for name, claim in (("verify-recursion", "recursion"), ("verify-tower", "tower")):
        p = sub.add_parser(name, help=f"same as 'verify {claim}'")
        add_common(p)
        p.set_defaults(func=cmd_named(claim))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_edges is not None and args.max_edges < 0:
        parser.error("--max-edges must be non-negative")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, GraphError, ResourceCapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
