"""Command-line front end: ``ribbonpoly <command> ...``.

Exit status is 0 on success, 1 when an input violates a precondition
(disconnected graph, unknown edge, failing verification) and 2 when an
input file cannot be parsed.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .duality import contract, partial_dual
from .oracle import br_poly, multivariate_br, signed_br, signed_multivariate_br
from .poly import rank_poly, tutte
from .quasitree import qt_expansion_signed, quasi_tree_records, signed_terms
from .ribbon import ParseError, parse, serialize, underlying_graph
from .virtual import connected_state_expansion, kauffman_statesum, parse_gauss, ribbon_bracket

_POLYS = {
    "R": br_poly,
    "Rs": signed_br,
    "Z": multivariate_br,
    "Zs": signed_multivariate_br,
    "tutte": lambda G: tutte(underlying_graph(G)),
    "rank": lambda G: rank_poly(underlying_graph(G)),
}


class _Failure(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Failure(f"cannot read {path}: {exc.strerror}") from None


def _edge_list(text: str | None) -> list:
    if not text:
        return []
    return [e.strip() for e in text.split(",") if e.strip()]


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_set(edges, order) -> str:
    return "{" + ",".join(e for e in order if e in edges) + "}"


def cmd_poly(args) -> int:
    G = parse(_read(args.graph))
    print(_POLYS[args.which](G).to_string())
    return 0


def cmd_qtexp(args) -> int:
    G = parse(_read(args.graph))
    order = tuple(_edge_list(args.order)) or G.edges
    total = qt_expansion_signed(G, order)
    header = ["leaf", "E(Q)", "I_o", "I_n", "D", "E_o", "N", "S"]
    rows = []
    for rec in quasi_tree_records(G, order):
        act = rec.activity
        n, s = signed_terms(G, rec)
        label = "".join("1" if e in rec.edges else "0" for e in order)
        for e in act.live_orientable:
            i = order.index(e)
            label = label[:i] + "*" + label[i + 1:]
        rows.append([label, _fmt_set(rec.edges, order),
                     _fmt_set(act.internal_live_orientable, order),
                     _fmt_set(act.internal_live_nonorientable, order),
                     _fmt_set(act.internal_dead, order),
                     _fmt_set(act.external_live_orientable, order),
                     n.to_string(), s.to_string()])
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    print("order: " + " < ".join(order))
    for r in [header] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    print(f"total: {total.to_string()}")
    return 0


def cmd_dual(args) -> int:
    G = parse(_read(args.graph))
    _write(serialize(partial_dual(G, _edge_list(args.edges))), args.output)
    return 0


def cmd_contract(args) -> int:
    G = parse(_read(args.graph))
    _write(serialize(contract(G, args.edge)), args.output)
    return 0


def cmd_bracket(args) -> int:
    D = parse_gauss(_read(args.diagram))
    if args.method == "statesum":
        value = kauffman_statesum(D)
    elif args.method == "connected":
        value = connected_state_expansion(D, _edge_list(args.order) or None)
    else:
        value = ribbon_bracket(D)
    print(value.to_string())
    return 0


def cmd_verify(args) -> int:
    from .verify import EXHAUSTIVE_EDGES, run_suites, worker_count

    workers = worker_count()
    print(f"seed: {args.seed}")
    n_random = args.random if args.max_edges > EXHAUSTIVE_EDGES else 0
    sampled = f", {n_random} random graphs with {EXHAUSTIVE_EDGES + 1}-{args.max_edges} edges" if n_random else ""
    print(f"population: all connected graphs with <= {min(args.max_edges, EXHAUSTIVE_EDGES)} edges"
          f"{sampled}, {args.diagrams} random diagrams")
    print(f"workers: {workers}")
    start = time.perf_counter()
    results = run_suites(args.max_edges, args.random, args.seed, workers, args.diagrams)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.checked} inputs, {len(r.failures)} failures")
        for msg in r.failures[:5]:
            print(f"    {msg}")
        ok = ok and r.passed
    print(f"elapsed: {time.perf_counter() - start:.1f}s")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poly", help="print a graph polynomial")
    sp.add_argument("graph", help="ribbon graph file, or - for stdin")
    sp.add_argument("--which", choices=sorted(_POLYS), default="R")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("qtexp", help="quasi-tree expansion report of the signed polynomial")
    sp.add_argument("graph")
    sp.add_argument("--order", help="comma-separated edge order (default: natural)")
    sp.set_defaults(func=cmd_qtexp)

    sp = sub.add_parser("dual", help="write the partial dual along a set of edges")
    sp.add_argument("graph")
    sp.add_argument("--edges", default="", help="comma-separated edges; empty for none")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("contract", help="write the graph with one edge contracted")
    sp.add_argument("graph")
    sp.add_argument("--edge", required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_contract)

    sp = sub.add_parser("bracket", help="Kauffman bracket of a signed Gauss code")
    sp.add_argument("diagram")
    sp.add_argument("--method", choices=("statesum", "connected", "ribbon"), default="statesum")
    sp.add_argument("--order", help="comma-separated crossing order for --method connected")
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("verify", help="run the property suites against brute force")
    sp.add_argument("--max-edges", type=int, default=5,
                    help="largest graph size; sizes above 3 are sampled rather than enumerated")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random", type=int, default=200, help="number of sampled graphs above 3 edges")
    sp.add_argument("--diagrams", type=int, default=50, help="number of random Gauss codes")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ribbonpoly: parse error: {exc}", file=sys.stderr)
        return 2
    except (_Failure, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ribbonpoly: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
