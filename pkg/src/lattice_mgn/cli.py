"""Command-line entry point.

Only ``fit`` writes the cache.  Every other command reads the cache when it
is usable and computes whatever is missing in memory, so its output does not
depend on the cache state.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .dualgraph import enumerate_dual_graphs
from .euler import MissingSeedError, chi_open, f0_series, f1_series, pde_residual
from .exact import fraction_str
from .fatgraph import DEFAULT_MAX_HALF_EDGES, CensusInfeasibleError, census
from .pipeline import DEFAULT_MAX_LEVEL, PipelineError, ValueStore, default_cache_path, ensure_store, pipeline_run
from .recursion import EvaluationContext, is_stable, level, levels_upto, nbar_value
from .verify import SUITES, run_suite

log = logging.getLogger("lattice_mgn")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _require_stable(g: int, n: int) -> None:
    if not is_stable(g, n) or n < 1:
        raise SystemExit(f"error: (g, n) = ({g}, {n}) is not a stable level with n >= 1")


def _kind(text: str) -> str:
    return {"nbar": "Nbar", "n": "N"}[text]


def cmd_fit(args) -> int:
    path = Path(args.cache) if args.cache else default_cache_path()
    store = ValueStore.load(path)
    store = pipeline_run(args.max_level, store)
    store.save(path)
    table = store.chi_table()
    for g, n in levels_upto(args.max_level):
        qp = store.nbar[(g, n)]
        print(f"level {level(g, n)}  (g, n) = ({g}, {n})  degree {qp.degree}  "
              f"Nbar(0) = {fraction_str(qp.constant_term())}  chi = {fraction_str(table.chi_closed(g, n))}")
    return 0


def cmd_eval(args) -> int:
    g, n, b = args.g, args.n, args.b
    _require_stable(g, n)
    if len(b) != n:
        raise SystemExit(f"error: expected {n} values for --b, got {len(b)}")
    if any(x < 0 for x in b):
        raise SystemExit("error: perimeters must be non-negative")
    if sum(b) % 2:
        print("0")
        return 0
    L = level(g, n)
    if args.kind == "nbar" and all(x > 0 for x in b):
        store = ensure_store(L - 1) if L > 1 else ValueStore()
        lower = {key: qp for key, qp in store.nbar.items() if level(*key) < L}
        value = nbar_value(g, n, b, EvaluationContext(lower, raw_lower=True))
    else:
        store = ensure_store(L)
        value = store.polynomials(_kind(args.kind))[(g, n)].evaluate(b)
    print(fraction_str(value))
    return 0


def cmd_poly(args) -> int:
    g, n, k = args.g, args.n, args.k
    _require_stable(g, n)
    if not 0 <= k <= n:
        raise SystemExit(f"error: need 0 <= k <= {n}")
    qp = ensure_store(level(g, n)).polynomials(_kind(args.kind))[(g, n)]
    if args.format == "json":
        print(json.dumps(qp.coset_json(k)))
    else:
        print(qp.cosets[k].format("b", 2))
    return 0


def cmd_dualgraphs(args) -> int:
    if not is_stable(args.g, args.n):
        raise SystemExit(f"error: ({args.g}, {args.n}) is not stable")
    graphs = enumerate_dual_graphs(args.g, args.n)
    if args.list:
        print(json.dumps([G.to_json() for G in graphs], indent=1))
    else:
        print(json.dumps({"g": args.g, "n": args.n, "count": len(graphs),
                          "autOrders": sorted(G.aut_order for G in graphs)}))
    return 0


def cmd_census(args) -> int:
    _require_stable(args.g, args.n)
    try:
        result = census(args.g, args.n, args.b, max_half_edges=args.max_halfedges)
    except CensusInfeasibleError as exc:
        raise SystemExit(f"error: {exc}")
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    print(json.dumps(result.to_json()))
    return 0


def _closed_table(g: int):
    # seeds chi(Mbar_{h,1}) for h <= g live on levels 2h - 1
    return ensure_store(max(1, 2 * g - 1)).chi_table()


def cmd_chi(args) -> int:
    g, n = args.g, args.n
    if args.open:
        _require_stable(g, n)
        print(fraction_str(chi_open(g, n)))
    elif args.closed:
        if n < 1 or not (is_stable(g, n) or (g, n) in ((0, 1), (0, 2))):
            raise SystemExit(f"error: no compactified value for ({g}, {n})")
        print(fraction_str(_closed_table(g).chi_closed(g, n)))
    else:
        _require_stable(g, n)
        print(f"open    {fraction_str(chi_open(g, n))}")
        print(f"closed  {fraction_str(_closed_table(g).chi_closed(g, n))}")
    return 0


def cmd_series(args) -> int:
    M = args.order
    if M < 0:
        raise SystemExit("error: --order must be non-negative")
    if args.which in ("f0", "f1"):
        series = f0_series(M) if args.which == "f0" else f1_series(M)
        print(json.dumps({"which": args.which, "order": M,
                          "coefficients": [fraction_str(c) for c in series.coefficients()]}))
        return 0
    table = ensure_store(DEFAULT_MAX_LEVEL).chi_table()
    order_q = table.max_genus
    try:
        residual = pde_residual(M, order_q, table)
    except MissingSeedError as exc:
        raise SystemExit(f"error: {exc}")
    nonzero = [{"exp": list(e), "coef": fraction_str(c)} for e, c in sorted(residual.coeffs.items())]
    print(json.dumps({"which": "pde", "orderX": M, "orderQ": order_q,
                      "vanishes": not nonzero, "nonzero": nonzero}))
    return 0 if not nonzero else 1


def cmd_verify(args) -> int:
    store = ensure_store(DEFAULT_MAX_LEVEL)
    report = run_suite(args.suite, store)
    print(json.dumps(report, indent=1))
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-mgn",
                                     description="Exact lattice point counts on moduli spaces of curves.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit all levels up to L and write the cache")
    p.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("eval", help="evaluate Nbar or N at one point")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=_int_list, required=True)
    p.add_argument("--kind", choices=("nbar", "n"), default="nbar")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("poly", help="print one parity-coset polynomial")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=("nbar", "n"), default="nbar")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("dualgraphs", help="stable dual graphs of type (g, n)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_dualgraphs)

    p = sub.add_parser("census", help="brute-force fatgraph count")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=_int_list, required=True)
    p.add_argument("--max-halfedges", type=int, default=DEFAULT_MAX_HALF_EDGES)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("chi", help="orbifold Euler characteristics")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--open", action="store_true")
    which.add_argument("--closed", action="store_true")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("series", help="generating series F0, F1 and the PDE residual")
    p.add_argument("--which", choices=("f0", "f1", "pde"), required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run cross-checks; exit 0 iff all pass")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
