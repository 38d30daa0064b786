"""Command line entry point ``hs``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .betti import DEFAULT_CHAR, betti_table, has_linear_resolution, hs_ideal, regularity
from .errors import HSError, ResourceLimitError
from .graphs import edge_ideal, parse_graph
from .harness import SweepConfig, census_report, run_sweep
from .linquot import find_linear_quotients_order
from .monomials import MonomialIdeal, format_ideal, ideal_power, parse_ideal
from .primes import associated_primes, minimal_primes, v_number

OUT_DIR_ENV = "HS_OUT_DIR"
EXTENSIONS = {"json": "jsonl", "csv": "csv", "text": "txt"}
QUERY_OPS = ("hs", "betti", "ass", "ass-hs", "min", "vnum", "lq", "reg", "linear")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=5, help="largest number of vertices")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--char", type=int, default=DEFAULT_CHAR, help="field characteristic for Betti numbers")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--allow-isolated", action="store_true", help="keep graphs with isolated vertices")
    p.add_argument("--only-n", type=int, default=None, help="only graphs on exactly this many vertices")
    p.add_argument("--sample", type=int, default=None, help="random sample size from the selected census")
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help=f"report file (default: ${OUT_DIR_ENV}/<verb>.<ext> if set, else stdout)")
    p.add_argument("--format", choices=sorted(EXTENSIONS), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hs", description="Homological shift ideals of edge ideal powers.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("census", help="list graphs up to isomorphism")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--allow-isolated", action="store_true")
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="check a conjecture over the census")
    p.add_argument("--conjecture", choices=["A", "B"], required=True)
    p.add_argument("--no-families", action="store_true", help="skip the named families in sweep B")
    _add_sweep_flags(p)

    p = sub.add_parser("theorems", help="regression suite of the proved identities")
    _add_sweep_flags(p)

    p = sub.add_parser("vnum-probe", help="tabulate v-numbers of HS ideals against 2k+i-1")
    _add_sweep_flags(p)

    p = sub.add_parser("query", help="one computation on a single ideal or graph")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--graph", help="graph6 string or edge list 'n; 1-2, 2-3'")
    target.add_argument("--ideal", help="monomial generators, e.g. 'x1^2, x1*x2'")
    p.add_argument("--nvars", type=int, default=None, help="number of variables for --ideal")
    p.add_argument("--op", choices=QUERY_OPS, required=True)
    p.add_argument("--i", type=int, default=0, help="homological index: the op acts on HS_i(I^k)")
    p.add_argument("--k", type=int, default=1, help="power")
    p.add_argument("--char", type=int, default=DEFAULT_CHAR)
    p.add_argument("--format", choices=["json", "text"], default="text")
    return parser


def _config(args, mode: str) -> SweepConfig:
    return SweepConfig(
        mode=mode, n_max=args.n, k_max=args.kmax, i_max=args.imax, char=args.char, jobs=args.jobs,
        connected=args.connected, no_isolated=not args.allow_isolated, only_n=args.only_n,
        sample=args.sample, seed=args.seed, families=not getattr(args, "no_families", False),
    ).validate()


def _destination(args) -> Path | None:
    if args.out:
        return Path(args.out)
    base = os.environ.get(OUT_DIR_ENV)
    if base:
        name = args.verb if args.verb != "sweep" else f"sweep-{args.conjecture}"
        return Path(base) / f"{name}.{EXTENSIONS[args.format]}"
    return None


def _emit(args, text: str, summary: str | None = None) -> None:
    dest = _destination(args)
    if dest is None:
        sys.stdout.write(text)
        return
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text)
    if summary is not None:
        sys.stdout.write(summary)
    print(f"report written to {dest}")


def _run_census(args) -> int:
    rows = census_report(args.n, args.connected, not args.allow_isolated)
    if args.format == "json":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    elif args.format == "csv":
        lines = ["graph6,n,m,linear_resolution"]
        lines += [f"{r['graph6']},{r['n']},{r['m']},{r['linear_resolution']}" for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = "".join(f"{r['graph6']:<12} {r['edges']}\n" for r in rows) + f"{len(rows)} graphs\n"
    _emit(args, text, f"{len(rows)} graphs\n")
    return 0


def _run_sweep(args, mode: str) -> int:
    report = run_sweep(_config(args, mode))
    _emit(args, report.render(args.format), report.to_text())
    return report.exit_code()


def _query_ideal(args) -> MonomialIdeal:
    if args.graph is not None:
        return edge_ideal(parse_graph(args.graph))
    return parse_ideal(args.ideal, args.nvars)


def _primes(ps) -> list[list[int]]:
    return [list(P.variables) for P in ps]


def run_query(args) -> dict:
    I = _query_ideal(args)
    J = hs_ideal(ideal_power(I, args.k), args.i, args.char)
    out = {"ideal": format_ideal(I), "i": args.i, "k": args.k, "target": format_ideal(J), "op": args.op}
    op = args.op
    if op == "hs":
        out["result"] = format_ideal(J)
    elif op == "betti":
        table = betti_table(J, args.char)
        out["result"] = table.to_dict()
        out["text"] = table.format_text()
    elif op in ("ass", "ass-hs"):
        out["result"] = [] if J.is_zero() else _primes(associated_primes(J))
    elif op == "min":
        out["result"] = [] if J.is_zero() else _primes(minimal_primes(J))
    elif op == "vnum":
        out["result"] = None if J.is_zero() else v_number(J)
    elif op == "lq":
        order = find_linear_quotients_order(J)
        out["result"] = None if order is None else order.to_dict()
    elif op == "reg":
        out["result"] = regularity(J, args.char)
    elif op == "linear":
        out["result"] = has_linear_resolution(J, args.char)
    return out


def _format_query(out: dict) -> str:
    lines = [f"I = {out['ideal']}", f"HS_{out['i']}(I^{out['k']}) = {out['target']}"]
    if "text" in out:
        lines.append(out["text"])
    else:
        lines.append(f"{out['op']}: {json.dumps(out['result'])}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 2, --help exits 0
        return int(exc.code or 0)
    try:
        if args.verb == "census":
            return _run_census(args)
        if args.verb == "sweep":
            return _run_sweep(args, args.conjecture)
        if args.verb == "theorems":
            return _run_sweep(args, "theorems")
        if args.verb == "vnum-probe":
            return _run_sweep(args, "vnum")
        out = run_query(args)
        sys.stdout.write(json.dumps(out, sort_keys=True) + "\n" if args.format == "json" else _format_query(out))
        return 0
    except ResourceLimitError as exc:
        print(f"hs: resource limit: {exc}", file=sys.stderr)
        return 2
    except HSError as exc:
        print(f"hs: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
