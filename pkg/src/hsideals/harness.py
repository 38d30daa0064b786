"""Census sweeps over graphs and their edge ideal powers, with deterministic reports."""
from __future__ import annotations

import csv
import io
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

from .betti import DEFAULT_CHAR, MAX_GENERATORS, betti_table, has_linear_resolution, hs_ideal
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import (
    Partition,
    SimpleGraph,
    census,
    complete_multipartite,
    edge_ideal,
    emit_graph6,
    has_linear_resolution_froberg,
    initial_lexsegment_edge_ideal,
    principal_borel_edge_ideal,
)
from .linquot import find_linear_quotients_order, hs_via_quotients
from .monomials import MonomialIdeal, format_ideal, ideal_power
from .persistence import ass_chain, colon_criterion, height_monotonicity, min_stability
from .primes import v_number
from .structure import (
    check_hs1_decomposition,
    check_module_structure,
    check_ratliff_nonpure,
    hs1_pairwise_lcm,
)

N_MAX_LIMIT = 8
K_MAX_LIMIT = 4
MODES = ("A", "B", "theorems", "vnum")


@dataclass(frozen=True)
class SweepConfig:
    mode: str = "A"
    n_max: int = 5
    k_max: int = 3
    i_max: int = 3
    connected: bool = False
    no_isolated: bool = True
    linear_resolution_only: bool = False
    char: int = DEFAULT_CHAR
    jobs: int = 1
    max_generators: int = MAX_GENERATORS
    only_n: int | None = None  # restrict to graphs on exactly this many vertices
    sample: int | None = None
    seed: int = 0
    families: bool = True
    cross_check: bool = True

    def validate(self) -> "SweepConfig":
        if self.mode not in MODES:
            raise InvalidArgumentError(f"unknown sweep mode {self.mode!r}")
        if not 1 <= self.n_max <= N_MAX_LIMIT:
            raise InvalidArgumentError(f"n_max must lie in 1..{N_MAX_LIMIT}")
        if not 1 <= self.k_max <= K_MAX_LIMIT:
            raise InvalidArgumentError(f"k_max must lie in 1..{K_MAX_LIMIT}")
        # projective dimension of an ideal in n variables is at most n - 1
        if not 0 <= self.i_max <= N_MAX_LIMIT - 1:
            raise InvalidArgumentError(f"i_max must lie in 0..{N_MAX_LIMIT - 1}")
        if self.jobs < 1:
            raise InvalidArgumentError("jobs must be positive")
        if self.only_n is not None and not 1 <= self.only_n <= self.n_max:
            raise InvalidArgumentError("only_n must lie in 1..n_max")
        if self.sample is not None and self.sample < 0:
            raise InvalidArgumentError("sample size must be nonnegative")
        if self.mode == "B" and not self.linear_resolution_only:
            return replace(self, linear_resolution_only=True)
        return self

    def echo(self) -> dict:
        """Config as it appears in reports; parallelism is left out on purpose."""
        out = asdict(self)
        out.pop("jobs")
        return out


@dataclass
class SweepReport:
    config: dict
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    sections: dict = field(default_factory=dict)

    @property
    def skipped(self) -> list[dict]:
        return [r for r in self.records if r["status"] == "skipped"]

    def exit_code(self) -> int:
        if self.violations:
            return 1
        if self.skipped:
            return 2
        return 0

    def to_jsonl(self) -> str:
        lines = [json.dumps({"type": "config", **self.config}, sort_keys=True)]
        lines += [
            json.dumps({"type": "record", **{k: v for k, v in r.items() if k != "rows"}}, sort_keys=True)
            for r in self.records
        ]
        for name, body in sorted(self.sections.items()):
            lines.append(json.dumps({"type": "section", "name": name, "body": body}, sort_keys=True))
        lines.append(json.dumps({"type": "violations", "items": self.violations}, sort_keys=True))
        lines.append(json.dumps({"type": "summary", **self.summary}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = [row for r in self.records for row in r.get("rows", [])]
        fields = sorted({key for row in rows for key in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["graph6"] + [f for f in fields if f != "graph6"],
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"mode {self.config['mode']}: n <= {self.config['n_max']}, "
                 f"k <= {self.config['k_max']}, i <= {self.config['i_max']}, char {self.config['char']}"]
        for key, value in sorted(self.summary.items()):
            lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
        for r in self.skipped:
            lines.append(f"  skipped {r['graph6']}: {r['reason']}")
        for name, body in sorted(self.sections.items()):
            lines.append(f"[{name}]")
            items = body if isinstance(body, list) else [body]
            lines.extend(f"  {json.dumps(item, sort_keys=True)}" for item in items)
        if self.violations:
            lines.append("violations:")
            lines.extend(f"  {json.dumps(v, sort_keys=True)}" for v in self.violations)
        else:
            lines.append("no violations")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_jsonl()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise InvalidArgumentError(f"unknown format {fmt!r}")


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


# ---------------------------------------------------------------------------
# graph selection


def select_graphs(cfg: SweepConfig) -> list[SimpleGraph]:
    graphs = census(cfg.n_max, connected=cfg.connected, no_isolated=cfg.no_isolated)
    if cfg.only_n is not None:
        graphs = [G for G in graphs if G.n == cfg.only_n]
    if cfg.sample is not None and cfg.sample < len(graphs):
        graphs = random.Random(cfg.seed).sample(graphs, cfg.sample)
    return sorted(graphs, key=_graph_key)


def _graph_key(G: SimpleGraph) -> tuple:
    return (G.n, len(G.edges), emit_graph6(G))


def _base_record(G: SimpleGraph) -> dict:
    return {"graph6": emit_graph6(G), "n": G.n, "edges": G.to_edge_list()}


class _Powers:
    """Powers I^k, their HS ideals and quotient orders for one graph, with cross-checks."""

    def __init__(self, I: MonomialIdeal, cfg: SweepConfig):
        self.I = I
        self.cfg = cfg
        self._powers: dict[int, MonomialIdeal] = {}
        self._orders: dict = {}
        self.checked = 0
        self.failures: list[dict] = []

    def power(self, k: int) -> MonomialIdeal:
        if k not in self._powers:
            P = ideal_power(self.I, k)
            if len(P.gens) > self.cfg.max_generators:
                raise ResourceLimitError(
                    f"I^{k} has {len(P.gens)} generators, above the bound {self.cfg.max_generators}")
            self._powers[k] = P
        return self._powers[k]

    def order(self, k: int):
        if k not in self._orders:
            self._orders[k] = find_linear_quotients_order(self.power(k))
        return self._orders[k]

    def hs(self, i: int, k: int) -> MonomialIdeal:
        J = hs_ideal(self.power(k), i, self.cfg.char)
        if self.cfg.cross_check:
            self._cross_check(J, i, k)
        return J

    def _cross_check(self, J: MonomialIdeal, i: int, k: int) -> None:
        others = []
        if i == 1:
            others.append(("pairwise-lcm", hs1_pairwise_lcm(self.power(k))))
        order = self.order(k)
        if order is not None:
            others.append(("linear-quotients", hs_via_quotients(order, i)))
        for name, other in others:
            self.checked += 1
            if other != J:
                self.failures.append({"i": i, "k": k, "method": name,
                                      "betti": format_ideal(J), "other": format_ideal(other)})

    def diagnostics(self) -> dict:
        return {"checked": self.checked, "failures": self.failures}


# ---------------------------------------------------------------------------
# per-graph work units


def _work_A(G: SimpleGraph, cfg: SweepConfig) -> dict:
    rec = _base_record(G)
    powers = _Powers(edge_ideal(G), cfg)
    chains, rows, violations, drops = [], [], [], []
    for i in range(0, min(cfg.i_max, G.n - 1) + 1):
        for k in range(1, cfg.k_max + 1):
            powers.hs(i, k)  # routes the HS ideals through the cross-checks
        rep = ass_chain(powers.I, i, 1, cfg.k_max, cfg.char, with_colon=False)
        chains.append(rep.to_dict())
        for s in rep.steps:
            rows.append({"graph6": rec["graph6"], "i": i, "k": s.k, "ass": [list(P.variables) for P in rep.ass[s.k]],
                         "included_in_next": s.holds, "below_start": s.below_start})
            entry = {"i": i, "k": s.k, "lost": [list(P.variables) for P in s.lost]}
            if not s.holds:
                (drops if s.below_start else violations).append(entry)
    rec.update(status="done", chains=chains, violations=violations, below_start=drops,
               cross_checks=powers.diagnostics(), rows=rows)
    return rec


def _linearity_table(I: MonomialIdeal, cfg: SweepConfig, powers: _Powers | None = None, i_top: int | None = None):
    powers = powers or _Powers(I, cfg)
    table = {}
    for k in range(1, cfg.k_max + 1):
        top = i_top if i_top is not None else betti_table(powers.power(k), cfg.char).proj_dim
        for i in range(0, top + 1):
            J = powers.hs(i, k)
            table[(i, k)] = None if J.is_zero() else has_linear_resolution(J, cfg.char)
    return table, powers


def _linear_from(flags: list) -> int | None:
    """Smallest k such that every later k in range is linear (or has zero HS)."""
    first = None
    for k, flag in flags:
        if flag is False:
            first = None
        elif first is None:
            first = k
    return first


def _work_B(G: SimpleGraph, cfg: SweepConfig) -> dict:
    rec = _base_record(G)
    if not has_linear_resolution_froberg(G):
        rec.update(status="excluded", reason="I(G) has no linear resolution (complement not chordal)", rows=[])
        return rec
    i_top = min(cfg.i_max, G.n - 1)
    table, powers = _linearity_table(edge_ideal(G), cfg, i_top=i_top)
    per_i, rows, violations, unresolved = [], [], [], []
    for i in range(0, i_top + 1):
        flags = [(k, table[(i, k)]) for k in range(1, cfg.k_max + 1)]
        start = _linear_from(flags)
        per_i.append({"i": i, "linear": {str(k): f for k, f in flags}, "linear_from": start})
        rows.extend({"graph6": rec["graph6"], "i": i, "k": k, "linear": f} for k, f in flags)
        if i <= 1 and any(f is False for _, f in flags):
            # i = 0 and i = 1 are theorems: linear for every k
            violations.append({"i": i, "nonlinear_k": [k for k, f in flags if f is False]})
        elif start is None:
            unresolved.append(i)
    rec.update(status="done", linearity=per_i, violations=violations, unresolved=unresolved,
               cross_checks=powers.diagnostics(), rows=rows)
    return rec


def _summarize(report) -> dict:
    return {"check": report.check, "params": report.params, "holds": report.holds,
            "witness": report.witness}


def _work_theorems(G: SimpleGraph, cfg: SweepConfig) -> dict:
    rec = _base_record(G)
    I = edge_ideal(G)
    powers = _Powers(I, cfg)
    for k in range(1, cfg.k_max + 2):
        for i in range(0, 2):
            powers.hs(i, k)
    checks = []
    for k in range(1, cfg.k_max + 1):
        checks.append(_summarize(check_hs1_decomposition(G, k, cfg.char)))
        checks.append(_summarize(check_module_structure(G, k, 1, cfg.char)))
        r = check_ratliff_nonpure(G, k)
        if k == 1:
            # expected to fail for every graph with an edge
            checks.append({"check": "ratliff-nonpure-fails-at-1", "params": {"k": 1},
                           "holds": not r.holds, "witness": r.witness})
        else:
            checks.append(_summarize(r))
        for i in (0, 1):
            checks.append(_summarize(colon_criterion(I, i, k, cfg.char)))
    checks.append(_summarize(min_stability(G, cfg.k_max, cfg.char)))
    for i in (0, 1):
        checks.append(_summarize(height_monotonicity(G, i, cfg.k_max, cfg.char)))
    linear = has_linear_resolution(I, cfg.char)
    froberg = has_linear_resolution_froberg(G)
    checks.append({"check": "froberg", "params": {}, "holds": linear == froberg,
                   "witness": None if linear == froberg else {"betti_linear": linear, "complement_chordal": froberg}})

    exploratory = []
    for i in range(2, min(cfg.i_max, G.n - 1) + 1):
        for k in range(1, cfg.k_max):
            exploratory.append(_summarize(check_module_structure(G, k, i, cfg.char)))
            exploratory.append(_summarize(colon_criterion(I, i, k, cfg.char)))
    rows = [{"graph6": rec["graph6"], "check": c["check"], "params": c["params"], "holds": c["holds"]}
            for c in checks + exploratory]
    violations = [c for c in checks if not c["holds"]]
    rec.update(status="done", checks=checks, exploratory=exploratory, violations=violations,
               cross_checks=powers.diagnostics(), rows=rows)
    return rec


def _work_vnum(G: SimpleGraph, cfg: SweepConfig) -> dict:
    rec = _base_record(G)
    if not has_linear_resolution_froberg(G):
        rec.update(status="excluded", reason="I(G) has no linear resolution (complement not chordal)", rows=[])
        return rec
    powers = _Powers(edge_ideal(G), cfg)
    table, rows, violations = [], [], []
    for i in range(0, min(cfg.i_max, G.n - 1) + 1):
        for k in range(1, cfg.k_max + 1):
            J = powers.hs(i, k)
            expected = 2 * k + i - 1
            v = None if J.is_zero() else v_number(J)
            match = None if v is None else v == expected
            entry = {"i": i, "k": k, "v": v, "expected": expected, "match": match}
            table.append(entry)
            rows.append({"graph6": rec["graph6"], **entry})
            if i == 0 and match is False:
                violations.append(entry)
    rec.update(status="done", vnumbers=table, violations=violations,
               cross_checks=powers.diagnostics(), rows=rows)
    return rec


_WORK = {"A": _work_A, "B": _work_B, "theorems": _work_theorems, "vnum": _work_vnum}


def _run_one(args) -> dict:
    mode, G, cfg = args
    try:
        return _WORK[mode](G, cfg)
    except ResourceLimitError as exc:
        rec = _base_record(G)
        rec.update(status="skipped", reason=str(exc), rows=[])
        return rec


def _map(cfg: SweepConfig, graphs: list[SimpleGraph]) -> list[dict]:
    jobs = [(cfg.mode, G, cfg) for G in graphs]
    if cfg.jobs == 1 or len(jobs) <= 1:
        out = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            out = list(pool.map(_run_one, jobs, chunksize=1))
    order = {emit_graph6(G): idx for idx, G in enumerate(graphs)}
    return sorted(out, key=lambda r: order[r["graph6"]])


def _collect(cfg: SweepConfig, records: list[dict]) -> SweepReport:
    report = SweepReport(cfg.echo(), records)
    status = {}
    for r in records:
        status[r["status"]] = status.get(r["status"], 0) + 1
        for v in r.get("violations", []):
            report.violations.append({"graph6": r["graph6"], **v})
        for f in r.get("cross_checks", {}).get("failures", []):
            report.violations.append({"graph6": r["graph6"], "kind": "cross-check", **f})
    report.summary = {
        "graphs": len(records),
        "status": status,
        "violations": len(report.violations),
        "cross_checks": sum(r.get("cross_checks", {}).get("checked", 0) for r in records),
    }
    return report


# ---------------------------------------------------------------------------
# public sweeps


def sweep_conjecture_A(cfg: SweepConfig) -> SweepReport:
    """Ass HS_i(I(G)^k) ⊆ Ass HS_i(I(G)^{k+1}) from k = max(1, i) on, over the census."""
    cfg = replace(cfg, mode="A").validate()
    report = _collect(cfg, _map(cfg, select_graphs(cfg)))
    report.sections["below_chain_start"] = [
        {"graph6": r["graph6"], **d} for r in report.records for d in r.get("below_start", [])
    ]
    return report


def family_ideals(n_max: int) -> list[tuple[str, MonomialIdeal]]:
    """Complete multipartite, initial lexsegment and principal Borel edge ideals up to n_max."""
    out = []
    for n in range(2, n_max + 1):
        for sizes in _partitions(n):
            if len(sizes) >= 2:
                P = Partition.from_sizes(sizes)
                out.append((f"multipartite{list(sizes)}", edge_ideal(complete_multipartite(P))))
        for i, j in itertools.combinations(range(1, n + 1), 2):
            out.append((f"lexsegment(n={n},x{i}x{j})", initial_lexsegment_edge_ideal(i, j, n)))
            out.append((f"borel(n={n},x{i}x{j})", principal_borel_edge_ideal(i, j, n)))
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def family_linearity(name: str, I: MonomialIdeal, cfg: SweepConfig) -> dict:
    table, powers = _linearity_table(I, cfg)
    nonlinear = [[i, k] for (i, k), f in sorted(table.items()) if f is False]
    return {"family": name, "ideal": format_ideal(I), "all_linear": not nonlinear,
            "nonlinear": nonlinear, "cross_checks": powers.diagnostics()}


def _run_family(args) -> dict:
    name, I, cfg = args
    try:
        return family_linearity(name, I, cfg)
    except ResourceLimitError as exc:
        return {"family": name, "ideal": format_ideal(I), "skipped": str(exc)}


def sweep_conjecture_B(cfg: SweepConfig) -> SweepReport:
    """Linearity of HS_i(I(G)^k) for census graphs with linear resolution, plus named families."""
    cfg = replace(cfg, mode="B").validate()
    report = _collect(cfg, _map(cfg, select_graphs(cfg)))
    report.summary["unresolved"] = sum(len(r.get("unresolved", [])) for r in report.records)
    if cfg.families:
        jobs = [(name, I, cfg) for name, I in family_ideals(cfg.n_max)]
        if cfg.jobs == 1:
            fam = [_run_family(j) for j in jobs]
        else:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                fam = list(pool.map(_run_family, jobs, chunksize=1))
        report.sections["families"] = fam
        for f in fam:
            if not f.get("all_linear", True):
                report.violations.append({"family": f["family"], "nonlinear": f["nonlinear"]})
            for x in f.get("cross_checks", {}).get("failures", []):
                report.violations.append({"family": f["family"], "kind": "cross-check", **x})
        report.summary["families"] = len(fam)
        report.summary["violations"] = len(report.violations)
    return report


COUNTEREXAMPLE_EDGES = ((1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6))


def counterexample_verdicts(cfg: SweepConfig) -> dict:
    """Both conjectures on the graph whose HS_2 loses (x1), (x2), (x3) from k = 1 to k = 2."""
    G = SimpleGraph.from_edges(6, COUNTEREXAMPLE_EDGES)
    chain = ass_chain(edge_ideal(G), 2, 1, cfg.k_max, cfg.char)
    out = {
        "graph6": emit_graph6(G),
        "edges": G.to_edge_list(),
        "ass_chain_i2": chain.to_dict(),
        "ass_chain_holds_from_start": chain.holds,
        "linear_resolution": has_linear_resolution_froberg(G),
    }
    if out["linear_resolution"]:
        table, _ = _linearity_table(edge_ideal(G), cfg)
        out["hs_linear"] = {f"i={i},k={k}": f for (i, k), f in sorted(table.items())}
        out["hs_all_linear"] = all(f is not False for f in table.values())
    return out


def run_theorem_suite(cfg: SweepConfig) -> SweepReport:
    """Every proved identity over the census, plus exploratory i > 1 measurements."""
    cfg = replace(cfg, mode="theorems").validate()
    report = _collect(cfg, _map(cfg, select_graphs(cfg)))
    freq: dict[str, list[int]] = {}
    for r in report.records:
        for c in r.get("exploratory", []):
            key = f"{c['check']} i={c['params']['i']}"
            hit = freq.setdefault(key, [0, 0])
            hit[0] += c["holds"]
            hit[1] += 1
    report.sections["exploratory"] = [
        {"check": key, "holds": h, "total": t} for key, (h, t) in sorted(freq.items())
    ]
    if cfg.families:
        report.sections["counterexample_graph"] = counterexample_verdicts(cfg)
    return report


def vnumber_question_probe(cfg: SweepConfig) -> SweepReport:
    """v(HS_i(I(G)^k)) against 2k + i - 1 for linear-resolution graphs (exploratory for i > 0)."""
    cfg = replace(cfg, mode="vnum").validate()
    report = _collect(cfg, _map(cfg, select_graphs(cfg)))
    freq: dict[int, dict] = {}
    for r in report.records:
        for e in r.get("vnumbers", []):
            slot = freq.setdefault(e["i"], {"match": 0, "mismatch": 0, "n/a": 0})
            slot["n/a" if e["match"] is None else "match" if e["match"] else "mismatch"] += 1
    report.sections["frequencies"] = [{"i": i, **freq[i]} for i in sorted(freq)]
    return report


def run_sweep(cfg: SweepConfig) -> SweepReport:
    return {
        "A": sweep_conjecture_A,
        "B": sweep_conjecture_B,
        "theorems": run_theorem_suite,
        "vnum": vnumber_question_probe,
    }[cfg.mode](cfg)


def census_report(n_max: int, connected: bool = False, no_isolated: bool = True) -> list[dict]:
    out = []
    for G in sorted(census(n_max, connected, no_isolated), key=_graph_key):
        rec = _base_record(G)
        rec["m"] = len(G.edges)
        rec["linear_resolution"] = has_linear_resolution_froberg(G) if G.edges else None
        out.append(rec)
    return out
