"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
"acceptance criteria" section of the terminal summary.
"""
import random
import time

import pytest

from hsideals import betti, primes
from hsideals.betti import has_linear_resolution, hs_ideal
from hsideals.graphs import SimpleGraph, census, edge_ideal, has_linear_resolution_froberg
from hsideals.harness import SweepConfig, sweep_conjecture_A, sweep_conjecture_B
from hsideals.linquot import find_linear_quotients_order, hs_via_quotients
from hsideals.monomials import MonomialIdeal, ideal_power, parse_ideal
from hsideals.persistence import (
    ass_chain,
    ass_or_empty,
    colon_criterion,
    height_monotonicity,
    hs2_closed_form_oracle,
    hs_of_power,
    min_stability,
)
from hsideals.primes import MonomialPrime, v_number
from hsideals.structure import (
    check_hs1_decomposition,
    check_module_structure,
    check_ratliff_nonpure,
    hs1_pairwise_lcm,
)

K_MAX = 3


@pytest.fixture(autouse=True)
def cold_caches():
    # each criterion is timed from scratch
    betti.betti_table.cache_clear()
    primes.irreducible_decomposition.cache_clear()
    primes.associated_primes.cache_clear()


def census_powers(n_max=5, k_max=K_MAX):
    for G in census(n_max):
        I = edge_ideal(G)
        for k in range(1, k_max + 1):
            yield G, k, ideal_power(I, k)


def random_ideals(count, seed=20240611):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 5)
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 6))]
        gens = [g for g in gens if any(g)]
        if gens:
            out.append(MonomialIdeal(gens, n))
    return out


def test_criterion_1_pairwise_lcm(criterion):
    t = time.perf_counter()
    bad = [I for I in random_ideals(200) if hs1_pairwise_lcm(I) != hs_ideal(I, 1)]
    bad += [(G, k) for G, k, J in census_powers() if hs1_pairwise_lcm(J) != hs_ideal(J, 1)]
    secs = time.perf_counter() - t
    ok = not bad and secs < 120
    assert criterion(1, ok, f"HS_1 = pairwise lcms on 200 random ideals and census powers; "
                            f"{len(bad)} mismatches, {secs:.1f}s (limit 120s)")


def test_criterion_2_eisenbud_terai(criterion):
    t = time.perf_counter()
    checked, bad = 0, []
    for G, k, J in census_powers():
        order = find_linear_quotients_order(J)
        if order is None:
            continue
        for i in range(0, J.n + 1):
            checked += 1
            if hs_via_quotients(order, i) != hs_ideal(J, i):
                bad.append((G, k, i))
    secs = time.perf_counter() - t
    ok = not bad and checked > 0 and secs < 300
    assert criterion(2, ok, f"quotient formula = Betti HS_i on {checked} (power, i) pairs; "
                            f"{len(bad)} mismatches, {secs:.1f}s (limit 300s)")


def test_criterion_3_decomposition_and_module_structure(criterion):
    t = time.perf_counter()
    bad = []
    for G in census(5):
        for k in range(1, K_MAX + 1):
            if not check_hs1_decomposition(G, k).holds:
                bad.append(("decomposition", G, k))
            if not check_module_structure(G, k).holds:
                bad.append(("module", G, k))
    secs = time.perf_counter() - t
    ok = not bad and secs < 300
    assert criterion(3, ok, f"HS_1 decomposition and module structure over census n <= 5, k <= 3; "
                            f"{len(bad)} violations, {secs:.1f}s (limit 300s)")


def test_criterion_4_ratliff(criterion):
    unexpected = []
    graphs = census(5)
    for G in graphs:
        if check_ratliff_nonpure(G, 1).holds:
            unexpected.append((G, 1))
        for k in (2, 3):
            if not check_ratliff_nonpure(G, k).holds:
                unexpected.append((G, k))
    ok = not unexpected and all(G.edges for G in graphs)
    assert criterion(4, ok, f"non-pure colon identity holds for k = 2, 3 and fails at k = 1 on "
                            f"{len(graphs)} graphs; {len(unexpected)} unexpected outcomes")


def test_criterion_5_three_generator_fixture(criterion):
    I = parse_ideal("x1^2, x2^2, x1*x2*x3")
    x, y, xy = MonomialPrime.of(1), MonomialPrime.of(2), MonomialPrime.of(1, 2)
    closed = [hs_of_power(I, 2, k) == hs2_closed_form_oracle(k) for k in range(1, 5)]
    ass1 = set(ass_or_empty(hs_of_power(I, 2, 1)))
    ass23 = [set(ass_or_empty(hs_of_power(I, 2, k))) for k in (2, 3)]
    colon = [colon_criterion(I, 2, k).holds for k in (1, 2, 3)]
    parts = {
        "closed form k<=4": all(closed),
        "Ass HS_2(I) = {(x),(y)}": ass1 == {x, y},
        "Ass HS_2(I^k) = {(x),(y),(x,y)} k=2,3": all(a == {x, y, xy} for a in ass23),
        "colon criterion false k<=3": not any(colon),
    }
    ok = all(parts.values())
    detail = "; ".join(f"{name}: {'yes' if v else 'no'}" for name, v in parts.items())
    if not ok:
        detail += (f" [computed HS_2(I) = {hs_of_power(I, 2, 1)}, "
                   f"closed form gives {hs2_closed_form_oracle(1)}]")
    assert criterion(5, ok, detail)


def test_criterion_6_six_edge_graph(criterion):
    G = SimpleGraph.from_edges(6, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6)])
    I = edge_ideal(G)
    ass1 = set(ass_or_empty(hs_of_power(I, 2, 1)))
    ass2 = set(ass_or_empty(hs_of_power(I, 2, 2)))
    wanted = {MonomialPrime.of(j) for j in (1, 2, 3)}
    ok = wanted <= ass1 - ass2
    assert criterion(6, ok, f"(x1), (x2), (x3) in Ass HS_2(I) minus Ass HS_2(I^2): {ok}")


def test_criterion_7_conjecture_A(criterion):
    t = time.perf_counter()
    full = sweep_conjecture_A(SweepConfig())
    full_secs = time.perf_counter() - t
    t = time.perf_counter()
    spot = sweep_conjecture_A(SweepConfig(n_max=6, only_n=6, sample=100, seed=0))
    spot_secs = time.perf_counter() - t
    ok = (full.exit_code() == 0 and full_secs < 1800 and spot.exit_code() == 0
          and len(spot.records) == 100)
    assert criterion(7, ok, f"Ass chains from max(1,i): census n <= 5 {full.summary['violations']} violations "
                            f"over {len(full.records)} graphs in {full_secs:.1f}s (limit 1800s); "
                            f"n = 6 sample {spot.summary['violations']} violations, "
                            f"{len(spot.skipped)} skipped, over {len(spot.records)} graphs in {spot_secs:.1f}s")


def test_criterion_8_conjecture_B_families(criterion):
    r = sweep_conjecture_B(SweepConfig())
    hs1_linear = [
        rec["graph6"] for rec in r.records if rec["status"] == "done"
        and any(row["i"] == 1 and row["linear"] is False for row in rec["rows"])
    ]
    fams = r.sections["families"]
    kinds = {f["family"].split("(")[0].split("[")[0] for f in fams}
    ok = (r.exit_code() == 0 and not hs1_linear and kinds == {"multipartite", "lexsegment", "borel"}
          and all(f.get("all_linear") for f in fams))
    assert criterion(8, ok, f"HS_1 linear on {sum(rec['status'] == 'done' for rec in r.records)} "
                            f"linear-resolution graphs; {len(fams)} family ideals all linear up to proj dim; "
                            f"{r.summary['violations']} violations")


def test_criterion_9_froberg(criterion):
    graphs = [G for G in census(5) if G.edges]
    bad = [G for G in graphs if has_linear_resolution_froberg(G) != has_linear_resolution(edge_ideal(G))]
    assert criterion(9, not bad, f"complement chordality = Betti linearity on {len(graphs)} graphs; "
                                 f"{len(bad)} disagreements")


def test_criterion_10_persistence_logic(criterion):
    bad = []
    for G in census(5):
        I = edge_ideal(G)
        for i in (0, 1):
            for k in range(1, K_MAX + 1):
                if not colon_criterion(I, i, k).holds:
                    bad.append(("colon", G, i, k))
            if not height_monotonicity(G, i, K_MAX).holds:
                bad.append(("height", G, i))
            if not ass_chain(I, i, 1, K_MAX + 1).consistent():
                bad.append(("consistency", G, i))
        if not min_stability(G, K_MAX).holds:
            bad.append(("min", G))
    assert criterion(10, not bad, f"colon criterion i = 0, 1, Min HS_1 stability and height monotonicity "
                                  f"over census n <= 5; {len(bad)} violations")


def test_criterion_11_v_number(criterion):
    rows, bad = 0, []
    for G in census(4):
        if not has_linear_resolution_froberg(G):
            continue
        for k in range(1, K_MAX + 1):
            rows += 1
            v = v_number(hs_ideal(ideal_power(edge_ideal(G), k), 0))
            if v != 2 * k - 1:
                bad.append((G, k, v))
    assert criterion(11, not bad and rows > 0, f"v(I(G)^k) = 2k - 1 on {rows} (graph, k) pairs; "
                                               f"{len(bad)} mismatches")


def test_criterion_12_determinism(criterion):
    one = sweep_conjecture_A(SweepConfig(jobs=1))
    eight = sweep_conjecture_A(SweepConfig(jobs=8))
    same = {fmt: one.render(fmt).encode() == eight.render(fmt).encode() for fmt in ("json", "csv", "text")}
    assert criterion(12, all(same.values()), "sweep A with 1 and 8 workers byte-identical in "
                                             + ", ".join(f"{f}: {v}" for f, v in same.items()))
