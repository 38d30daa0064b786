import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsideals.betti import (
    BettiTable,
    betti_table,
    candidate_multidegrees,
    characteristic_discrepancies,
    has_linear_resolution,
    hs_ideal,
    proj_dim,
    rank_mod_p,
    reduced_homology,
    regularity,
)
from hsideals.errors import InvalidArgumentError, ResourceLimitError
from hsideals.graphs import SimpleGraph, census, edge_ideal
from hsideals.monomials import Monomial, MonomialIdeal, ideal_contains, ideal_power, parse_ideal

import oracles

TRIANGLE = parse_ideal("x1*x2, x1*x3, x2*x3")


def as_plain(table):
    return {(i, tuple(a)): r for (i, a), r in table.entries.items()}


def test_candidate_multidegrees():
    got = candidate_multidegrees(parse_ideal("x1*x2, x2*x3"))
    assert set(got) == {Monomial((1, 1, 0)), Monomial((0, 1, 1)), Monomial((1, 1, 1))}
    assert candidate_multidegrees(parse_ideal("x1^2*x3")) == [Monomial((2, 0, 1))]
    assert len(candidate_multidegrees(parse_ideal("x1, x2, x3"))) == 7
    with pytest.raises(InvalidArgumentError):
        candidate_multidegrees(MonomialIdeal.zero(2))


def test_triangle_table():
    t = betti_table(TRIANGLE)
    assert as_plain(t) == {
        (0, (1, 1, 0)): 1, (0, (1, 0, 1)): 1, (0, (0, 1, 1)): 1, (1, (1, 1, 1)): 2,
    }
    assert t.proj_dim == 1
    assert regularity(TRIANGLE) == 2


def test_small_tables():
    assert as_plain(betti_table(parse_ideal("x1^2*x2"))) == {(0, (2, 1)): 1}
    assert as_plain(betti_table(parse_ideal("x1, x2"))) == {(0, (1, 0)): 1, (0, (0, 1)): 1, (1, (1, 1)): 1}
    assert proj_dim(parse_ideal("x1, x2, x3")) == 2
    assert proj_dim(parse_ideal("x1*x2")) == 0
    assert regularity(parse_ideal("x1^3*x2")) == 4


def test_hs_examples():
    I = parse_ideal("x1^2, x1*x2*x3, x3^4")
    assert hs_ideal(I, 0) == I
    assert hs_ideal(TRIANGLE, 1) == parse_ideal("x1*x2*x3")
    assert hs_ideal(TRIANGLE, 2).is_zero()
    assert hs_ideal(MonomialIdeal.zero(3), 1).is_zero()


def test_hs2_of_three_generator_ideal():
    # Taylor complex of x^2, y^2, xyz is minimal: its 2-face sits at x^2 y^2 z
    I = parse_ideal("x1^2, x2^2, x1*x2*x3")
    assert hs_ideal(I, 2) == parse_ideal("x1^2*x2^2*x3")
    assert hs_ideal(I, 2) == MonomialIdeal(oracles.taylor_hs(I.gens, 2), 3)


def test_linearity_examples():
    assert not has_linear_resolution(edge_ideal(SimpleGraph.cycle(5)))
    assert has_linear_resolution(edge_ideal(SimpleGraph.cycle(4)))
    assert has_linear_resolution(parse_ideal("x1"))
    assert not has_linear_resolution(parse_ideal("x1, x2^2"))
    with pytest.raises(InvalidArgumentError):
        has_linear_resolution(MonomialIdeal.zero(2))


def test_generator_bound():
    I = ideal_power(edge_ideal(SimpleGraph.complete(4)), 2)
    with pytest.raises(ResourceLimitError):
        betti_table(I, max_generators=5)


def test_reduced_homology_conventions():
    assert reduced_homology([0], 2) == {-1: 1}
    assert reduced_homology([], 2) == {}
    # boundary of a triangle is a circle; two points are S^0
    assert reduced_homology([0b011, 0b101, 0b110], 32003) == {1: 1}
    assert reduced_homology([0b01, 0b10], 32003) == {0: 1}
    assert reduced_homology([0b111], 32003) == {}


def test_homology_of_projective_plane_depends_on_char():
    # 6-vertex triangulation of RP^2: H~_1 = Z/2
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    facets = [sum(1 << (v - 1) for v in t) for t in tris]
    assert reduced_homology(facets, 2) == {1: 1, 2: 1}
    assert reduced_homology(facets, 32003) == {}


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5),
       st.sampled_from([2, 3, 7, 32003]))
def test_rank_matches_sympy(rows, p):
    assert rank_mod_p(rows, p) == oracles.rank_gf(rows, p)


def test_json_roundtrip():
    t = betti_table(TRIANGLE)
    data = json.loads(t.to_json())
    assert data["char"] == 32003
    assert data["entries"][-1] == {"i": 1, "multidegree": [1, 1, 1], "rank": 2}
    keys = [(e["i"], e["multidegree"]) for e in data["entries"]]
    assert keys == sorted(keys)
    assert BettiTable.from_dict(data) == t


def test_text_table():
    assert betti_table(TRIANGLE).format_text().splitlines()[1].split() == ["2:", "3", "2"]


@st.composite
def small_ideals(draw, n_max=5, max_gens=6, emax=3):
    n = draw(st.integers(1, n_max))
    gens = draw(st.lists(st.tuples(*[st.integers(0, emax)] * n), min_size=1, max_size=max_gens))
    gens = [g for g in gens if any(g)] or [tuple([1] * n)]
    return MonomialIdeal(gens, n)


@settings(max_examples=120, deadline=None)
@given(small_ideals())
def test_table_matches_taylor_oracle(I):
    assert as_plain(betti_table(I)) == oracles.taylor_betti(I.gens)


@settings(max_examples=60, deadline=None)
@given(small_ideals(n_max=4, max_gens=5))
def test_table_matches_taylor_oracle_char2(I):
    assert as_plain(betti_table(I, 2)) == oracles.taylor_betti(I.gens, 2)


@settings(max_examples=100, deadline=None)
@given(small_ideals())
def test_generators_are_degree_zero_entries(I):
    t = betti_table(I)
    assert t.ranks(0) == {g: 1 for g in I.gens}


def test_hs_chain_on_census_powers():
    for G in census(4):
        for k in (1, 2, 3):
            J = ideal_power(edge_ideal(G), k)
            pd = proj_dim(J)
            for i in range(2, pd + 1):
                assert ideal_contains(hs_ideal(J, i - 1), hs_ideal(J, i))


def test_characteristics_agree_on_census():
    for G in census(5):
        for k in (1, 2, 3):
            assert characteristic_discrepancies(ideal_power(edge_ideal(G), k)) == []
