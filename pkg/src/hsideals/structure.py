"""First homological shift ideals of edge ideal powers and related identities."""
from __future__ import annotations

import itertools

from .betti import DEFAULT_CHAR, hs_ideal
from .errors import InvalidArgumentError
from .graphs import SimpleGraph, edge_ideal
from .monomials import Monomial, MonomialIdeal, ideal_power, nonpure_power
from .reports import CheckReport, check_containment, compare_ideals


def hs1_pairwise_lcm(I: MonomialIdeal) -> MonomialIdeal:
    """HS_1(I) = (lcm(u, v) : u != v in G(I)); zero for principal ideals."""
    return MonomialIdeal((u.lcm(v) for u, v in itertools.combinations(I.gens, 2)), I.n)


def lin_part(I: MonomialIdeal, i: int, char: int = DEFAULT_CHAR) -> MonomialIdeal:
    """Degree d+i component of HS_i(I) for I generated in degree d."""
    if I.is_zero():
        return I
    if not I.is_equigenerated():
        raise InvalidArgumentError("the linear part needs an equigenerated ideal")
    return hs_ideal(I, i, char).degree_component(I.min_degree + i)


def lin1_edge_formula(G: SimpleGraph, k: int) -> MonomialIdeal:
    """(e_1...e_k x_p : x_p (e_1 / x_q) in I(G), p != q), e_1 ranging over the factors."""
    if k < 1:
        raise InvalidArgumentError("k must be at least 1")
    n = G.n
    edges = G.sorted_edges()
    gens = []
    for factors in itertools.combinations_with_replacement(edges, k):
        w = Monomial.one(n)
        for e in factors:
            w = w * Monomial.squarefree(e, n)
        for a, b in set(factors):
            for q, s in ((a, b), (b, a)):
                # e_1 / x_q = x_s; need an edge s-p with p != q
                for p in G.neighbors(s):
                    if p != q:
                        gens.append(w * Monomial.var(p, n))
    return MonomialIdeal(gens, n)


def check_hs1_decomposition(G: SimpleGraph, k: int, char: int = DEFAULT_CHAR) -> CheckReport:
    """HS_1(I^k) = Lin_1(I^k) + I^<k+1>, each summand first checked to lie in HS_1(I^k)."""
    I = edge_ideal(G)
    Ik = ideal_power(I, k)
    hs1 = hs_ideal(Ik, 1, char)
    lin = lin_part(Ik, 1, char)
    nonpure = nonpure_power(I, k + 1)
    params = {"k": k}
    for label, part in (("lin", lin), ("nonpure", nonpure)):
        sub = check_containment("hs1-decomposition", hs1, part, **params)
        if not sub.holds:
            return CheckReport(sub.check, False, params, hs1, part, sub.missing_from_left, (),
                               note=f"{label} summand not contained in HS_1")
    return compare_ideals("hs1-decomposition", hs1, lin + nonpure, **params)


def check_module_structure(G: SimpleGraph, k: int, i: int = 1, char: int = DEFAULT_CHAR) -> CheckReport:
    """HS_i(I^{k+1}) = I * HS_i(I^k).  Proven for i = 1; measured only for i > 1."""
    I = edge_ideal(G)
    left = hs_ideal(ideal_power(I, k + 1), i, char)
    right = I * hs_ideal(ideal_power(I, k), i, char)
    note = "" if i <= 1 else "exploratory"
    return compare_ideals("module-structure", left, right, note=note, i=i, k=k)


def check_ratliff_nonpure(G: SimpleGraph, k: int) -> CheckReport:
    """I^<k+1> : I = I^<k>.  Fails at k = 1 for any edge e since e^2 is not in I^<2>."""
    if k < 1:
        raise InvalidArgumentError("k must be at least 1")
    return check_ratliff_general(edge_ideal(G), k)


def check_ratliff_general(I: MonomialIdeal, k: int) -> CheckReport:
    """The same colon identity for an arbitrary monomial ideal (exploratory)."""
    if I.is_zero():
        zero = MonomialIdeal.zero(I.n)
        return compare_ideals("ratliff-nonpure", zero, zero, note="zero ideal", k=k)
    left = nonpure_power(I, k + 1).colon(I)
    right = nonpure_power(I, k)
    return compare_ideals("ratliff-nonpure", left, right, k=k)
