"""Linear quotients: order search, set(u), and HS_i read off a quotient order."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import Partition
from .monomials import Monomial, MonomialIdeal, canonical_key

MAX_SEARCH_NODES = 1_000_000


def lex_key(u: Sequence[int]) -> tuple:
    """Sort key putting lex-larger monomials first (x1 > ... > xn)."""
    return tuple(-a for a in u)


def colon_set(prefix: Sequence[Monomial], u: Monomial) -> frozenset[int] | None:
    """set(u) for ``(prefix) : u`` when that colon is generated by variables, else None."""
    colons = MonomialIdeal((v.colon(u) for v in prefix), u.n) if prefix else None
    if colons is None:
        return frozenset()
    if any(g.degree != 1 for g in colons.gens):
        return None
    return frozenset(next(iter(g.support)) for g in colons.gens)


@dataclass(frozen=True)
class QuotientOrder:
    """Generators u_1, ..., u_m with set(u_j) = {i : x_i in (u_1..u_{j-1}) : u_j}."""

    generators: tuple[Monomial, ...]
    sets: tuple[frozenset, ...]

    @classmethod
    def from_order(cls, gens: Sequence[Sequence[int]]) -> "QuotientOrder":
        """Validate an order position by position; raises if some colon is not linear."""
        gens = tuple(Monomial(g) for g in gens)
        sets = []
        for j, u in enumerate(gens):
            s = colon_set(gens[:j], u)
            if s is None:
                raise InvalidArgumentError(f"colon at position {j + 1} ({u}) is not generated by variables")
            sets.append(s)
        return cls(gens, tuple(sets))

    @property
    def n(self) -> int:
        return self.generators[0].n

    def set_of(self, u: Sequence[int]) -> frozenset:
        return self.sets[self.generators.index(Monomial(u))]

    def verify(self) -> bool:
        for j, u in enumerate(self.generators):
            if colon_set(self.generators[:j], u) != self.sets[j]:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "generators": [list(u) for u in self.generators],
            "sets": [sorted(s) for s in self.sets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "QuotientOrder":
        order = cls.from_order(data["generators"])
        if [sorted(s) for s in order.sets] != [list(s) for s in data["sets"]]:
            raise InvalidArgumentError("serialized sets disagree with the colon ideals")
        return order


def _has_linear_first_syzygies(I: MonomialIdeal) -> bool:
    # every pairwise lcm must be a multiple of a degree d+1 pairwise lcm
    d = I.min_degree
    lcms = MonomialIdeal((u.lcm(v) for u, v in itertools.combinations(I.gens, 2)), I.n)
    return all(g.degree == d + 1 for g in lcms.gens)


def find_linear_quotients_order(I: MonomialIdeal, max_nodes: int = MAX_SEARCH_NODES) -> QuotientOrder | None:
    """A linear quotients order of G(I), or None when none exists.

    Decreasing lex is tried first.  Otherwise a depth-first search extends a
    prefix by any generator whose colon is linear; the colon only depends on
    the set of placed generators, so dead sets are remembered.
    """
    if I.is_zero():
        raise InvalidArgumentError("the zero ideal has no generators to order")
    if not I.is_equigenerated():
        raise InvalidArgumentError("linear quotients are only searched for equigenerated ideals")
    gens = sorted(I.gens, key=lex_key)
    try:
        return QuotientOrder.from_order(gens)
    except InvalidArgumentError:
        pass
    if len(gens) > 2 and not _has_linear_first_syzygies(I):
        return None

    m = len(gens)
    dead: set[int] = set()
    nodes = [0]
    order: list[int] = []
    sets: list[frozenset] = []

    def extend(placed: int) -> bool:
        if len(order) == m:
            return True
        if placed in dead:
            return False
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise ResourceLimitError(f"linear quotients search exceeded {max_nodes} nodes")
        prefix = [gens[t] for t in order]
        for c in range(m):
            if placed >> c & 1:
                continue
            s = colon_set(prefix, gens[c])
            if s is None:
                continue
            order.append(c)
            sets.append(s)
            if extend(placed | 1 << c):
                return True
            order.pop()
            sets.pop()
        dead.add(placed)
        return False

    if not extend(0):
        return None
    return QuotientOrder(tuple(gens[t] for t in order), tuple(sets))


def hs_via_quotients(order: QuotientOrder, i: int) -> MonomialIdeal:
    """HS_i(I) = (x_F u : u in G(I), F ⊆ set(u), |F| = i)."""
    if i < 0:
        raise InvalidArgumentError("homological index must be nonnegative")
    n = order.n
    out = []
    for u, s in zip(order.generators, order.sets):
        for F in itertools.combinations(sorted(s), i):
            out.append(u * Monomial.squarefree(F, n))
    return MonomialIdeal(out, n)


def lex_colon_sets(I: MonomialIdeal) -> dict[Monomial, frozenset]:
    """set(u) computed from colons in decreasing lex order (None entries when non-linear)."""
    gens = sorted(I.gens, key=lex_key)
    return {u: colon_set(gens[:j], u) for j, u in enumerate(gens)}


def set_initial_lexsegment(u: Sequence[int], k: int, I: MonomialIdeal | None = None) -> frozenset[int]:
    """{r : deg_{x_r}(u) <= k-1, 1 <= r <= max(u)-1} for u in G(I^k)."""
    u = Monomial(u)
    if I is not None and u.n != I.n:
        raise InvalidArgumentError("monomial and ideal live in different rings")
    return frozenset(r for r in range(1, u.max_var) if u.deg(r) <= k - 1)


def _block_degree(u: Monomial, block: tuple[int, int]) -> int:
    lo, hi = block
    return sum(u[lo - 1:hi])


def in_multipartite_power(u: Sequence[int], k: int, parts: Partition) -> bool:
    """u in G(I^k) iff deg u = 2k and every block carries degree at most k."""
    u = Monomial(u)
    return u.degree == 2 * k and all(_block_degree(u, b) <= k for b in parts.blocks)


def set_multipartite(u: Sequence[int], k: int, parts: Partition) -> frozenset[int]:
    """Closed-form set(u) for powers of a complete multipartite edge ideal, lex order."""
    u = Monomial(u)
    if u.n != parts.n or not in_multipartite_power(u, k, parts):
        raise InvalidArgumentError(f"{u} is not a minimal generator of I^{k}")
    top = u.max_var
    d = parts.block_of(top)
    t = parts.bounds
    # with deg u = 2k at most one block before d can reach degree k
    full = [dp for dp in range(1, d) if _block_degree(u, parts.blocks[dp - 1]) == k]
    if full:
        dp = full[0]
        lo, hi = parts.blocks[dp - 1]
        alpha = max(j for j in range(lo, hi + 1) if u.deg(j))
        out = set(range(1, t[dp - 1] + 1))
        out |= set(range(t[dp - 1] + 1, alpha))
        out |= set(range(t[dp] + 1, top))
        return frozenset(out)
    return frozenset(range(1, top))
