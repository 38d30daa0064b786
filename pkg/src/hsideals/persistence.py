"""Persistence of associated primes along homological shift ideals of powers."""
from __future__ import annotations

from dataclasses import dataclass, field

from .betti import DEFAULT_CHAR, hs_ideal
from .errors import InvalidArgumentError
from .graphs import SimpleGraph, edge_ideal
from .monomials import MonomialIdeal, format_ideal, ideal_power
from .primes import MonomialPrime, associated_primes, minimal_primes
from .reports import CheckReport, SeriesReport, compare_ideals


def ass_or_empty(I: MonomialIdeal) -> tuple[MonomialPrime, ...]:
    """Ass(I), taking Ass of the zero ideal to be empty."""
    if I.is_zero():
        return ()
    return associated_primes(I)


def min_or_empty(I: MonomialIdeal) -> tuple[MonomialPrime, ...]:
    if I.is_zero():
        return ()
    return minimal_primes(I)


def primes_to_lists(primes) -> list[list[int]]:
    return [list(P.variables) for P in primes]


def hs_of_power(I: MonomialIdeal, i: int, k: int, char: int = DEFAULT_CHAR) -> MonomialIdeal:
    return hs_ideal(ideal_power(I, k), i, char)


def colon_criterion(I: MonomialIdeal, i: int, k: int, char: int = DEFAULT_CHAR) -> CheckReport:
    """HS_i(I^{k+1}) : I = HS_i(I^k)."""
    if i < 0 or k < 1:
        raise InvalidArgumentError("need i >= 0 and k >= 1")
    left = hs_of_power(I, i, k + 1, char).colon(I)
    right = hs_of_power(I, i, k, char)
    return compare_ideals("colon-criterion", left, right, i=i, k=k)


@dataclass(frozen=True)
class ChainStep:
    """Inclusion Ass HS_i(I^k) ⊆ Ass HS_i(I^{k+1})."""

    k: int
    holds: bool
    lost: tuple[MonomialPrime, ...]
    below_start: bool

    def to_dict(self) -> dict:
        return {"k": self.k, "holds": self.holds, "lost": primes_to_lists(self.lost),
                "below_start": self.below_start}


@dataclass(frozen=True)
class PersistenceReport:
    descriptor: str
    i: int
    k_start: int
    k_max: int
    chain_start: int
    ass: dict = field(default_factory=dict)  # k -> tuple of primes
    steps: tuple[ChainStep, ...] = ()
    colon: dict = field(default_factory=dict)  # k -> bool

    @property
    def violations(self) -> list[ChainStep]:
        """Failed inclusions from the chain start on."""
        return [s for s in self.steps if not s.holds and not s.below_start]

    @property
    def below_start_drops(self) -> list[ChainStep]:
        return [s for s in self.steps if not s.holds and s.below_start]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> dict | None:
        v = self.violations
        if not v:
            return None
        return {"k": v[0].k, "prime": list(v[0].lost[0].variables)}

    def consistent(self) -> bool:
        """The colon criterion holding at every k forces the chain to hold."""
        in_range = [k for k in self.colon if k >= self.chain_start]
        if in_range and all(self.colon[k] for k in in_range):
            return all(s.holds for s in self.steps if s.k >= self.chain_start)
        return True

    def to_dict(self) -> dict:
        return {
            "ideal": self.descriptor,
            "i": self.i,
            "k_range": [self.k_start, self.k_max],
            "chain_start": self.chain_start,
            "ass": {str(k): primes_to_lists(v) for k, v in sorted(self.ass.items())},
            "steps": [s.to_dict() for s in self.steps],
            "colon": {str(k): v for k, v in sorted(self.colon.items())},
            "holds": self.holds,
            "first_violation": self.first_violation,
        }


def ass_chain(I: MonomialIdeal, i: int, k_start: int, k_max: int, char: int = DEFAULT_CHAR,
              with_colon: bool = True, descriptor: str | None = None) -> PersistenceReport:
    """Ass HS_i(I^k) for k in [k_start, k_max] and every consecutive inclusion.

    Only inclusions from k = max(1, i) on count as violations; earlier drops
    are kept and flagged as below the chain start.
    """
    if k_start < 1 or k_max < k_start:
        raise InvalidArgumentError("need 1 <= k_start <= k_max")
    chain_start = max(1, i)
    ass = {k: ass_or_empty(hs_of_power(I, i, k, char)) for k in range(k_start, k_max + 1)}
    steps = []
    for k in range(k_start, k_max):
        lost = tuple(P for P in ass[k] if P not in set(ass[k + 1]))
        steps.append(ChainStep(k, not lost, lost, k < chain_start))
    colon = {}
    if with_colon:
        colon = {k: colon_criterion(I, i, k, char).holds for k in range(k_start, k_max)}
    return PersistenceReport(
        descriptor if descriptor is not None else format_ideal(I),
        i, k_start, k_max, chain_start, ass, tuple(steps), colon,
    )


def hs2_closed_form_oracle(k: int) -> MonomialIdeal:
    """(x^p y^q : p + q = 2k, p and q odd) in three variables x, y, z."""
    if k < 1:
        raise InvalidArgumentError("k must be at least 1")
    return MonomialIdeal(((p, 2 * k - p, 0) for p in range(1, 2 * k, 2)), 3)


def min_stability(G: SimpleGraph, k_max: int, char: int = DEFAULT_CHAR) -> SeriesReport:
    """Min HS_1(I(G)^k) is the same set for every k in [1, k_max]."""
    I = edge_ideal(G)
    mins = {k: min_or_empty(hs_of_power(I, 1, k, char)) for k in range(1, k_max + 1)}
    witness = None
    for k in range(2, k_max + 1):
        if set(mins[k]) != set(mins[1]):
            witness = {"k": k, "expected": primes_to_lists(mins[1]), "found": primes_to_lists(mins[k])}
            break
    return SeriesReport("min-stability", witness is None, {"k_max": k_max},
                        {k: primes_to_lists(v) for k, v in mins.items()}, witness)


def height_monotonicity(G: SimpleGraph, i: int, k_max: int, char: int = DEFAULT_CHAR) -> SeriesReport:
    """height HS_i(I(G)^k) is non-increasing in k; zero ideals are skipped."""
    if i not in (0, 1):
        raise InvalidArgumentError("height monotonicity is only stated for i = 0, 1")
    I = edge_ideal(G)
    heights = {}
    for k in range(1, k_max + 1):
        mins = min_or_empty(hs_of_power(I, i, k, char))
        heights[k] = min((P.height for P in mins), default=None)
    witness = None
    seen = [(k, h) for k, h in sorted(heights.items()) if h is not None]
    for (k0, h0), (k1, h1) in zip(seen, seen[1:]):
        if h1 > h0:
            witness = {"k": k1, "previous": h0, "height": h1}
            break
    return SeriesReport("height-monotonicity", witness is None, {"i": i, "k_max": k_max}, heights, witness)
