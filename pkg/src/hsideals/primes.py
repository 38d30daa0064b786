"""Associated primes, irreducible decompositions and v-numbers of monomial ideals."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .monomials import Monomial, MonomialIdeal, minimalize_exponents

MAX_SPLIT_STATES = 2_000_000


@dataclass(frozen=True)
class MonomialPrime:
    """The prime (x_i : i in variables), variables 1-indexed."""

    variables: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(sorted(set(self.variables))))

    @classmethod
    def of(cls, *variables: int) -> "MonomialPrime":
        return cls(tuple(variables))

    def ideal(self, n: int) -> MonomialIdeal:
        return MonomialIdeal.variables(self.variables, n)

    @property
    def height(self) -> int:
        return len(self.variables)

    def sort_key(self) -> tuple:
        return (len(self.variables), self.variables)

    def issubset(self, other: "MonomialPrime") -> bool:
        return set(self.variables) <= set(other.variables)

    def __str__(self) -> str:
        return "(" + ",".join(f"x{i}" for i in self.variables) + ")"


def sort_primes(primes) -> list[MonomialPrime]:
    return sorted(set(primes), key=MonomialPrime.sort_key)


@dataclass(frozen=True)
class IrreducibleComponent:
    """(x_i^{b_i} : i in the support of b), stored as the exponent vector b."""

    bounds: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j + 1 for j, b in enumerate(self.bounds) if b)

    def ideal(self) -> MonomialIdeal:
        n = len(self.bounds)
        return MonomialIdeal(
            (tuple(b if j == i else 0 for j in range(n)) for i, b in enumerate(self.bounds) if b), n
        )

    def contains(self, other: "IrreducibleComponent") -> bool:
        """other ⊆ self."""
        return _contains(self.bounds, other.bounds)

    def __str__(self) -> str:
        return "(" + ", ".join(
            f"x{j + 1}" if b == 1 else f"x{j + 1}^{b}" for j, b in enumerate(self.bounds) if b
        ) + ")"


def _contains(big: tuple, small: tuple) -> bool:
    # every generator x_j^{c_j} of the small component lies in the big one
    return all(c == 0 or (b != 0 and b <= c) for b, c in zip(big, small))


def monomial_localization(I: MonomialIdeal, P: MonomialPrime) -> MonomialIdeal:
    """Set every variable outside P to 1."""
    keep = set(P.variables)
    return MonomialIdeal(
        (tuple(e if j + 1 in keep else 0 for j, e in enumerate(g)) for g in I.gens), I.n
    )


def _split(gens: frozenset, n: int, memo: dict, budget: list) -> frozenset:
    if gens in memo:
        return memo[gens]
    budget[0] -= 1
    if budget[0] < 0:
        raise ResourceLimitError("irreducible decomposition exceeded its state budget")
    pick = None
    for g in sorted(gens, key=lambda g: (sum(1 for e in g if e), sum(g), g)):
        if sum(1 for e in g if e) >= 2:
            pick = g
            break
    if pick is None:
        bounds = [0] * n
        for g in gens:
            j = next(j for j, e in enumerate(g) if e)
            bounds[j] = g[j]
        result = frozenset([tuple(bounds)])
    else:
        j = next(j for j, e in enumerate(pick) if e)
        power = tuple(pick[j] if t == j else 0 for t in range(n))
        rest = tuple(0 if t == j else e for t, e in enumerate(pick))
        others = gens - {pick}
        left = frozenset(minimalize_exponents(others | {power}))
        right = frozenset(minimalize_exponents(others | {rest}))
        result = _split(left, n, memo, budget) | _split(right, n, memo, budget)
    memo[gens] = result
    return result


@lru_cache(maxsize=2048)
def irreducible_decomposition(I: MonomialIdeal) -> tuple[IrreducibleComponent, ...]:
    """Irredundant irreducible components, found by splitting generators.

    A generator m = x_j^a * r with r coprime to x_j gives
    I = (I', x_j^a) ∩ (I', r) where I' holds the other generators.
    """
    if I.is_zero() or I.is_unit():
        raise InvalidArgumentError("decomposition needs a nonzero proper ideal")
    comps = _split(frozenset(tuple(g) for g in I.gens), I.n, {}, [MAX_SPLIT_STATES])
    ordered = sorted(comps, key=lambda b: (sum(1 for x in b if x), b))
    kept: list[tuple] = []
    for b in ordered:
        # drop b when some other component is contained in it
        if any(_contains(b, c) for c in kept):
            continue
        kept = [c for c in kept if not _contains(c, b)]
        kept.append(b)
    kept.sort(key=lambda b: (sum(1 for x in b if x), tuple(-x for x in b)))
    return tuple(IrreducibleComponent(b) for b in kept)


def _prime_from_support(b) -> MonomialPrime:
    return MonomialPrime(tuple(j + 1 for j, x in enumerate(b) if x))


def _is_witness(G: np.ndarray, f: np.ndarray, cols: list[int]) -> bool:
    # I : f = P  iff  f not in I, x_j f in I for j in P, and each generator
    # of I exceeds f in some coordinate of P (so I : f is inside P)
    if (G <= f).all(axis=1).any():
        return False
    if not (G[:, cols] > f[cols]).any(axis=1).all():
        return False
    for j in cols:
        g = f.copy()
        g[j] += 1
        if not (G <= g).all(axis=1).any():
            return False
    return True


def witness_for(I: MonomialIdeal, P: MonomialPrime) -> Monomial | None:
    """A monomial f of least degree with I : f = P, if one exists.

    Every witness is divisible by a generator of I : P that is itself a
    witness, so only those generators need checking.
    """
    if I.is_zero():
        return None
    G = np.asarray(I.gens, dtype=np.int64)
    cols = [j - 1 for j in P.variables]
    # generators come in canonical order, so the first hit has least degree
    for f in I.colon(P.ideal(I.n)).gens:
        if _is_witness(G, np.asarray(f, dtype=np.int64), cols):
            return f
    return None


@lru_cache(maxsize=2048)
def associated_primes(I: MonomialIdeal, verify: bool = True) -> tuple[MonomialPrime, ...]:
    """Supports of the irreducible components, each confirmed by a witness I : f = P."""
    comps = irreducible_decomposition(I)
    primes = sort_primes(_prime_from_support(c.bounds) for c in comps)
    if verify:
        G = np.asarray(I.gens, dtype=np.int64)
        top = int(G.max()) + 1
        for P in primes:
            if not _corner_witness(G, comps, P, top) and witness_for(I, P) is None:
                raise AssertionError(f"{P} from the decomposition of {I} has no colon witness")
    return tuple(primes)


def _corner_witness(G: np.ndarray, comps, P: MonomialPrime, top: int) -> bool:
    # x^(b-1) on P times high powers elsewhere; any hit is a genuine witness
    cols = [j - 1 for j in P.variables]
    for c in comps:
        if c.support != P.variables:
            continue
        f = np.full(G.shape[1], top, dtype=np.int64)
        for j in cols:
            f[j] = c.bounds[j] - 1
        if _is_witness(G, f, cols):
            return True
    return False


def _survives_localization(I: MonomialIdeal, P: MonomialPrime) -> bool:
    local = monomial_localization(I, P)
    return not local.is_unit() and local.colon(P.ideal(I.n)) != local


def associated_primes_by_witness(I: MonomialIdeal) -> tuple[MonomialPrime, ...]:
    """Ass(I) by testing every prime generated by variables for a colon witness."""
    if I.is_zero() or I.is_unit():
        raise InvalidArgumentError("associated primes need a nonzero proper ideal")
    found = []
    for r in range(1, I.n + 1):
        for subset in itertools.combinations(range(1, I.n + 1), r):
            P = MonomialPrime(subset)
            if witness_for(I, P) is not None:
                found.append(P)
    return tuple(sort_primes(found))


def associated_primes_by_localization(I: MonomialIdeal) -> tuple[MonomialPrime, ...]:
    """P in Ass(I) iff the maximal ideal of S(P) is associated to I(P), i.e. I(P) : P != I(P)."""
    if I.is_zero() or I.is_unit():
        raise InvalidArgumentError("associated primes need a nonzero proper ideal")
    found = []
    for r in range(1, I.n + 1):
        for subset in itertools.combinations(range(1, I.n + 1), r):
            P = MonomialPrime(subset)
            if _survives_localization(I, P):
                found.append(P)
    return tuple(sort_primes(found))


def minimal_primes(I: MonomialIdeal) -> tuple[MonomialPrime, ...]:
    ass = associated_primes(I)
    return tuple(P for P in ass if not any(Q != P and Q.issubset(P) for Q in ass))


def height(I: MonomialIdeal) -> int:
    return min(P.height for P in minimal_primes(I))


def v_number_at(I: MonomialIdeal, P: MonomialPrime) -> int:
    f = witness_for(I, P)
    if f is None:
        raise InvalidArgumentError(f"{P} is not an associated prime of {I}")
    return f.degree


def v_number(I: MonomialIdeal) -> int:
    return min(v_number_at(I, P) for P in associated_primes(I))
