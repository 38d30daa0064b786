"""Monomials and monomial ideals over a fixed set of variables x1, ..., xn.

A monomial is stored as its exponent vector.  A :class:`MonomialIdeal` always
holds its minimal monomial generating set, sorted by degree and then by
decreasing lex order (x1 > x2 > ... > xn).
"""
from __future__ import annotations

import itertools
import re
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidArgumentError, ParseError

# Above this many candidate generators the divisibility tests switch to numpy.
_NUMPY_CUTOFF = 48
_CHUNK = 256


class Monomial(tuple):
    """Exponent vector ``(a_1, ..., a_n)`` standing for x1^a_1 * ... * xn^a_n."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        return super().__new__(cls, exponents)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, i: int, n: int) -> "Monomial":
        """The variable x_i (1-indexed)."""
        if not 1 <= i <= n:
            raise InvalidArgumentError(f"variable index {i} outside 1..{n}")
        return cls(1 if j == i - 1 else 0 for j in range(n))

    @classmethod
    def squarefree(cls, indices: Iterable[int], n: int) -> "Monomial":
        """x_F for a set F of 1-indexed variables."""
        idx = set(indices)
        return cls(1 if j + 1 in idx else 0 for j in range(n))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def deg(self, i: int) -> int:
        """deg_{x_i}, 1-indexed."""
        return self[i - 1]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j + 1 for j, e in enumerate(self) if e)

    @property
    def max_var(self) -> int:
        """Largest index in the support (0 for the unit monomial)."""
        for j in range(len(self) - 1, -1, -1):
            if self[j]:
                return j + 1
        return 0

    def _check(self, other: Sequence[int]) -> None:
        if len(other) != len(self):
            raise DimensionError(f"monomials in {len(self)} and {len(other)} variables")

    def divides(self, other: Sequence[int]) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def lcm(self, other: Sequence[int]) -> "Monomial":
        self._check(other)
        return Monomial(map(max, self, other))

    def gcd(self, other: Sequence[int]) -> "Monomial":
        self._check(other)
        return Monomial(map(min, self, other))

    def colon(self, other: Sequence[int]) -> "Monomial":
        """``self : other = lcm(self, other) / other``."""
        self._check(other)
        return Monomial(a - b if a > b else 0 for a, b in zip(self, other))

    def __mul__(self, other: Sequence[int]) -> "Monomial":  # type: ignore[override]
        self._check(other)
        return Monomial(a + b for a, b in zip(self, other))

    __rmul__ = __mul__

    def __truediv__(self, other: Sequence[int]) -> "Monomial":
        self._check(other)
        out = tuple(a - b for a, b in zip(self, other))
        if any(e < 0 for e in out):
            raise InvalidArgumentError(f"{format_monomial(other)} does not divide {self}")
        return Monomial(out)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(a * k for a in self)

    def sort_key(self) -> tuple:
        return (sum(self), tuple(-a for a in self))

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)})"


def format_monomial(exps: Sequence[int]) -> str:
    terms = []
    for j, e in enumerate(exps):
        if e == 1:
            terms.append(f"x{j + 1}")
        elif e > 1:
            terms.append(f"x{j + 1}^{e}")
    return "*".join(terms) if terms else "1"


def canonical_key(exps: Sequence[int]) -> tuple:
    return (sum(exps), tuple(-a for a in exps))


# ---------------------------------------------------------------------------
# kernels on plain exponent tuples


def _minimal_python(gens: list[tuple]) -> list[tuple]:
    by_degree: dict[int, list[tuple]] = {}
    for g in gens:
        by_degree.setdefault(sum(g), []).append(g)
    kept: list[tuple] = []
    for d in sorted(by_degree):
        fresh = [
            g for g in by_degree[d]
            if not any(all(a <= b for a, b in zip(h, g)) for h in kept)
        ]
        kept.extend(fresh)
    return kept


def _minimal_numpy(gens: list[tuple]) -> list[tuple]:
    arr = np.array(sorted(gens, key=sum), dtype=np.int64)
    deg = arr.sum(axis=1)
    keep = np.ones(len(arr), dtype=bool)
    for start in range(0, len(arr), _CHUNK):
        block = arr[start:start + _CHUNK]
        # only strictly lower degrees can divide a distinct generator
        lower = deg[None, :] < deg[start:start + _CHUNK, None]
        divides = (arr[None, :, :] <= block[:, None, :]).all(axis=2) & lower
        keep[start:start + _CHUNK] = ~divides.any(axis=1)
    return [tuple(int(x) for x in row) for row in arr[keep]]


def minimalize_exponents(gens: Iterable[Sequence[int]]) -> list[tuple]:
    """Minimal elements under divisibility, in canonical order."""
    uniq = list({tuple(g) for g in gens})
    if len(uniq) > _NUMPY_CUTOFF:
        kept = _minimal_numpy(uniq)
    else:
        kept = _minimal_python(uniq)
    kept.sort(key=canonical_key)
    return kept


def divisible_mask(targets: Sequence[Sequence[int]], gens: Sequence[Sequence[int]]) -> list[bool]:
    """For each target, whether some generator divides it."""
    if not gens:
        return [False] * len(targets)
    if len(targets) * len(gens) <= 4096:
        return [
            any(all(a <= b for a, b in zip(g, t)) for g in gens) for t in targets
        ]
    G = np.asarray(gens, dtype=np.int64)
    out: list[bool] = []
    for start in range(0, len(targets), _CHUNK):
        T = np.asarray(targets[start:start + _CHUNK], dtype=np.int64)
        hit = (G[None, :, :] <= T[:, None, :]).all(axis=2).any(axis=1)
        out.extend(bool(x) for x in hit)
    return out


# ---------------------------------------------------------------------------


class MonomialIdeal:
    """A monomial ideal, identified with its minimal generating set G(I).

    The zero ideal has no generators; the unit ideal is generated by 1.
    Instances are immutable and hashable.
    """

    __slots__ = ("n", "gens", "_hash")

    def __init__(self, gens: Iterable[Sequence[int]], n: int | None = None):
        gens = list(gens)
        if n is None:
            if not gens:
                raise InvalidArgumentError("ambient variable count needed for the zero ideal")
            n = len(gens[0])
        for g in gens:
            if len(g) != n:
                raise DimensionError(f"generator {tuple(g)} is not in {n} variables")
            if any(e < 0 for e in g):
                raise InvalidArgumentError(f"negative exponent in {tuple(g)}")
        self.n = n
        self.gens: tuple[Monomial, ...] = tuple(Monomial(g) for g in minimalize_exponents(gens))
        self._hash = hash((n, self.gens))

    # construction helpers
    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls([], n)

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls([Monomial.one(n)], n)

    @classmethod
    def variables(cls, indices: Iterable[int], n: int) -> "MonomialIdeal":
        return cls([Monomial.var(i, n) for i in indices], n)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "MonomialIdeal":
        return parse_ideal(text, n)

    # predicates
    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].degree == 0

    def is_equigenerated(self) -> bool:
        return len({g.degree for g in self.gens}) == 1

    @property
    def degrees(self) -> list[int]:
        return sorted({g.degree for g in self.gens})

    @property
    def min_degree(self) -> int:
        if not self.gens:
            raise InvalidArgumentError("the zero ideal has no generators")
        return self.gens[0].degree

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, u: Sequence[int]) -> bool:
        """Membership of a monomial."""
        if len(u) != self.n:
            raise DimensionError(f"monomial in {len(u)} variables, ideal in {self.n}")
        return any(all(a <= b for a, b in zip(g, u)) for g in self.gens)

    def contains(self, other: "MonomialIdeal") -> bool:
        """``other ⊆ self``."""
        self._check(other)
        return all(divisible_mask(other.gens, self.gens))

    def missing(self, other: "MonomialIdeal") -> list[Monomial]:
        """Generators of ``other`` that are not in ``self``."""
        self._check(other)
        mask = divisible_mask(other.gens, self.gens)
        return [g for g, ok in zip(other.gens, mask) if not ok]

    def _check(self, other: "MonomialIdeal") -> None:
        if other.n != self.n:
            raise DimensionError(f"ideals in {self.n} and {other.n} variables")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.gens == other.gens

    def __hash__(self) -> int:
        return self._hash

    # arithmetic
    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.gens + other.gens, self.n)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return ideal_power(self, k)

    def colon(self, other: "MonomialIdeal | Sequence[int]") -> "MonomialIdeal":
        if isinstance(other, MonomialIdeal):
            return ideal_colon_ideal(self, other)
        return colon_monomial(self, other)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_intersection(self, other)

    def degree_component(self, d: int) -> "MonomialIdeal":
        return degree_component(self, d)

    def __str__(self) -> str:
        return format_ideal(self)

    def __repr__(self) -> str:
        return f"MonomialIdeal({format_ideal(self)!r}, n={self.n})"


def minimalize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    return MonomialIdeal(gens, n)


def monomial_lcm(u: Sequence[int], v: Sequence[int]) -> Monomial:
    return Monomial(u).lcm(v)


def monomial_colon(u: Sequence[int], v: Sequence[int]) -> Monomial:
    return Monomial(u).colon(v)


def ideal_equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return I.contains(J) and J.contains(I)


def ideal_contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """``J ⊆ I``."""
    return I.contains(J)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._check(J)
    if not I.gens or not J.gens:
        return MonomialIdeal.zero(I.n)
    if len(I.gens) * len(J.gens) > 4096:
        A = np.asarray(I.gens, dtype=np.int64)
        B = np.asarray(J.gens, dtype=np.int64)
        prods = (A[:, None, :] + B[None, :, :]).reshape(-1, I.n)
        return MonomialIdeal(map(tuple, prods.tolist()), I.n)
    return MonomialIdeal(
        (tuple(a + b for a, b in zip(u, v)) for u in I.gens for v in J.gens), I.n
    )


def ideal_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise InvalidArgumentError("negative power")
    result = MonomialIdeal.unit(I.n)
    for _ in range(k):
        result = ideal_product(result, I)
    return result


def nonpure_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """Products of k generators involving at least two distinct generators.

    By convention the first non-pure power is I itself.
    """
    if k < 1:
        raise InvalidArgumentError("non-pure powers start at k = 1")
    if k == 1:
        return I
    gens = I.gens
    prods = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        if combo[0] == combo[-1]:
            continue
        prods.append(tuple(map(sum, zip(*(gens[c] for c in combo)))))
    return MonomialIdeal(prods, I.n)


def colon_monomial(I: MonomialIdeal, v: Sequence[int]) -> MonomialIdeal:
    if len(v) != I.n:
        raise DimensionError(f"monomial in {len(v)} variables, ideal in {I.n}")
    return MonomialIdeal(
        (tuple(a - b if a > b else 0 for a, b in zip(u, v)) for u in I.gens), I.n
    )


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    I._check(J)
    if not I.gens or not J.gens:
        return MonomialIdeal.zero(I.n)
    # a generator already in the other ideal dominates all lcms it takes part in
    in_J = divisible_mask(I.gens, J.gens)
    in_I = divisible_mask(J.gens, I.gens)
    kept = [u for u, hit in zip(I.gens, in_J) if hit] + [v for v, hit in zip(J.gens, in_I) if hit]
    A = [u for u, hit in zip(I.gens, in_J) if not hit]
    B = [v for v, hit in zip(J.gens, in_I) if not hit]
    if len(A) * len(B) > 4096:
        lcms = np.maximum(np.asarray(A, dtype=np.int64)[:, None, :], np.asarray(B, dtype=np.int64)[None, :, :])
        kept.extend(map(tuple, lcms.reshape(-1, I.n).tolist()))
    else:
        kept.extend(tuple(map(max, u, v)) for u in A for v in B)
    return MonomialIdeal(kept, I.n)


def ideal_colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """``I : J``, the intersection of ``I : v`` over the generators v of J."""
    I._check(J)
    if J.is_zero():
        raise InvalidArgumentError("colon by the zero ideal")
    result = None
    for v in J.gens:
        part = colon_monomial(I, v)
        result = part if result is None else ideal_intersection(result, part)
        if result.is_zero():
            break
    return result


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for c in combo:
            e[c] += 1
        out.append(tuple(e))
    return out


def degree_component(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """The ideal generated by the degree-d monomials of I."""
    if d < 0:
        raise InvalidArgumentError("negative degree")
    cache: dict[int, list[tuple]] = {}
    out = []
    for g in I.gens:
        gap = d - g.degree
        if gap < 0:
            continue
        if gap not in cache:
            cache[gap] = monomials_of_degree(I.n, gap)
        out.extend(tuple(a + b for a, b in zip(g, m)) for m in cache[gap])
    return MonomialIdeal(out, I.n)


def lcm_all(gens: Iterable[Sequence[int]], n: int) -> Monomial:
    out = [0] * n
    for g in gens:
        out = [max(a, b) for a, b in zip(out, g)]
    return Monomial(out)


# ---------------------------------------------------------------------------
# text format: ``x1*x2, x2^2*x3``

_TERM = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_monomial(text: str, n: int) -> Monomial:
    text = "".join(text.split())
    if text == "1":
        return Monomial.one(n)
    exps = [0] * n
    for factor in text.split("*"):
        m = _TERM.fullmatch(factor)
        if not m:
            raise ParseError(f"bad factor {factor!r} in term {text!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ParseError(f"variable x{i} outside x1..x{n}")
        exps[i - 1] += int(m.group(2) or 1)
    return Monomial(exps)


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    """Parse ``x1*x2, x2^2*x3``; ``0`` (or nothing) is the zero ideal.

    The variable count defaults to the largest index that occurs.
    """
    body = "".join(text.split())
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    terms = [] if body in ("", "0") else body.split(",")
    if n is None:
        idx = [int(i) for i in re.findall(r"x(\d+)", body)]
        if not idx:
            raise ParseError("cannot infer the number of variables; pass n")
        n = max(idx)
    return MonomialIdeal([parse_monomial(t, n) for t in terms], n)


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero():
        return "0"
    return ", ".join(format_monomial(g) for g in I.gens)
