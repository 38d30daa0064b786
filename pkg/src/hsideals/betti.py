"""Multigraded Betti numbers of monomial ideals.

For a multidegree a, the upper Koszul complex K^a(I) is the simplicial complex
of squarefree W <= a with x^(a-W) in I, and

    beta_{i,a}(I) = dim H~_{i-1}(K^a(I); K).

Only lcms of sets of generators can carry nonzero Betti numbers, so those are
the only fibers evaluated.  Faces are bitmasks over the variables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .monomials import Monomial, MonomialIdeal, canonical_key

DEFAULT_CHAR = 32003
CHECK_CHARS = (32003, 2)
MAX_GENERATORS = 4096
MAX_MULTIDEGREES = 500_000
_CHUNK = 512


# ---------------------------------------------------------------------------
# linear algebra over GF(p)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix reduced mod a prime p (dense elimination)."""
    if p == 2:
        return _rank_gf2(rows)
    mat = [[x % p for x in r] for r in rows]
    mat = [r for r in mat if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][c], p - 2, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(rank + 1, len(mat)):
            f = mat[i][c]
            if f:
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _rank_gf2(rows: list[list[int]]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        v = 0
        for j, x in enumerate(r):
            if x & 1:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def faces_of(facets: list[int]) -> set[int]:
    faces = set()
    for f in facets:
        s = f
        while True:
            faces.add(s)
            if s == 0:
                break
            s = (s - 1) & f
    return faces


def reduced_homology(facets: list[int], p: int) -> dict[int, int]:
    """Nonzero reduced homology ranks {q: dim H~_q} of the complex generated by facets.

    The complex {∅} has H~_{-1} of rank 1.  An empty facet list is the void
    complex, which has no homology at all.
    """
    if not facets:
        return {}
    by_dim: dict[int, list[int]] = {}
    for face in faces_of(facets):
        by_dim.setdefault(_popcount(face) - 1, []).append(face)
    for faces in by_dim.values():
        faces.sort()
    top = max(by_dim)

    def boundary_rank(q: int) -> int:
        # rank of d_q : C_q -> C_{q-1}
        if q <= -1 or q > top or q - 1 not in by_dim:
            return 0
        rows = {f: idx for idx, f in enumerate(by_dim[q - 1])}
        mat = [[0] * len(by_dim[q]) for _ in rows]
        for col, face in enumerate(by_dim[q]):
            sign, bit, rest = 1, 0, face
            while rest:
                if rest & 1:
                    mat[rows[face & ~(1 << bit)]][col] = sign
                    sign = -sign
                rest >>= 1
                bit += 1
        return rank_mod_p(mat, p)

    ranks = {q: boundary_rank(q) for q in range(0, top + 1)}
    out = {}
    for q in range(-1, top + 1):
        h = len(by_dim.get(q, [])) - ranks.get(q, 0) - ranks.get(q + 1, 0)
        if h:
            out[q] = h
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Nonzero multigraded Betti numbers beta_{i,a} of a monomial ideal."""

    n: int
    char: int
    entries: dict = field(default_factory=dict)  # (i, Monomial) -> rank

    def ranks(self, i: int) -> dict[Monomial, int]:
        return {a: r for (j, a), r in self.entries.items() if j == i}

    def multidegrees(self, i: int) -> list[Monomial]:
        return sorted((a for (j, a) in self.entries if j == i), key=canonical_key)

    @property
    def proj_dim(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarse Betti numbers beta_{i, i+j} keyed by (i, j)."""
        out: dict[tuple[int, int], int] = {}
        for (i, a), r in self.entries.items():
            key = (i, a.degree - i)
            out[key] = out.get(key, 0) + r
        return out

    def sorted_entries(self) -> list[tuple[int, Monomial, int]]:
        return sorted(((i, a, r) for (i, a), r in self.entries.items()), key=lambda t: (t[0], tuple(t[1])))

    def to_dict(self) -> dict:
        return {
            "char": self.char,
            "entries": [
                {"i": i, "multidegree": list(a), "rank": r} for i, a, r in self.sorted_entries()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        entries = {
            (e["i"], Monomial(e["multidegree"])): e["rank"] for e in data["entries"]
        }
        n = len(data["entries"][0]["multidegree"]) if data["entries"] else 0
        return cls(n, data["char"], entries)

    def format_text(self) -> str:
        """Coarse table in the usual (row j = degree - i, column i) layout."""
        graded = self.graded()
        if not graded:
            return "(zero table)"
        cols = range(0, self.proj_dim + 1)
        rows = sorted({j for _, j in graded})
        lines = ["      " + " ".join(f"{i:>5}" for i in cols)]
        for j in rows:
            cells = " ".join(f"{graded.get((i, j), 0) or '.':>5}" for i in cols)
            lines.append(f"{j:>5}: {cells}")
        return "\n".join(lines)


def candidate_multidegrees(I: MonomialIdeal) -> list[Monomial]:
    """All lcms of nonempty sets of minimal generators."""
    if I.is_zero():
        raise InvalidArgumentError("the zero ideal has no multidegrees")
    G = np.asarray(I.gens, dtype=np.int64)
    radix = G.max(axis=0) + 1
    if float(np.prod(radix.astype(float))) < 2.0**62:
        weights = np.concatenate(([1], np.cumprod(radix)[:-1])).astype(np.int64)
        L = np.zeros((0, I.n), dtype=np.int64)
        for g in G:
            stacked = np.vstack([L, np.maximum(L, g), g[None, :]])
            _, idx = np.unique(stacked @ weights, return_index=True)
            L = stacked[np.sort(idx)]
            if len(L) > MAX_MULTIDEGREES:
                raise ResourceLimitError(f"lcm lattice exceeds {MAX_MULTIDEGREES} elements")
        found = [tuple(int(x) for x in row) for row in L]
    else:
        seen: set[tuple] = set()
        for g in I.gens:
            seen |= {tuple(map(max, g, l)) for l in seen}
            seen.add(tuple(g))
            if len(seen) > MAX_MULTIDEGREES:
                raise ResourceLimitError(f"lcm lattice exceeds {MAX_MULTIDEGREES} elements")
        found = list(seen)
    found.sort(key=canonical_key)
    return [Monomial(a) for a in found]


def _maximal_masks(masks: set[int]) -> list[int]:
    ordered = sorted(masks, key=_popcount, reverse=True)
    out: list[int] = []
    for m in ordered:
        if not any(m | f == f for f in out):
            out.append(m)
    return out


def koszul_facets(I: MonomialIdeal, a) -> list[int]:
    """Facets of K^a(I): for each generator g | x^a, the variables where g_j < a_j."""
    masks = set()
    for g in I.gens:
        if all(x <= y for x, y in zip(g, a)):
            masks.add(sum(1 << j for j, (x, y) in enumerate(zip(g, a)) if x < y))
    return _maximal_masks(masks)


@lru_cache(maxsize=4096)
def betti_table(I: MonomialIdeal, char: int = DEFAULT_CHAR, max_generators: int = MAX_GENERATORS) -> BettiTable:
    if I.is_zero():
        raise InvalidArgumentError("Betti table of the zero ideal")
    if len(I.gens) > max_generators:
        raise ResourceLimitError(f"{len(I.gens)} generators exceed the bound {max_generators}")
    lattice = candidate_multidegrees(I)
    G = np.asarray(I.gens, dtype=np.int64)
    bit = (1 << np.arange(I.n, dtype=np.int64))
    entries: dict = {}
    for start in range(0, len(lattice), _CHUNK):
        block = np.asarray(lattice[start:start + _CHUNK], dtype=np.int64)
        below = (G[None, :, :] <= block[:, None, :]).all(axis=2)
        strict = ((G[None, :, :] < block[:, None, :]) * bit).sum(axis=2)
        for row in range(len(block)):
            masks = set(strict[row][below[row]].tolist())
            union = 0
            for m in masks:
                union |= m
            if union in masks:
                # K^a is a simplex: acyclic unless it is {∅}, i.e. a is a generator
                if union == 0:
                    entries[(0, lattice[start + row])] = 1
                continue
            for q, r in reduced_homology(_maximal_masks(masks), char).items():
                entries[(q + 1, lattice[start + row])] = r
    return BettiTable(I.n, char, entries)


def hs_ideal(I: MonomialIdeal, i: int, char: int = DEFAULT_CHAR) -> MonomialIdeal:
    """The i-th homological shift ideal (x^a : beta_{i,a}(I) != 0)."""
    if i < 0:
        raise InvalidArgumentError("homological index must be nonnegative")
    if I.is_zero():
        return I
    if i == 0:
        return I
    return MonomialIdeal(betti_table(I, char).multidegrees(i), I.n)


def regularity(I: MonomialIdeal, char: int = DEFAULT_CHAR) -> int:
    table = betti_table(I, char)
    return max(a.degree - i for (i, a) in table.entries)


def proj_dim(I: MonomialIdeal, char: int = DEFAULT_CHAR) -> int:
    return betti_table(I, char).proj_dim


def has_linear_resolution(I: MonomialIdeal, char: int = DEFAULT_CHAR) -> bool:
    if I.is_zero():
        raise InvalidArgumentError("linearity of the zero ideal is undefined")
    if not I.is_equigenerated():
        return False
    d = I.min_degree
    return all(a.degree == d + i for (i, a) in betti_table(I, char).entries)


def characteristic_discrepancies(I: MonomialIdeal, chars=CHECK_CHARS) -> list[dict]:
    """Entries whose rank differs between the given characteristics."""
    tables = [betti_table(I, p) for p in chars]
    keys = set().union(*(t.entries for t in tables))
    out = []
    for key in sorted(keys, key=lambda k: (k[0], tuple(k[1]))):
        ranks = [t.entries.get(key, 0) for t in tables]
        if len(set(ranks)) > 1:
            out.append({"i": key[0], "multidegree": list(key[1]), "ranks": dict(zip(chars, ranks))})
    return out
