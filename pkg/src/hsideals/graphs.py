"""Finite simple graphs on [n], their edge ideals, and small-graph censuses."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgumentError, ParseError
from .monomials import Monomial, MonomialIdeal

MAX_CENSUS_N = 8


@dataclass(frozen=True)
class SimpleGraph:
    """Vertices 1..n; edges stored as pairs (i, j) with i < j."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError("negative vertex count")
        clean = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise InvalidArgumentError(f"loop at vertex {i}")
            if i > j:
                i, j = j, i
            if not (1 <= i and j <= self.n):
                raise InvalidArgumentError(f"edge {i}-{j} outside vertex set 1..{self.n}")
            clean.add((i, j))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        pairs = [tuple(e) for e in edges]
        if len({tuple(sorted(p)) for p in pairs}) != len(pairs):
            raise InvalidArgumentError("duplicate edge")
        return cls(n, frozenset(pairs))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(itertools.combinations(range(1, n + 1), 2)))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def adjacency_masks(self) -> list[int]:
        """Bit j-1 of entry v-1 is set when v ~ j."""
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i - 1] |= 1 << (j - 1)
            masks[j - 1] |= 1 << (i - 1)
        return masks

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def isolated_vertices(self) -> list[int]:
        used = {v for e in self.edges for v in e}
        return [v for v in range(1, self.n + 1) if v not in used]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self.adjacency_masks()
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Image under the vertex map v -> perm[v-1]."""
        return SimpleGraph(self.n, frozenset((perm[i - 1], perm[j - 1]) for i, j in self.edges))

    def to_edge_list(self) -> str:
        return f"{self.n}; " + ", ".join(f"{i}-{j}" for i, j in self.sorted_edges())

    def __str__(self) -> str:
        return self.to_edge_list()


@dataclass(frozen=True)
class Partition:
    """Consecutive interval blocks V_i = [t_{i-1}+1, t_i] covering [n]."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        expect = 1
        for lo, hi in self.blocks:
            if lo != expect or hi < lo:
                raise InvalidArgumentError(f"blocks {self.blocks} are not consecutive nonempty intervals")
            expect = hi + 1

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "Partition":
        blocks, t = [], 0
        for s in sizes:
            if s < 1:
                raise InvalidArgumentError("empty block")
            blocks.append((t + 1, t + s))
            t += s
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return self.blocks[-1][1] if self.blocks else 0

    @property
    def bounds(self) -> list[int]:
        """t_0 = 0, t_1, ..., t_r = n."""
        return [0] + [hi for _, hi in self.blocks]

    def block_of(self, v: int) -> int:
        """1-indexed block containing vertex v."""
        for idx, (lo, hi) in enumerate(self.blocks, start=1):
            if lo <= v <= hi:
                return idx
        raise InvalidArgumentError(f"vertex {v} outside 1..{self.n}")


def edge_ideal(G: SimpleGraph) -> MonomialIdeal:
    return MonomialIdeal((Monomial.squarefree(e, G.n) for e in G.edges), G.n)


def graph_of_edge_ideal(I: MonomialIdeal) -> SimpleGraph:
    edges = []
    for g in I.gens:
        if g.degree != 2 or len(g.support) != 2:
            raise InvalidArgumentError(f"{g} is not a squarefree quadric")
        edges.append(tuple(sorted(g.support)))
    return SimpleGraph(I.n, frozenset(edges))


def complement(G: SimpleGraph) -> SimpleGraph:
    every = set(itertools.combinations(range(1, G.n + 1), 2))
    return SimpleGraph(G.n, frozenset(every - G.edges))


def maximum_cardinality_search(G: SimpleGraph) -> list[int]:
    """Visit order of MCS; its reverse is a perfect elimination order iff G is chordal."""
    adj = G.adjacency_masks()
    weight = [0] * G.n
    unvisited = set(range(G.n))
    order = []
    while unvisited:
        v = max(sorted(unvisited), key=lambda u: weight[u])
        order.append(v + 1)
        unvisited.discard(v)
        for u in unvisited:
            if adj[v] >> u & 1:
                weight[u] += 1
    return order


def is_perfect_elimination_order(G: SimpleGraph, order: Sequence[int]) -> bool:
    adj = G.adjacency_masks()
    pos = {v: idx for idx, v in enumerate(order)}
    for v in order:
        later = [u for u in G.neighbors(v) if pos[u] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if not adj[a - 1] >> (b - 1) & 1:
                return False
    return True


def is_chordal(G: SimpleGraph) -> bool:
    peo = list(reversed(maximum_cardinality_search(G)))
    return is_perfect_elimination_order(G, peo)


def has_linear_resolution_froberg(G: SimpleGraph) -> bool:
    if not G.edges:
        raise InvalidArgumentError("edgeless graph has the zero edge ideal")
    return is_chordal(complement(G))


def complete_multipartite(parts: Partition) -> SimpleGraph:
    edges = []
    for (lo1, hi1), (lo2, hi2) in itertools.combinations(parts.blocks, 2):
        edges.extend(itertools.product(range(lo1, hi1 + 1), range(lo2, hi2 + 1)))
    return SimpleGraph(parts.n, frozenset(edges))


def _check_pair(i: int, j: int, n: int) -> None:
    if not 1 <= i < j <= n:
        raise InvalidArgumentError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")


def principal_borel_edge_ideal(i: int, j: int, n: int) -> MonomialIdeal:
    _check_pair(i, j, n)
    pairs = [(r, s) for r in range(1, n + 1) for s in range(r + 1, n + 1) if r <= i and s <= j]
    return MonomialIdeal((Monomial.squarefree(p, n) for p in pairs), n)


def initial_lexsegment_edge_ideal(i: int, j: int, n: int) -> MonomialIdeal:
    """Squarefree quadrics x_r x_s that are lex >= x_i x_j."""
    _check_pair(i, j, n)
    pairs = [
        (r, s) for r, s in itertools.combinations(range(1, n + 1), 2)
        if r < i or (r == i and s <= j)
    ]
    return MonomialIdeal((Monomial.squarefree(p, n) for p in pairs), n)


# ---------------------------------------------------------------------------
# canonical forms and census


def _column_order(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in graph6 order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def adjacency_bits(G: SimpleGraph) -> str:
    adj = G.adjacency_masks()
    return "".join("1" if adj[i] >> j & 1 else "0" for i, j in _column_order(G.n))


def canonical_form(G: SimpleGraph) -> str:
    """Lexicographically smallest adjacency bitstring over all relabelings.

    Relabelings are explored depth-first; a partial labeling fixes a prefix of
    the bitstring, so branches whose prefix already exceeds the best complete
    string are cut.  The result equals the exhaustive minimum over all n!
    permutations.
    """
    n = G.n
    if n <= 1:
        return ""
    adj = G.adjacency_masks()
    best: list[int] | None = None
    cols: list[int] = []
    placed: list[int] = []

    def search(depth: int, free: int) -> None:
        nonlocal best
        if depth == n:
            if best is None or cols < best:
                best = cols.copy()
            return
        options = []
        for v in range(n):
            if free >> v & 1:
                col = 0
                for u in placed:
                    col = (col << 1) | (adj[u] >> v & 1)
                options.append((col, v))
        low = min(c for c, _ in options)
        # only a prefix tied with the best string can be beaten here
        if best is not None and low > best[depth] and cols == best[:depth]:
            return
        for col, v in options:
            if col != low:
                continue
            cols.append(col)
            placed.append(v)
            search(depth + 1, free & ~(1 << v))
            cols.pop()
            placed.pop()

    search(0, (1 << n) - 1)
    assert best is not None
    bits = []
    for depth in range(1, n):
        bits.append(format(best[depth], f"0{depth}b"))
    return "".join(bits)


def from_adjacency_bits(n: int, bits: str) -> SimpleGraph:
    edges = [(i + 1, j + 1) for (i, j), b in zip(_column_order(n), bits) if b == "1"]
    return SimpleGraph(n, frozenset(edges))


def canonical_graph(G: SimpleGraph) -> SimpleGraph:
    return from_adjacency_bits(G.n, canonical_form(G))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[str, ...]:
    """Canonical bitstrings of all isomorphism classes on n vertices."""
    if n == 1:
        return ("",)
    found = set()
    for bits in _classes(n - 1):
        base = from_adjacency_bits(n - 1, bits)
        for r in range(n):
            for nbrs in itertools.combinations(range(1, n), r):
                G = SimpleGraph(n, base.edges | {(v, n) for v in nbrs})
                found.add(canonical_form(G))
    return tuple(sorted(found, key=lambda b: (b.count("1"), b)))


def enumerate_graphs(n: int, connected: bool = False, no_isolated: bool = False) -> Iterator[SimpleGraph]:
    """One canonical representative per isomorphism class on exactly n vertices."""
    if not 1 <= n <= MAX_CENSUS_N:
        raise InvalidArgumentError(f"census supports 1 <= n <= {MAX_CENSUS_N}, got {n}")
    for bits in _classes(n):
        G = from_adjacency_bits(n, bits)
        if connected and not G.is_connected():
            continue
        if no_isolated and G.isolated_vertices():
            continue
        yield G


def census(n_max: int, connected: bool = False, no_isolated: bool = True) -> list[SimpleGraph]:
    out = []
    for n in range(1, n_max + 1):
        out.extend(enumerate_graphs(n, connected=connected, no_isolated=no_isolated))
    return out


# ---------------------------------------------------------------------------
# graph6 and edge-list text


def emit_graph6(G: SimpleGraph) -> str:
    if G.n > 62:
        raise InvalidArgumentError("only the short graph6 form (n <= 62) is supported")
    bits = adjacency_bits(G)
    bits += "0" * (-len(bits) % 6)
    body = "".join(chr(int(bits[p:p + 6], 2) + 63) for p in range(0, len(bits), 6))
    return chr(G.n + 63) + body


def parse_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    start = 0
    if s.startswith(">>graph6<<"):
        start = len(">>graph6<<")
    data = s.encode("ascii", errors="replace")
    if len(data) <= start:
        raise ParseError("empty graph6 string", offset=start)
    n = data[start] - 63
    if not 0 <= n <= 62:
        raise ParseError("unsupported graph6 size byte", offset=start)
    nbits = n * (n - 1) // 2
    body = data[start + 1:]
    need = -(-nbits // 6)
    if len(body) != need:
        raise ParseError(
            f"graph6 body for n={n} needs {need} bytes, found {len(body)}",
            offset=start + 1 + min(len(body), need),
        )
    bits = []
    for off, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise ParseError("byte outside graph6 range 63..126", offset=start + 1 + off)
        bits.append(format(byte - 63, "06b"))
    return from_adjacency_bits(n, "".join(bits)[:nbits])


def parse_edge_list(text: str) -> SimpleGraph:
    """``n; i-j, i-j, ...``"""
    head, sep, rest = text.partition(";")
    if not sep:
        raise ParseError("edge list needs the form 'n; i-j, ...'", offset=0)
    try:
        n = int(head.strip())
    except ValueError:
        raise ParseError(f"bad vertex count {head.strip()!r}", offset=0) from None
    edges = []
    offset = len(head) + 1
    for chunk in rest.split(","):
        item = chunk.strip()
        if item:
            a, dash, b = item.partition("-")
            try:
                if not dash:
                    raise ValueError
                edges.append((int(a), int(b)))
            except ValueError:
                raise ParseError(f"bad edge {item!r}", offset=offset) from None
        offset += len(chunk) + 1
    try:
        return SimpleGraph.from_edges(n, edges)
    except InvalidArgumentError as exc:
        raise ParseError(str(exc)) from None


def parse_graph(text: str) -> SimpleGraph:
    """Either graph6 or the edge-list format."""
    if ";" in text:
        return parse_edge_list(text)
    return parse_graph6(text)
