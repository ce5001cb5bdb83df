"""Compact 3-uniform hypergraphs and their elementary algebra.

A :class:`Hypergraph3` is a vertex count plus an integer used as a bit
vector: bit ``r`` is set when the triple of colex rank ``r`` is an edge.
Ordinary graphs (:class:`Graph2`) use the same scheme over pairs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from typing import NamedTuple

import numpy as np

try:
    from . import _fastcanon as _fast
except ImportError:  # numba missing: pure Python labelling only
    _fast = None

__all__ = [
    "CanonicalForm",
    "DegreeSummary",
    "FormatError",
    "Graph2",
    "Hypergraph3",
    "canonical_form",
    "complement",
    "components",
    "degrees",
    "disjoint_union",
    "embeds",
    "format_h3",
    "from_pairs",
    "from_triples",
    "induced",
    "is_connected",
    "is_isomorphic",
    "link_graph",
    "pad",
    "pair_rank",
    "pair_unrank",
    "parse_h3",
    "relabel",
    "triple_rank",
    "triple_unrank",
]


class FormatError(ValueError):
    """Malformed hypergraph or coloring text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# colex ranking

_TRIPLES: list[tuple[int, int, int]] = []
_PAIRS: list[tuple[int, int]] = []


def triple_rank(a: int, b: int, c: int) -> int:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    return comb(c, 3) + comb(b, 2) + a


def _grow_triples(limit: int) -> None:
    c = 2
    if _TRIPLES:
        c = _TRIPLES[-1][2] + 1
    while len(_TRIPLES) <= limit:
        for b in range(1, c):
            for a in range(b):
                _TRIPLES.append((a, b, c))
        c += 1


def triple_unrank(r: int) -> tuple[int, int, int]:
    if r >= len(_TRIPLES):
        _grow_triples(r)
    return _TRIPLES[r]


def pair_rank(a: int, b: int) -> int:
    if a > b:
        a, b = b, a
    return comb(b, 2) + a


def pair_unrank(r: int) -> tuple[int, int]:
    if r >= len(_PAIRS):
        b = _PAIRS[-1][1] + 1 if _PAIRS else 1
        while len(_PAIRS) <= r:
            for a in range(b):
                _PAIRS.append((a, b))
            b += 1
    return _PAIRS[r]


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Hypergraph3:
    """A 3-graph on vertices ``0..n-1``; ``bits`` is the colex edge bit vector."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.bits < 0 or self.bits >> comb(self.n, 3):
            raise ValueError("edge bit vector does not fit C(n,3) triples")

    @cached_property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """Edges as sorted triples, ascending colex rank."""
        return tuple(triple_unrank(r) for r in _iter_bits(self.bits))

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.bits))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Edges as vertex bitmasks, ascending colex rank."""
        return tuple((1 << a) | (1 << b) | (1 << c) for a, b, c in self.edges)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, triple) -> bool:
        a, b, c = triple
        if len({a, b, c}) != 3 or max(a, b, c) >= self.n or min(a, b, c) < 0:
            return False
        return bool(self.bits >> triple_rank(a, b, c) & 1)

    def has_rank(self, r: int) -> bool:
        return bool(self.bits >> r & 1)

    def add(self, *triples) -> Hypergraph3:
        return from_triples(self.n, list(self.edges) + list(triples))

    def remove(self, *triples) -> Hypergraph3:
        bits = self.bits
        for t in triples:
            if t not in self:
                raise ValueError(f"{tuple(t)} is not an edge")
            bits &= ~(1 << triple_rank(*t))
        return Hypergraph3(self.n, bits)

    def is_subgraph_of(self, other: Hypergraph3) -> bool:
        """Labelled containment (same vertex names)."""
        return self.n <= other.n and self.bits & ~other.bits == 0

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Graph2:
    """An ordinary graph on ``0..n-1``; ``bits`` is the colex pair bit vector."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.bits < 0 or self.bits >> comb(self.n, 2):
            raise ValueError("edge bit vector does not fit C(n,2) pairs")

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(pair_unrank(r) for r in _iter_bits(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, pair) -> bool:
        a, b = pair
        if a == b or max(a, b) >= self.n or min(a, b) < 0:
            return False
        return bool(self.bits >> pair_rank(a, b) & 1)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def __repr__(self) -> str:
        return f"Graph2(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism certificate: equal for two 3-graphs iff they are isomorphic."""

    n: int
    bytes: bytes

    def hex(self) -> str:
        return bytes([self.n]).hex() + self.bytes.hex()

    @classmethod
    def from_hex(cls, text: str) -> CanonicalForm:
        raw = bytes.fromhex(text)
        if not raw:
            raise FormatError("empty canonical form")
        return cls(raw[0], raw[1:])

    def to_hypergraph(self) -> Hypergraph3:
        """The canonical representative this certificate encodes."""
        return Hypergraph3(self.n, int.from_bytes(self.bytes, "big"))

    def __str__(self) -> str:
        return self.hex()


class DegreeSummary(NamedTuple):
    degrees: list[int]
    pair_degrees: dict[tuple[int, int], int]
    max_degree: int
    min_degree: int
    max_pair_degree: int


# ---------------------------------------------------------------------------
# construction


def from_triples(n: int, triples: Iterable[Sequence[int]]) -> Hypergraph3:
    """Build a 3-graph from triples; duplicates collapse, order is irrelevant."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    bits = 0
    for t in triples:
        if len(t) != 3:
            raise ValueError(f"{tuple(t)} is not a triple")
        a, b, c = (int(x) for x in t)
        if len({a, b, c}) != 3:
            raise ValueError(f"triple {tuple(t)} repeats a vertex")
        if min(a, b, c) < 0 or max(a, b, c) >= n:
            raise ValueError(f"triple {tuple(t)} has a vertex outside [0, {n})")
        bits |= 1 << triple_rank(a, b, c)
    return Hypergraph3(n, bits)


def from_pairs(n: int, pairs: Iterable[Sequence[int]]) -> Graph2:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    bits = 0
    for p in pairs:
        a, b = (int(x) for x in p)
        if a == b:
            raise ValueError(f"pair {tuple(p)} repeats a vertex")
        if min(a, b) < 0 or max(a, b) >= n:
            raise ValueError(f"pair {tuple(p)} has a vertex outside [0, {n})")
        bits |= 1 << pair_rank(a, b)
    return Graph2(n, bits)


def _check_vertex(H, v: int) -> None:
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range [0, {H.n})")


def link_graph(H: Hypergraph3, v: int) -> Graph2:
    _check_vertex(H, v)
    bits = 0
    for e in H.edges:
        if v in e:
            a, b = (x for x in e if x != v)
            bits |= 1 << pair_rank(a, b)
    return Graph2(H.n, bits)


def degrees(H: Hypergraph3) -> DegreeSummary:
    deg = [0] * H.n
    pair_deg: dict[tuple[int, int], int] = {p: 0 for p in combinations(range(H.n), 2)}
    for a, b, c in H.edges:
        deg[a] += 1
        deg[b] += 1
        deg[c] += 1
        pair_deg[(a, b)] += 1
        pair_deg[(a, c)] += 1
        pair_deg[(b, c)] += 1
    return DegreeSummary(
        deg,
        pair_deg,
        max(deg, default=0),
        min(deg, default=0),
        max(pair_deg.values(), default=0),
    )


def induced(H: Hypergraph3, W: Iterable[int]) -> Hypergraph3:
    """``H[W]`` with the vertices of ``W`` renumbered ascending from 0."""
    W = sorted(set(W))
    for w in W:
        _check_vertex(H, w)
    index = {w: i for i, w in enumerate(W)}
    return from_triples(
        len(W), [(index[a], index[b], index[c]) for a, b, c in H.edges if a in index and b in index and c in index]
    )


def components(H: Hypergraph3) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    parent = list(range(H.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in H.edges:
        ra, rb, rc = find(a), find(b), find(c)
        parent[rb] = ra
        parent[find(rc)] = ra
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(H: Hypergraph3) -> bool:
    # the empty hypergraph on zero vertices counts as connected
    return len(components(H)) <= 1


def complement(H: Hypergraph3) -> Hypergraph3:
    return Hypergraph3(H.n, ((1 << comb(H.n, 3)) - 1) & ~H.bits)


def relabel(H: Hypergraph3, perm: Sequence[int]) -> Hypergraph3:
    """Image of ``H`` under the vertex map ``v -> perm[v]``."""
    if sorted(perm) != list(range(H.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return from_triples(H.n, [(perm[a], perm[b], perm[c]) for a, b, c in H.edges])


def disjoint_union(*graphs: Hypergraph3) -> Hypergraph3:
    triples = []
    offset = 0
    for G in graphs:
        triples.extend((a + offset, b + offset, c + offset) for a, b, c in G.edges)
        offset += G.n
    return from_triples(offset, triples)


def pad(H: Hypergraph3, n: int) -> Hypergraph3:
    """Add isolated vertices so that ``H`` has ``n`` vertices."""
    if n < H.n:
        raise ValueError(f"cannot pad a {H.n}-vertex graph down to {n}")
    return Hypergraph3(n, H.bits)


# ---------------------------------------------------------------------------
# canonical labelling
#
# Colour refinement, then individualisation of one vertex per twin class of
# the first non-singleton cell; the certificate is the smallest relabelled
# bit vector over all leaves.  Twins (u, v) are vertices whose transposition
# is an automorphism, so skipping all but one of them loses no leaf code.


def _refine(n: int, inc: list[list[tuple[int, int]]], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sig = []
        for v in range(n):
            cv = colors
            sig.append(
                (
                    cv[v],
                    tuple(sorted((cv[a], cv[b]) if cv[a] <= cv[b] else (cv[b], cv[a]) for a, b in inc[v])),
                )
            )
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        if len(order) == ncolors:
            return new
        colors, ncolors = new, len(order)


def _twin_classes(n: int, inc: list[list[tuple[int, int]]]) -> list[int]:
    """``rep[v]`` = smallest vertex whose transposition with ``v`` is an automorphism."""
    links = [frozenset(frozenset(p) for p in inc[v]) for v in range(n)]
    rep = list(range(n))
    for v in range(n):
        if rep[v] != v:
            continue
        for u in range(v + 1, n):
            if rep[u] != u:
                continue
            lu = {p for p in links[u] if v not in p}
            lv = {p for p in links[v] if u not in p}
            if lu == lv:
                rep[u] = v
    return rep


_FAST_MAXN = 32
_C3 = np.array([comb(i, 3) for i in range(_FAST_MAXN + 1)], dtype=np.int64)
_C2 = np.array([comb(i, 2) for i in range(_FAST_MAXN + 1)], dtype=np.int64)


def _canonical_code(n: int, edges: Sequence[tuple[int, int, int]]) -> int:
    if n <= 1 or not edges:
        return 0
    if _fast is not None and n <= _FAST_MAXN:
        words = _fast.canonical_words(n, np.array(edges, dtype=np.int64), _C3, _C2, (comb(n, 3) + 63) // 64)
        return sum(int(w) << (64 * i) for i, w in enumerate(words))
    return _canonical_code_py(n, edges)


def _canonical_code_py(n: int, edges: Sequence[tuple[int, int, int]]) -> int:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in edges:
        inc[a].append((b, c))
        inc[b].append((a, c))
        inc[c].append((a, b))
    twin = _twin_classes(n, inc)
    best = -1
    stack = [_refine(n, inc, [0] * n)]
    while stack:
        colors = stack.pop()
        counts = [0] * n
        for c in colors:
            counts[c] += 1
        cell = next((c for c in range(n) if counts[c] > 1), None)
        if cell is None:
            code = 0
            for a, b, c in edges:
                code |= 1 << triple_rank(colors[a], colors[b], colors[c])
            if best < 0 or code < best:
                best = code
            continue
        seen_twins = set()
        for w in range(n):
            if colors[w] != cell or twin[w] in seen_twins:
                continue
            seen_twins.add(twin[w])
            keyed = [2 * c + (0 if v == w else 1) for v, c in enumerate(colors)]
            order = {k: i for i, k in enumerate(sorted(set(keyed)))}
            stack.append(_refine(n, inc, [order[k] for k in keyed]))
    return best


def canonical_code_bruteforce(n: int, edges: Sequence[tuple[int, int, int]]) -> int:
    """Minimum relabelled bit vector over all ``n!`` permutations (test oracle)."""
    best = -1
    for perm in permutations(range(n)):
        code = 0
        for a, b, c in edges:
            code |= 1 << triple_rank(perm[a], perm[b], perm[c])
        if best < 0 or code < best:
            best = code
    return max(best, 0)


def _form(n: int, code: int) -> CanonicalForm:
    return CanonicalForm(n, code.to_bytes((comb(n, 3) + 7) // 8, "big"))


def canonical_form(H: Hypergraph3) -> CanonicalForm:
    return _form(H.n, _canonical_code(H.n, H.edges))


def canonical_form_edges(n: int, edges: Sequence[tuple[int, int, int]]) -> CanonicalForm:
    return _form(n, _canonical_code(n, edges))


def is_isomorphic(H1: Hypergraph3, H2: Hypergraph3) -> bool:
    if H1.n != H2.n or len(H1) != len(H2):
        return False
    return canonical_form(H1) == canonical_form(H2)


# ---------------------------------------------------------------------------
# embedding


def embeds(G: Hypergraph3, H: Hypergraph3, fixed: dict[int, int] | None = None) -> dict[int, int] | None:
    """Find an injective ``phi: V(G) -> V(H)`` mapping every edge of ``G`` onto an edge of ``H``.

    ``fixed`` pre-assigns some images.  Returns the map or ``None``.
    """
    if G.n > H.n or len(G) > len(H):
        return None
    fixed = dict(fixed or {})
    gdeg = [0] * G.n
    for e in G.edges:
        for x in e:
            gdeg[x] += 1
    hdeg = [0] * H.n
    for e in H.edges:
        for x in e:
            hdeg[x] += 1
    if any(a > b for a, b in zip(sorted(gdeg, reverse=True), sorted(hdeg, reverse=True))):
        return None
    hset = set(H.masks)

    # order: fixed vertices first, then greedily the vertex with most edges back
    # into the ordered prefix; ties by degree then index
    order = sorted(fixed)
    placed = set(order)
    gedges = G.edges
    while len(order) < G.n:
        best = None
        for v in range(G.n):
            if v in placed:
                continue
            back = sum(1 for e in gedges if v in e and sum(x in placed for x in e) == 2)
            touch = sum(1 for e in gedges if v in e and any(x in placed for x in e))
            key = (-back, -touch, -gdeg[v], v)
            if best is None or key < best[0]:
                best = (key, v)
        order.append(best[1])
        placed.add(best[1])
    position = {v: i for i, v in enumerate(order)}
    # edges checked when their last vertex (in order) is placed
    closing: list[list[tuple[int, int]]] = [[] for _ in order]
    for a, b, c in gedges:
        last = max((a, b, c), key=position.__getitem__)
        others = tuple(x for x in (a, b, c) if x != last)
        closing[position[last]].append(others)

    image = [-1] * G.n
    used = 0
    for g, h in fixed.items():
        if not (0 <= g < G.n and 0 <= h < H.n) or used >> h & 1:
            return None
        image[g] = h
        used |= 1 << h
    for i, v in enumerate(order[: len(fixed)]):
        for a, b in closing[i]:
            if (1 << image[v]) | (1 << image[a]) | (1 << image[b]) not in hset:
                return None

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        for h in range(H.n):
            if used >> h & 1 or hdeg[h] < gdeg[v]:
                continue
            hm = 1 << h
            if all(hm | (1 << image[a]) | (1 << image[b]) in hset for a, b in closing[i]):
                image[v] = h
                used |= hm
                if extend(i + 1):
                    return True
                used &= ~hm
                image[v] = -1
        return False

    if extend(len(fixed)):
        return {v: image[v] for v in range(G.n)}
    return None


# ---------------------------------------------------------------------------
# text format


def format_h3(H: Hypergraph3) -> str:
    lines = [f"h3 {H.n} {len(H)}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in H.edges)
    return "\n".join(lines) + "\n"


def parse_h3(text: str) -> Hypergraph3:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "h3":
        raise FormatError("expected header 'h3 <n> <m>'", 1)
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError("non-integer header field", 1) from None
    if n < 0 or m < 0:
        raise FormatError("negative header field", 1)
    body = [(i + 2, line) for i, line in enumerate(lines[1:]) if line.strip()]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}", 1)
    bits = 0
    last = -1
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError("expected three vertices", lineno)
        try:
            a, b, c = (int(x) for x in parts)
        except ValueError:
            raise FormatError("non-integer vertex", lineno) from None
        if not 0 <= a < b < c < n:
            raise FormatError(f"vertices must satisfy 0 <= a < b < c < {n}", lineno)
        r = triple_rank(a, b, c)
        if r <= last:
            raise FormatError("edges must be listed in ascending colex order", lineno)
        last = r
        bits |= 1 << r
    return Hypergraph3(n, bits)
