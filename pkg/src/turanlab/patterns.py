"""Containment tests for minimal/linear paths, minimal cycles, matchings and explicit patterns.

All finders work on edges as vertex bitmasks; the public functions accept a
:class:`~turanlab.h3core.Hypergraph3` and return witnesses as lists of sorted
triples.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from .h3core import (
    Graph2,
    Hypergraph3,
    canonical_form,
    embeds,
    parse_h3,
    triple_rank,
)

__all__ = [
    "FamilySpec",
    "PatternSpec",
    "family_witness",
    "find_linear_path",
    "find_minimal_cycle",
    "find_minimal_path",
    "is_family_free",
    "matching_number",
    "maximum_matching",
    "contains_matching",
    "parse_family",
    "pattern_through_edge",
    "rr_bb_path_exists",
]

_KINDS = ("minimal_path", "linear_path", "minimal_cycle", "matching", "explicit")


@dataclass(frozen=True)
class PatternSpec:
    kind: str
    param: int = 0
    graph: Hypergraph3 | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "explicit":
            if self.graph is None or len(self.graph) == 0:
                raise ValueError("explicit pattern needs a non-empty graph")
        elif self.kind == "matching":
            if self.param < 1:
                raise ValueError("matching size must be >= 1")
        elif self.kind == "minimal_cycle":
            if self.param < 3:
                raise ValueError("minimal cycles need length >= 3")
        elif self.param < 2:
            raise ValueError("paths need length >= 2")

    @classmethod
    def minimal_path(cls, length: int) -> PatternSpec:
        return cls("minimal_path", length)

    @classmethod
    def linear_path(cls, length: int) -> PatternSpec:
        return cls("linear_path", length)

    @classmethod
    def minimal_cycle(cls, length: int) -> PatternSpec:
        return cls("minimal_cycle", length)

    @classmethod
    def matching(cls, size: int) -> PatternSpec:
        return cls("matching", size)

    @classmethod
    def explicit(cls, graph: Hypergraph3) -> PatternSpec:
        return cls("explicit", 0, graph)

    @property
    def id(self) -> str:
        if self.kind == "explicit":
            return "x" + canonical_form(self.graph).hex()
        prefix = {"minimal_path": "p", "linear_path": "l", "minimal_cycle": "c", "matching": "m"}[self.kind]
        return f"{prefix}{self.param}"

    @property
    def max_vertex_load(self) -> int:
        """Largest number of member edges through one vertex."""
        if self.kind == "matching":
            return 1
        if self.kind == "explicit":
            deg = [0] * self.graph.n
            for e in self.graph.edges:
                for x in e:
                    deg[x] += 1
            return max(deg)
        if self.kind == "minimal_cycle" and self.param == 3:
            return 3
        return 2

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class FamilySpec:
    patterns: tuple[PatternSpec, ...]

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("a family needs at least one pattern")
        object.__setattr__(self, "patterns", tuple(self.patterns))

    @classmethod
    def of(cls, *patterns: PatternSpec) -> FamilySpec:
        return cls(tuple(patterns))

    @property
    def id(self) -> str:
        return ",".join(p.id for p in self.patterns)

    def __str__(self) -> str:
        return self.id


def parse_family(text: str) -> FamilySpec:
    """Parse ``p4``, ``p4,m3``, ``c4``, ``l3``, ``file:<path>`` (h3 text) and ``x<hex>``."""
    patterns = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ValueError(f"empty pattern in family {text!r}")
        if token.startswith("file:"):
            patterns.append(PatternSpec.explicit(parse_h3(Path(token[5:]).read_text())))
            continue
        if token[0] == "x" and len(token) > 1:
            from .h3core import CanonicalForm

            patterns.append(PatternSpec.explicit(CanonicalForm.from_hex(token[1:]).to_hypergraph()))
            continue
        kind = {"p": "minimal_path", "l": "linear_path", "c": "minimal_cycle", "m": "matching"}.get(token[0].lower())
        if kind is None or not token[1:].isdigit():
            raise ValueError(f"unrecognised pattern {token!r}")
        patterns.append(PatternSpec(kind, int(token[1:])))
    return FamilySpec(tuple(patterns))


# ---------------------------------------------------------------------------
# sequence search (paths and cycles)


def _popcount(x: int) -> int:
    return x.bit_count()


def _sequence_search(
    masks: Sequence[int],
    length: int,
    cyclic: bool,
    linear: bool,
    start: int | None = None,
    position: int = 0,
):
    """Return indices of a minimal path/cycle, or ``None``.

    Positions of the same parity as the first one are filled before the
    others: they must be pairwise disjoint, which prunes dense stars early.
    With ``start`` the edge ``masks[start]`` is pinned at ``position``.
    """
    m = len(masks)
    if m < length:
        return None
    if start is None:
        position = 0
    rest = sorted((i for i in range(length) if i != position), key=lambda i: ((i - position) % 2, abs(i - position), i))
    fill = [position] + rest

    def adjacent(i: int, j: int) -> bool:
        d = abs(i - j)
        return d == 1 or (cyclic and d == length - 1)

    # for each slot, the already-filled slots it must meet / avoid
    rules = []
    for step, slot in enumerate(fill):
        earlier = fill[:step]
        rules.append(
            (
                [j for j in earlier if adjacent(slot, j)],
                [j for j in earlier if not adjacent(slot, j)],
            )
        )
    # edge-index bitsets: edges meeting / avoiding edge i
    inc: dict[int, int] = {}
    for i, e in enumerate(masks):
        x = e
        while x:
            low = x & -x
            inc[low] = inc.get(low, 0) | (1 << i)
            x ^= low
    every = (1 << m) - 1
    meets = []
    for i, e in enumerate(masks):
        bits = 0
        x = e
        while x:
            low = x & -x
            bits |= inc[low]
            x ^= low
        meets.append(bits)
    seq = [-1] * length

    def rec(step: int, used: int) -> bool:
        if step == length:
            return True
        slot = fill[step]
        meet, avoid = rules[step]
        pool = every & ~used
        for j in meet:
            pool &= meets[seq[j]]
        for j in avoid:
            pool &= ~meets[seq[j]]
        while pool:
            low = pool & -pool
            pool ^= low
            idx = low.bit_length() - 1
            if linear and any(_popcount(masks[idx] & masks[seq[j]]) != 1 for j in meet):
                continue
            seq[slot] = idx
            if rec(step + 1, used | low):
                return True
        seq[slot] = -1
        return False

    if start is not None:
        seq[position] = start
        if rec(1, 1 << start):
            return list(seq)
        return None
    if rec(0, 0):
        # report the smallest of the witness's symmetric images
        images = [seq, seq[::-1]]
        if cyclic:
            images = [im[k:] + im[:k] for im in images for k in range(length)]
        return min(images)
    return None


def _as_triples(H: Hypergraph3, idx):
    if idx is None:
        return None
    return [H.edges[i] for i in idx]


def find_minimal_path(H: Hypergraph3, length: int):
    """Edges ``e_0..e_{l-1}`` with ``e_i & e_j`` non-empty exactly when ``|i-j| <= 1``."""
    if length < 2:
        raise ValueError("path length must be >= 2")
    return _as_triples(H, _sequence_search(H.masks, length, False, False))


def find_linear_path(H: Hypergraph3, length: int):
    """Minimal path whose consecutive edges share exactly one vertex."""
    if length < 2:
        raise ValueError("path length must be >= 2")
    return _as_triples(H, _sequence_search(H.masks, length, False, True))


def find_minimal_cycle(H: Hypergraph3, length: int):
    """Edges with the cyclic intersection pattern ``|i-j| <= 1 (mod l)``."""
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    return _as_triples(H, _sequence_search(H.masks, length, True, False))


# ---------------------------------------------------------------------------
# matchings


def _max_matching(masks: Sequence[int], limit: int | None = None) -> list[int]:
    """Indices of the lexicographically first maximum matching (branch and bound).

    With ``limit`` the search stops as soon as a matching of that size exists.
    """
    best: list[int] = []
    goal = limit if limit is not None else len(masks)

    def rec(avail: list[int], chosen: list[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) >= goal:
                return True
        if not avail:
            return False
        union = 0
        for i in avail:
            union |= masks[i]
        if len(chosen) + min(len(avail), _popcount(union) // 3) <= len(best):
            return False
        i = avail[0]
        e = masks[i]
        chosen.append(i)
        if rec([j for j in avail[1:] if not masks[j] & e], chosen):
            return True
        chosen.pop()
        return rec(avail[1:], chosen)

    rec(list(range(len(masks))), [])
    return best


def matching_number(H: Hypergraph3) -> int:
    return len(_max_matching(H.masks))


def maximum_matching(H: Hypergraph3) -> list[tuple[int, int, int]]:
    """The lexicographically first maximum matching by edge rank."""
    return [H.edges[i] for i in _max_matching(H.masks)]


def contains_matching(H: Hypergraph3, s: int) -> bool:
    return len(_max_matching(H.masks, limit=s)) >= s


# ---------------------------------------------------------------------------
# dispatch on masks (used by the search module as well)


def find_in_masks(masks: Sequence[int], pattern: PatternSpec, n: int | None = None):
    """Witness indices for ``pattern`` in the edge list ``masks``, or ``None``."""
    kind = pattern.kind
    if kind == "minimal_path":
        return _sequence_search(masks, pattern.param, False, False)
    if kind == "linear_path":
        return _sequence_search(masks, pattern.param, False, True)
    if kind == "minimal_cycle":
        return _sequence_search(masks, pattern.param, True, False)
    if kind == "matching":
        found = _max_matching(masks, limit=pattern.param)
        return found if len(found) >= pattern.param else None
    H = _masks_to_graph(masks, n)
    phi = embeds(pattern.graph, H)
    if phi is None:
        return None
    index = {m: i for i, m in enumerate(masks)}
    return [index[(1 << phi[a]) | (1 << phi[b]) | (1 << phi[c])] for a, b, c in pattern.graph.edges]


def through_in_masks(masks: Sequence[int], idx: int, pattern: PatternSpec, n: int | None = None) -> bool:
    """True iff some copy of ``pattern`` among ``masks`` uses ``masks[idx]``."""
    kind = pattern.kind
    length = pattern.param
    if kind in ("minimal_path", "linear_path"):
        linear = kind == "linear_path"
        return any(
            _sequence_search(masks, length, False, linear, start=idx, position=p) is not None
            for p in range((length + 1) // 2)
        )
    if kind == "minimal_cycle":
        return _sequence_search(masks, length, True, False, start=idx, position=0) is not None
    e = masks[idx]
    if kind == "matching":
        rest = [f for f in masks if not f & e]
        return len(_max_matching(rest, limit=length - 1)) >= length - 1
    H = _masks_to_graph(masks, n)
    verts = [v for v in range(e.bit_length()) if e >> v & 1]
    for g in pattern.graph.edges:
        for image in permutations(verts):
            if embeds(pattern.graph, H, dict(zip(g, image))) is not None:
                return True
    return False


def _masks_to_graph(masks: Sequence[int], n: int | None) -> Hypergraph3:
    union = 0
    bits = 0
    for m in masks:
        union |= m
        a = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        b = (rest & -rest).bit_length() - 1
        c = (rest & (rest - 1)).bit_length() - 1
        bits |= 1 << triple_rank(a, b, c)
    return Hypergraph3(max(n or 0, union.bit_length()), bits)


# ---------------------------------------------------------------------------
# public family-level API


def family_witness(H: Hypergraph3, family: FamilySpec):
    """``(pattern, edges)`` for the first family member found in ``H``, else ``None``."""
    masks = H.masks
    for pattern in family.patterns:
        idx = find_in_masks(masks, pattern, H.n)
        if idx is not None:
            return pattern, [H.edges[i] for i in idx]
    return None


def is_family_free(H: Hypergraph3, family: FamilySpec) -> bool:
    return family_witness(H, family) is None


def pattern_through_edge(H: Hypergraph3, e, family: FamilySpec) -> bool:
    """True iff some member of ``family`` inside ``H`` uses the edge ``e``."""
    if tuple(e) not in H:
        raise ValueError(f"{tuple(e)} is not an edge of H")
    idx = H.ranks.index(triple_rank(*e))
    masks = H.masks
    return any(through_in_masks(masks, idx, p, H.n) for p in family.patterns)


# ---------------------------------------------------------------------------
# two-coloured 4-edge graph paths


def rr_bb_path_exists(R: Graph2, B: Graph2) -> bool:
    """True iff ``r1 r2 b1 b2`` is a 4-edge path with ``r1, r2 in R`` and ``b1, b2 in B``."""
    if R.n != B.n:
        raise ValueError("R and B must live on the same vertex set")
    n = R.n
    radj = [0] * n
    badj = [0] * n
    for a, b in R.edges:
        radj[a] |= 1 << b
        radj[b] |= 1 << a
    for a, b in B.edges:
        badj[a] |= 1 << b
        badj[b] |= 1 << a
    # v2 is the junction: two red edges on one side, two blue edges on the other
    for v2 in range(n):
        for v1 in _bits(radj[v2]):
            for v0 in _bits(radj[v1] & ~(1 << v2)):
                used = (1 << v0) | (1 << v1) | (1 << v2)
                for v3 in _bits(badj[v2] & ~used):
                    if badj[v3] & ~used & ~(1 << v3):
                        return True
    return False


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
