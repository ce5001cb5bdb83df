"""Named 3-graphs: stars, F-stars, balloons, the minimal 4-cycle and path members.

Labelling is fixed: the star centre is vertex 0, the special structure
(``P``, ``K_4``, the ``y``/``z`` vertices) takes the next indices and the
remaining vertices follow in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .h3core import Hypergraph3, embeds, from_triples, pad
from .patterns import (
    FamilySpec,
    PatternSpec,
    find_linear_path,
    find_minimal_cycle,
    find_minimal_path,
    is_family_free,
    matching_number,
)

__all__ = [
    "ConstructionKind",
    "KINDS",
    "construct",
    "expected_size",
    "self_check",
    "partial_star",
    "f_star",
    "cycle_c4",
    "path_member",
]

KINDS = (
    "complete",
    "complete_plus_isolated",
    "full_star",
    "starplus",
    "partial_star",
    "sp",
    "sk",
    "balloon",
    "compact_balloon",
    "c4",
    "path_member",
    "linear_path",
    "matching",
)

_MIN_N = {
    "complete": 0,
    "full_star": 3,
    "starplus": 5,
    "sp": 6,
    "sk": 6,
    "balloon": 8,
    "compact_balloon": 8,
}


@dataclass(frozen=True)
class ConstructionKind:
    """A named construction with its parameters.

    ``n`` is the vertex count except for ``complete_plus_isolated`` (``n`` is
    the clique order and ``extra`` the number of isolated vertices).
    ``signature`` lists consecutive intersection sizes of a path member;
    ``centre``/``support`` parametrise the partial star ``S(v, A)``.
    """

    name: str
    n: int = 0
    extra: int = 0
    length: int = 0
    signature: tuple[int, ...] = ()
    centre: int = 0
    support: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown construction {self.name!r}")
        low = _MIN_N.get(self.name)
        if low is not None and self.n < low:
            raise ValueError(f"{self.name} needs n >= {low}, got {self.n}")
        if self.name == "complete_plus_isolated" and (self.n < 0 or self.extra < 0):
            raise ValueError("clique order and isolated count must be non-negative")
        if self.name == "c4" and self.n and self.n < 6:
            raise ValueError("C4 needs at least 6 vertices")
        if self.name == "path_member":
            sig = self.signature
            if not sig or any(s not in (1, 2) for s in sig):
                raise ValueError("signature entries must be 1 or 2")
            if any(a + b > 3 for a, b in zip(sig, sig[1:])):
                raise ValueError("an edge cannot share more than 3 vertices with its neighbours")
        if self.name == "linear_path":
            if self.length < 1:
                raise ValueError("linear path needs length >= 1")
            if self.n < 2 * self.length + 1:
                raise ValueError("linear path of length l needs n >= 2l+1")
        if self.name == "matching" and self.n < 3 * self.length:
            raise ValueError("matching of size s needs n >= 3s")
        if self.name == "partial_star":
            if not 0 <= self.centre < self.n or self.centre in self.support:
                raise ValueError("centre must be a vertex outside the support")
            if any(not 0 <= a < self.n for a in self.support):
                raise ValueError("support vertex out of range")

    # convenience constructors -------------------------------------------------
    @classmethod
    def complete(cls, n):
        return cls("complete", n)

    @classmethod
    def complete_plus_isolated(cls, m, i):
        return cls("complete_plus_isolated", m, extra=i)

    @classmethod
    def full_star(cls, n):
        return cls("full_star", n)

    @classmethod
    def starplus(cls, n):
        return cls("starplus", n)

    @classmethod
    def sp(cls, n):
        return cls("sp", n)

    @classmethod
    def sk(cls, n):
        return cls("sk", n)

    @classmethod
    def balloon(cls, n):
        return cls("balloon", n)

    @classmethod
    def compact_balloon(cls, n):
        return cls("compact_balloon", n)

    @classmethod
    def c4(cls, n=6):
        return cls("c4", n)

    @classmethod
    def path_member(cls, signature, n=0):
        return cls("path_member", n, signature=tuple(signature))

    @classmethod
    def linear_path(cls, length, n=0):
        return cls("linear_path", n or 2 * length + 1, length=length)

    @classmethod
    def matching(cls, s, n=0):
        return cls("matching", n or 3 * s, length=s)

    @classmethod
    def partial_star(cls, n, centre, support):
        return cls("partial_star", n, centre=centre, support=frozenset(support))

    @property
    def vertex_count(self) -> int:
        if self.name == "complete_plus_isolated":
            return self.n + self.extra
        if self.name == "c4":
            return self.n or 6
        if self.name == "path_member":
            return max(self.n, _path_member_order(self.signature))
        return self.n


def _path_member_order(signature) -> int:
    return 3 * (len(signature) + 1) - sum(signature)


# ---------------------------------------------------------------------------
# builders


def partial_star(n: int, centre: int, support) -> Hypergraph3:
    """``S(v, A)``: all triples through ``centre`` meeting ``support``."""
    A = set(support)
    others = [u for u in range(n) if u != centre]
    return from_triples(n, [(centre, a, b) for a, b in combinations(others, 2) if a in A or b in A])


def f_star(F: Hypergraph3, n: int) -> Hypergraph3:
    """``SF_n``: ``F`` moved onto vertices ``1..|V(F)|`` plus ``S(0, V(F))``."""
    if n < F.n + 1:
        raise ValueError(f"F-star of a {F.n}-vertex F needs n >= {F.n + 1}")
    shifted = [(a + 1, b + 1, c + 1) for a, b, c in F.edges]
    star = partial_star(n, 0, range(1, F.n + 1))
    return from_triples(n, shifted + list(star.edges))


_P = from_triples(5, [(0, 1, 2), (2, 3, 4)])
_K = from_triples(4, list(combinations(range(4), 3)))


def cycle_c4(n: int = 6) -> Hypergraph3:
    # x1=0, y1=1, y2=2, x2=3, z1=4, z2=5
    return from_triples(n, [(0, 1, 2), (1, 2, 3), (3, 4, 5), (0, 4, 5)])


def path_member(signature) -> Hypergraph3:
    """Minimal path whose consecutive edges share ``signature[i]`` vertices."""
    sig = tuple(signature)
    edges = [[0, 1, 2]]
    nxt = 3
    for s in sig:
        prev = edges[-1]
        # share the last s vertices of the previous edge (never those shared backwards)
        shared = prev[3 - s :]
        fresh = list(range(nxt, nxt + 3 - s))
        nxt += 3 - s
        edges.append(shared + fresh)
    return from_triples(nxt, edges)


def construct(kind: ConstructionKind) -> Hypergraph3:
    name, n = kind.name, kind.n
    if name == "complete":
        return from_triples(n, combinations(range(n), 3))
    if name == "complete_plus_isolated":
        return from_triples(n + kind.extra, combinations(range(n), 3))
    if name == "full_star":
        return partial_star(n, 0, range(1, n))
    if name == "starplus":
        star = partial_star(n, 0, range(1, n))
        return from_triples(n, list(star.edges) + [(1, 2, 3)])
    if name == "partial_star":
        return partial_star(n, kind.centre, kind.support)
    if name == "sp":
        return f_star(_P, n)
    if name == "sk":
        return f_star(_K, n)
    if name == "balloon":
        # x=0, y=1..3, z=4..6, the star S_{n-3} lives on V minus the z's
        base = [0, 1, 2, 3] + list(range(7, n))
        edges = [(0, a, b) for a, b in combinations(base[1:], 2)]
        edges += [(1, 2, 3), (4, 5, 6)]
        edges += [(0, y, z) for y in (1, 2, 3) for z in (4, 5, 6)]
        return from_triples(n, edges)
    if name == "compact_balloon":
        # x=0, y=1..2, z=3..4
        base = [0, 1, 2] + list(range(5, n))
        edges = [(0, a, b) for a, b in combinations(base[1:], 2)]
        edges += [(1, 2, 3), (1, 2, 4), (0, 3, 4)]
        edges += [(0, y, z) for y in (1, 2) for z in (3, 4)]
        return from_triples(n, edges)
    if name == "c4":
        return cycle_c4(kind.vertex_count)
    if name == "path_member":
        return pad(path_member(kind.signature), kind.vertex_count)
    if name == "linear_path":
        return from_triples(n, [(2 * i, 2 * i + 1, 2 * i + 2) for i in range(kind.length)])
    if name == "matching":
        return from_triples(n, [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(kind.length)])
    raise AssertionError(name)


def expected_size(kind: ConstructionKind) -> int:
    """Closed-form edge count of ``construct(kind)``."""
    name, n = kind.name, kind.n
    if name in ("complete", "complete_plus_isolated"):
        return comb(n, 3)
    if name == "full_star":
        return comb(n - 1, 2)
    if name == "starplus":
        return comb(n - 1, 2) + 1
    if name == "partial_star":
        rest = n - 1 - len(kind.support)
        return comb(n - 1, 2) - comb(rest, 2)
    if name == "sp":
        return 5 * n - 18
    if name == "sk":
        return 4 * n - 10
    if name == "balloon":
        return comb(n - 4, 2) + 11
    if name == "compact_balloon":
        return comb(n - 3, 2) + 7
    if name == "c4":
        return 4
    if name == "path_member":
        return len(kind.signature) + 1
    if name in ("linear_path", "matching"):
        return kind.length
    raise AssertionError(name)


P4 = FamilySpec.of(PatternSpec.minimal_path(4))
M3 = FamilySpec.of(PatternSpec.matching(3))


def self_check(kind: ConstructionKind) -> dict[str, bool]:
    """Run the detectors against the freeness/containment claims for ``kind``."""
    H = construct(kind)
    report = {"size": len(H) == expected_size(kind)}
    name = kind.name
    if name in ("sp", "sk"):
        report["p4_free"] = is_family_free(H, P4)
        report["m3_free"] = is_family_free(H, M3)
        report["contains_c4"] = find_minimal_cycle(H, 4) is not None
    elif name == "balloon":
        report["p4_free"] = is_family_free(H, P4)
        # B_8 (table row only) has too few star vertices for a third disjoint edge
        if kind.n >= 9:
            report["contains_m3"] = matching_number(H) == 3
    elif name == "compact_balloon":
        report["p4_free"] = is_family_free(H, P4)
        report["not_in_starplus"] = embeds(H, construct(ConstructionKind.starplus(kind.n))) is None
    elif name in ("full_star", "starplus", "partial_star"):
        report["p4_free"] = is_family_free(H, P4)
        if name != "starplus":
            report["intersecting"] = matching_number(H) <= 1
    elif name == "complete":
        report["p4_free"] = is_family_free(H, P4) == (kind.n <= 6)
    elif name == "complete_plus_isolated":
        report["p4_free"] = is_family_free(H, P4) == (kind.n <= 6)
    elif name == "c4":
        report["contains_c4"] = find_minimal_cycle(H, 4) is not None
        report["p4_free"] = is_family_free(H, P4)
    elif name == "path_member":
        report["is_minimal_path"] = find_minimal_path(H, len(kind.signature) + 1) is not None
    elif name == "linear_path":
        report["is_linear_path"] = find_linear_path(H, kind.length) is not None
    elif name == "matching":
        report["matching_number"] = matching_number(H) == kind.length
    return report


def parse_kind(name: str, n: int) -> ConstructionKind:
    """CLI helper: ``--kind`` names mapped to parameterised kinds."""
    aliases = {
        "k": "complete",
        "complete": "complete",
        "star": "full_star",
        "full_star": "full_star",
        "starplus": "starplus",
        "sp": "sp",
        "sk": "sk",
        "balloon": "balloon",
        "b": "balloon",
        "compact_balloon": "compact_balloon",
        "cb": "compact_balloon",
        "c4": "c4",
    }
    key = name.lower().replace("-", "_")
    if key == "k6k1":
        return ConstructionKind.complete_plus_isolated(6, max(n - 6, 0) if n else 1)
    if key not in aliases:
        raise ValueError(f"unknown construction {name!r}")
    return ConstructionKind(aliases[key], n)
