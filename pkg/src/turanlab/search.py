"""Exact Turán solver for 3-graphs.

Graphs are grown one vertex at a time.  Every n-vertex graph arises from
some (n-1)-vertex graph by adding a vertex of minimum degree, and deleting
a minimum-degree vertex from a graph with ``e`` edges keeps at least
``e - floor(3e/n)`` of them, so a target edge count at the top translates
into a threshold at every level.  Each level is deduplicated by canonical
form.  A new vertex's link is chosen as an independent set in a conflict
structure: single pairs whose edge would complete a forbidden pattern and
pairs of pairs that complete one together.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Union

import numpy as np

from .h3core import (
    CanonicalForm,
    Hypergraph3,
    canonical_form,
    canonical_form_edges,
    embeds,
    from_triples,
    induced,
    is_connected,
    pad,
    pair_unrank,
)
from .patterns import FamilySpec, PatternSpec, _max_matching, family_witness, find_in_masks, through_in_masks

log = logging.getLogger(__name__)

__all__ = [
    "Maximize",
    "DecideAtLeast",
    "EnumerateExtremal",
    "SearchConfig",
    "SearchStats",
    "TuranRecord",
    "Decision",
    "turan_exact",
    "turan_order",
    "turan_hierarchy",
    "turan_conditional",
    "decide_exists",
    "enumerate_extremal",
    "level_thresholds",
    "brute_force_turan",
]

CHECK_EVERY = 1 << 12


# ---------------------------------------------------------------------------
# configuration and results


@dataclass(frozen=True)
class Maximize:
    def __str__(self):
        return "max"


@dataclass(frozen=True)
class DecideAtLeast:
    t: int

    def __str__(self):
        return f"decide:{self.t}"


@dataclass(frozen=True)
class EnumerateExtremal:
    value: int

    def __str__(self):
        return f"enum:{self.value}"


Mode = Union[Maximize, DecideAtLeast, EnumerateExtremal]


@dataclass(frozen=True)
class SearchConfig:
    family: FamilySpec
    n: int
    mode: Mode = field(default_factory=Maximize)
    connected_only: bool = False
    required_subgraph: Hypergraph3 | None = None
    excluded_supergraph_classes: tuple[Hypergraph3, ...] = ()
    time_budget: float = 3600.0
    worker_count: int = 1
    node_limit: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not self.time_budget > 0:
            raise ValueError("time budget must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        object.__setattr__(self, "excluded_supergraph_classes", tuple(self.excluded_supergraph_classes))
        if self.required_subgraph is not None and self.required_subgraph.n > self.n:
            raise ValueError("required subgraph has more vertices than n")

    def replace(self, **changes) -> SearchConfig:
        from dataclasses import replace

        return replace(self, **changes)


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: int = 0
    prunes: dict = field(default_factory=lambda: {"bound": 0, "pattern": 0, "orbit": 0})

    def merge(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        for k, v in other.prunes.items():
            self.prunes[k] = self.prunes.get(k, 0) + v


@dataclass
class TuranRecord:
    """Outcome of a Turán search; ``extremal`` is sorted by canonical bytes."""

    family: str
    n: int
    order: int
    value: int | None
    extremal: list[CanonicalForm]
    complete: bool
    stats: SearchStats = field(default_factory=SearchStats)
    connected: bool = False
    required: str | None = None

    @property
    def key(self) -> tuple:
        return (self.family, self.n, self.order, self.connected, self.required)

    def graphs(self) -> list[Hypergraph3]:
        return [c.to_hypergraph() for c in self.extremal]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "order": self.order,
            "connected": self.connected,
            "required": self.required,
            "value": self.value,
            "complete": self.complete,
            "extremal": [c.hex() for c in self.extremal],
            "nodes": self.stats.nodes,
            "elapsed_ms": self.stats.elapsed_ms,
            "prunes": dict(self.stats.prunes),
        }

    @classmethod
    def from_json(cls, d: dict) -> TuranRecord:
        stats = SearchStats(d.get("nodes", 0), d.get("elapsed_ms", 0), dict(d.get("prunes", {})))
        return cls(
            family=d["family"],
            n=d["n"],
            order=d.get("order", 1),
            value=d["value"],
            extremal=[CanonicalForm.from_hex(h) for h in d.get("extremal", [])],
            complete=d["complete"],
            stats=stats,
            connected=d.get("connected", False),
            required=d.get("required"),
        )


@dataclass
class Decision:
    witness: Hypergraph3 | None
    complete: bool
    stats: SearchStats

    @property
    def indeterminate(self) -> bool:
        return self.witness is None and not self.complete


def level_thresholds(n: int, target: int) -> list[int]:
    """``thr[k]``: fewest edges a k-vertex prefix of a ``target``-edge graph can have."""
    thr = [0] * (n + 1)
    if n == 0:
        return thr
    thr[n] = max(target, 0)
    for k in range(n, 0, -1):
        t = thr[k]
        thr[k - 1] = max(t - (3 * t) // k, 0) if k >= 3 else 0
    return thr


# ---------------------------------------------------------------------------
# pair bitmasks: pair (a, b) with a < b has index C(b, 2) + a, so the pairs of
# {0..k-1} are exactly the indices below C(k, 2) for every k.

_MAXN = 24
_PAIRV = [(1 << a) | (1 << b) for a, b in (pair_unrank(i) for i in range(comb(_MAXN, 2)))]
_STAR = [0] * _MAXN
for _i, _pm in enumerate(_PAIRV):
    for _v in range(_MAXN):
        if _pm >> _v & 1:
            _STAR[_v] |= 1 << _i
_STAR64 = np.array([x & ((1 << 64) - 1) for x in _STAR[:12]], dtype=np.uint64)
_MEET: dict[int, int] = {}


def _meet(S: int) -> int:
    """Bitmask of pairs meeting the vertex set ``S``."""
    got = _MEET.get(S)
    if got is None:
        got = 0
        x = S
        while x:
            low = x & -x
            got |= _STAR[low.bit_length() - 1]
            x ^= low
        if len(_MEET) < 1 << 20:
            _MEET[S] = got
    return got


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _triple(mask: int) -> tuple[int, int, int]:
    a = (mask & -mask).bit_length() - 1
    mask &= mask - 1
    b = (mask & -mask).bit_length() - 1
    mask &= mask - 1
    return (a, b, mask.bit_length() - 1)


# ---------------------------------------------------------------------------
# link constraints for the vertex k added to the edge list ``E``


class _Constraints:
    __slots__ = ("forbidden", "conflict", "incremental")

    def __init__(self, npairs: int):
        self.forbidden = 0
        self.conflict = [0] * npairs
        self.incremental: list[PatternSpec] = []


def _p4_constraints(E: list[int], k: int, C: _Constraints) -> None:
    npairs = comb(k, 2)
    if _p4_kernel is not None and npairs <= 63 and E:
        arr = np.array(E, dtype=np.int64)
        conf = np.zeros(max(npairs, 1), dtype=np.uint64)
        F = int(_p4_kernel(arr, k, _STAR64, conf))
        C.forbidden |= F
        C.conflict = [c | d for c, d in zip(C.conflict, conf.tolist())]
        return
    full = (1 << npairs) - 1
    m = len(E)
    mE = [_meet(e) & full for e in E]
    conf = C.conflict
    F = 0
    for gi in range(m):
        g = E[gi]
        mg = mE[gi]
        ng = [j for j in range(m) if j != gi and E[j] & g]
        for hi in ng:
            h = E[hi]
            mh = mE[hi]
            avoid = full & ~(mg | mh)
            # new edge at an end of f-g-h: p meets f and stays off g and h
            reach = 0
            for fi in ng:
                if not E[fi] & h:
                    reach |= mE[fi]
            F |= avoid & reach
            # with h in the role of f: new edge second in d-p-h-g
            base = mh & ~mg
            if not base:
                continue
            U = g | h
            dm = 0
            for di in range(m):
                if not E[di] & U:
                    dm |= mE[di]
            F |= base & dm
            # two new edges at the end: p inside V - (h | g), q meets h, avoids g
            if avoid:
                for p in _bits(avoid):
                    conf[p] |= base
                for q in _bits(base):
                    conf[q] |= avoid
    # two new edges in the middle: d, g disjoint; p meets d not g, q meets g not d
    for i in range(m):
        for j in range(i + 1, m):
            if E[i] & E[j]:
                continue
            P = mE[i] & ~mE[j]
            Q = mE[j] & ~mE[i]
            if P and Q:
                for p in _bits(P):
                    conf[p] |= Q
                for q in _bits(Q):
                    conf[q] |= P
    C.forbidden |= F


try:  # optional compiled kernel, same logic as the loop above on 64-bit pair masks
    import numba

    @numba.njit(cache=True)
    def _p4_kernel(E, k, star, conf):  # pragma: no cover - compiled
        m = E.shape[0]
        npairs = k * (k - 1) // 2
        full = (np.uint64(1) << np.uint64(npairs)) - np.uint64(1)
        mE = np.zeros(m, dtype=np.uint64)
        for i in range(m):
            x = E[i]
            acc = np.uint64(0)
            for v in range(k + 1):
                if (x >> v) & 1:
                    acc |= star[v]
            mE[i] = acc & full
        F = np.uint64(0)
        for gi in range(m):
            g = E[gi]
            mg = mE[gi]
            for hi in range(m):
                if hi == gi or not (E[hi] & g):
                    continue
                h = E[hi]
                mh = mE[hi]
                avoid = full & ~(mg | mh)
                reach = np.uint64(0)
                for fi in range(m):
                    if fi != gi and (E[fi] & g) and not (E[fi] & h):
                        reach |= mE[fi]
                F |= avoid & reach
                base = mh & ~mg
                if base == 0:
                    continue
                U = g | h
                dm = np.uint64(0)
                for di in range(m):
                    if not (E[di] & U):
                        dm |= mE[di]
                F |= base & dm
                if avoid != 0:
                    for p in range(npairs):
                        if (avoid >> np.uint64(p)) & np.uint64(1):
                            conf[p] |= base
                        if (base >> np.uint64(p)) & np.uint64(1):
                            conf[p] |= avoid
        for i in range(m):
            for j in range(i + 1, m):
                if E[i] & E[j]:
                    continue
                P = mE[i] & ~mE[j]
                Q = mE[j] & ~mE[i]
                if P != 0 and Q != 0:
                    for p in range(npairs):
                        if (P >> np.uint64(p)) & np.uint64(1):
                            conf[p] |= Q
                        if (Q >> np.uint64(p)) & np.uint64(1):
                            conf[p] |= P
        return F

except ImportError:  # pragma: no cover
    _p4_kernel = None


def _matching_constraints(E: list[int], k: int, s: int, C: _Constraints) -> None:
    # one new edge per matching; p is forbidden iff the old edges missing p
    # already hold s-1 disjoint edges
    if s == 1:
        C.forbidden |= (1 << comb(k, 2)) - 1
        return
    cache: dict[int, bool] = {}
    for p in range(comb(k, 2)):
        pm = _PAIRV[p]
        rest = [e for e in E if not e & pm]
        key = hash(tuple(rest))
        hit = cache.get(key)
        if hit is None:
            hit = len(_max_matching(rest, limit=s - 1)) >= s - 1
            cache[key] = hit
        if hit:
            C.forbidden |= 1 << p


def _generic_constraints(E: list[int], k: int, pattern: PatternSpec, C: _Constraints) -> None:
    npairs = comb(k, 2)
    kb = 1 << k
    single = 0
    for p in range(npairs):
        masks = E + [_PAIRV[p] | kb]
        if through_in_masks(masks, len(E), pattern, k + 1):
            single |= 1 << p
    C.forbidden |= single
    allowed = [p for p in range(npairs) if not single >> p & 1]
    for i, p in enumerate(allowed):
        for q in allowed[i + 1 :]:
            masks = E + [_PAIRV[p] | kb, _PAIRV[q] | kb]
            if through_in_masks(masks, len(E), pattern, k + 1):
                C.conflict[p] |= 1 << q
                C.conflict[q] |= 1 << p


def _constraints(E: list[int], k: int, family: FamilySpec) -> _Constraints:
    C = _Constraints(comb(k, 2))
    for pat in family.patterns:
        if pat.kind == "minimal_path" and pat.param == 4:
            _p4_constraints(E, k, C)
        elif pat.kind == "matching":
            _matching_constraints(E, k, pat.param, C)
        elif pat.max_vertex_load <= 2:
            _generic_constraints(E, k, pat, C)
        else:
            C.incremental.append(pat)
    return C


# ---------------------------------------------------------------------------
# the search proper


class _Budget(Exception):
    pass


class _Found(Exception):
    pass


class _Searcher:
    """One attempt at a fixed target edge count."""

    def __init__(self, cfg: SearchConfig, target: int, stop_at_first: bool, deadline: float, shared=None):
        self.cfg = cfg
        self.n = cfg.n
        self.target = target
        self.thr = level_thresholds(cfg.n, target)
        self.stop_at_first = stop_at_first
        self.deadline = deadline
        self.shared = shared
        self.stats = SearchStats()
        self.seen: list[set] = [set() for _ in range(cfg.n + 1)]
        self.leaves: dict[bytes, tuple[int, list[int]]] = {}
        self.best = target
        self.timed_out = False
        self._tick = 0
        self._excluded = [pad(X, cfg.n) for X in cfg.excluded_supergraph_classes]
        self._exdeg = [_degree_profile(X.n, X.masks) for X in self._excluded]
        self._shadows = _shadows(cfg.required_subgraph, cfg.n) if cfg.required_subgraph is not None else {}

    # budget ------------------------------------------------------------------
    def _count(self, k: int = 1) -> None:
        self.stats.nodes += k
        self._tick += k
        if self._tick >= CHECK_EVERY:
            self._tick = 0
            if time.monotonic() > self.deadline:
                raise _Budget
            lim = self.cfg.node_limit
            if lim is not None and self.stats.nodes > lim:
                raise _Budget

    # leaf predicates -----------------------------------------------------------
    def _accept(self, E: list[int]) -> bool:
        cfg = self.cfg
        n = self.n
        if cfg.connected_only or cfg.required_subgraph is not None or self._excluded:
            H = from_triples(n, [_triple(m) for m in E])
            if cfg.connected_only and not is_connected(H):
                return False
            if cfg.required_subgraph is not None and embeds(cfg.required_subgraph, H) is None:
                return False
            if self._excluded:
                prof = _degree_profile(n, E)
                for X, xprof in zip(self._excluded, self._exdeg):
                    if len(E) > len(X) or any(a > b for a, b in zip(prof, xprof)):
                        continue
                    if embeds(H, X) is not None:
                        return False
        return True

    def _holds_shadow(self, k: int, E: list[int]) -> bool:
        options = self._shadows.get(k)
        if not options:
            return True
        H = from_triples(k, [_triple(m) for m in E])
        return any(embeds(S, H) is not None for S in options)

    # expansion -----------------------------------------------------------------
    def children(self, k: int, E: list[int], degs: list[int]) -> list[tuple[int, list[int], list[int]]]:
        """Distinct graphs on ``k+1`` vertices extending ``(E, degs)`` on ``k``."""
        n_new = k + 1
        e = len(E)
        need = self.thr[n_new] - e
        if n_new == self.n:
            need = max(need, self._leaf_floor() - e)
        if k <= 2:
            cap = comb(k, 2)
        else:
            cap = min(comb(k, 2), (3 * e) // (k - 2), min(degs) + k - 1)
        if need > cap:
            self.stats.prunes["bound"] += 1
            return []
        need = max(need, 0)
        C = _constraints(E, k, self.cfg.family)
        npairs = comb(k, 2)
        allowed = ((1 << npairs) - 1) & ~C.forbidden
        self.stats.prunes["pattern"] += npairs - allowed.bit_count()
        conf = C.conflict
        kb = 1 << k
        out = []
        seen = self.seen[n_new]
        incremental = C.incremental

        def emit(link: int, size: int) -> None:
            # new vertex must have minimum degree
            ldeg = [(link & _STAR[v]).bit_count() for v in range(k)]
            for v in range(k):
                if degs[v] + ldeg[v] < size:
                    self.stats.prunes["bound"] += 1
                    return
            newE = E + [_PAIRV[p] | kb for p in _bits(link)]
            cf = canonical_form_edges(n_new, sorted(_triple(m) for m in newE)).bytes
            if cf in seen:
                self.stats.prunes["orbit"] += 1
                return
            seen.add(cf)
            newdeg = [degs[v] + ldeg[v] for v in range(k)] + [size]
            out.append((cf, newE, newdeg))

        chosen_masks: list[int] = []

        def rec(avail: int, link: int, size: int) -> None:
            self._count()
            if size >= need:
                emit(link, size)
            if size == cap:
                return
            while avail:
                if size + avail.bit_count() < need:
                    self.stats.prunes["bound"] += 1
                    return
                low = avail & -avail
                p = low.bit_length() - 1
                avail ^= low
                if incremental:
                    em = _PAIRV[p] | kb
                    masks = E + chosen_masks + [em]
                    if any(through_in_masks(masks, len(masks) - 1, pat, n_new) for pat in incremental):
                        self.stats.prunes["pattern"] += 1
                        continue
                    chosen_masks.append(em)
                    rec(avail & ~conf[p], link | low, size + 1)
                    chosen_masks.pop()
                else:
                    rec(avail & ~conf[p], link | low, size + 1)

        rec(allowed, 0, 0)
        return out

    def _leaf_floor(self) -> int:
        if self.shared is not None:
            with self.shared.get_lock():
                return max(self.best, self.shared.value) if not self.stop_at_first else self.target
        return self.best if not self.stop_at_first else self.target

    def _leaf(self, cf: bytes, E: list[int]) -> None:
        size = len(E)
        if size < self._leaf_floor():
            return
        if not self._accept(E):
            return
        self.leaves[cf] = (size, E)
        if size > self.best:
            self.best = size
            self.thr = level_thresholds(self.n, size)
            if self.shared is not None:
                with self.shared.get_lock():
                    if size > self.shared.value:
                        self.shared.value = size
        if self.stop_at_first:
            raise _Found

    def dfs(self, k: int, E: list[int], degs: list[int]) -> None:
        if k == self.n:
            return
        kids = self.children(k, E, degs)
        if k + 1 == self.n:
            for cf, newE, _ in kids:
                self._leaf(cf, newE)
            return
        kids.sort(key=lambda t: -len(t[1]))
        for _, newE, newdeg in kids:
            # thresholds can only rise while we are inside this subtree
            if len(newE) < self.thr[k + 1]:
                self.stats.prunes["bound"] += 1
                continue
            if not self._holds_shadow(k + 1, newE):
                self.stats.prunes["pattern"] += 1
                continue
            self.dfs(k + 1, newE, newdeg)

    def run_from(self, nodes) -> None:
        try:
            for k, E, degs in nodes:
                if k == self.n:
                    cf = canonical_form_edges(k, sorted(_triple(m) for m in E)).bytes
                    self._leaf(cf, E)
                else:
                    self.dfs(k, E, degs)
        except _Found:
            pass
        except _Budget:
            self.timed_out = True

    def frontier(self, depth: int) -> list[tuple[int, list[int], list[int]]]:
        """All distinct prefixes on ``depth`` vertices (breadth first)."""
        self.seen = [set() for _ in range(self.n + 1)]
        level = [(0, [], [])]
        for k in range(depth):
            nxt = []
            for _, E, degs in level:
                for _cf, newE, newdeg in self.children(k, E, degs):
                    nxt.append((k + 1, newE, newdeg))
            level = nxt
        return level


def _shadows(G: Hypergraph3, n: int) -> dict[int, list[Hypergraph3]]:
    """For each prefix order k < n, the graphs one of which a k-vertex prefix must contain.

    A host containing ``G`` loses at most ``n - k`` vertices of the copy when
    cut down to k vertices, so the prefix holds ``G`` minus some
    ``min(n - k, |V(G)|)`` vertices.  Only the minimal such graphs are kept.
    """
    support = sorted({x for e in G.edges for x in e})
    G0 = induced(G, support)
    g = G0.n
    out: dict[int, list[Hypergraph3]] = {}
    for k in range(n - 1, -1, -1):
        d = min(n - k, g)
        found: dict = {}
        trivial = False
        for W in combinations(range(g), g - d):
            S = induced(G0, W)
            if len(S) == 0:
                trivial = True
                break
            S = induced(S, sorted({x for e in S.edges for x in e}))
            found.setdefault(canonical_form(S), S)
        if trivial:
            break
        shapes = sorted(found.values(), key=lambda S: (len(S), S.n))
        minimal: list[Hypergraph3] = []
        for S in shapes:
            if not any(embeds(T, S) is not None for T in minimal):
                minimal.append(S)
        out[k] = minimal
    return out


def _degree_profile(n: int, masks) -> list[int]:
    deg = [0] * n
    for m in masks:
        for v in _bits(m):
            deg[v] += 1
    return sorted(deg, reverse=True)


# ---------------------------------------------------------------------------
# parallel driver

_SHARED = None


def _init_worker(shared) -> None:
    global _SHARED
    _SHARED = shared


def _worker(args):
    cfg, target, stop_at_first, deadline_left, nodes = args
    s = _Searcher(cfg, target, stop_at_first, time.monotonic() + deadline_left, _SHARED)
    s.run_from(nodes)
    return s.leaves, s.stats, s.timed_out


def _attempt(cfg: SearchConfig, target: int, stop_at_first: bool, deadline: float):
    """Collect every accepted graph with at least ``target`` edges (or the first one)."""
    n = cfg.n
    if cfg.worker_count <= 1 or n < 5:
        s = _Searcher(cfg, target, stop_at_first, deadline)
        s.run_from([(0, [], [])])
        return s.leaves, s.stats, s.timed_out
    probe = _Searcher(cfg, target, stop_at_first, deadline)
    depth = 0
    nodes = [(0, [], [])]
    try:
        while depth < n - 2 and len(nodes) < 4 * cfg.worker_count:
            depth += 1
            nodes = probe.frontier(depth)
    except _Budget:
        return {}, probe.stats, True
    stats = probe.stats
    chunks = [nodes[i :: 4 * cfg.worker_count] for i in range(4 * cfg.worker_count)]
    chunks = [c for c in chunks if c]
    ctx = mp.get_context("fork")
    shared = ctx.Value("i", target)
    leaves: dict = {}
    timed_out = False
    left = max(deadline - time.monotonic(), 0.001)
    with ProcessPoolExecutor(cfg.worker_count, mp_context=ctx, initializer=_init_worker, initargs=(shared,)) as ex:
        for lv, st, to in ex.map(_worker, [(cfg, target, stop_at_first, left, c) for c in chunks]):
            leaves.update(lv)
            stats.merge(st)
            timed_out |= to
            if stop_at_first and lv:
                break
    return leaves, stats, timed_out


# ---------------------------------------------------------------------------
# bounds used to drive the descending search


def _greedy_witness(cfg: SearchConfig, tries: int = 24) -> Hypergraph3 | None:
    """Best graph found by randomised greedy insertion that satisfies the leaf predicates."""
    n = cfg.n
    triples = [_triple(m) for m in _all_triple_masks(n)]
    rng = random.Random(0x7E1)
    best = None
    dummy = _Searcher(cfg, 0, False, float("inf"))
    for attempt in range(tries):
        order = list(triples)
        if attempt:
            rng.shuffle(order)
        masks: list[int] = []
        for t in order:
            m = (1 << t[0]) | (1 << t[1]) | (1 << t[2])
            masks.append(m)
            if any(through_in_masks(masks, len(masks) - 1, p, n) for p in cfg.family.patterns):
                masks.pop()
        if dummy._accept(masks) and (best is None or len(masks) > len(best)):
            best = list(masks)
    if best is None:
        return None
    return from_triples(n, [_triple(m) for m in best])


def _all_triple_masks(n: int) -> list[int]:
    return [(1 << a) | (1 << b) | (1 << c) for c in range(n) for b in range(c) for a in range(b)]


_PLAIN_CACHE: dict[tuple[str, int], int] = {}


def _plain_upper(family: FamilySpec, n: int, deadline: float, workers: int) -> int:
    """An upper bound for ex(n; family) from the exact value at n-1 by vertex averaging."""
    if n < 3:
        return 0
    if n <= 4:
        return comb(n, 3)
    prev = _plain_value(family, n - 1, deadline, workers)
    if prev is None:
        return comb(n, 3)
    return min(comb(n, 3), (prev * n) // (n - 3))


def _plain_value(family: FamilySpec, n: int, deadline: float, workers: int) -> int | None:
    key = (family.id, n)
    if key not in _PLAIN_CACHE:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return None
        cfg = SearchConfig(family, n, time_budget=remaining, worker_count=workers)
        rec = _maximize(cfg, order=1, upper=None)
        if not rec.complete:
            return None
        _PLAIN_CACHE[key] = rec.value
    return _PLAIN_CACHE[key]


def _finish(cfg: SearchConfig, order: int, leaves: dict, stats: SearchStats, complete: bool, start: float,
            fallback: Hypergraph3 | None = None) -> TuranRecord:
    stats.elapsed_ms = int(round((time.monotonic() - start) * 1000))
    if leaves:
        value = max(size for size, _ in leaves.values())
        forms = sorted(CanonicalForm(cfg.n, cf) for cf, (size, _) in leaves.items() if size == value)
    elif fallback is not None:
        value = len(fallback)
        forms = [canonical_form(fallback)]
    else:
        value = 0 if complete and _trivial_ok(cfg) else None
        forms = [canonical_form(Hypergraph3(cfg.n, 0))] if value == 0 else []
    # full re-verification of everything we hand out
    for cf in forms:
        H = cf.to_hypergraph()
        if family_witness(H, cfg.family) is not None:
            raise AssertionError(f"search produced a non-free graph {cf.hex()}")
    req = canonical_form(cfg.required_subgraph).hex() if cfg.required_subgraph is not None else None
    return TuranRecord(cfg.family.id, cfg.n, order, value, forms, complete, stats, cfg.connected_only, req)


def _trivial_ok(cfg: SearchConfig) -> bool:
    return _Searcher(cfg, 0, False, float("inf"))._accept([])


def _maximize(cfg: SearchConfig, order: int, upper: int | None) -> TuranRecord:
    start = time.monotonic()
    deadline = start + cfg.time_budget
    stats = SearchStats()
    n = cfg.n
    if n < 3:
        return _finish(cfg, order, {}, stats, True, start)
    witness = _greedy_witness(cfg)
    low = len(witness) if witness is not None else 0
    if upper is None:
        upper = _plain_upper(cfg.family, n, deadline, cfg.worker_count)
    upper = min(upper, comb(n, 3))
    t = upper
    while t >= max(low, 1):
        leaves, st, timed_out = _attempt(cfg, t, False, deadline)
        stats.merge(st)
        if timed_out:
            return _finish(cfg, order, leaves, stats, False, start, witness)
        if leaves:
            return _finish(cfg, order, leaves, stats, True, start)
        log.debug("n=%d: nothing with %d edges", n, t)
        t -= 1
    if witness is not None and low >= 1:
        return _finish(cfg, order, {}, stats, False, start, witness)
    # only the empty graph (if it qualifies) remains
    return _finish(cfg, order, {}, stats, True, start)


# ---------------------------------------------------------------------------
# public operations


def turan_exact(cfg: SearchConfig) -> TuranRecord:
    """ex_3(n; family) and all extremal graphs up to isomorphism."""
    if not isinstance(cfg.mode, Maximize):
        raise ValueError("turan_exact needs mode Maximize")
    if cfg.excluded_supergraph_classes:
        raise ValueError("use turan_order for higher-order numbers")
    return _maximize(cfg, order=1, upper=None)


def turan_order(cfg: SearchConfig, s: int, lower: list[TuranRecord] | None = None) -> TuranRecord:
    """Order-``s`` Turán number given complete records for orders ``1..s-1``."""
    if s < 1:
        raise ValueError("order must be >= 1")
    if s == 1:
        return turan_exact(cfg) if not (cfg.connected_only or cfg.required_subgraph) else turan_conditional(cfg)
    lower = sorted(lower or [], key=lambda r: r.order)
    have = {r.order: r for r in lower}
    missing = [o for o in range(1, s) if o not in have or not have[o].complete]
    if missing:
        raise ValueError(f"missing complete lower-order records for orders {missing}")
    excluded = []
    for o in range(1, s):
        r = have[o]
        if r.n != cfg.n:
            raise ValueError("lower-order record is for a different n")
        excluded.extend(r.graphs())
    prev = have[s - 1].value
    sub = cfg.replace(excluded_supergraph_classes=tuple(excluded), mode=Maximize())
    if cfg.connected_only or cfg.required_subgraph is not None:
        _check_required(cfg)
    return _maximize(sub, order=s, upper=prev - 1 if prev else 0)


def turan_hierarchy(cfg: SearchConfig, s: int) -> list[TuranRecord]:
    """Records for orders ``1..s``; stops early if an order has no candidates left."""
    out: list[TuranRecord] = []
    for o in range(1, s + 1):
        rec = turan_order(cfg, o, out)
        out.append(rec)
        if not rec.complete or rec.value is None:
            break
    return out


def _check_required(cfg: SearchConfig) -> None:
    G = cfg.required_subgraph
    if G is not None and family_witness(G, cfg.family) is not None:
        raise ValueError("the required subgraph itself contains a forbidden pattern")


def turan_conditional(cfg: SearchConfig) -> TuranRecord:
    """Maximum over family-free hosts containing ``required_subgraph`` (and connected if flagged)."""
    _check_required(cfg)
    if cfg.excluded_supergraph_classes:
        raise ValueError("use turan_order for higher-order conditional numbers")
    return _maximize(cfg.replace(mode=Maximize()), order=1, upper=None)


def decide_exists(cfg: SearchConfig) -> Decision:
    """Is there an accepted graph with at least ``t`` edges?  Exhaustive when it says no."""
    if not isinstance(cfg.mode, DecideAtLeast):
        raise ValueError("decide_exists needs mode DecideAtLeast")
    start = time.monotonic()
    t = cfg.mode.t
    if t <= 0:
        H = Hypergraph3(cfg.n, 0)
        ok = _trivial_ok(cfg)
        if ok:
            return Decision(H, True, SearchStats())
    if t > comb(cfg.n, 3) or cfg.n < 3:
        return Decision(None, True, SearchStats())
    leaves, stats, timed_out = _attempt(cfg, max(t, 1), True, start + cfg.time_budget)
    stats.elapsed_ms = int(round((time.monotonic() - start) * 1000))
    if leaves:
        _, E = next(iter(leaves.values()))
        H = from_triples(cfg.n, [_triple(m) for m in E])
        if len(H) < t or family_witness(H, cfg.family) is not None:
            raise AssertionError("decision witness failed re-verification")
        return Decision(H, True, stats)
    return Decision(None, not timed_out, stats)


def enumerate_extremal(cfg: SearchConfig) -> TuranRecord:
    """All graphs with ``value`` edges up to isomorphism (value raised if beaten)."""
    if not isinstance(cfg.mode, EnumerateExtremal):
        raise ValueError("enumerate_extremal needs mode EnumerateExtremal")
    start = time.monotonic()
    v = cfg.mode.value
    leaves, stats, timed_out = _attempt(cfg, max(v, 1), False, start + cfg.time_budget)
    return _finish(cfg, 1, leaves, stats, not timed_out, start)


def brute_force_turan(n: int, family: FamilySpec) -> tuple[int, list[CanonicalForm]]:
    """Maximum over all ``2^C(n,3)`` edge sets (only for tiny ``n``)."""
    masks = _all_triple_masks(n)
    m = len(masks)
    if m > 20:
        raise ValueError("brute force is limited to n <= 6")
    best = -1
    forms: set[CanonicalForm] = set()
    for bits in range(1 << m):
        size = bits.bit_count()
        if size < best:
            continue
        chosen = [masks[i] for i in range(m) if bits >> i & 1]
        if any(find_in_masks(chosen, p, n) is not None for p in family.patterns):
            continue
        cf = canonical_form_edges(n, sorted(_triple(x) for x in chosen))
        if size > best:
            best, forms = size, {cf}
        else:
            forms.add(cf)
    return max(best, 0), sorted(forms)
