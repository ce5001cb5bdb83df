"""Compiled twin of the colour-refinement canonical labelling in :mod:`h3core`.

Produces bit-identical certificates; codes are returned as little-endian
64-bit words.  Importing this module fails when numba is unavailable.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def _refine(n, inc_a, inc_b, deg, colors):
    L = 1
    for v in range(n):
        if deg[v] + 1 > L:
            L = deg[v] + 1
    seen = np.zeros(n + 1, dtype=np.int64)
    ncol = 0
    for v in range(n):
        if seen[colors[v]] == 0:
            seen[colors[v]] = 1
            ncol += 1
    rows = np.empty((n, L), dtype=np.int64)
    tmp = np.empty(L, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    new = np.empty(n, dtype=np.int64)
    while True:
        for v in range(n):
            rows[v, 0] = colors[v]
            d = deg[v]
            for j in range(d):
                x = colors[inc_a[v, j]]
                y = colors[inc_b[v, j]]
                if x <= y:
                    tmp[j] = x * n + y
                else:
                    tmp[j] = y * n + x
            tmp[:d].sort()
            for j in range(d):
                rows[v, 1 + j] = tmp[j]
            for j in range(d + 1, L):
                rows[v, j] = -1
        # insertion sort of vertices by row
        for i in range(n):
            order[i] = i
        for i in range(1, n):
            cur = order[i]
            j = i - 1
            while j >= 0:
                o = order[j]
                cmp = 0
                for t in range(L):
                    if rows[o, t] != rows[cur, t]:
                        cmp = 1 if rows[o, t] > rows[cur, t] else -1
                        break
                if cmp <= 0:
                    break
                order[j + 1] = o
                j -= 1
            order[j + 1] = cur
        c = 0
        new[order[0]] = 0
        for i in range(1, n):
            a = order[i - 1]
            b = order[i]
            differ = False
            for t in range(L):
                if rows[a, t] != rows[b, t]:
                    differ = True
                    break
            if differ:
                c += 1
            new[b] = c
        if c + 1 == ncol:
            return new.copy()
        ncol = c + 1
        for v in range(n):
            colors[v] = new[v]


@numba.njit(cache=True)
def canonical_words(n, edges, c3, c2, nwords):
    m = edges.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for i in range(m):
        for t in range(3):
            deg[edges[i, t]] += 1
    maxd = 1
    for v in range(n):
        if deg[v] > maxd:
            maxd = deg[v]
    inc_a = np.zeros((n, maxd), dtype=np.int64)
    inc_b = np.zeros((n, maxd), dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    present = np.zeros(c3[n] if n >= 3 else 1, dtype=np.bool_)
    for i in range(m):
        a = edges[i, 0]
        b = edges[i, 1]
        c = edges[i, 2]
        inc_a[a, fill[a]] = b
        inc_b[a, fill[a]] = c
        fill[a] += 1
        inc_a[b, fill[b]] = a
        inc_b[b, fill[b]] = c
        fill[b] += 1
        inc_a[c, fill[c]] = a
        inc_b[c, fill[c]] = b
        fill[c] += 1
        present[c3[c] + c2[b] + a] = True
    # twin representatives: transposition (u v) is an automorphism
    rep = np.arange(n)
    for v in range(n):
        if rep[v] != v:
            continue
        for u in range(v + 1, n):
            if rep[u] != u:
                continue
            ok = True
            for side in range(2):
                x = u if side == 0 else v
                y = v if side == 0 else u
                for j in range(deg[x]):
                    p = inc_a[x, j]
                    q = inc_b[x, j]
                    if p == y or q == y:
                        continue
                    s0 = y
                    s1 = p
                    s2 = q
                    if s0 > s1:
                        s0, s1 = s1, s0
                    if s1 > s2:
                        s1, s2 = s2, s1
                    if s0 > s1:
                        s0, s1 = s1, s0
                    if not present[c3[s2] + c2[s1] + s0]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                rep[u] = v
    best = np.zeros(nwords, dtype=np.uint64)
    have = False
    code = np.zeros(nwords, dtype=np.uint64)
    stack = np.empty((n * n + 2, n), dtype=np.int64)
    sp = 0
    start = np.zeros(n, dtype=np.int64)
    stack[0] = _refine(n, inc_a, inc_b, deg, start)
    sp = 1
    counts = np.zeros(n, dtype=np.int64)
    seen_twin = np.zeros(n, dtype=np.bool_)
    keyed = np.empty(n, dtype=np.int64)
    while sp > 0:
        sp -= 1
        colors = stack[sp].copy()
        counts[:] = 0
        for v in range(n):
            counts[colors[v]] += 1
        cell = -1
        for c in range(n):
            if counts[c] > 1:
                cell = c
                break
        if cell < 0:
            code[:] = 0
            for i in range(m):
                x = colors[edges[i, 0]]
                y = colors[edges[i, 1]]
                z = colors[edges[i, 2]]
                if x > y:
                    x, y = y, x
                if y > z:
                    y, z = z, y
                if x > y:
                    x, y = y, x
                r = c3[z] + c2[y] + x
                code[r >> 6] |= np.uint64(1) << np.uint64(r & 63)
            less = not have
            if have:
                for w in range(nwords - 1, -1, -1):
                    if code[w] != best[w]:
                        less = code[w] < best[w]
                        break
            if less:
                best[:] = code
                have = True
            continue
        seen_twin[:] = False
        for w in range(n):
            if colors[w] != cell or seen_twin[rep[w]]:
                continue
            seen_twin[rep[w]] = True
            for v in range(n):
                keyed[v] = 2 * colors[v] + (0 if v == w else 1)
            # renumber keyed values to 0..k-1 preserving order
            srt = np.unique(keyed)
            init = np.empty(n, dtype=np.int64)
            for v in range(n):
                init[v] = np.searchsorted(srt, keyed[v])
            stack[sp] = _refine(n, inc_a, inc_b, deg, init)
            sp += 1
    return best
