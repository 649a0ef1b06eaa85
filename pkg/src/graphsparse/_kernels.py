"""Hot kernels: canonical-code search and the sparse-window scan.

Both exist in two flavours sharing the same source: a numba-jitted build and
an interpreted numpy build. Selection is via GRAPHSPARSE_BACKEND=numba|python
(default: numba when importable). benchmarks/bench_kernels.py compares them.
"""

from __future__ import annotations

import itertools
import math
import os

import numpy as np

_ENV_FLAG = "GRAPHSPARSE_BACKEND"


def _canon_core(adj, n):
    """Lexicographically minimal upper-triangle bit string over vertex orderings.

    adj: int64 adjacency bitmask per vertex. Returns uint8 bit array of
    length n(n-1)/2 in column order (0,1),(0,2),(1,2),(0,3),...

    Backtracking over orderings with prefix pruning against the best code so
    far; whole-graph twins are interchangeable, so only one of each twin
    class is branched on per level.
    """
    nb = n * (n - 1) // 2
    best = np.full(nb, 2, np.uint8)  # sentinel: greater than any bit
    cur = np.zeros(nb, np.uint8)
    perm = np.zeros(n, np.int64)
    cand = np.zeros((n, n), np.int64)
    count = np.zeros(n, np.int64)
    idx = np.zeros(n, np.int64)
    tight = np.zeros(n + 1, np.uint8)
    usedmask = np.zeros(n + 1, np.int64)
    tight[0] = 1

    level = 0
    count[0] = _fill_candidates(adj, n, 0, cand)
    while level >= 0:
        descended = False
        while idx[level] < count[level]:
            v = cand[level, idx[level]]
            off = level * (level - 1) // 2
            t = tight[level]
            ok = True
            for i in range(level):
                b = np.uint8(adj[v] >> perm[i] & 1)
                cur[off + i] = b
                if t == 1:
                    if b > best[off + i]:
                        ok = False
                        break
                    if b < best[off + i]:
                        t = 0
            if not ok:
                idx[level] += 1
                continue
            perm[level] = v
            if level == n - 1:
                if t == 0:
                    for i in range(nb):
                        best[i] = cur[i]
                    # the current path now *is* the best prefix at every level
                    for i in range(n + 1):
                        tight[i] = 1
                idx[level] += 1
                continue
            tight[level + 1] = t
            usedmask[level + 1] = usedmask[level] | (1 << v)
            level += 1
            count[level] = _fill_candidates(adj, n, usedmask[level], cand)
            idx[level] = 0
            descended = True
            break
        if descended:
            continue
        level -= 1
        if level >= 0:
            idx[level] += 1
    return best


def _fill_candidates(adj, n, used, cand):
    """Unused vertices, one representative per whole-graph twin class.

    Writes into cand[row] where row = popcount(used), i.e. the search level.
    """
    k = 0
    row = 0
    u = used
    while u:
        u &= u - 1
        row += 1
    for v in range(n):
        if used >> v & 1:
            continue
        skip = False
        for j in range(k):
            w = cand[row, j]
            mb = (1 << v) | (1 << w)
            if (adj[v] | mb) == (adj[w] | mb):
                skip = True
                break
        if not skip:
            cand[row, k] = v
            k += 1
    return k


def _violation_core(a, n, table):
    """First 6-vertex window (lex order) holding >= 2 pattern hits, else -1s.

    a: uint8 dense adjacency matrix; table: uint8[1024] marking which 10-bit
    induced-subgraph codes are family members.
    """
    out = np.full(6, -1, np.int64)
    if n < 6:
        return out
    c = np.arange(6)
    local = np.zeros((6, 6), np.uint8)
    rem = np.zeros(5, np.int64)
    while True:
        for i in range(6):
            for j in range(6):
                local[i, j] = a[c[i], c[j]]
        hits = 0
        for d in range(6):
            k = 0
            for i in range(6):
                if i != d:
                    rem[k] = i
                    k += 1
            code = 0
            bit = 0
            for j in range(1, 5):
                for i in range(j):
                    if local[rem[i], rem[j]]:
                        code |= 1 << bit
                    bit += 1
            if table[code]:
                hits += 1
                if hits >= 2:
                    for i in range(6):
                        out[i] = c[i]
                    return out
        i = 5
        while i >= 0 and c[i] == n - 6 + i:
            i -= 1
        if i < 0:
            return out
        c[i] += 1
        for j in range(i + 1, 6):
            c[j] = c[j - 1] + 1


def _violation_numpy(a, n, table):
    """Vectorized violation scan: rank all 5-subsets, then count hits per window."""
    out = np.full(6, -1, np.int64)
    if n < 6:
        return out
    subs = np.array(list(itertools.combinations(range(n), 5)), dtype=np.int64)
    codes = np.zeros(len(subs), dtype=np.int64)
    bit = 0
    for j in range(1, 5):
        for i in range(j):
            codes |= a[subs[:, i], subs[:, j]].astype(np.int64) << bit
            bit += 1
    comb = np.zeros((n + 1, 6), dtype=np.int64)
    for v in range(n + 1):
        for k in range(6):
            comb[v, k] = math.comb(v, k)
    ranks = sum(comb[subs[:, k], k + 1] for k in range(5))
    hit_by_rank = np.zeros(math.comb(n, 5), dtype=np.int64)
    hit_by_rank[ranks] = table[codes].astype(np.int64)
    wins = np.array(list(itertools.combinations(range(n), 6)), dtype=np.int64)
    counts = np.zeros(len(wins), dtype=np.int64)
    for d in range(6):
        cols = [k for k in range(6) if k != d]
        r = sum(comb[wins[:, cols[k]], k + 1] for k in range(5))
        counts += hit_by_rank[r]
    bad = np.nonzero(counts >= 2)[0]
    if len(bad):
        return wins[bad[0]]
    return out


def subset_codes(a: np.ndarray, n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """All ascending k-subsets and their induced upper-triangle codes, vectorized."""
    subs = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    if len(subs) == 0:
        return subs.reshape(0, k), np.zeros(0, dtype=np.int64)
    codes = np.zeros(len(subs), dtype=np.int64)
    bit = 0
    for j in range(1, k):
        for i in range(j):
            codes |= a[subs[:, i], subs[:, j]].astype(np.int64) << bit
            bit += 1
    return subs, codes


def _pick_backend() -> str:
    choice = os.environ.get(_ENV_FLAG, "numba").strip().lower()
    if choice not in ("numba", "python"):
        raise ValueError(f"{_ENV_FLAG} must be 'numba' or 'python', got {choice!r}")
    if choice == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:
            return "python"
    return choice


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    _fill_candidates = njit(cache=True)(_fill_candidates)
    canonical_bits = njit(cache=True)(_canon_core)
    first_violation = njit(cache=True)(_violation_core)
else:
    canonical_bits = _canon_core
    first_violation = _violation_numpy
