"""Suffix-structure repeat enumeration.

The two haplotypes are doubled (to expose wrap-around matches) and embedded
in a single text with unique separators.  A suffix array plus LCP/RMQ tables
then give the longest common circular extension of any two genome positions
in O(1), from which every maximal repeat family is derived.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..genome import DiploidGenome
from ._pairing import DoubleArrays


def _suffix_array(text: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling (numpy lexsort)."""
    n = text.size
    _, rank = np.unique(text, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        rank2 = np.full(n, -1, dtype=np.int64)
        if k < n:
            rank2[:n - k] = rank[k:]
        order = np.lexsort((rank2, rank))
        r, r2 = rank[order], rank2[order]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (r[1:] != r[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.cumsum(changed)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = new_rank
        if new_rank[-1] == n - 1:
            return order
        k *= 2


def _lcp_array(text: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai's algorithm; lcp[i] = lcp(suffix sa[i-1], suffix sa[i])."""
    n = text.size
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    t = text
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


class _SparseMin:
    """Idempotent sparse table for range-minimum queries on an array."""

    def __init__(self, a: np.ndarray):
        n = a.size
        levels = max(1, n.bit_length())
        st = [a.astype(np.int64)]
        span = 1
        while 2 * span <= n:
            prev = st[-1]
            st.append(np.minimum(prev[:n - 2 * span + 1], prev[span:n - span + 1]))
            span *= 2
        # pad levels to equal length for stacked fancy indexing
        self._st = np.full((len(st), n), np.iinfo(np.int64).max, dtype=np.int64)
        for k, row in enumerate(st):
            self._st[k, :row.size] = row

    def query(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Elementwise min over inclusive ranges [lo, hi], lo <= hi."""
        length = hi - lo + 1
        k = np.frexp(length)[1] - 1
        return np.minimum(self._st[k, lo], self._st[k, hi - (1 << k) + 1])


@dataclass
class PositionIndex:
    """Per-position data in canonical order q = 2*start + haplotype."""

    H: int
    start: np.ndarray
    hap: np.ndarray
    left: np.ndarray      # circular left-flank character of each position
    first: np.ndarray     # character at each position
    rank: np.ndarray      # suffix-array rank of each position's text suffix
    lcp_matrix: np.ndarray  # pairwise circular lcp, capped at H


def build_position_index(genome: DiploidGenome) -> PositionIndex:
    H = genome.length
    e0 = genome.h0.bases[-1] + genome.h0.bases * 2
    e1 = genome.h1.bases[-1] + genome.h1.bases * 2
    text = np.frombuffer((e0 + "#" + e1 + "$").encode(), dtype=np.uint8)
    sa = _suffix_array(text)
    lcp = _lcp_array(text, sa)
    rmq = _SparseMin(lcp)
    inv = np.empty(text.size, dtype=np.int64)
    inv[sa] = np.arange(text.size)

    j = np.arange(H)
    pos = np.empty(2 * H, dtype=np.int64)
    pos[0::2] = 1 + j            # haplotype 0
    pos[1::2] = 2 * H + 3 + j    # haplotype 1
    start = np.repeat(j, 2)
    hap = np.tile(np.array([0, 1]), H)
    left = text[pos - 1]
    first = text[pos]
    rank = inv[pos]

    ra, rb = np.meshgrid(rank, rank, indexing="ij")
    lo = np.minimum(ra, rb) + 1
    hi = np.maximum(ra, rb)
    same = ra == rb
    lo_s = np.where(same, 1, lo)
    hi_s = np.maximum(hi, lo_s)
    m = rmq.query(lo_s.ravel(), hi_s.ravel()).reshape(2 * H, 2 * H)
    m[same] = 0
    np.minimum(m, H, out=m)
    return PositionIndex(H, start, hap, left, first, rank,
                         m.astype(np.int32))


def double_arrays(genome: DiploidGenome,
                  index: PositionIndex | None = None) -> DoubleArrays:
    """Catalog of all maximal double repeats in canonical order."""
    ix = index or build_position_index(genome)
    H = ix.H
    q1, q2 = np.triu_indices(2 * H, 1)
    l = ix.lcp_matrix[q1, q2].astype(np.int64)
    ok = (l >= 1) & (l < H) & (ix.left[q1] != ix.left[q2]) \
        & (ix.start[q1] != ix.start[q2])
    q1, q2, l = q1[ok], q2[ok], l[ok]
    sid = _string_ids(ix, q1, l)
    return DoubleArrays(s1=ix.start[q1], h1=ix.hap[q1],
                        s2=ix.start[q2], h2=ix.hap[q2], l=l, sid=sid)


def _string_ids(ix: PositionIndex, q: np.ndarray, l: np.ndarray) -> np.ndarray:
    """Label rows so equal (length, spelled string) rows share an id."""
    if q.size == 0:
        return np.empty(0, dtype=np.int64)
    r = ix.rank[q]
    order = np.lexsort((r, l))
    qo, lo_ = q[order], l[order]
    breaks = np.empty(qo.size, dtype=np.int64)
    breaks[0] = 0
    if qo.size > 1:
        same_len = lo_[1:] == lo_[:-1]
        # adjacent rows spell the same string iff their suffixes agree to depth
        # l (or literally start at the same position)
        agree = (ix.lcp_matrix[qo[1:], qo[:-1]] >= lo_[1:]) | (qo[1:] == qo[:-1])
        breaks[1:] = ~(same_len & agree)
    sid_sorted = np.cumsum(breaks)
    sid = np.empty(qo.size, dtype=np.int64)
    sid[order] = sid_sorted
    return sid


def triple_rows(genome: DiploidGenome,
                index: PositionIndex | None = None) -> np.ndarray:
    """Rows (s1,h1,s2,h2,s3,h3,len) of all maximal triple repeats."""
    ix = index or build_position_index(genome)
    H = ix.H
    rows = []
    groups = defaultdict(list)
    for q, ch in enumerate(ix.first):
        groups[int(ch)].append(q)
    for members in groups.values():
        g = np.asarray(members)  # ascending q = canonical (start, hap) order
        n = g.size
        for ai in range(n - 2):
            a = g[ai]
            rest = g[ai + 1:]
            lab_all = ix.lcp_matrix[a, rest].astype(np.int64)
            for bi in range(rest.size - 1):
                b = rest[bi]
                if ix.start[b] <= ix.start[a]:
                    continue
                cs = rest[bi + 1:]
                l3 = np.minimum(np.minimum(lab_all[bi], lab_all[bi + 1:]),
                                ix.lcp_matrix[b, cs].astype(np.int64))
                ok = (l3 >= 1) & (l3 < H) \
                    & (ix.start[cs] > ix.start[b]) \
                    & ~((ix.left[a] == ix.left[b]) & (ix.left[cs] == ix.left[b]))
                for c, lv in zip(cs[ok], l3[ok]):
                    rows.append((ix.start[a], ix.hap[a], ix.start[b], ix.hap[b],
                                 ix.start[c], ix.hap[c], lv))
    if not rows:
        return np.empty((0, 7), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)
