"""Combinatorics shared by the fast and oracle repeat enumerators.

Both enumerators independently produce a catalog of double repeats as flat
numpy arrays; the interleaved / paired-inter-double configurations are pure
positional predicates over that catalog and live here.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

_CHUNK = 512


@dataclass
class DoubleArrays:
    """Column-wise catalog of double repeats in canonical order.

    s1 < s2 are the copy starts; h1, h2 the haplotypes; l the repeat length;
    sid a label such that two rows carry equal repeat strings iff sids match.
    """

    s1: np.ndarray
    h1: np.ndarray
    s2: np.ndarray
    h2: np.ndarray
    l: np.ndarray
    sid: np.ndarray

    def __len__(self) -> int:
        return int(self.s1.size)

    def rows(self) -> np.ndarray:
        """Canonical (start1, hap1, start2, hap2, len) rows for set comparison."""
        return np.column_stack([self.s1, self.h1, self.s2, self.h2, self.l])


def interleaved_index_pairs(d: DoubleArrays) -> np.ndarray:
    """All (i, j) with s1[i] < s1[j] < s2[i] < s2[j] and differing strings."""
    n = len(d)
    out = []
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        a1 = d.s1[lo:hi, None]
        a2 = d.s2[lo:hi, None]
        mask = (a1 < d.s1[None, :]) & (d.s1[None, :] < a2) & (a2 < d.s2[None, :]) \
            & (d.sid[lo:hi, None] != d.sid[None, :])
        ii, jj = np.nonzero(mask)
        if ii.size:
            out.append(np.column_stack([ii + lo, jj]))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(out)


def i2_index_pairs(d: DoubleArrays) -> np.ndarray:
    """Pairs of inter doubles at equal haplotype offset, disjoint along h0.

    For an inter double let u be its h0 start and v its h1 start.  Two inter
    doubles pair up when u_b - u_a = v_b - v_a and the later one starts after
    the earlier one ends (u_b > u_a + l_a).  Result rows are (earlier, later)
    catalog indices.
    """
    inter = np.nonzero(d.h1 != d.h2)[0]
    if inter.size < 2:
        return np.empty((0, 2), dtype=np.int64)
    u = np.where(d.h1[inter] == 0, d.s1[inter], d.s2[inter])
    v = np.where(d.h1[inter] == 0, d.s2[inter], d.s1[inter])
    groups = defaultdict(list)
    for k, delta in enumerate(u - v):
        groups[int(delta)].append(k)
    out = []
    for members in groups.values():
        if len(members) < 2:
            continue
        m = np.asarray(members)
        order = np.argsort(u[m], kind="stable")
        m = m[order]
        uu, ll = u[m], d.l[inter[m]]
        for a in range(len(m) - 1):
            ok = np.nonzero(uu[a + 1:] > uu[a] + ll[a])[0]
            for b in ok + a + 1:
                out.append((inter[m[a]], inter[m[b]]))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.asarray(out, dtype=np.int64)
