"""Brute-force repeat enumeration used to anchor the suffix-structure path.

Two levels of independence:

* ``definitional_index`` rebuilds the pairwise circular-extension table by
  direct character comparison (no suffix array); the catalog derivation on
  top of it is shared with the fast path.
* ``exhaustive_doubles`` / ``exhaustive_triples`` check every candidate
  (positions, length) tuple by string slicing — quartic, tiny genomes only.
"""

from __future__ import annotations

import numpy as np

from ..genome import DiploidGenome
from . import fast
from ._pairing import DoubleArrays
from .fast import PositionIndex


def _offset_chars(genome: DiploidGenome) -> np.ndarray:
    """C[q, t] = character t places clockwise of position q (t = 0..H)."""
    H = genome.length
    d0 = np.frombuffer((genome.h0.bases * 2).encode(), dtype=np.uint8)
    d1 = np.frombuffer((genome.h1.bases * 2).encode(), dtype=np.uint8)
    C = np.empty((2 * H, H + 1), dtype=np.uint8)
    j = np.arange(H)[:, None]
    t = np.arange(H + 1)[None, :]
    C[0::2] = d0[j + t]
    C[1::2] = d1[j + t]
    return C


def definitional_index(genome: DiploidGenome) -> PositionIndex:
    """PositionIndex built by direct character comparison of all pairs."""
    H = genome.length
    C = _offset_chars(genome)
    neq = C[:, None, :] != C[None, :, :]
    first = np.argmax(neq, axis=2)
    lcp = np.where(neq.any(axis=2), first, H + 1)
    np.minimum(lcp, H, out=lcp)
    np.fill_diagonal(lcp, 0)
    j = np.arange(H)
    start = np.repeat(j, 2)
    hap = np.tile(np.array([0, 1]), H)
    left = np.empty(2 * H, dtype=np.uint8)
    h0 = genome.h0.bases
    h1 = genome.h1.bases
    left[0::2] = np.frombuffer(h0.encode(), dtype=np.uint8)[(j - 1) % H]
    left[1::2] = np.frombuffer(h1.encode(), dtype=np.uint8)[(j - 1) % H]
    order = np.lexsort(C[:, ::-1].T)
    rank = np.empty(2 * H, dtype=np.int64)
    rank[order] = np.arange(2 * H)
    return PositionIndex(H, start, hap, left, C[:, 0].copy(), rank,
                         lcp.astype(np.int32))


def oracle_double_arrays(genome: DiploidGenome) -> DoubleArrays:
    return fast.double_arrays(genome, index=definitional_index(genome))


def oracle_triple_rows(genome: DiploidGenome) -> np.ndarray:
    return fast.triple_rows(genome, index=definitional_index(genome))


# ---------------------------------------------------------------------------
# Quartic slicing-based enumeration (tiny genomes only)
# ---------------------------------------------------------------------------

def _spell(genome: DiploidGenome, hap: int, start: int, length: int) -> str:
    return genome.substring(hap, start, length)


def _positions(H: int):
    for j in range(H):
        for hap in (0, 1):
            yield (j, hap)


def exhaustive_doubles(genome: DiploidGenome) -> set:
    """All (s1,h1,s2,h2,len) double-repeat rows by direct definition."""
    H = genome.length
    out = set()
    ps = list(_positions(H))
    for a in range(len(ps)):
        j1, h1 = ps[a]
        for b in range(a + 1, len(ps)):
            j2, h2 = ps[b]
            if j1 == j2:
                continue
            for l in range(1, H):
                if _spell(genome, h1, j1, l) != _spell(genome, h2, j2, l):
                    continue
                left_ok = _spell(genome, h1, j1 - 1, 1) != _spell(genome, h2, j2 - 1, 1)
                right_ok = _spell(genome, h1, j1 + l, 1) != _spell(genome, h2, j2 + l, 1)
                if left_ok and right_ok:
                    out.add((j1, h1, j2, h2, l))
    return out


def exhaustive_triples(genome: DiploidGenome) -> set:
    """All (s1,h1,s2,h2,s3,h3,len) triple-repeat rows by direct definition."""
    H = genome.length
    out = set()
    ps = list(_positions(H))
    n = len(ps)
    for a in range(n):
        j1, h1 = ps[a]
        for b in range(a + 1, n):
            j2, h2 = ps[b]
            if j2 <= j1:
                continue
            for c in range(b + 1, n):
                j3, h3 = ps[c]
                if j3 <= j2:
                    continue
                for l in range(1, H):
                    s = _spell(genome, h1, j1, l)
                    if s != _spell(genome, h2, j2, l) or \
                            s != _spell(genome, h3, j3, l):
                        continue
                    lefts = {_spell(genome, h1, j1 - 1, 1),
                             _spell(genome, h2, j2 - 1, 1),
                             _spell(genome, h3, j3 - 1, 1)}
                    rights = {_spell(genome, h1, j1 + l, 1),
                              _spell(genome, h2, j2 + l, 1),
                              _spell(genome, h3, j3 + l, 1)}
                    if len(lefts) > 1 and len(rights) > 1:
                        out.add((j1, h1, j2, h2, j3, h3, l))
    return out
