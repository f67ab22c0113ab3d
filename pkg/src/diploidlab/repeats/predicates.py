"""Coverage / bridging / well-bridging predicates over read sets."""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from ..errors import EmptyLocusSet
from ..genome import DiploidGenome, Read, ReadSet
from . import fast
from ._pairing import DoubleArrays
from .types import DoubleRepeat, RepeatCopy


def read_occurrences(seq: str, genome: DiploidGenome) -> List[Tuple[int, int]]:
    """All (haplotype, start) exact occurrences of seq, circularly."""
    H = genome.length
    out = []
    for hap in (0, 1):
        doubled = genome.haplotype(hap).bases * 2
        i = doubled.find(seq)
        while 0 <= i < H:
            out.append((hap, i))
            i = doubled.find(seq, i + 1)
    return out


def read_placements(read: Read, genome: DiploidGenome) -> List[Tuple[int, int]]:
    """Provenance placement when recorded, else all exact occurrences."""
    if read.provenance is not None:
        return [(read.hap, read.start % genome.length)]
    return read_occurrences(read.seq, genome)


def is_covered(genome: DiploidGenome, rs: ReadSet) -> bool:
    """True iff every adjacent position pair of each haplotype lies in a read."""
    H = genome.length
    L = rs.read_length
    covered = np.zeros((2, H), dtype=bool)  # [hap, t]: pair (t, t+1) covered
    span = min(L - 1, H)
    if span <= 0:
        return False
    for read in rs:
        for hap, s in read_placements(read, genome):
            idx = (s + np.arange(span)) % H
            covered[hap, idx] = True
    return bool(covered.all())


def _interval_bridging_starts(genome: DiploidGenome, rs: ReadSet, hap: int,
                              first: int, span: int) -> List[int]:
    """Occurrence starts on hap whose read window contains [first, first+span)."""
    H = genome.length
    L = rs.read_length
    if span > L:
        return []
    seen = set()
    out = []
    for read in rs:
        if read.seq in seen:
            continue
        seen.add(read.seq)
        for h, s in read_occurrences(read.seq, genome):
            if h == hap and (first - s) % H + span <= L:
                out.append(s)
    return out


def is_bridged(copy: RepeatCopy, rs: ReadSet, genome: DiploidGenome) -> bool:
    """True iff some read occurrence covers the copy plus one base each side."""
    first = (copy.start - 1) % genome.length
    return bool(_interval_bridging_starts(genome, rs, copy.haplotype,
                                          first, copy.length + 2))


def _copy_covers_het(copy: RepeatCopy, genome: DiploidGenome) -> bool:
    return any(copy.covers(locus, genome.length) for locus in genome.het_loci)


def is_well_bridged(dr: DoubleRepeat, rs: ReadSet, genome: DiploidGenome) -> bool:
    """Clause (a): a het-covering copy is bridged.  Clause (b): a het-free
    copy's interval is bridged on both haplotypes by reads sharing a common
    heterozygous locus in their windows."""
    H = genome.length
    L = rs.read_length
    for copy in (dr.copy1, dr.copy2):
        first = (copy.start - 1) % H
        span = copy.length + 2
        if _copy_covers_het(copy, genome):
            if _interval_bridging_starts(genome, rs, copy.haplotype, first, span):
                return True
            continue
        b0 = _interval_bridging_starts(genome, rs, 0, first, span)
        b1 = _interval_bridging_starts(genome, rs, 1, first, span)
        if not b0 or not b1:
            continue
        for locus in genome.het_loci:
            if any((locus - s) % H < L for s in b0) and \
                    any((locus - s) % H < L for s in b1):
                return True
    return False


class BridgeIndex:
    """Precomputed occurrence geometry for bulk bridging queries.

    back[hap][f] is the circular distance from position f back to the nearest
    read-occurrence start on that haplotype (a large sentinel when none
    exists); the interval [f, f+span) lies inside a read window on hap iff
    back[hap][f] + span <= L.  Agrees with is_bridged / is_well_bridged but
    answers each query in O(1) / O(L * n_het) after one O(|R| * |H|) setup.
    """

    def __init__(self, genome: DiploidGenome, rs: ReadSet):
        H = genome.length
        self.genome = genome
        self.L = rs.read_length
        self.occ = np.zeros((2, H), dtype=bool)
        seen = set()
        for read in rs:
            if read.seq in seen:
                continue
            seen.add(read.seq)
            for h, s in read_occurrences(read.seq, genome):
                self.occ[h, s] = True
        self.back = np.empty((2, H), dtype=np.int64)
        idx = np.arange(H)
        for h in (0, 1):
            pos = np.where(self.occ[h], idx, -4 * H)
            run = np.maximum.accumulate(np.concatenate([pos, pos + H]))
            self.back[h] = idx + H - run[H:]

    def interval_within(self, hap: int, first: int, span: int) -> bool:
        """True iff [first, first+span) lies inside some read window on hap."""
        return bool(self.back[hap, first % self.genome.length] + span <= self.L)

    def copy_bridged(self, start, hap, length) -> bool:
        H = self.genome.length
        return self.interval_within(hap, (start - 1) % H, int(length) + 2)

    def bridged_cols(self, starts: np.ndarray, haps: np.ndarray,
                     lengths: np.ndarray) -> np.ndarray:
        """Vectorized copy_bridged over catalog columns."""
        H = self.genome.length
        first = (np.asarray(starts) - 1) % H
        return self.back[np.asarray(haps), first] + np.asarray(lengths) + 2 \
            <= self.L

    def double_well_bridged(self, s1, h1, s2, h2, l) -> bool:
        """Well-bridging for one double repeat, matching is_well_bridged."""
        H = self.genome.length
        L = self.L
        loci = self.genome.het_loci
        l = int(l)
        span = l + 2
        for start, hap in ((int(s1), int(h1)), (int(s2), int(h2))):
            first = (start - 1) % H
            if any((locus - start) % H < l for locus in loci):
                if self.interval_within(hap, first, span):
                    return True
                continue
            slack = L - span
            if slack < 0:
                continue
            covered = [set(), set()]
            for h in (0, 1):
                for off in range(slack + 1):
                    u = (first - off) % H
                    if self.occ[h, u]:
                        covered[h].update(locus for locus in loci
                                          if (locus - u) % H < L)
            if covered[0] & covered[1]:
                return True
        return False


def min_read_length_well_bridge(genome: DiploidGenome,
                                doubles: Optional[DoubleArrays] = None) -> int:
    """Minimum read length L making every double repeat well-bridgeable."""
    loci = np.asarray(genome.het_loci, dtype=np.int64)
    if loci.size == 0:
        raise EmptyLocusSet("well-bridging requires a heterozygous locus")
    H = genome.length
    d = doubles if doubles is not None else fast.double_arrays(genome)
    if len(d) == 0:
        return 2
    n = loci.size
    best = 2
    for dr_idx in range(len(d)):
        l = int(d.l[dr_idx])
        reqs = []
        for start in (int(d.s1[dr_idx]), int(d.s2[dr_idx])):
            covers = bool(((loci - start) % H < l).any())
            if covers:
                reqs.append(l + 2)
                continue
            gi = int(np.searchsorted(loci, start, side="right")) - 1
            lo = int(loci[gi % n])
            hi = int(loci[(gi + 1) % n])
            via_left = (start + l - lo) % H + 1
            via_right = (hi - start + 1) % H + 1
            reqs.append(min(via_left, via_right))
        best = max(best, min(reqs))
    return best
