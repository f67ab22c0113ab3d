"""RepeatProfile aggregation and the stats CSV interface."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..errors import EmptyLocusSet, SchemaMismatch
from ..genome import DiploidGenome, gaps as genome_gaps
from . import fast
from ._pairing import i2_index_pairs, interleaved_index_pairs
from .predicates import min_read_length_well_bridge

STATS_HEADER = ("G", "max_gap", "max_double", "min_L_wellbridge",
                "max_interleaved_h0", "max_interleaved_h1", "max_I2",
                "max_triple_h0", "max_triple_h1")


@dataclass
class RepeatProfile:
    """Everything the coverage formulas need, plus the tabulated maxima."""

    G: int
    gaps: List[int] = field(default_factory=list)
    l_double: int = 0
    b: Dict[Tuple[int, int], int] = field(default_factory=dict)  # intra-interleaved
    c: Dict[int, int] = field(default_factory=dict)              # intra-triple
    d: Dict[Tuple[int, int], int] = field(default_factory=dict)  # paired inter-doubles
    A: Dict[int, int] = field(default_factory=dict)
    B: Dict[Tuple[int, int], int] = field(default_factory=dict)
    C: Dict[Tuple[int, int, int], int] = field(default_factory=dict)
    max_gap: int = 0
    max_double: int = 0
    min_L_wellbridge: int = 2
    max_interleaved_h0: int = 0
    max_interleaved_h1: int = 0
    max_I2: int = 0
    max_triple_h0: int = 0
    max_triple_h1: int = 0

    def summary(self) -> Dict[str, int]:
        return {k: int(getattr(self, k)) for k in STATS_HEADER}

    def gap_length(self, j: int) -> int:
        return self.gaps[j]


def _covers_het(starts: np.ndarray, lengths: np.ndarray,
                loci: np.ndarray, H: int) -> np.ndarray:
    """Vector of 'the copy [start, start+len) contains a heterozygous locus'."""
    if loci.size == 0:
        return np.zeros(starts.shape, dtype=bool)
    end = starts + lengths
    in_prefix = np.searchsorted(loci, np.minimum(end, H)) \
        - np.searchsorted(loci, starts) > 0
    wrapped = end > H
    in_wrap = np.searchsorted(loci, end - H) > 0
    return in_prefix | (wrapped & in_wrap)


def _gap_index(starts: np.ndarray, loci: np.ndarray) -> np.ndarray:
    """Index j of the inter-locus gap containing each (het-free) start."""
    idx = np.searchsorted(loci, starts, side="right") - 1
    return idx % loci.size


def repeat_statistics(genome: DiploidGenome, index=None) -> RepeatProfile:
    """Full repeat profile of a genome (catalogs aggregated, never stored)."""
    H = genome.length
    loci = np.asarray(genome.het_loci, dtype=np.int64)
    if index is None:
        index = fast.build_position_index(genome)
    darr = fast.double_arrays(genome, index=index)
    trows = fast.triple_rows(genome, index=index)
    prof = RepeatProfile(G=2 * H)

    if loci.size:
        prof.gaps = genome_gaps(genome)
        prof.max_gap = max(prof.gaps)

    if len(darr):
        prof.l_double = int(darr.l.max())
    prof.max_double = prof.l_double

    # intra-triples per haplotype
    c = Counter()
    if trows.size:
        haps = trows[:, [1, 3, 5]]
        intra = (haps == haps[:, :1]).all(axis=1)
        for hap_val, attr in ((0, "max_triple_h0"), (1, "max_triple_h1")):
            sel = intra & (haps[:, 0] == hap_val)
            if sel.any():
                setattr(prof, attr, int(trows[sel, 6].max()))
        for p in trows[intra, 6]:
            c[int(p)] += 1
    prof.c = dict(c)

    # intra-interleaved (both doubles within one and the same haplotype)
    b = Counter()
    ip = interleaved_index_pairs(darr)
    if ip.size:
        i, j = ip[:, 0], ip[:, 1]
        intra_pair = (darr.h1[i] == darr.h2[i]) & (darr.h1[j] == darr.h2[j]) \
            & (darr.h1[i] == darr.h1[j])
        for hap_val, attr in ((0, "max_interleaved_h0"), (1, "max_interleaved_h1")):
            sel = intra_pair & (darr.h1[i] == hap_val)
            if sel.any():
                mins = np.minimum(darr.l[i[sel]], darr.l[j[sel]])
                setattr(prof, attr, int(mins.max()))
        for li, lj in zip(darr.l[i[intra_pair]], darr.l[j[intra_pair]]):
            m, n = sorted((int(li), int(lj)))
            b[(m, n)] += 1
    prof.b = dict(b)

    # paired inter-doubles (Condition I2 geometry)
    d = Counter()
    i2 = i2_index_pairs(darr)
    if i2.size:
        la, lb = darr.l[i2[:, 0]], darr.l[i2[:, 1]]
        prof.max_I2 = int(np.minimum(la, lb).max())
        for a, bb in zip(la, lb):
            x, y = sorted((int(a), int(bb)))
            d[(x, y)] += 1
    prof.d = dict(d)

    # greedy well-bridging classes over all double repeats
    if len(darr):
        ch1 = _covers_het(darr.s1, darr.l, loci, H)
        ch2 = _covers_het(darr.s2, darr.l, loci, H)
        A, B, C = Counter(), Counter(), Counter()
        both = ch1 & ch2
        for i_len in darr.l[both]:
            A[int(i_len)] += 1
        if loci.size:
            one = ch1 ^ ch2
            free_start = np.where(ch1, darr.s2, darr.s1)
            gidx = _gap_index(free_start, loci)
            for i_len, j in zip(darr.l[one], gidx[one]):
                B[(int(i_len), int(j))] += 1
            none = ~(ch1 | ch2)
            g1 = _gap_index(darr.s1, loci)
            g2 = _gap_index(darr.s2, loci)
            for i_len, j1, j2 in zip(darr.l[none], g1[none], g2[none]):
                C[(int(i_len), int(j1), int(j2))] += 1
        prof.A, prof.B, prof.C = dict(A), dict(B), dict(C)

    if loci.size:
        prof.min_L_wellbridge = min_read_length_well_bridge(genome, doubles=darr)
    elif len(darr):
        raise EmptyLocusSet(
            "genome has repeats but no heterozygous locus to anchor bridging")
    return prof


# ---------------------------------------------------------------------------
# Stats CSV
# ---------------------------------------------------------------------------

def write_stats_csv(profile: RepeatProfile, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(STATS_HEADER)
        w.writerow([profile.summary()[k] for k in STATS_HEADER])


def read_stats_csv(path) -> Dict[str, int]:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh)
                if r and not r[0].lstrip().startswith("#")]
    if len(rows) < 2:
        raise SchemaMismatch("stats CSV needs a header row and a value row")
    if tuple(h.strip() for h in rows[0]) != STATS_HEADER:
        raise SchemaMismatch(
            f"stats CSV header must be {','.join(STATS_HEADER)}")
    values = rows[1]
    if len(values) != len(STATS_HEADER):
        raise SchemaMismatch("stats CSV value row has wrong arity")
    return {k: int(v) for k, v in zip(STATS_HEADER, values)}
