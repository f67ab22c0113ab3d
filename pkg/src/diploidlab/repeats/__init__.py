"""Repeat enumeration, bridging predicates, and profile aggregation."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from ..genome import DiploidGenome
from . import fast, oracle
from ._pairing import DoubleArrays, i2_index_pairs, interleaved_index_pairs
from .predicates import (
    is_bridged,
    is_covered,
    is_well_bridged,
    min_read_length_well_bridge,
    read_occurrences,
    read_placements,
)
from .profile import (
    STATS_HEADER,
    RepeatProfile,
    read_stats_csv,
    repeat_statistics,
    write_stats_csv,
)
from .types import DoubleRepeat, InterleavedRepeat, RepeatCopy, TripleRepeat

__all__ = [
    "DoubleArrays", "DoubleRepeat", "InterleavedRepeat", "RepeatCopy",
    "RepeatProfile", "STATS_HEADER", "TripleRepeat",
    "find_double_repeats", "find_inter_double_pairs_I2",
    "find_interleaved_repeats", "find_triple_repeats",
    "is_bridged", "is_covered", "is_well_bridged",
    "min_read_length_well_bridge", "read_occurrences", "read_placements",
    "read_stats_csv", "repeat_statistics", "write_stats_csv",
]


def _catalog(genome: DiploidGenome, method: str) -> DoubleArrays:
    if method == "fast":
        return fast.double_arrays(genome)
    if method == "oracle":
        return oracle.oracle_double_arrays(genome)
    raise ValueError(f"unknown enumeration method: {method!r}")


def _covers_het_flags(genome: DiploidGenome, start: int, length: int) -> bool:
    H = genome.length
    return any((locus - start) % H < length for locus in genome.het_loci)


def _to_doubles(genome: DiploidGenome, d: DoubleArrays) -> List[DoubleRepeat]:
    out = []
    for k in range(len(d)):
        c1 = RepeatCopy(int(d.s1[k]), int(d.h1[k]), int(d.l[k]))
        c2 = RepeatCopy(int(d.s2[k]), int(d.h2[k]), int(d.l[k]))
        kind = "intra" if c1.haplotype == c2.haplotype else "inter"
        covers = (_covers_het_flags(genome, c1.start, c1.length),
                  _covers_het_flags(genome, c2.start, c2.length))
        out.append(DoubleRepeat(c1, c2, kind, covers))
    return out


def find_double_repeats(genome: DiploidGenome,
                        method: str = "fast") -> List[DoubleRepeat]:
    """All maximal double repeats, in canonical (start, haplotype) order."""
    return sorted(_to_doubles(genome, _catalog(genome, method)))


def find_triple_repeats(genome: DiploidGenome,
                        method: str = "fast") -> List[TripleRepeat]:
    """All maximal triple repeats with strictly increasing starts."""
    if method == "fast":
        rows = fast.triple_rows(genome)
    elif method == "oracle":
        rows = oracle.oracle_triple_rows(genome)
    else:
        raise ValueError(f"unknown enumeration method: {method!r}")
    out = []
    for s1, h1, s2, h2, s3, h3, l in rows.tolist():
        out.append(TripleRepeat((RepeatCopy(s1, h1, l), RepeatCopy(s2, h2, l),
                                 RepeatCopy(s3, h3, l))))
    return sorted(out)


def find_interleaved_repeats(genome: DiploidGenome,
                             method: str = "fast") -> List[InterleavedRepeat]:
    """All interleaved configurations of two distinct-string doubles."""
    d = _catalog(genome, method)
    pairs = interleaved_index_pairs(d)
    doubles = _to_doubles(genome, d)
    return sorted(InterleavedRepeat(doubles[i], doubles[j])
                  for i, j in pairs.tolist())


def find_inter_double_pairs_I2(
        genome: DiploidGenome,
        method: str = "fast") -> List[Tuple[DoubleRepeat, DoubleRepeat]]:
    """All equal-offset, disjoint pairs of inter-double repeats."""
    d = _catalog(genome, method)
    pairs = i2_index_pairs(d)
    doubles = _to_doubles(genome, d)
    return sorted((doubles[i], doubles[j]) for i, j in pairs.tolist())
