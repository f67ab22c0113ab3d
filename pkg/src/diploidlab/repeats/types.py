"""Repeat catalog types: copies, doubles, triples, interleaved configurations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from ..genome import DiploidGenome


@dataclass(frozen=True, order=True)
class RepeatCopy:
    """One placement of a repeated substring, ordered by (start, haplotype)."""

    start: int
    haplotype: int
    length: int

    def spell(self, genome: DiploidGenome) -> str:
        return genome.substring(self.haplotype, self.start, self.length)

    def covers(self, position: int, modulus: int) -> bool:
        return (position - self.start) % modulus < self.length


@dataclass(frozen=True, order=True)
class DoubleRepeat:
    """Maximal pair of equal substrings; copy1.start < copy2.start."""

    copy1: RepeatCopy
    copy2: RepeatCopy
    kind: str = "intra"  # "intra" or "inter"
    covers_het: Tuple[bool, bool] = (False, False)

    @property
    def length(self) -> int:
        return self.copy1.length

    def key(self):
        return (self.copy1.start, self.copy1.haplotype,
                self.copy2.start, self.copy2.haplotype, self.length)


@dataclass(frozen=True, order=True)
class TripleRepeat:
    """Maximal triple of equal substrings with strictly increasing starts."""

    copies: Tuple[RepeatCopy, RepeatCopy, RepeatCopy]

    @property
    def length(self) -> int:
        return self.copies[0].length

    @property
    def is_intra(self) -> bool:
        haps = {c.haplotype for c in self.copies}
        return len(haps) == 1

    def key(self):
        return tuple((c.start, c.haplotype) for c in self.copies) + (self.length,)


@dataclass(frozen=True, order=True)
class InterleavedRepeat:
    """Two doubles whose copies alternate along the genome (j1 < j3 < j2 < j4)."""

    pair1: DoubleRepeat
    pair2: DoubleRepeat

    @property
    def min_length(self) -> int:
        return min(self.pair1.length, self.pair2.length)

    @property
    def is_intra(self) -> bool:
        haps = {self.pair1.copy1.haplotype, self.pair1.copy2.haplotype,
                self.pair2.copy1.haplotype, self.pair2.copy2.haplotype}
        return len(haps) == 1

    def key(self):
        return self.pair1.key() + self.pair2.key()
