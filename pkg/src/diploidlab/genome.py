"""Circular diploid genome model and suffix-prefix string primitives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import EmptyLocusSet, SchemaMismatch

ALPHABET = "ACGT"
_ALPHABET_SET = frozenset(ALPHABET)


def overlap(x: str, y: str) -> int:
    """Length of the longest proper suffix of x that is a proper prefix of y."""
    return int(_kernels.sp_overlap(x.encode(), y.encode()))


def union(x: str, y: str) -> str:
    """Concatenate x and y after removing y's prefix that overlaps x's suffix."""
    return x + y[overlap(x, y):]


def _check_alphabet(s: str, what: str) -> None:
    bad = set(s) - _ALPHABET_SET
    if bad:
        raise ValueError(f"{what} contains symbols outside ACGT: {sorted(bad)!r}")


@dataclass(frozen=True)
class CircularSequence:
    """Circular DNA string; all indexing is modulo its length."""

    bases: str

    def __post_init__(self):
        if len(self.bases) < 1:
            raise ValueError("circular sequence must be non-empty")
        _check_alphabet(self.bases, "sequence")

    def __len__(self) -> int:
        return len(self.bases)

    def __getitem__(self, i: int) -> str:
        return self.bases[i % len(self.bases)]

    def substring(self, start: int, length: int) -> str:
        """Substring of the given length starting at start, wrapping circularly."""
        n = len(self.bases)
        if length < 0:
            raise ValueError("negative substring length")
        start %= n
        reps = (start + length + n - 1) // n
        return (self.bases * max(reps, 1))[start:start + length]

    def rotate(self, k: int) -> "CircularSequence":
        n = len(self.bases)
        k %= n
        return CircularSequence(self.bases[k:] + self.bases[:k])


@dataclass(frozen=True)
class DiploidGenome:
    """Pair of equal-length circular haplotypes plus their heterozygous loci."""

    h0: CircularSequence
    h1: CircularSequence
    het_loci: tuple = ()

    def __post_init__(self):
        if len(self.h0) != len(self.h1):
            raise ValueError("haplotypes must have equal length")
        derived = tuple(i for i, (a, b) in enumerate(zip(self.h0.bases, self.h1.bases))
                        if a != b)
        object.__setattr__(self, "het_loci", derived)

    @classmethod
    def from_strings(cls, h0: str, h1: str) -> "DiploidGenome":
        return cls(CircularSequence(h0), CircularSequence(h1))

    @property
    def length(self) -> int:
        return len(self.h0)

    @property
    def n_het(self) -> int:
        return len(self.het_loci)

    def haplotype(self, i: int) -> CircularSequence:
        return self.h0 if i == 0 else self.h1

    def substring(self, hap: int, start: int, length: int) -> str:
        return self.haplotype(hap).substring(start, length)


@dataclass(frozen=True)
class Read:
    """Fixed-length read; provenance (haplotype, start) is kept for checkers."""

    seq: str
    hap: Optional[int] = None
    start: Optional[int] = None

    @property
    def provenance(self):
        if self.hap is None or self.start is None:
            return None
        return (self.hap, self.start)


class ReadSet:
    """Multiset of equal-length reads."""

    def __init__(self, reads: Sequence[Read], read_length: Optional[int] = None):
        self.reads = list(reads)
        if self.reads:
            lengths = {len(r.seq) for r in self.reads}
            if len(lengths) != 1:
                raise ValueError("reads must have homogeneous length")
            inferred = lengths.pop()
            if read_length is not None and read_length != inferred:
                raise ValueError("read_length does not match read sequences")
            self.read_length = inferred
        else:
            if read_length is None:
                raise ValueError("read_length required for an empty read set")
            self.read_length = read_length

    def __len__(self) -> int:
        return len(self.reads)

    def __iter__(self) -> Iterator[Read]:
        return iter(self.reads)

    def __getitem__(self, i: int) -> Read:
        return self.reads[i]

    def strip_provenance(self) -> "ReadSet":
        return ReadSet([Read(r.seq) for r in self.reads], self.read_length)


def gaps(genome: DiploidGenome) -> list:
    """Homozygous run lengths between adjacent heterozygous loci, circularly.

    gaps()[i] counts the characters strictly between het locus i and the next
    one clockwise; sum(g + 1 for g in gaps()) == genome.length.
    """
    loci = genome.het_loci
    n = len(loci)
    if n == 0:
        raise EmptyLocusSet("genome has no heterozygous loci")
    H = genome.length
    return [(loci[(i + 1) % n] - loci[i] - 1) % H for i in range(n)]


def switch_equivalent(g: DiploidGenome, h: DiploidGenome) -> bool:
    """True iff g equals h up to independent rotations and switch errors.

    Searches every rotation offset of g.h0; conditions then fully determine
    the required rotation of g.h1, which is tested by substring membership.
    Exact (equivalent to the exhaustive two-offset search).
    """
    H = h.length
    if g.length != H:
        return False
    h0 = np.frombuffer(h.h0.bases.encode(), dtype=np.uint8)
    h1 = np.frombuffer(h.h1.bases.encode(), dtype=np.uint8)
    het = np.zeros(H, dtype=bool)
    if h.het_loci:
        het[list(h.het_loci)] = True
    hom = ~het
    g0d = np.frombuffer((g.h0.bases * 2).encode(), dtype=np.uint8)
    g1_doubled = g.h1.bases * 2
    for a in range(H):
        r0 = g0d[a:a + H]
        if not np.array_equal(r0[hom], h0[hom]):
            continue
        if het.any():
            at_het = r0[het]
            take0 = at_het == h0[het]
            if not np.all(take0 | (at_het == h1[het])):
                continue
            t = h0.copy()
            t[het] = np.where(take0, h1[het], h0[het])
        else:
            t = h0
        if t.tobytes().decode() in g1_doubled:
            return True
    return False


# ---------------------------------------------------------------------------
# FASTA-like I/O
# ---------------------------------------------------------------------------

_WRAP = 80


def _wrap(seq: str) -> str:
    return "\n".join(seq[i:i + _WRAP] for i in range(0, len(seq), _WRAP))


def write_genome_fasta(genome: DiploidGenome, path) -> None:
    with open(path, "w") as fh:
        fh.write(f">h0\n{_wrap(genome.h0.bases)}\n")
        fh.write(f">h1\n{_wrap(genome.h1.bases)}\n")


def _parse_fasta(path) -> list:
    records = []
    name = None
    chunks: list = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                if name is not None:
                    records.append((name, "".join(chunks)))
                name = line[1:].strip()
                chunks = []
            else:
                if name is None:
                    raise SchemaMismatch("sequence data before FASTA header")
                chunks.append(line)
        if name is not None:
            records.append((name, "".join(chunks)))
    return records


def read_genome_fasta(path) -> DiploidGenome:
    records = _parse_fasta(path)
    if len(records) != 2:
        raise SchemaMismatch(f"genome FASTA must have exactly 2 records, got {len(records)}")
    by_name = dict(records)
    if set(by_name) != {"h0", "h1"}:
        raise SchemaMismatch(f"genome FASTA records must be named h0, h1; got {sorted(by_name)}")
    if len(by_name["h0"]) != len(by_name["h1"]):
        raise SchemaMismatch("h0 and h1 must have equal length")
    return DiploidGenome.from_strings(by_name["h0"], by_name["h1"])


def write_reads_fasta(rs: ReadSet, path, provenance: bool = True) -> None:
    with open(path, "w") as fh:
        for i, r in enumerate(rs):
            if provenance and r.provenance is not None:
                fh.write(f">read{i} hap={r.hap} start={r.start}\n")
            else:
                fh.write(f">read{i}\n")
            fh.write(f"{_wrap(r.seq)}\n")


def read_reads_fasta(path) -> ReadSet:
    records = _parse_fasta(path)
    reads = []
    for name, seq in records:
        fields = dict(f.split("=", 1) for f in name.split()[1:] if "=" in f)
        hap = int(fields["hap"]) if "hap" in fields else None
        start = int(fields["start"]) if "start" in fields else None
        reads.append(Read(seq, hap, start))
    if not reads:
        raise SchemaMismatch("reads FASTA contains no records")
    return ReadSet(reads)
