"""Random diploid genomes and read sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ReadTooLong
from .genome import ALPHABET, DiploidGenome, Read, ReadSet

_BASES = np.frombuffer(ALPHABET.encode(), dtype=np.uint8)


@dataclass(frozen=True)
class SimulationParams:
    """Parameters for generating a random diploid genome."""

    length: int
    het_prob: float
    seed: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("genome length must be positive")
        if not 0.0 <= self.het_prob <= 1.0:
            raise ValueError("het_prob must lie in [0, 1]")


def simulate_diploid(params: SimulationParams) -> DiploidGenome:
    """Draw a uniform random haplotype; mutate each position independently.

    With probability het_prob a position becomes heterozygous, taking a
    uniformly random alternative base on the second haplotype.
    """
    rng = np.random.default_rng(params.seed)
    h0 = _BASES[rng.integers(0, 4, size=params.length)]
    h1 = h0.copy()
    het = rng.random(params.length) < params.het_prob
    n = int(het.sum())
    if n:
        # pick one of the three other bases uniformly
        shift = rng.integers(1, 4, size=n)
        idx = np.searchsorted(_BASES, h1[het])
        h1[het] = _BASES[(idx + shift) % 4]
    return DiploidGenome.from_strings(h0.tobytes().decode(), h1.tobytes().decode())


def _window(genome: DiploidGenome, hap: int, start: int, length: int) -> str:
    return genome.substring(hap, start, length)


def sample_reads_uniform(genome: DiploidGenome, n_reads: int, read_length: int,
                         seed: int = 0) -> ReadSet:
    """Sample n_reads reads, each from a uniform (haplotype, start) slot."""
    if read_length > genome.length:
        raise ReadTooLong(
            f"read length {read_length} exceeds haplotype length {genome.length}")
    if read_length < 1:
        raise ValueError("read length must be positive")
    rng = np.random.default_rng(seed)
    haps = rng.integers(0, 2, size=n_reads)
    starts = rng.integers(0, genome.length, size=n_reads)
    reads = [Read(_window(genome, int(h), int(s), read_length), int(h), int(s))
             for h, s in zip(haps, starts)]
    return ReadSet(reads, read_length)


def sample_all_substrings(genome: DiploidGenome, read_length: int) -> ReadSet:
    """One read per (haplotype, start) slot: every circular window of both
    haplotypes.  The densest possible read set at a given read length."""
    if read_length > genome.length:
        raise ReadTooLong(
            f"read length {read_length} exceeds haplotype length {genome.length}")
    if read_length < 1:
        raise ValueError("read length must be positive")
    reads = [Read(_window(genome, hap, start, read_length), hap, start)
             for hap in (0, 1) for start in range(genome.length)]
    return ReadSet(reads, read_length)


def sample_reads_poisson(genome: DiploidGenome, rate: float, read_length: int,
                         seed: int = 0) -> ReadSet:
    """Poisson sampling: each (position, haplotype) slot independently yields
    Poisson(rate) reads, so the expected read count is rate * 2 * |H|."""
    if read_length > genome.length:
        raise ReadTooLong(
            f"read length {read_length} exceeds haplotype length {genome.length}")
    if read_length < 1:
        raise ValueError("read length must be positive")
    if rate < 0:
        raise ValueError("rate must be non-negative")
    rng = np.random.default_rng(seed)
    counts = rng.poisson(rate, size=(2, genome.length))
    reads = []
    for hap in (0, 1):
        for start in np.nonzero(counts[hap])[0]:
            seq = _window(genome, hap, int(start), read_length)
            reads.extend(Read(seq, hap, int(start))
                         for _ in range(counts[hap, start]))
    return ReadSet(reads, read_length)


def coverage_depth(n_reads: int, read_length: int, haplotype_length: int) -> float:
    """Average number of reads covering a fixed position of one haplotype."""
    return n_reads * read_length / (2 * haplotype_length)


def lander_waterman_reads(diploid_length: int, read_length: int,
                          epsilon: float) -> float:
    """Reads needed so every position is covered w.p. >= 1 - epsilon."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    arg = diploid_length / (read_length * epsilon)
    if arg <= 1:
        raise ValueError("read length too large for a meaningful bound")
    return (diploid_length / read_length) * math.log(arg)


def lander_waterman_depth(diploid_length: int, read_length: int,
                          epsilon: float) -> float:
    """Coverage depth corresponding to lander_waterman_reads."""
    return lander_waterman_reads(diploid_length, read_length, epsilon) \
        * read_length / diploid_length
