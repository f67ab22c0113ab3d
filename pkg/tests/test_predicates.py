"""Coverage / bridging / well-bridging predicate tests."""

import numpy as np
import pytest

from diploidlab.errors import EmptyLocusSet
from diploidlab.genome import DiploidGenome, Read, ReadSet
from diploidlab.repeats import (
    find_double_repeats,
    is_bridged,
    is_covered,
    is_well_bridged,
    min_read_length_well_bridge,
    read_placements,
)
from diploidlab.repeats.types import DoubleRepeat, RepeatCopy
from diploidlab.simulate import SimulationParams, sample_reads_uniform, simulate_diploid


def _read_at(g, hap, start, L):
    return Read(g.substring(hap, start, L), hap, start)


class TestPlacements:
    def test_provenance_wins(self):
        g = DiploidGenome.from_strings("AAAA", "AAAA")
        r = Read("AA", 1, 2)
        assert read_placements(r, g) == [(1, 2)]

    def test_occurrences_without_provenance(self):
        g = DiploidGenome.from_strings("ACGTACGA", "ACGTACGA")
        placements = set(read_placements(Read("CGT"), g))
        assert placements == {(0, 1), (1, 1)}

    def test_wraparound_occurrence(self):
        g = DiploidGenome.from_strings("GTACGTAC", "AAAAAAAA")
        assert (0, 6) in read_placements(Read("ACG"), g)


class TestIsCovered:
    def test_full_tiling_is_covered(self):
        g = simulate_diploid(SimulationParams(20, 0.1, seed=1))
        reads = [_read_at(g, h, s, 3) for h in (0, 1) for s in range(20)]
        assert is_covered(g, ReadSet(reads))

    def test_missing_adjacency_not_covered(self):
        g = simulate_diploid(SimulationParams(20, 0.1, seed=2))
        # leave out every read window containing the pair (4, 5) on haplotype 1
        reads = [_read_at(g, h, s, 3) for h in (0, 1) for s in range(20)
                 if not (h == 1 and s in (3, 4))]
        assert not is_covered(g, ReadSet(reads))

    def test_length_one_reads_never_cover(self):
        g = simulate_diploid(SimulationParams(6, 0.0, seed=3))
        reads = [_read_at(g, h, s, 1) for h in (0, 1) for s in range(6)]
        assert not is_covered(g, ReadSet(reads))


class TestIsBridged:
    def test_minimal_bridging_read(self):
        g = simulate_diploid(SimulationParams(30, 0.0, seed=4))
        copy = RepeatCopy(start=10, haplotype=0, length=4)
        rs = ReadSet([_read_at(g, 0, 9, 6)])  # exactly [start-1, start+len]
        assert is_bridged(copy, rs, g)

    def test_read_over_copy_only_does_not_bridge(self):
        g = simulate_diploid(SimulationParams(30, 0.0, seed=4))
        copy = RepeatCopy(start=10, haplotype=0, length=4)
        rs = ReadSet([_read_at(g, 0, 10, 4)])
        assert not is_bridged(copy, rs, g)

    def test_randomized_against_interval_oracle(self):
        g = simulate_diploid(SimulationParams(40, 0.0, seed=5))
        H, L = g.length, 7
        rng = np.random.default_rng(6)
        for _ in range(50):
            copy = RepeatCopy(int(rng.integers(0, H)), int(rng.integers(0, 2)),
                              int(rng.integers(1, L - 1)))
            rs = sample_reads_uniform(g, 6, L, seed=int(rng.integers(1 << 30)))
            want = False
            for read in rs:
                for h in (0, 1):
                    for s in range(H):
                        if g.substring(h, s, L) != read.seq or h != copy.haplotype:
                            continue
                        span = {(s + t) % H for t in range(L)}
                        target = {(copy.start - 1 + t) % H
                                  for t in range(copy.length + 2)}
                        if target <= span:
                            want = True
            assert is_bridged(copy, rs, g) == want


def _wb_genome():
    # het loci at 2 and 17; repeat copies ("GCGC") at 6 and 11 on haplotype 0,
    # both inside the homozygous gap between the two loci
    h0 = "AATAGCGCGCAGCGCGTCAAAA"
    h0 = h0[:22]
    h1 = list(h0)
    h1[2] = "C"
    h1[17] = "G"
    return DiploidGenome.from_strings(h0, "".join(h1))


class TestWellBridged:
    def test_clause_a_het_covering_copy(self):
        g = simulate_diploid(SimulationParams(30, 0.0, seed=7))
        h1 = list(g.h0.bases)
        h1[12] = "A" if h1[12] != "A" else "C"
        g = DiploidGenome.from_strings(g.h0.bases, "".join(h1))
        copy1 = RepeatCopy(10, 0, 4)  # covers het locus 12
        copy2 = RepeatCopy(20, 0, 4)
        dr = DoubleRepeat(copy1, copy2, "intra", (True, False))
        rs = ReadSet([_read_at(g, 0, 9, 6)])
        assert is_well_bridged(dr, rs, g)

    def test_clause_b_requires_both_haplotypes(self):
        g = _wb_genome()
        doubles = [d for d in find_double_repeats(g)
                   if d.covers_het == (False, False) and d.copy1.start > 3]
        assert doubles, "construction should contain a het-free repeat"
        dr = doubles[0]
        # window starting at het locus 2 and spanning through copy1's right
        # flank bridges copy1 and contains the locus
        L = dr.copy1.start + dr.copy1.length - 1
        assert L <= g.length
        rs0 = ReadSet([_read_at(g, 0, 2, L), _read_at(g, 0, 2, L)])
        rs_both = ReadSet([_read_at(g, 0, 2, L), _read_at(g, 1, 2, L)])
        assert not is_well_bridged(dr, rs0, g)
        assert is_well_bridged(dr, rs_both, g)

    def test_monotone_in_reads(self):
        g = _wb_genome()
        rng = np.random.default_rng(8)
        doubles = find_double_repeats(g)
        for _ in range(20):
            L = 8
            n1 = int(rng.integers(1, 6))
            seed = int(rng.integers(1 << 30))
            rs_small = sample_reads_uniform(g, n1, L, seed=seed)
            extra = sample_reads_uniform(g, 4, L, seed=seed + 1)
            rs_big = ReadSet(list(rs_small) + list(extra))
            for dr in doubles:
                if is_well_bridged(dr, rs_small, g):
                    assert is_well_bridged(dr, rs_big, g)
                if is_bridged(dr.copy1, rs_small, g):
                    assert is_bridged(dr.copy1, rs_big, g)
            if is_covered(g, rs_small):
                assert is_covered(g, rs_big)

    def test_well_bridged_implies_some_copy_bridged(self):
        g = _wb_genome()
        rng = np.random.default_rng(9)
        for _ in range(20):
            rs = sample_reads_uniform(g, int(rng.integers(2, 10)), 9,
                                      seed=int(rng.integers(1 << 30)))
            for dr in find_double_repeats(g):
                if is_well_bridged(dr, rs, g):
                    assert is_bridged(dr.copy1, rs, g) or \
                        is_bridged(dr.copy2, rs, g)


class TestMinReadLengthWellBridge:
    def test_planted_het_covering_repeat(self):
        # "ACG" at 1 and 6 on h0; het locus inside the first copy
        h0 = "GACGTTACGC"
        h1 = list(h0)
        h1[2] = "G"  # het locus 2 inside copy [1,3]; breaks h1-side copies
        g = DiploidGenome.from_strings(h0, "".join(h1))
        dr = [d for d in find_double_repeats(g)
              if (d.copy1.start, d.copy1.haplotype) == (1, 0) and d.length == 3]
        assert dr and dr[0].covers_het[0]
        assert min_read_length_well_bridge(g) >= 5

    def test_lower_bound_invariant(self):
        rng = np.random.default_rng(10)
        for _ in range(15):
            g = simulate_diploid(SimulationParams(int(rng.integers(10, 60)),
                                                  0.15,
                                                  seed=int(rng.integers(1 << 30))))
            if g.n_het == 0:
                continue
            doubles = find_double_repeats(g)
            l_double = max((d.length for d in doubles), default=0)
            assert min_read_length_well_bridge(g) >= l_double + 2

    def test_no_het_raises(self):
        g = DiploidGenome.from_strings("ACGTACGA", "ACGTACGA")
        with pytest.raises(EmptyLocusSet):
            min_read_length_well_bridge(g)

    def test_no_doubles_gives_two(self):
        g = DiploidGenome.from_strings("ACGT", "ACGA")
        assert min_read_length_well_bridge(g) == 2

    def test_value_is_achievable_and_tight(self):
        # at the returned L a full tiling well-bridges everything; at L-1
        # some repeat stays un-well-bridged no matter the reads
        g = _wb_genome()
        L = min_read_length_well_bridge(g)
        H = g.length
        doubles = find_double_repeats(g)

        def all_wb(read_len):
            rs = ReadSet([_read_at(g, h, s, read_len)
                          for h in (0, 1) for s in range(H)])
            return all(is_well_bridged(d, rs, g) for d in doubles)

        assert all_wb(L)
        assert not all_wb(L - 1)
