"""Frozen violating instances for the necessity claims.

Each case pins a small simulated genome and read set (found by programmatic
search, then frozen by seed) in which exactly one assembly condition fails,
together with the failure the corresponding algorithm is expected to show:

- ``ambiguous-likelihood``: more than one switch-equivalence class of
  genomes shares the read likelihood (information-theoretic ambiguity).
- ``greedy-wrong``: the greedy merge loop fragments, spells odd length, or
  reconstructs a genome that is not switch-equivalent to the truth.
- ``dbg-not-eulerian``: with k equal to the offending double-repeat length,
  the condensed graph has imbalanced vertices.
- ``dbg-ambiguous``: the condensed graph is Eulerian but some Euler tour
  spells a non-equivalent genome.
- ``overlap-ambiguous``: at least two minimum-length node-covering closed
  walks exist and at least one spells a non-equivalent genome; all optima
  have equal spelled length (the crossed-pairing overlap identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .dbg import build_dbg, condense, dbg_assemble, enumerate_euler_tours
from .errors import Disconnected, NotEulerian
from .genome import DiploidGenome, ReadSet, switch_equivalent
from .greedy import greedy_assemble
from .itverify import enumerate_equally_likely_genomes
from .overlapg import overlap_assemble
from .simulate import SimulationParams, sample_all_substrings, simulate_diploid


@dataclass(frozen=True)
class Counterexample:
    """One violating instance plus the failure it is expected to exhibit."""

    name: str
    genome: DiploidGenome
    rs: ReadSet
    expected_failure: str
    k: Optional[int] = None  # de Bruijn order, where applicable


# (name, H, het rate, seed, read length L, expected failure, k)
_CASES: List[Tuple[str, int, float, int, int, str, Optional[int]]] = [
    # two unbridged equal-offset inter doubles admit a segment swap
    ("it-i2-segment-swap", 16, 0.25, 0, 3, "ambiguous-likelihood", None),
    # a single heterozygous locus cannot be phased
    ("greedy-single-het-locus", 12, 0.08, 2, 6, "greedy-wrong", None),
    # anchor reads of consecutive loci fail to overlap
    ("greedy-anchor-no-overlap", 20, 0.15, 2, 9, "greedy-wrong", None),
    # unwell-bridged double arrangements (copies overlapping in one
    # homozygous gap; in distinct gaps; one copy on a het locus; copies on
    # different loci; same locus on different haplotypes; same locus on one
    # haplotype)
    ("greedy-double-hom-overlapping", 24, 0.10, 0, 5, "greedy-wrong", None),
    ("greedy-double-hom-disjoint", 24, 0.10, 0, 5, "greedy-wrong", None),
    ("greedy-double-one-covers", 16, 0.25, 2, 4, "greedy-wrong", None),
    ("greedy-double-different-loci", 16, 0.25, 10, 4, "greedy-wrong", None),
    ("greedy-double-same-locus-inter", 16, 0.25, 10, 4, "greedy-wrong", None),
    ("greedy-double-same-locus-intra", 24, 0.10, 18, 6, "greedy-wrong", None),
    # de Bruijn order k equal to the double length
    ("dbg-double-none-covers", 18, 0.12, 0, 4, "dbg-not-eulerian", 2),
    ("dbg-double-one-covers", 18, 0.12, 0, 4, "dbg-not-eulerian", 2),
    ("dbg-double-hom-overlapping", 18, 0.12, 0, 5, "dbg-not-eulerian", 3),
    ("dbg-double-different-loci", 18, 0.12, 6, 7, "dbg-ambiguous", 5),
    ("dbg-double-same-locus-inter", 24, 0.20, 7, 6, "dbg-ambiguous", 4),
    # unbridged doubles in the read-overlap graph
    ("overlap-double-hom", 10, 0.12, 8, 4, "overlap-ambiguous", None),
    ("overlap-double-one-covers", 10, 0.20, 1, 4, "overlap-ambiguous", None),
    ("overlap-double-different-loci", 12, 0.18, 2, 4, "overlap-ambiguous", None),
    ("overlap-double-same-locus-inter", 12, 0.18, 0, 4, "overlap-ambiguous",
     None),
]


def counterexample_suite() -> List[Counterexample]:
    """Deterministically rebuild every frozen violating instance."""
    out = []
    for name, H, rate, seed, L, expected, k in _CASES:
        g = simulate_diploid(SimulationParams(H, rate, seed=seed))
        out.append(Counterexample(name, g, sample_all_substrings(g, L),
                                  expected, k))
    return out


def _equivalent_pair(g: DiploidGenome, a: str, b: str) -> bool:
    if len(a) != len(b) or len(a) != g.length:
        return False
    return switch_equivalent(DiploidGenome.from_strings(a, b), g)


def _spelling_ambiguous(g: DiploidGenome, spellings: List[str]) -> bool:
    return any(len(s) % 2
               or not _equivalent_pair(g, s[:len(s) // 2], s[len(s) // 2:])
               for s in spellings)


def verify_counterexample(case: Counterexample) -> bool:
    """True iff the instance exhibits its predicted failure."""
    g, rs = case.genome, case.rs
    tag = case.expected_failure
    if tag == "ambiguous-likelihood":
        return len(enumerate_equally_likely_genomes(rs, g).classes) > 1
    if tag == "greedy-wrong":
        rep = greedy_assemble(rs)
        return rep.result is None or not _equivalent_pair(g, *rep.result)
    if tag == "dbg-not-eulerian":
        return dbg_assemble(rs, case.k).failure == "NotEulerian"
    if tag == "dbg-ambiguous":
        rep = dbg_assemble(rs, case.k)
        if rep.failure is not None or rep.n_components != 1:
            return False
        try:
            spellings = enumerate_euler_tours(condense(build_dbg(rs, case.k)))
        except (NotEulerian, Disconnected):
            return False
        return _spelling_ambiguous(g, spellings)
    if tag == "overlap-ambiguous":
        rep = overlap_assemble(rs, all_optima=True)
        if len(rep.walks) < 2:
            return False
        if len({len(s) for s in rep.spelled}) != 1:
            return False  # optima must tie exactly in spelled length
        return _spelling_ambiguous(g, rep.spelled)
    raise ValueError(f"unknown expected failure: {tag!r}")
