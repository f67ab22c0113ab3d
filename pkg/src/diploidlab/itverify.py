"""Information-theoretic condition checks and tiny-instance ambiguity search.

The checker evaluates the three conditions I1-I3 on a genome/read-set pair.
The enumerator exhibits ambiguity on tiny instances: it lists every diploid
genome whose per-read occurrence counts equal the ground truth's (identical
sampling likelihood under the uniform model) and groups the candidates by
switch-error equivalence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import BudgetExceeded
from .genome import DiploidGenome, ReadSet, switch_equivalent
from .repeats import DoubleArrays, is_bridged, is_covered
from .repeats import fast
from .repeats._pairing import i2_index_pairs, interleaved_index_pairs
from .repeats.predicates import BridgeIndex
from .repeats.types import DoubleRepeat, TripleRepeat


def double_bridged(dr: DoubleRepeat, rs: ReadSet, genome: DiploidGenome) -> bool:
    """A double repeat is bridged iff at least one copy is bridged."""
    return is_bridged(dr.copy1, rs, genome) or is_bridged(dr.copy2, rs, genome)


def triple_bridged(tr: TripleRepeat, rs: ReadSet, genome: DiploidGenome) -> bool:
    """A triple repeat is bridged iff at least one copy is bridged."""
    return any(is_bridged(c, rs, genome) for c in tr.copies)


def check_conditions_it(genome: DiploidGenome, rs: ReadSet) -> Dict[str, bool]:
    """Evaluate the three information-theoretic necessary conditions.

    I1: every intra-triple and intra-interleaved repeat is bridged.
    I2: for every equal-offset disjoint pair of inter-double repeats, at
        least one of the two doubles is bridged.
    I3: the reads cover the genome.
    """
    bi = BridgeIndex(genome, rs)
    darr = fast.double_arrays(genome)
    db = np.zeros(len(darr), dtype=bool)
    if len(darr):
        db = bi.bridged_cols(darr.s1, darr.h1, darr.l) \
            | bi.bridged_cols(darr.s2, darr.h2, darr.l)

    trows = fast.triple_rows(genome)
    i1 = True
    if trows.size:
        s1, h1, s2, h2, s3, h3, l = (trows[:, k] for k in range(7))
        intra = (h1 == h2) & (h2 == h3)
        tb = bi.bridged_cols(s1, h1, l) | bi.bridged_cols(s2, h2, l) \
            | bi.bridged_cols(s3, h3, l)
        i1 = bool(tb[intra].all())
    if i1 and len(darr):
        for hap in (0, 1):
            m = (darr.h1 == hap) & (darr.h2 == hap) & ~db
            if m.sum() < 2:
                continue
            sub = DoubleArrays(darr.s1[m], darr.h1[m], darr.s2[m],
                               darr.h2[m], darr.l[m], darr.sid[m])
            if len(interleaved_index_pairs(sub)):
                i1 = False
                break

    i2 = True
    if len(darr):
        pairs = i2_index_pairs(darr)
        if len(pairs):
            i2 = bool((db[pairs[:, 0]] | db[pairs[:, 1]]).all())

    i3 = is_covered(genome, rs)
    return {"I1": i1, "I2": i2, "I3": i3}


# ---------------------------------------------------------------------------
# Equally-likely genome enumeration
# ---------------------------------------------------------------------------


@dataclass
class AmbiguityReport:
    """Candidates with the ground truth's likelihood, grouped by equivalence."""

    candidates: List[DiploidGenome]
    classes: List[List[int]] = field(default_factory=list)
    truth_class: int = -1

    @property
    def unique(self) -> bool:
        return len(self.classes) == 1


def _occurrence_counts(h0: str, h1: str, seqs: List[str]) -> Tuple[int, ...]:
    """Circular occurrence count of each seq, summed over both haplotypes."""
    H = len(h0)
    counts = []
    for seq in seqs:
        total = 0
        for hap in (h0, h1):
            doubled = hap * 2
            i = doubled.find(seq)
            while 0 <= i < H:
                total += 1
                i = doubled.find(seq, i + 1)
        counts.append(total)
    return tuple(counts)


def _min_rotation(s: str) -> str:
    return min(s[i:] + s[:i] for i in range(len(s)))


def _candidate_haplotypes(read_seqs: set, H: int, L: int,
                          budget: int) -> List[str]:
    """Cyclic strings of length H whose every L-window is one of the reads."""
    by_prefix: Dict[str, List[str]] = {}
    for r in read_seqs:
        by_prefix.setdefault(r[:L - 1], []).append(r)
    found = set()
    nodes = 0
    for seed in sorted(read_seqs):
        stack = [seed]
        while stack:
            s = stack.pop()
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(
                    f"haplotype enumeration exceeded {budget} search nodes")
            if len(s) == H:
                doubled = s + s
                if all(doubled[i:i + L] in read_seqs
                       for i in range(H - L + 1, H)):
                    found.add(_min_rotation(s))
                continue
            for r in by_prefix.get(s[-(L - 1):] if L > 1 else "", ()):
                stack.append(s + r[-1])
    return sorted(found)


def _group_by_equivalence(candidates: List[DiploidGenome]) -> List[List[int]]:
    classes: List[List[int]] = []
    reps: List[DiploidGenome] = []
    for idx, cand in enumerate(candidates):
        for cls, rep in zip(classes, reps):
            if switch_equivalent(cand, rep):
                cls.append(idx)
                break
        else:
            classes.append([idx])
            reps.append(cand)
    return classes


def enumerate_equally_likely_genomes(
        rs: ReadSet, truth: DiploidGenome,
        het_count_bound: Optional[int] = None,
        alphabet: Optional[str] = None,
        budget: int = 2_000_000) -> AmbiguityReport:
    """All diploid genomes sharing the ground truth's sampling likelihood.

    A candidate genome of the truth's length is equally likely iff every
    read's circular occurrence count (summed over both haplotypes) equals
    its count in the truth.  Small alphabets/lengths are enumerated
    exhaustively.  Beyond that, covering read sets are handled by searching
    genomes whose length-L windows all occur in the read set (complete over
    read-tiled candidates, which covers densely sampled instances); sparse
    read sets leave stretches of the genome unconstrained, so anything
    larger raises BudgetExceeded instead of risking a false uniqueness
    claim.
    """
    H = truth.length
    L = rs.read_length
    if H > 40:
        raise BudgetExceeded("exhaustive enumeration is limited to |H| <= 40")

    sigma = alphabet or sorted(set(truth.h0.bases + truth.h1.bases))
    if len(sigma) ** H <= 65536:
        haps = sorted({_min_rotation("".join(t))
                       for t in itertools.product(sigma, repeat=H)})
    elif len(rs) > 0 and is_covered(truth, rs):
        haps = _candidate_haplotypes({r.seq for r in rs}, H, L, budget)
    else:
        raise BudgetExceeded(
            "alphabet^length too large for unconstrained enumeration")

    truth_counts = _occurrence_counts(truth.h0.bases, truth.h1.bases,
                                      sorted({r.seq for r in rs}))
    ordered_seqs = sorted({r.seq for r in rs})

    seen = set()
    candidates: List[DiploidGenome] = []
    for a, b in itertools.combinations_with_replacement(haps, 2):
        if _occurrence_counts(a, b, ordered_seqs) != truth_counts:
            continue
        g = DiploidGenome.from_strings(a, b)
        if het_count_bound is not None and g.n_het > het_count_bound:
            continue
        key = (a, b)
        if key not in seen:
            seen.add(key)
            candidates.append(g)

    truth_idx = None
    for idx, cand in enumerate(candidates):
        if switch_equivalent(cand, truth):
            truth_idx = idx
            break
    if truth_idx is None:
        candidates.append(truth)
        truth_idx = len(candidates) - 1

    classes = _group_by_equivalence(candidates)
    truth_class = next(i for i, cls in enumerate(classes) if truth_idx in cls)
    return AmbiguityReport(candidates, classes, truth_class)
