"""Greedy max-overlap merging assembler, anchor reads, and G-condition checks."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ._kernels import sp_overlap, sp_overlap_matrix
from .errors import EmptyLocusSet, UncoveredLocus
from .genome import DiploidGenome, ReadSet, overlap
from .itverify import check_conditions_it
from .repeats import fast
from .repeats.predicates import BridgeIndex, read_placements


@dataclass
class GreedyReport:
    """Outcome of one greedy run.

    result is the reconstructed haplotype pair, or None on failure; failure
    is then one of "Fragmented" (more than two strings left) or "OddLength"
    (single leftover string whose trimmed length is odd).  merge_trace lists
    (source read id, target read id, overlap) per merge, in merge order.
    In the two-string case the trimmed lengths may differ; length_mismatch
    reports that instead of guessing a split.
    """

    result: Optional[Tuple[str, str]]
    merge_trace: List[Tuple[int, int, int]]
    remaining: List[str]
    alpha: Optional[int] = None
    failure: Optional[str] = None
    length_mismatch: bool = False
    condition_flags: Optional[Dict[str, bool]] = None


def greedy_assemble(rs: ReadSet) -> GreedyReport:
    """Merge the globally max-overlap ordered pair until none overlaps.

    Ties are broken by the lexicographically smallest (source id, target id)
    pair.  The read collection is treated as a set: duplicate sequences are
    collapsed before merging (a superstring containing a string once already
    contains every duplicate of it), and merge_trace entries index into the
    sorted list of distinct sequences.  A merged chain's usable suffix-prefix
    overlap with another chain is its tail read's overlap with the other
    chain's head read (overlaps of length >= L would re-consume whole reads
    already placed in a chain), so the loop is a descending scan over
    read-pair overlaps that links chain tails to chain heads.  When a
    chain's own tail-to-head overlap becomes the largest one available, the
    chain has wrapped into a circle: it is retired rather than merged with
    another chain through a smaller, spurious overlap (its self-overlap is
    the argmax, and a circular wrap is a finished reconstruction of one
    haplotype traversal).  Afterwards: one leftover string is trimmed by
    its self-overlap and split in half; two leftovers are each trimmed by
    their own self-overlap; more than two is reported as Fragmented.
    """
    if len(rs) < 1:
        raise ValueError("greedy assembly requires at least one read")
    seqs = sorted({r.seq.encode() for r in rs})
    n = len(seqs)
    mat = sp_overlap_matrix(seqs)
    heap: List[Tuple[int, int, int]] = [(-int(mat[i, j]), i, j)
                                        for i in range(n) for j in range(n)
                                        if i != j and mat[i, j] > 0]
    heapq.heapify(heap)

    root = list(range(n))

    def find(i: int) -> int:
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    succ: Dict[int, Tuple[int, int]] = {}
    pred: Dict[int, int] = {}
    closed: set = set()
    chains = n
    trace: List[Tuple[int, int, int]] = []
    while chains > 1 and heap:
        negw, x, y = heapq.heappop(heap)
        if x in succ or y in pred:
            continue
        rx, ry = find(x), find(y)
        if rx in closed or ry in closed:
            continue
        if rx == ry:
            closed.add(rx)
            continue
        succ[x] = (y, -negw)
        pred[y] = x
        root[ry] = rx
        trace.append((x, y, -negw))
        chains -= 1

    remaining = []
    for head in range(n):
        if head in pred:
            continue
        parts = [seqs[head]]
        cur = head
        while cur in succ:
            cur, w = succ[cur]
            parts.append(seqs[cur][w:])
        remaining.append(b"".join(parts).decode())
    if len(remaining) == 1:
        x0 = remaining[0]
        alpha = int(sp_overlap(x0.encode(), x0.encode()))
        total = len(x0) - alpha
        if total % 2 != 0:
            return GreedyReport(None, trace, remaining, alpha=alpha,
                                failure="OddLength")
        half = total // 2
        return GreedyReport((x0[:half], x0[half:total]), trace, remaining,
                            alpha=alpha)
    if len(remaining) == 2:
        halves = [s[:len(s) - int(sp_overlap(s.encode(), s.encode()))]
                  for s in remaining]
        return GreedyReport((halves[0], halves[1]), trace, remaining,
                            length_mismatch=len(halves[0]) != len(halves[1]))
    return GreedyReport(None, trace, remaining, failure="Fragmented")


# ---------------------------------------------------------------------------
# Anchor reads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnchorQuad:
    """Per adjacent-locus-pair extremal reads, as indices into the read set.

    x1/x2 cover the left locus on haplotype 0/1 and extend farthest
    clockwise; x3/x4 cover the right locus on haplotype 0/1 and extend
    farthest anticlockwise.
    """

    pair_index: int
    x1: int
    x2: int
    x3: int
    x4: int


@dataclass
class AnchorReads:
    quads: List[AnchorQuad]


def enumerate_anchor_reads(genome: DiploidGenome, rs: ReadSet) -> AnchorReads:
    """The four extremal reads per adjacent heterozygous locus pair.

    Ties on extension are broken by the lowest read id.  Raises
    UncoveredLocus when some locus has no covering read on some haplotype.
    """
    loci = genome.het_loci
    if not loci:
        raise EmptyLocusSet("anchor reads require a heterozygous locus")
    H = genome.length
    L = rs.read_length
    placements = [read_placements(r, genome) for r in rs]
    quads = []
    for i in range(len(loci)):
        left = loci[i]
        right = loci[(i + 1) % len(loci)]
        chosen = []
        for locus, hap, clockwise in ((left, 0, True), (left, 1, True),
                                      (right, 0, False), (right, 1, False)):
            best_key = None
            best_rid = None
            for rid, places in enumerate(placements):
                for h, s in places:
                    if h != hap or (locus - s) % H >= L:
                        continue
                    if clockwise:
                        ext = (s + L - 1 - locus) % H
                    else:
                        ext = (locus - s) % H
                    key = (ext, -rid)
                    if best_key is None or key > best_key:
                        best_key, best_rid = key, rid
            if best_rid is None:
                raise UncoveredLocus(locus, hap)
            chosen.append(best_rid)
        quads.append(AnchorQuad(i, *chosen))
    return AnchorReads(quads)


def check_conditions_greedy(genome: DiploidGenome,
                            rs: ReadSet) -> Dict[str, bool]:
    """Evaluate G1 (the I-conditions), G2 (n >= 2), G3a (anchor overlaps
    with the same-read exemption), and G3b (all doubles well-bridged)."""
    g1 = all(check_conditions_it(genome, rs).values())
    g2 = genome.n_het >= 2
    if genome.n_het == 0:
        g3a = True
    else:
        try:
            anchors = enumerate_anchor_reads(genome, rs)
        except UncoveredLocus:
            g3a = False
        else:
            g3a = True
            for q in anchors.quads:
                for a, b in ((q.x1, q.x3), (q.x1, q.x4),
                             (q.x2, q.x3), (q.x2, q.x4)):
                    if rs[a].seq != rs[b].seq and overlap(rs[a].seq, rs[b].seq) == 0:
                        g3a = False
    bi = BridgeIndex(genome, rs)
    darr = fast.double_arrays(genome)
    g3b = all(bi.double_well_bridged(darr.s1[k], darr.h1[k],
                                     darr.s2[k], darr.h2[k], darr.l[k])
              for k in range(len(darr)))
    return {"G1": g1, "G2": g2, "G3a": g3a, "G3b": g3b}
