"""Read-overlap graph assembler: transitive reduction, exact shortest
node-covering closed walk, and the U1-U3 necessity checker.

Vertices are read ids (duplicate read strings stay distinct vertices, so a
node-covering walk must traverse homozygous stretches once per haplotype).
The walk solver is exact branch-and-bound and is only meant for desk-scale
instances; it refuses graphs beyond its vertex budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _kernels
from .dbg import _common_het_mask
from .errors import BudgetExceeded, NotStronglyConnected, OddLength
from .genome import DiploidGenome, ReadSet, union
from .itverify import check_conditions_it, double_bridged, triple_bridged
from .repeats import find_double_repeats, find_triple_repeats

DEFAULT_WALK_BUDGET = 24


@dataclass
class OverlapGraph:
    """Weighted read-overlap digraph; weights are maximum overlaps."""

    labels: List[str]
    weights: Dict[Tuple[int, int], int]
    reduced: bool = False

    @property
    def n(self) -> int:
        return len(self.labels)

    def edges(self) -> List[Tuple[int, int, int]]:
        return sorted((u, v, w) for (u, v), w in self.weights.items())

    def out_adj(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {u: [] for u in range(self.n)}
        for u, v in self.weights:
            adj[u].append(v)
        for u in adj:
            adj[u].sort()
        return adj


def build_overlap_graph(rs: ReadSet, min_overlap: int = 1) -> OverlapGraph:
    """Edge (x, y) with weight overlap(x, y) for every ordered read-id pair
    whose maximum suffix-prefix overlap reaches min_overlap."""
    if min_overlap < 1:
        raise ValueError("min_overlap must be at least 1")
    labels = [r.seq for r in rs]
    mat = _kernels.sp_overlap_matrix([s.encode() for s in labels])
    weights = {(int(u), int(v)): int(mat[u, v])
               for u, v in zip(*np.nonzero(mat >= min_overlap))}
    return OverlapGraph(labels, weights)


def transitive_reduction(g: OverlapGraph) -> OverlapGraph:
    """Drop every edge x->z for which some vertex y has edges x->y and y->z
    with union(union(x, y), z) == union(x, z).

    All inferable edges are identified against the input graph and removed
    together, so removal order cannot matter.
    """
    out_adj = g.out_adj()
    labels = g.labels
    drop = set()
    for (x, z), _ in g.weights.items():
        xz = union(labels[x], labels[z])
        for y in out_adj[x]:
            if y == z or y == x or (y, z) not in g.weights:
                continue
            if union(union(labels[x], labels[y]), labels[z]) == xz:
                drop.add((x, z))
                break
    kept = {e: w for e, w in g.weights.items() if e not in drop}
    return OverlapGraph(list(labels), kept, reduced=True)


def _check_strongly_connected(g: OverlapGraph) -> None:
    fwd: Dict[int, List[int]] = {u: [] for u in range(g.n)}
    rev: Dict[int, List[int]] = {u: [] for u in range(g.n)}
    for u, v in g.weights:
        fwd[u].append(v)
        rev[v].append(u)
    for adj in (fwd, rev):
        seen = {0}
        stack = [0]
        while stack:
            for v in adj[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != g.n:
            missing = sorted(set(range(g.n)) - seen)
            raise NotStronglyConnected(
                f"vertices unreachable in one direction: {missing[:8]}")


def _canonical_cycle(walk: Tuple[int, ...]) -> Tuple[int, ...]:
    """Lexicographically smallest rotation of a closed walk (start repeated
    only implicitly)."""
    k = len(walk)
    return min(tuple(walk[(i + j) % k] for j in range(k)) for i in range(k))


def shortest_node_covering_closed_walk(
        g: OverlapGraph,
        budget: int = DEFAULT_WALK_BUDGET,
        all_optima: bool = False,
        max_optima: int = 64) -> List[List[int]]:
    """Exact minimum-spelled-length closed walks visiting every vertex.

    The spelled length of a closed walk equals the sum of
    len(label[target]) - weight over its edges, so the search minimizes that
    edge cost with an admissible bound (cheapest way to enter each vertex
    still owed a visit, plus the closing entry into the start vertex).
    Returns canonical rotations, lexicographically smallest first; only the
    first is returned unless all_optima is set.
    """
    if g.n == 0:
        raise NotStronglyConnected("empty graph")
    if g.n > budget:
        raise BudgetExceeded(f"{g.n} vertices exceeds walk budget {budget}")
    _check_strongly_connected(g)
    cost = {(u, v): len(g.labels[v]) - w for (u, v), w in g.weights.items()}
    out_adj = g.out_adj()
    min_in = [min(c for (u, v), c in cost.items() if v == t)
              for t in range(g.n)]
    full = (1 << g.n) - 1

    best = [float("inf")]
    optima: List[Tuple[int, ...]] = []
    seen_states: Dict[Tuple[int, int], int] = {}

    def record(path: List[int], total: int) -> None:
        if total < best[0]:
            best[0] = total
            optima.clear()
        if total == best[0] and len(optima) < max_optima:
            optima.append(tuple(path))

    def dfs(u: int, visited: int, total: int, path: List[int]) -> None:
        owed = sum(min_in[v] for v in range(g.n) if not visited >> v & 1)
        bound = total + owed + min_in[0]
        if bound > best[0] or (bound == best[0] and not all_optima):
            return
        key = (u, visited)
        prev = seen_states.get(key)
        if prev is not None and total > prev:
            return
        if prev is None or total < prev:
            seen_states[key] = total
        for v in out_adj[u]:
            c = total + cost[(u, v)]
            if v == 0 and visited == full:
                record(path, c)
                continue
            mask = visited | (1 << v)
            path.append(v)
            dfs(v, mask, c, path)
            path.pop()

    dfs(0, 1, 0, [0])
    if not optima:
        raise NotStronglyConnected("no node-covering closed walk exists")
    canon = sorted({_canonical_cycle(w) for w in optima})
    walks = [list(w) for w in canon]
    return walks if all_optima else walks[:1]


def spell_walk(g: OverlapGraph, walk: List[int]) -> str:
    """String spelled by a closed walk: each visited label appended with the
    incident overlap trimmed, then the closing overlap removed from the end."""
    s = g.labels[walk[0]]
    for prev, cur in zip(walk, walk[1:]):
        s += g.labels[cur][g.weights[(prev, cur)]:]
    closing = g.weights[(walk[-1], walk[0])]
    return s[:len(s) - closing] if closing else s


@dataclass
class OverlapReport:
    """Outcome of the overlap-graph assembler on one read set."""

    result: Optional[Tuple[str, str]]
    walks: List[List[int]]
    spelled: List[str]
    graph: OverlapGraph
    failure: Optional[str] = None
    detail: str = ""


def overlap_assemble(rs: ReadSet,
                     min_overlap: int = 1,
                     budget: int = DEFAULT_WALK_BUDGET,
                     all_optima: bool = False) -> OverlapReport:
    """Reduce the overlap graph, solve for the shortest node-covering closed
    walk(s), spell, trim, and split each spelling into two haplotypes."""
    g = transitive_reduction(build_overlap_graph(rs, min_overlap))
    walks = shortest_node_covering_closed_walk(g, budget, all_optima)
    spelled = [spell_walk(g, w) for w in walks]
    s = spelled[0]
    if len(s) % 2:
        return OverlapReport(None, walks, spelled, g, failure="OddLength",
                             detail=f"spelled length {len(s)} is odd")
    half = len(s) // 2
    return OverlapReport((s[:half], s[half:]), walks, spelled, g)


def check_conditions_overlap(genome: DiploidGenome,
                             rs: ReadSet) -> Dict[str, bool]:
    """U1: the information-theoretic conditions hold; U2: triples bridged;
    U3: doubles bridged, excluding intra doubles sharing a het locus."""
    u1 = all(check_conditions_it(genome, rs).values())
    u2 = all(triple_bridged(t, rs, genome)
             for t in find_triple_repeats(genome))
    u3 = True
    for dr in find_double_repeats(genome):
        c1, c2 = dr.copy1, dr.copy2
        if c1.haplotype == c2.haplotype and any(
                c1.covers(locus, genome.length)
                and c2.covers(locus, genome.length)
                for locus in genome.het_loci):
            continue
        if not double_bridged(dr, rs, genome):
            u3 = False
            break
    return {"U1": u1, "U2": u2, "U3": u3}
