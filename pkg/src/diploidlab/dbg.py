"""Edge-centric de Bruijn graph assembler and its condition checks.

The graph's nodes are the k-mers occurring in the reads; an edge u -> v
exists iff the k-mers overlap by k-1 and their union (a (k+1)-mer) occurs
in some read.  Maximal unitigs are condensed into single labelled vertices,
an Eulerian circuit of the condensed graph is spelled, and the spelled
string (after trimming the wrapped k-1 suffix) is split into the two
haplotypes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import Disconnected, InvalidK, NotEulerian
from .genome import DiploidGenome, ReadSet
from .repeats import fast
from .repeats.predicates import BridgeIndex
from .repeats.types import DoubleRepeat


# ---------------------------------------------------------------------------
# Graph construction and condensation
# ---------------------------------------------------------------------------


@dataclass
class DeBruijnGraph:
    """k-mer graph: nodes are k-mers, edges are read-supported (k+1)-mers."""

    k: int
    nodes: List[str]
    edges: List[Tuple[int, int]]


@dataclass
class CondensedGraph:
    """Unitig-condensed sequence graph with string-labelled vertices."""

    k: int
    labels: List[str]
    edges: List[Tuple[int, int]]

    def out_adj(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = defaultdict(list)
        for u, v in self.edges:
            adj[u].append(v)
        return adj


def build_dbg(rs: ReadSet, k: int) -> DeBruijnGraph:
    """Edge-centric de Bruijn graph of the distinct read sequences."""
    L = rs.read_length
    if not 1 < k < L:
        raise InvalidK(f"k={k} must satisfy 1 < k < L={L}")
    seqs = sorted({r.seq for r in rs})
    kmers = sorted({s[i:i + k] for s in seqs for i in range(len(s) - k + 1)})
    kp1mers = {s[i:i + k + 1] for s in seqs for i in range(len(s) - k)}
    index = {km: i for i, km in enumerate(kmers)}
    edges = sorted((index[w[:-1]], index[w[1:]]) for w in kp1mers)
    return DeBruijnGraph(k, kmers, edges)


def condense(dbg: DeBruijnGraph) -> CondensedGraph:
    """Compact maximal unitigs (including isolated simple cycles)."""
    n = len(dbg.nodes)
    out_nbrs: List[List[int]] = [[] for _ in range(n)]
    in_deg = [0] * n
    for u, v in dbg.edges:
        out_nbrs[u].append(v)
        in_deg[v] += 1

    def extendable(u: int, v: int) -> bool:
        # edge u -> v lies inside a unitig iff it is v's only incoming edge
        # and u's only outgoing edge
        return len(out_nbrs[u]) == 1 and in_deg[v] == 1

    # unitig starts: nodes that do not continue an incoming unitig edge
    starts = [v for v in range(n)
              if not (in_deg[v] == 1 and
                      len(out_nbrs[_unique_pred(dbg.edges, v)]) == 1)]
    assigned = [-1] * n
    labels: List[str] = []
    chains: List[List[int]] = []
    for s in sorted(starts, key=lambda v: dbg.nodes[v]):
        if assigned[s] != -1:
            continue
        chain = [s]
        assigned[s] = len(chains)
        cur = s
        while len(out_nbrs[cur]) == 1:
            nxt = out_nbrs[cur][0]
            if in_deg[nxt] != 1 or assigned[nxt] != -1:
                break
            chain.append(nxt)
            assigned[nxt] = len(chains)
            cur = nxt
        chains.append(chain)
    # isolated simple cycles: every node has in/out degree 1 and none is a
    # start; condense the whole cycle into one vertex with a self-loop
    for v in range(n):
        if assigned[v] != -1:
            continue
        chain = [v]
        assigned[v] = len(chains)
        cur = out_nbrs[v][0]
        while cur != v:
            chain.append(cur)
            assigned[cur] = len(chains)
            cur = out_nbrs[cur][0]
        chains.append(chain)

    k = dbg.k
    for chain in chains:
        lab = dbg.nodes[chain[0]]
        for u in chain[1:]:
            lab += dbg.nodes[u][k - 1:]
        labels.append(lab)
    cedges = []
    for u, v in dbg.edges:
        cu, cv = assigned[u], assigned[v]
        inside = (cu == cv and chains[cu].index(v) == chains[cu].index(u) + 1)
        # self-loop of an isolated cycle: the wrap edge last -> first remains
        if cu == cv and inside:
            continue
        cedges.append((cu, cv))
    return CondensedGraph(k, labels, sorted(cedges))


def _unique_pred(edges: List[Tuple[int, int]], v: int) -> int:
    for u, w in edges:
        if w == v:
            return u
    return v


# ---------------------------------------------------------------------------
# Eulerian circuits and spelling
# ---------------------------------------------------------------------------


def _check_balanced(gc: CondensedGraph) -> None:
    n = len(gc.labels)
    din = [0] * n
    dout = [0] * n
    for u, v in gc.edges:
        dout[u] += 1
        din[v] += 1
    imbalanced = [i for i in range(n) if din[i] != dout[i]]
    if imbalanced:
        raise NotEulerian([gc.labels[i] for i in imbalanced])


def _components(gc: CondensedGraph) -> List[List[int]]:
    n = len(gc.labels)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u, v in gc.edges:
        parent[find(u)] = find(v)
    comps: Dict[int, List[int]] = defaultdict(list)
    for i in range(n):
        comps[find(i)].append(i)
    return sorted(comps.values(), key=lambda c: gc.labels[c[0]])


def euler_tour(gc: CondensedGraph,
               vertices: Optional[List[int]] = None) -> List[int]:
    """Hierholzer circuit over the given component, as a vertex visit list.

    Starts at the lexicographically smallest vertex label; each vertex's
    unused out-edges are taken in sorted target-label order, making the
    tour deterministic.  Raises NotEulerian on degree imbalance and
    Disconnected if the edges do not form a single circuit.
    """
    _check_balanced(gc)
    universe = set(range(len(gc.labels))) if vertices is None else set(vertices)
    adj: Dict[int, List[int]] = defaultdict(list)
    n_edges = 0
    for u, v in gc.edges:
        if u in universe:
            adj[u].append(v)
            n_edges += 1
    for u in adj:
        adj[u].sort(key=lambda v: gc.labels[v], reverse=True)  # pop() smallest
    start = min((v for v in universe if adj[v]),
                key=lambda v: gc.labels[v], default=None)
    if start is None:
        raise Disconnected("no edges to traverse")
    stack = [start]
    circuit: List[int] = []
    while stack:
        v = stack[-1]
        if adj[v]:
            stack.append(adj[v].pop())
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    if len(circuit) != n_edges + 1:
        raise Disconnected("edges do not form a single closed walk")
    return circuit


def spell_tour(gc: CondensedGraph, tour: List[int]) -> str:
    """Label of the first vertex plus each later visit's label sans the
    k-1 prefix; the closing return to the start vertex is not re-spelled,
    and the wrapped k-1 suffix is trimmed."""
    k = gc.k
    body = tour[:-1] if len(tour) > 1 and tour[0] == tour[-1] else tour
    s = gc.labels[body[0]]
    for v in body[1:]:
        s += gc.labels[v][k - 1:]
    return s[:len(s) - k + 1]


def enumerate_euler_tours(gc: CondensedGraph, limit: int = 64) -> List[str]:
    """All distinct strings spelled by Eulerian circuits (up to `limit`).

    Used to demonstrate ambiguity when the necessity conditions fail;
    rotations of the starting point are factored out by fixing the start
    vertex, so distinct strings correspond to genuinely different edge
    interleavings.
    """
    _check_balanced(gc)
    edges_by_src: Dict[int, List[int]] = defaultdict(list)
    for idx, (u, _) in enumerate(gc.edges):
        edges_by_src[u].append(idx)
    total = len(gc.edges)
    start = min((u for u, _ in gc.edges), key=lambda u: gc.labels[u])
    used = [False] * total
    tours: List[List[int]] = []

    def walk(v: int, path: List[int]) -> None:
        if len(tours) >= limit:
            return
        if len(path) == total:
            if gc.edges[path[-1]][1] == start:
                tours.append(list(path))
            return
        for idx in edges_by_src[v]:
            if not used[idx]:
                used[idx] = True
                path.append(idx)
                walk(gc.edges[idx][1], path)
                path.pop()
                used[idx] = False

    walk(start, [])
    spelled = {spell_tour(gc, [start] + [gc.edges[i][1] for i in t])
               for t in tours}
    return sorted(spelled)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


@dataclass
class DBGReport:
    """Outcome of one de Bruijn assembly run."""

    result: Optional[Tuple[str, str]]
    k: int
    spelled: List[str] = field(default_factory=list)
    n_components: int = 1
    failure: Optional[str] = None
    detail: Optional[str] = None


def dbg_assemble(rs: ReadSet, k: int) -> DBGReport:
    """Condense, find the Eulerian circuit, spell, and split.

    A condensed graph with exactly two components — each with an Eulerian
    circuit — is the dense-loci regime where each component spells one
    haplotype; the two spelled strings are returned directly.  One
    component is the general case: the spelled concatenation is halved.
    """
    gc = condense(build_dbg(rs, k))
    comps = _components(gc)
    if len(comps) == 2:
        try:
            spelled = [spell_tour(gc, euler_tour(gc, comp)) for comp in comps]
        except (NotEulerian, Disconnected) as exc:
            return DBGReport(None, k, n_components=2,
                             failure=type(exc).__name__, detail=str(exc))
        if len(spelled[0]) != len(spelled[1]):
            return DBGReport(None, k, spelled, 2, failure="LengthMismatch")
        return DBGReport((spelled[0], spelled[1]), k, spelled, 2)
    if len(comps) > 2:
        return DBGReport(None, k, n_components=len(comps),
                         failure="Disconnected",
                         detail=f"{len(comps)} components")
    try:
        tour = euler_tour(gc)
    except (NotEulerian, Disconnected) as exc:
        return DBGReport(None, k, failure=type(exc).__name__,
                         detail=str(exc))
    s = spell_tour(gc, tour)
    if len(s) % 2 != 0:
        return DBGReport(None, k, [s], 1, failure="OddLength")
    half = len(s) // 2
    return DBGReport((s[:half], s[half:]), k, [s], 1)


# ---------------------------------------------------------------------------
# Condition checks and k bounds
# ---------------------------------------------------------------------------


def _copy_covers_locus(genome: DiploidGenome, start: int, length: int,
                       locus: int) -> bool:
    return (locus - start) % genome.length < length


def _common_het_mask(genome: DiploidGenome, d) -> np.ndarray:
    """Rows whose two copies are intra-haplotype and cover a common locus."""
    m = np.zeros(len(d), dtype=bool)
    for i in range(len(d)):
        if d.h1[i] != d.h2[i]:
            continue
        m[i] = any(
            _copy_covers_locus(genome, int(d.s1[i]), int(d.l[i]), locus)
            and _copy_covers_locus(genome, int(d.s2[i]), int(d.l[i]), locus)
            for locus in genome.het_loci)
    return m


def max_double_length(genome: DiploidGenome,
                      exclude_common_het_intra: bool = False) -> int:
    """Maximum double-repeat length, optionally excluding intra doubles
    whose copies share a heterozygous locus."""
    d = fast.double_arrays(genome)
    if len(d) == 0:
        return 0
    if exclude_common_het_intra:
        keep = ~_common_het_mask(genome, d)
        if not keep.any():
            return 0
        return int(d.l[keep].max())
    return int(d.l.max())


def kp1_covered(genome: DiploidGenome, rs: ReadSet, k: int) -> bool:
    """Every (k+1)-length substring of each haplotype lies inside a read."""
    if k + 1 > rs.read_length:
        return False
    bi = BridgeIndex(genome, rs)
    return all(bi.interval_within(hap, s, k + 1)
               for hap in (0, 1) for s in range(genome.length))


def check_conditions_dbg(genome: DiploidGenome, rs: ReadSet,
                         k: int) -> Dict[str, bool]:
    """D1/D2 are sufficient; N1/N2 are necessary (N1 relaxes D1 by
    excluding intra doubles whose copies share a het locus)."""
    covered = kp1_covered(genome, rs, k)
    return {
        "D1": k > max_double_length(genome),
        "D2": covered,
        "N1": k > max_double_length(genome, exclude_common_het_intra=True),
        "N2": covered,
    }


def special_case_k_bound(genome: DiploidGenome, dr: DoubleRepeat) -> int:
    """Minimum k reconstructing an intra double whose copies share a locus.

    With the union of the two copies covering loci L_1..L_m, the bound is
    max(max inner gap + 1, d) where d is the distance from L_m to the end
    of the second copy, both ends inclusive.
    """
    H = genome.length
    r1, r2 = dr.copy1, dr.copy2
    union_start = r1.start
    union_len = (r2.start - r1.start) % H + r2.length
    covered = [locus for locus in genome.het_loci
               if (locus - union_start) % H < union_len]
    covered.sort(key=lambda locus: (locus - union_start) % H)
    if not covered:
        raise ValueError("the union of the copies covers no heterozygous locus")
    inner_gaps = [(covered[i + 1] - covered[i]) % H - 1
                  for i in range(len(covered) - 1)]
    last = covered[-1]
    end = (union_start + union_len - 1) % H
    d = (end - last) % H + 1
    bound = d
    if inner_gaps:
        bound = max(bound, max(inner_gaps) + 1)
    return bound
