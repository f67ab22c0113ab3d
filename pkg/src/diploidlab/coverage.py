"""Coverage arithmetic: read-count demands, thresholds, feasibility curves."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Union

from .errors import SchemaMismatch
from .repeats.profile import RepeatProfile, STATS_HEADER
from .simulate import lander_waterman_reads

DEFAULT_EPS = 0.01

StatsLike = Union[RepeatProfile, Mapping[str, int]]

FEASIBILITY_HEADER = ("L", "cbar_lower", "cbar_greedy", "cbar_dbg",
                      "feasible_lower", "feasible_greedy", "feasible_dbg")


def _stats(stats: StatsLike) -> Dict[str, int]:
    if isinstance(stats, RepeatProfile):
        return stats.summary()
    return {k: int(stats[k]) for k in STATS_HEADER}


def p_unbridged(lam: float, L: int, i: int) -> float:
    """Probability that a repeat of length i is unbridged at read length L."""
    if lam <= 0:
        raise ValueError("rate must be positive")
    if L < i + 1:
        raise ValueError("read length must be at least i + 1")
    return math.exp(-2.0 * lam * (L - i - 1))


def _dominant(entries: Iterable, key, L: int):
    """(key*, summed count at key*) over entries filtered upstream."""
    best = None
    total = 0
    for k, cnt in entries:
        v = key(k)
        if best is None or v > best:
            best, total = v, cnt
        elif v == best:
            total += cnt
    return best, total


def N_lower_it(profile: RepeatProfile, L: int, eps: float = DEFAULT_EPS) -> float:
    """Read-count demand of the information-theoretic repeat conditions.

    Dominant-term evaluation; +inf when some configuration cannot be
    resolved at this read length (its shorter repeat is at least L - 1)."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    G = profile.G
    pair_families = (profile.b, profile.d)
    for fam in pair_families:
        if any(min(k) >= L - 1 for k in fam):
            return math.inf
    if any(p >= L - 1 for p in profile.c):
        return math.inf

    demands = [0.0]
    for fam, halfdenoms in ((profile.b, (2.0, 4.0)), (profile.d, (2.0, 4.0))):
        one_side = [(k, v) for k, v in fam.items() if max(k) >= L - 1]
        if one_side:
            m_star, cnt = _dominant(one_side, min, L)
            demands.append(G / (halfdenoms[0] * (L - m_star - 1))
                           * math.log(cnt / (2 * eps)))
        both_side = [(k, v) for k, v in fam.items() if max(k) < L - 1]
        if both_side:
            mu_star, cnt = _dominant(both_side, lambda k: (k[0] + k[1]) / 2.0, L)
            demands.append(G / (halfdenoms[1] * (L - mu_star - 1))
                           * math.log(cnt / (2 * eps)))
    if profile.c:
        p_star, cnt = _dominant(profile.c.items(), lambda p: p, L)
        demands.append(G / (3.0 * (L - p_star - 1)) * math.log(cnt / (2 * eps)))
    return max(demands)


def P_err_greedy_gap(profile: RepeatProfile, N: float, L: int) -> float:
    """Union bound on a greedy merge jumping a locus-to-locus gap."""
    G = profile.G
    lam = N / G
    total = 0.0
    for g in profile.gaps:
        j_s = max(0, g - L + 2)
        j_e = min(g, L - 1)
        width = max(0, j_e - j_s + 1)
        if width:
            exponent = -((N - 2) / G) * (L - (g - j_s) - 1)
            total += 2.0 * width * (1.0 / G) * ((g - j_s + 1) / G) \
                * 2.0 * math.exp(exponent)
        if L < g + 2:
            total += 2.0 * math.exp(-lam * (2 * L - g - 2))
    return total


def N_greedy_gap(profile: RepeatProfile, L: int,
                 eps: float = DEFAULT_EPS) -> float:
    """Minimal integer N with P_err_greedy_gap < eps (binary search)."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not profile.gaps:
        return 0.0
    if any(g >= 2 * L - 2 for g in profile.gaps):
        return math.inf  # the long-gap term no longer decays with N
    hi = 2
    while P_err_greedy_gap(profile, hi, L) >= eps:
        hi *= 2
        if hi > 2 ** 60:
            return math.inf
    lo = 1  # P(1) >= eps or the loop above never ran; search (lo, hi]
    if P_err_greedy_gap(profile, lo, L) < eps:
        return float(lo)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if P_err_greedy_gap(profile, mid, L) < eps:
            hi = mid
        else:
            lo = mid
    return float(hi)


def N_greedy_wellbridge(profile: RepeatProfile, L: int,
                        eps: float = DEFAULT_EPS) -> float:
    """Read-count demand for every double repeat to be well-bridged."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    G = profile.G
    demands = [0.0]
    if profile.A:
        i_star, cnt = _dominant(profile.A.items(), lambda i: i, L)
        if L <= i_star + 1:
            return math.inf
        demands.append(G / (2.0 * (L - i_star - 1)) * math.log(cnt / eps))
    if profile.B:
        alpha, cnt = _dominant(
            profile.B.items(),
            lambda k: (3 * k[0] + 2 * profile.gaps[k[1]]) / 5.0, L)
        if L <= alpha + 1:
            return math.inf
        demands.append(G / (5.0 * (L - alpha - 1)) * math.log(cnt / eps))
    if profile.C:
        beta, cnt = _dominant(
            profile.C.items(),
            lambda k: (profile.gaps[k[1]] + profile.gaps[k[2]] + 2 * k[0]) / 4.0,
            L)
        if L <= beta + 1:
            return math.inf
        demands.append(G / (8.0 * (L - beta - 1)) * math.log(cnt / eps))
    return max(demands)


def N_lower_total(profile: RepeatProfile, L: int,
                  eps: float = DEFAULT_EPS) -> float:
    """Lower-bound demand, floored at plain coverage of the diploid genome."""
    return max(N_lower_it(profile, L, eps),
               lander_waterman_reads(profile.G, L, eps))


def N_greedy_total(profile: RepeatProfile, L: int,
                   eps: float = DEFAULT_EPS) -> float:
    return max(N_greedy_gap(profile, L, eps),
               N_greedy_wellbridge(profile, L, eps),
               N_lower_total(profile, L, eps))


def dbg_normalized_coverage(L: int, l_double: int) -> float:
    """Normalized depth demand of the k-mer graph route, k = l_double + 1."""
    if L <= l_double + 1:
        raise ValueError("read length must exceed l_double + 1")
    return 1.0 / (1.0 - (l_double + 1) / L)


# ---------------------------------------------------------------------------
# Tabulated-threshold arithmetic
# ---------------------------------------------------------------------------

def min_read_length_lower_bound(stats: StatsLike) -> int:
    s = _stats(stats)
    return max(s["max_interleaved_h0"], s["max_interleaved_h1"], s["max_I2"],
               s["max_triple_h0"], s["max_triple_h1"]) + 2


def min_read_length_greedy(stats: StatsLike) -> int:
    s = _stats(stats)
    return max(-(-(s["max_gap"] + 3) // 2), s["min_L_wellbridge"],
               min_read_length_lower_bound(s))


def min_k_dbg(stats: StatsLike) -> int:
    s = _stats(stats)
    return max(s["max_double"] + 1, min_read_length_lower_bound(s))


def profile_from_stats(stats: StatsLike) -> RepeatProfile:
    """Dominant-repeat profile reconstructed from the nine tabulated fields.

    Each tabulated maximum is modelled as a single configuration whose
    partner length is unbounded (one-sided bridging); the well-bridging
    class decomposition is unavailable, so its demand enters the curves
    only through the min_L_wellbridge feasibility gate.
    """
    s = _stats(stats)
    prof = RepeatProfile(G=s["G"])
    prof.l_double = prof.max_double = s["max_double"]
    prof.max_gap = s["max_gap"]
    prof.gaps = [s["max_gap"]] if s["max_gap"] > 0 else []
    prof.min_L_wellbridge = s["min_L_wellbridge"]
    unbounded = s["G"]  # longer than any admissible read
    b: Dict = {}
    for key in ("max_interleaved_h0", "max_interleaved_h1"):
        setattr(prof, key, s[key])
        if s[key] > 0:
            b[(s[key], unbounded)] = b.get((s[key], unbounded), 0) + 1
    prof.b = b
    c: Dict = {}
    for key in ("max_triple_h0", "max_triple_h1"):
        setattr(prof, key, s[key])
        if s[key] > 0:
            c[s[key]] = c.get(s[key], 0) + 1
    prof.c = c
    prof.max_I2 = s["max_I2"]
    if s["max_I2"] > 0:
        prof.d = {(s["max_I2"], unbounded): 1}
    return prof


# ---------------------------------------------------------------------------
# Feasibility curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeasibilityPoint:
    L: int
    cbar_lower: float
    cbar_greedy: float
    cbar_dbg: float
    feasible_lower: bool
    feasible_greedy: bool
    feasible_dbg: bool


def _cbar(N: float, L: int, G: int, eps: float) -> float:
    if not math.isfinite(N):
        return math.inf
    c_lw = math.log(G / (L * eps))
    return (N * L / G) / c_lw


def feasibility_curves(profile: RepeatProfile, L_range: Iterable[int],
                       eps: float = DEFAULT_EPS) -> List[FeasibilityPoint]:
    s = profile.summary()
    L_lower = min_read_length_lower_bound(s)
    L_greedy = min_read_length_greedy(s)
    k_dbg = min_k_dbg(s)
    points = []
    for L in L_range:
        if L * eps >= profile.G:
            raise ValueError(f"read length {L} out of range for this genome")
        n_lower = N_lower_total(profile, L, eps) if L >= L_lower else math.inf
        n_greedy = N_greedy_total(profile, L, eps) if L >= L_greedy else math.inf
        cbar_dbg = dbg_normalized_coverage(L, profile.l_double) \
            if L > profile.l_double + 1 else math.inf
        points.append(FeasibilityPoint(
            L=L,
            cbar_lower=_cbar(n_lower, L, profile.G, eps),
            cbar_greedy=_cbar(n_greedy, L, profile.G, eps),
            cbar_dbg=max(cbar_dbg, 1.0),
            feasible_lower=L >= L_lower and math.isfinite(n_lower),
            feasible_greedy=L >= L_greedy and math.isfinite(n_greedy),
            feasible_dbg=L > k_dbg))
    return points


def write_feasibility_csv(points: List[FeasibilityPoint], path,
                          stats: StatsLike | None = None) -> None:
    with open(path, "w", newline="") as fh:
        if stats is not None:
            s = _stats(stats)
            fh.write(f"# min_read_length_lower_bound={min_read_length_lower_bound(s)}\n")
            fh.write(f"# min_read_length_greedy={min_read_length_greedy(s)}\n")
            fh.write(f"# min_k_dbg={min_k_dbg(s)}\n")
        w = csv.writer(fh)
        w.writerow(FEASIBILITY_HEADER)
        for p in points:
            w.writerow([p.L,
                        f"{p.cbar_lower:.6g}", f"{p.cbar_greedy:.6g}",
                        f"{p.cbar_dbg:.6g}",
                        int(p.feasible_lower), int(p.feasible_greedy),
                        int(p.feasible_dbg)])


def read_feasibility_csv(path) -> List[FeasibilityPoint]:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh)
                if r and not r[0].lstrip().startswith("#")]
    if not rows or tuple(h.strip() for h in rows[0]) != FEASIBILITY_HEADER:
        raise SchemaMismatch(
            f"feasibility CSV header must be {','.join(FEASIBILITY_HEADER)}")
    out = []
    for r in rows[1:]:
        if len(r) != len(FEASIBILITY_HEADER):
            raise SchemaMismatch("feasibility CSV row has wrong arity")
        out.append(FeasibilityPoint(int(r[0]), float(r[1]), float(r[2]),
                                    float(r[3]), bool(int(r[4])),
                                    bool(int(r[5])), bool(int(r[6]))))
    return out
