"""Coverage arithmetic: formula values, search contracts, tabulated thresholds."""

import math
from importlib import resources

import numpy as np
import pytest

from diploidlab.coverage import (
    DEFAULT_EPS,
    FEASIBILITY_HEADER,
    N_greedy_gap,
    N_greedy_total,
    N_greedy_wellbridge,
    N_lower_it,
    N_lower_total,
    P_err_greedy_gap,
    dbg_normalized_coverage,
    feasibility_curves,
    min_k_dbg,
    min_read_length_greedy,
    min_read_length_lower_bound,
    p_unbridged,
    profile_from_stats,
    read_feasibility_csv,
    write_feasibility_csv,
)
from diploidlab.errors import SchemaMismatch
from diploidlab.repeats import read_stats_csv, repeat_statistics
from diploidlab.repeats.profile import RepeatProfile
from diploidlab.simulate import (
    SimulationParams,
    lander_waterman_reads,
    sample_reads_poisson,
    simulate_diploid,
)


def _chr19(name):
    with resources.as_file(resources.files("diploidlab.data") / name) as p:
        return read_stats_csv(p)


class TestPUnbridged:
    def test_exponent_zero(self):
        assert p_unbridged(1.0, 5, 4) == 1.0

    def test_large_rate_limit(self):
        assert p_unbridged(1e6, 10, 2) == pytest.approx(0.0, abs=1e-300)

    def test_calculator_value(self):
        assert p_unbridged(1.0, 7, 5) == pytest.approx(math.exp(-2), rel=1e-12)

    def test_monotone(self):
        vals_L = [p_unbridged(0.1, L, 3) for L in range(4, 15)]
        assert vals_L == sorted(vals_L, reverse=True)
        vals_lam = [p_unbridged(lam, 10, 3) for lam in (0.1, 0.2, 0.5, 1.0)]
        assert vals_lam == sorted(vals_lam, reverse=True)
        assert all(0 < v <= 1 for v in vals_L + vals_lam)

    def test_domain(self):
        with pytest.raises(ValueError):
            p_unbridged(0.0, 10, 3)
        with pytest.raises(ValueError):
            p_unbridged(1.0, 3, 3)


class TestNLowerIt:
    def test_empty_profile_zero(self):
        assert N_lower_it(RepeatProfile(G=1000), 50) == 0.0

    def test_single_triple_branch(self):
        prof = RepeatProfile(G=1000, c={7: 5})
        L, eps = 20, 0.01
        want = 1000 / (3 * (L - 7 - 1)) * math.log(5 / (2 * eps))
        assert N_lower_it(prof, L, eps) == pytest.approx(want)

    def test_two_branch_max(self):
        prof = RepeatProfile(G=2000, c={6: 3}, b={(4, 9): 2, (5, 1000): 4})
        L, eps = 12, 0.05
        triple = 2000 / (3 * (12 - 7)) * math.log(3 / (2 * eps))
        one_side = 2000 / (2 * (12 - 6)) * math.log(4 / (2 * eps))
        both_side = 2000 / (4 * (12 - 6.5 - 1)) * math.log(2 / (2 * eps))
        assert N_lower_it(prof, L, eps) == pytest.approx(
            max(triple, one_side, both_side))

    def test_infeasible_when_min_length_too_large(self):
        prof = RepeatProfile(G=1000, b={(30, 40): 1})
        assert N_lower_it(prof, 31, 0.01) == math.inf
        assert N_lower_it(prof, 32, 0.01) < math.inf

    def test_non_increasing_in_L(self):
        prof = RepeatProfile(G=5000, c={8: 4}, b={(6, 9): 3}, d={(5, 7): 2})
        vals = [N_lower_it(prof, L, 0.01) for L in range(11, 40)]
        finite = [v for v in vals if math.isfinite(v)]
        assert all(a >= b for a, b in zip(finite, finite[1:]))


class TestGreedyGap:
    def test_search_contract(self):
        for G, gaps, eps in [(120, [5, 11, 2], 0.01), (4000, [30], 0.001),
                             (500, [9], 0.0001)]:
            prof = RepeatProfile(G=G, gaps=gaps)
            for L in (17, 20, 25):
                n = N_greedy_gap(prof, L, eps)
                assert math.isfinite(n)
                assert P_err_greedy_gap(prof, n, L) < eps
                if n > 1:
                    assert P_err_greedy_gap(prof, n - 1, L) >= eps

    def test_zero_gap_small_N(self):
        prof = RepeatProfile(G=4000, gaps=[0])
        assert N_greedy_gap(prof, 25, 0.01) <= N_greedy_gap(
            RepeatProfile(G=4000, gaps=[20]), 25, 0.01)

    def test_long_gap_term_dominates(self):
        # L < g + 2: the unbridged-gap term alone forces the demand
        g = 30
        prof = RepeatProfile(G=10000, gaps=[g])
        L = 20  # 2L - 2 = 38 > g: feasible, but L < g + 2
        n = N_greedy_gap(prof, L, 0.01)
        lam = n / prof.G
        assert 2 * math.exp(-lam * (2 * L - g - 2)) < 0.01
        lam1 = (n - 1) / prof.G
        assert P_err_greedy_gap(prof, n - 1, L) >= 0.01
        assert 2 * math.exp(-lam1 * (2 * L - g - 2)) > 0.005

    def test_infeasible_below_gap_threshold(self):
        prof = RepeatProfile(G=10000, gaps=[40])
        assert N_greedy_gap(prof, 21, 0.01) == math.inf  # 2L-2 = 40 = g
        assert math.isfinite(N_greedy_gap(prof, 22, 0.01))

    def test_strictly_decreasing_in_N(self):
        prof = RepeatProfile(G=3000, gaps=[7, 3])
        vals = [P_err_greedy_gap(prof, n, 12) for n in range(2, 400, 10)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestGreedyWellbridge:
    def test_branches(self):
        gaps = [4, 9]
        prof = RepeatProfile(G=3000, gaps=gaps, A={5: 2},
                             B={(3, 1): 4}, C={(2, 0, 1): 1})
        L, eps = 20, 0.01
        a = 3000 / (2 * (L - 5 - 1)) * math.log(2 / eps)
        alpha = (3 * 3 + 2 * 9) / 5
        b = 3000 / (5 * (L - alpha - 1)) * math.log(4 / eps)
        beta = (4 + 9 + 2 * 2) / 4
        c = 3000 / (8 * (L - beta - 1)) * math.log(1 / eps)
        assert N_greedy_wellbridge(prof, L, eps) == pytest.approx(max(a, b, c))

    def test_infeasible_branch(self):
        prof = RepeatProfile(G=3000, A={25: 1})
        assert N_greedy_wellbridge(prof, 26, 0.01) == math.inf
        assert math.isfinite(N_greedy_wellbridge(prof, 27, 0.01))


class TestDbgCurve:
    def test_double_point(self):
        assert dbg_normalized_coverage(2 * (7 + 1), 7) == pytest.approx(2.0)

    def test_limit_one(self):
        assert dbg_normalized_coverage(10**9, 7) == pytest.approx(1.0, abs=1e-6)

    def test_pole(self):
        with pytest.raises(ValueError):
            dbg_normalized_coverage(8, 7)

    def test_decreasing_toward_one(self):
        vals = [dbg_normalized_coverage(L, 9) for L in range(11, 60)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(v > 1 for v in vals)


class TestTabulatedThresholds:
    def test_chr19_lower_bound(self):
        assert min_read_length_lower_bound(_chr19("chr19_p001.csv")) == 9319
        assert min_read_length_lower_bound(_chr19("chr19_p0001.csv")) == 9319

    def test_chr19_greedy(self):
        assert min_read_length_greedy(_chr19("chr19_p001.csv")) == 16812
        assert min_read_length_greedy(_chr19("chr19_p0001.csv")) == 39261

    def test_chr19_dbg(self):
        assert min_k_dbg(_chr19("chr19_p001.csv")) == 16811
        assert min_k_dbg(_chr19("chr19_p0001.csv")) == 16811

    def test_zero_stats(self):
        zero = {k: 0 for k in _chr19("chr19_p001.csv")}
        assert min_read_length_lower_bound(zero) == 2
        assert min_read_length_greedy(zero) == 2
        assert min_k_dbg(zero) == 2

    def test_synthetic_dbg_max(self):
        s = {k: 0 for k in _chr19("chr19_p001.csv")}
        s["max_double"] = 10
        s["max_triple_h0"] = 30
        assert min_k_dbg(s) == 32


class TestMonteCarloUnbridged:
    @pytest.mark.parametrize("lam,L,i", [(0.05, 15, 6), (0.1, 12, 3),
                                         (0.03, 20, 10)])
    def test_frequency_matches_formula(self, lam, L, i):
        # 10^4 disjoint windows in one Poisson sample act as independent trials
        trials = 10_000
        spacing = L + 2
        H = trials * spacing
        g = simulate_diploid(SimulationParams(H, 0.0, seed=1))
        rs = sample_reads_poisson(g, lam, L, seed=int(lam * 1e4) + L + i)
        starts = np.zeros((2, H), dtype=bool)
        for r in rs:
            starts[r.hap, r.start] = True
        window = np.zeros((2, H), dtype=np.int64)
        w = L - i - 1
        cs = np.cumsum(starts, axis=1)
        misses = 0
        for k in range(trials):
            a = k * spacing + L  # interval start; window is [a-w, a-1]
            hit = (cs[:, a - 1] - cs[:, a - w - 1]).sum()
            misses += hit == 0
        want = math.exp(-2 * lam * w)
        sigma = math.sqrt(want * (1 - want) / trials)
        assert abs(misses / trials - want) <= 3 * sigma + 1e-9


class TestFeasibilityCurves:
    def _profile(self):
        g = simulate_diploid(SimulationParams(60, 0.15, seed=21))
        return repeat_statistics(g)

    def test_points_and_flags(self):
        prof = self._profile()
        Ls = list(range(4, 40, 2))
        pts = feasibility_curves(prof, Ls)
        assert [p.L for p in pts] == Ls
        for p in pts:
            if p.feasible_lower:
                assert math.isfinite(p.cbar_lower) and p.cbar_lower >= 1 - 1e-9
            if p.feasible_greedy:
                assert math.isfinite(p.cbar_greedy)
                assert p.cbar_greedy >= p.cbar_lower - 1e-9
            if p.feasible_dbg:
                assert p.cbar_dbg >= 1

    def test_csv_round_trip(self, tmp_path):
        prof = self._profile()
        pts = feasibility_curves(prof, range(6, 30))
        path = tmp_path / "feas.csv"
        write_feasibility_csv(pts, path, stats=prof)
        got = read_feasibility_csv(path)
        assert len(got) == len(pts)
        assert [p.L for p in got] == [p.L for p in pts]
        text = path.read_text().splitlines()
        assert text[0].startswith("#") and "min_read_length_lower_bound" in text[0]
        assert text[3] == ",".join(FEASIBILITY_HEADER)

    def test_csv_schema_errors(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("")
        with pytest.raises(SchemaMismatch):
            read_feasibility_csv(p)
        p.write_text("x,y\n1,2\n")
        with pytest.raises(SchemaMismatch):
            read_feasibility_csv(p)

    def test_profile_from_stats_chr19_thresholds(self):
        stats = _chr19("chr19_p001.csv")
        prof = profile_from_stats(stats)
        # demand becomes finite exactly at the tabulated minimum read length
        L0 = min_read_length_lower_bound(stats)
        assert N_lower_it(prof, L0 - 1) == math.inf
        assert math.isfinite(N_lower_it(prof, L0))
        gapL = -(-(stats["max_gap"] + 3) // 2)
        assert N_greedy_gap(prof, gapL - 1) == math.inf
        assert math.isfinite(N_greedy_gap(prof, gapL))

    def test_total_floored_at_lander_waterman(self):
        prof = self._profile()
        for L in range(12, 30, 4):
            assert N_lower_total(prof, L) >= lander_waterman_reads(
                prof.G, L, DEFAULT_EPS) - 1e-9
            assert N_greedy_total(prof, L) >= N_lower_total(prof, L) - 1e-9
