"""End-to-end CLI tests: file contracts, exit codes, report contents."""

import json

import numpy as np
import pytest

from diploidlab.cli import main
from diploidlab.dbg import max_double_length
from diploidlab.genome import (
    DiploidGenome,
    read_genome_fasta,
    read_reads_fasta,
    write_genome_fasta,
    write_reads_fasta,
)
from diploidlab.repeats import repeat_statistics, write_stats_csv
from diploidlab.coverage import min_read_length_greedy
from diploidlab.simulate import sample_all_substrings

BASES = "ACGT"


def spaced_genome(H, n, seed):
    rng = np.random.default_rng(seed)
    h0 = "".join(BASES[i] for i in rng.integers(0, 4, size=H))
    base = H / n
    loci = sorted(int((i * base + rng.uniform(-base / 8, base / 8)) % H)
                  for i in range(n))
    h1 = list(h0)
    for locus in loci:
        h1[locus] = BASES[(BASES.index(h1[locus]) + int(rng.integers(1, 4))) % 4]
    return DiploidGenome.from_strings(h0, "".join(h1))


@pytest.fixture
def workdir(tmp_path):
    return tmp_path


class TestRoundTrips:
    def test_genome_fasta_round_trip(self, workdir):
        out = workdir / "g.fa"
        assert main(["simulate", "--length", "50", "--het-rate", "0.1",
                     "--seed", "7", "-o", str(out)]) == 0
        g = read_genome_fasta(out)
        again = workdir / "g2.fa"
        write_genome_fasta(g, again)
        g2 = read_genome_fasta(again)
        assert g2.h0.bases == g.h0.bases and g2.h1.bases == g.h1.bases

    def test_reads_fasta_round_trip(self, workdir):
        g = spaced_genome(20, 2, 0)
        rs = sample_all_substrings(g, 6)
        path = workdir / "r.fa"
        write_reads_fasta(rs, path)
        back = read_reads_fasta(path)
        assert [(r.seq, r.hap, r.start) for r in back] == \
            [(r.seq, r.hap, r.start) for r in rs]

    def test_no_provenance_strips_metadata(self, workdir):
        g = spaced_genome(20, 2, 0)
        gpath, rpath = workdir / "g.fa", workdir / "r.fa"
        write_genome_fasta(g, gpath)
        assert main(["sample", "--genome", str(gpath), "--read-length", "6",
                     "-o", str(rpath), "--no-provenance"]) == 0
        assert all(r.hap is None for r in read_reads_fasta(rpath))

    def test_stats_matches_direct_computation(self, workdir):
        g = spaced_genome(40, 3, 1)
        gpath = workdir / "g.fa"
        write_genome_fasta(g, gpath)
        got = workdir / "got.csv"
        assert main(["stats", "--genome", str(gpath), "-o", str(got)]) == 0
        want = workdir / "want.csv"
        write_stats_csv(repeat_statistics(g), want)
        assert got.read_text() == want.read_text()


class TestAssemble:
    def _instance(self, workdir, seed=1):
        g = spaced_genome(60, 3, seed)
        L = min_read_length_greedy(repeat_statistics(g))
        rs = sample_all_substrings(g, L)
        gpath, rpath = workdir / "g.fa", workdir / "r.fa"
        write_genome_fasta(g, gpath)
        write_reads_fasta(rs, rpath)
        return g, rs, str(gpath), str(rpath)

    def test_greedy_success_and_report(self, workdir):
        g, rs, gpath, rpath = self._instance(workdir)
        out, rep = workdir / "out.fa", workdir / "rep.json"
        rc = main(["assemble", "--reads", rpath, "--algo", "greedy",
                   "--truth", gpath, "-o", str(out), "--report", str(rep)])
        assert rc == 0
        data = json.loads(rep.read_text())
        assert data["switch_equivalent"] is True
        assert data["condition_flags"]["G3b"] is True
        text = out.read_text()
        assert text.startswith(">g0\n")
        seqs = [l for l in text.splitlines() if not l.startswith(">")]
        assert [len(s) for s in seqs] == [g.length, g.length]

    def test_dbg_success_and_graph_dump(self, workdir):
        g, _, gpath, rpath = self._instance(workdir)
        k = max(max_double_length(g) + 1, 2)
        out, rep, graph = (workdir / n for n in
                           ("out.fa", "rep.json", "gc.txt"))
        rc = main(["assemble", "--reads", rpath, "--algo", "dbg",
                   "--k", str(k), "--truth", gpath, "-o", str(out),
                   "--report", str(rep), "--emit-graph", str(graph)])
        assert rc == 0
        assert json.loads(rep.read_text())["switch_equivalent"] is True
        lines = graph.read_text().strip().splitlines()
        assert all(len(l.split("\t")) == 3 for l in lines)

    def test_overlap_success(self, workdir):
        g = spaced_genome(10, 2, 0)
        rs = sample_all_substrings(g, 5)
        gpath, rpath = workdir / "g.fa", workdir / "r.fa"
        write_genome_fasta(g, gpath)
        write_reads_fasta(rs, rpath)
        out, rep, graph = (workdir / n for n in
                           ("out.fa", "rep.json", "og.txt"))
        rc = main(["assemble", "--reads", str(rpath), "--algo", "overlap",
                   "--truth", str(gpath), "--all-optima", "-o", str(out),
                   "--report", str(rep), "--emit-graph", str(graph)])
        assert rc == 0
        data = json.loads(rep.read_text())
        assert data["n_optima"] >= 1
        assert len({tuple(l.split("\t")) for l in
                    graph.read_text().strip().splitlines()}) > 0

    def test_fragmented_input_exits_1(self, workdir):
        rpath, out = workdir / "r.fa", workdir / "out.fa"
        rpath.write_text(">a\nAAAA\n>b\nCCCC\n>c\nGGGG\n")
        rc = main(["assemble", "--reads", str(rpath), "--algo", "greedy",
                   "-o", str(out)])
        assert rc == 1
        assert not out.exists()

    def test_dbg_without_k_exits_2(self, workdir):
        rpath = workdir / "r.fa"
        rpath.write_text(">a\nACGT\n")
        rc = main(["assemble", "--reads", str(rpath), "--algo", "dbg",
                   "-o", str(workdir / "out.fa")])
        assert rc == 2


class TestMisc:
    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["--bogus"])
        assert exc.value.code == 2

    def test_check_writes_flags(self, workdir):
        g = spaced_genome(20, 2, 0)
        gpath, rpath = workdir / "g.fa", workdir / "r.fa"
        write_genome_fasta(g, gpath)
        write_reads_fasta(sample_all_substrings(g, 6), rpath)
        out = workdir / "flags.json"
        rc = main(["check", "--genome", str(gpath), "--reads", str(rpath),
                   "--k", "4", "-o", str(out)])
        assert rc == 0
        flags = json.loads(out.read_text())
        for key in ("I1", "I2", "I3", "G1", "G2", "G3a", "G3b",
                    "U1", "U2", "U3", "D1", "D2", "N1", "N2"):
            assert key in flags

    def test_feasibility_header_thresholds(self, workdir):
        import diploidlab.data
        from importlib import resources
        stats = resources.files(diploidlab.data) / "chr19_p001.csv"
        out = workdir / "f.csv"
        rc = main(["feasibility", "--stats", str(stats),
                   "--L-min", "16812", "--L-max", "16814", "-o", str(out)])
        assert rc == 0
        header = out.read_text().splitlines()[:3]
        assert "# min_read_length_lower_bound=9319" in header
        assert "# min_read_length_greedy=16812" in header
        assert "# min_k_dbg=16811" in header

    def test_verify_single_case(self, workdir, capsys):
        rc = main(["verify", "--figure", "greedy-single-het-locus"])
        assert rc == 0
        assert "PASS" in capsys.readouterr().out

    def test_verify_unknown_case_exits_2(self):
        assert main(["verify", "--figure", "nope"]) == 2
