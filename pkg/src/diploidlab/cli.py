"""Command-line surface tying the modules together.

Subcommands: simulate, sample, stats, assemble, check, feasibility, verify.
Data goes to the file named by each output flag (or stdout for tabular
verify output); logs go to stderr.  Exit codes: 0 success, 1 assembly or
verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from .coverage import (
    feasibility_curves,
    min_k_dbg,
    min_read_length_greedy,
    min_read_length_lower_bound,
    profile_from_stats,
    write_feasibility_csv,
)
from .counterexamples import counterexample_suite, verify_counterexample
from .dbg import build_dbg, check_conditions_dbg, condense, dbg_assemble
from .errors import DiploidLabError
from .genome import (
    DiploidGenome,
    ReadSet,
    read_genome_fasta,
    read_reads_fasta,
    switch_equivalent,
    write_genome_fasta,
    write_reads_fasta,
)
from .greedy import check_conditions_greedy, greedy_assemble
from .itverify import check_conditions_it
from .overlapg import (
    build_overlap_graph,
    check_conditions_overlap,
    overlap_assemble,
    transitive_reduction,
)
from .repeats import read_stats_csv, repeat_statistics, write_stats_csv
from .simulate import (
    SimulationParams,
    sample_all_substrings,
    sample_reads_poisson,
    sample_reads_uniform,
    simulate_diploid,
)

log = logging.getLogger("diploidlab")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diploidlab",
        description="Desk-scale diploid genome assembly laboratory")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("DIPLOIDLAB_THREADS", "1")),
                   help="worker threads for internal parallelism")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("simulate", help="simulate a diploid genome")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--het-rate", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", required=True,
                    help="genome FASTA (records h0, h1)")

    sp = sub.add_parser("sample", help="sample reads from a genome")
    sp.add_argument("--genome", required=True)
    sp.add_argument("--mode", choices=("all", "uniform", "poisson"),
                    default="all")
    sp.add_argument("--read-length", type=int, required=True)
    sp.add_argument("--n-reads", type=int, help="read count (uniform mode)")
    sp.add_argument("--rate", type=float,
                    help="per-position sampling rate (poisson mode)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-provenance", action="store_true")
    sp.add_argument("-o", "--output", required=True, help="reads FASTA")

    sp = sub.add_parser("stats", help="repeat statistics of a genome")
    sp.add_argument("--genome", required=True)
    sp.add_argument("-o", "--output", required=True, help="stats CSV")

    sp = sub.add_parser("assemble", help="run one assembly algorithm")
    sp.add_argument("--reads", required=True)
    sp.add_argument("--algo", choices=("greedy", "dbg", "overlap"),
                    required=True)
    sp.add_argument("--k", type=int, help="de Bruijn order (dbg)")
    sp.add_argument("--min-overlap", type=int, default=1)
    sp.add_argument("--all-optima", action="store_true")
    sp.add_argument("--emit-graph", metavar="PATH",
                    help="write the assembly graph (dbg/overlap)")
    sp.add_argument("--truth", help="genome FASTA to verify against")
    sp.add_argument("-o", "--output", required=True, help="result FASTA")
    sp.add_argument("--report", help="JSON report path")

    sp = sub.add_parser("check", help="evaluate assembly conditions")
    sp.add_argument("--genome", required=True)
    sp.add_argument("--reads", required=True)
    sp.add_argument("--k", type=int, help="de Bruijn order (dbg flags)")
    sp.add_argument("-o", "--output", help="JSON report path (default stdout)")

    sp = sub.add_parser("feasibility", help="coverage feasibility curves")
    sp.add_argument("--stats", required=True, help="stats CSV")
    sp.add_argument("--eps", type=float, default=0.01)
    sp.add_argument("--L-min", type=int, required=True)
    sp.add_argument("--L-max", type=int, required=True)
    sp.add_argument("--L-step", type=int, default=1)
    sp.add_argument("-o", "--output", required=True, help="feasibility CSV")

    sp = sub.add_parser("verify", help="run frozen violating instances")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--figure", help="run one case by name")
    grp.add_argument("--all", action="store_true", help="run the whole suite")
    return p


def _write_result_fasta(path: str, pair) -> None:
    with open(path, "w") as fh:
        for name, seq in zip(("g0", "g1"), pair):
            fh.write(f">{name}\n{seq}\n")


def _emit_dbg_graph(rs: ReadSet, k: int, path: str) -> None:
    gc = condense(build_dbg(rs, k))
    with open(path, "w") as fh:
        succ = {u: [] for u in range(len(gc.labels))}
        for u, v in gc.edges:
            succ[u].append(v)
        for u, label in enumerate(gc.labels):
            targets = ",".join(str(v) for v in sorted(succ[u]))
            fh.write(f"{u}\t{label}\t{targets}\n")


def _emit_overlap_graph(rs: ReadSet, min_overlap: int, path: str) -> None:
    g = transitive_reduction(build_overlap_graph(rs, min_overlap))
    with open(path, "w") as fh:
        for u, v, w in g.edges():
            fh.write(f"{u}\t{v}\t{w}\n")


def _cmd_assemble(args) -> int:
    rs = read_reads_fasta(args.reads)
    report = {"algo": args.algo}
    result = None
    if args.algo == "greedy":
        rep = greedy_assemble(rs)
        result = rep.result
        report.update(merge_trace=rep.merge_trace, alpha=rep.alpha,
                      remaining=rep.remaining, failure=rep.failure)
    elif args.algo == "dbg":
        if args.k is None:
            log.error("--algo dbg requires --k")
            return 2
        rep = dbg_assemble(rs, args.k)
        result = rep.result
        report.update(k=args.k, n_components=rep.n_components,
                      failure=rep.failure, detail=rep.detail)
        if args.emit_graph:
            _emit_dbg_graph(rs, args.k, args.emit_graph)
    else:
        rep = overlap_assemble(rs, min_overlap=args.min_overlap,
                               all_optima=args.all_optima)
        result = rep.result
        report.update(walks=rep.walks, n_optima=len(rep.walks),
                      spelled_lengths=[len(s) for s in rep.spelled],
                      failure=rep.failure)
        if args.emit_graph:
            _emit_overlap_graph(rs, args.min_overlap, args.emit_graph)

    if args.truth:
        truth = read_genome_fasta(args.truth)
        flags = {**check_conditions_it(truth, rs)}
        if args.algo == "greedy":
            flags.update(check_conditions_greedy(truth, rs))
        elif args.algo == "dbg":
            flags.update(check_conditions_dbg(truth, rs, args.k))
        else:
            flags.update(check_conditions_overlap(truth, rs))
        report["condition_flags"] = flags
        if result is not None and len(result[0]) == len(result[1]):
            report["switch_equivalent"] = switch_equivalent(
                DiploidGenome.from_strings(*result), truth)
        else:
            report["switch_equivalent"] = False

    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2)
    if result is None:
        log.error("assembly failed: %s", report.get("failure"))
        return 1
    _write_result_fasta(args.output, result)
    log.info("wrote %s", args.output)
    return 0


def _cmd_check(args) -> int:
    g = read_genome_fasta(args.genome)
    rs = read_reads_fasta(args.reads)
    flags = {**check_conditions_it(g, rs),
             **check_conditions_greedy(g, rs),
             **check_conditions_overlap(g, rs)}
    if args.k is not None:
        flags.update(check_conditions_dbg(g, rs, args.k))
    text = json.dumps(flags, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_verify(args) -> int:
    suite = counterexample_suite()
    if args.figure:
        cases = [c for c in suite if c.name == args.figure]
        if not cases:
            log.error("unknown case %r; known: %s", args.figure,
                      ", ".join(c.name for c in suite))
            return 2
    else:
        cases = suite
    n_bad = 0
    width = max(len(c.name) for c in cases)
    for c in cases:
        ok = verify_counterexample(c)
        n_bad += not ok
        print(f"{c.name:<{width}}  {'PASS' if ok else 'FAIL'}")
    return 1 if n_bad else 0


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        if args.cmd == "simulate":
            g = simulate_diploid(SimulationParams(
                args.length, args.het_rate, seed=args.seed))
            write_genome_fasta(g, args.output)
            log.info("simulated genome of length %d with %d het loci",
                     g.length, g.n_het)
        elif args.cmd == "sample":
            g = read_genome_fasta(args.genome)
            if args.mode == "all":
                rs = sample_all_substrings(g, args.read_length)
            elif args.mode == "uniform":
                if args.n_reads is None:
                    log.error("--mode uniform requires --n-reads")
                    return 2
                rs = sample_reads_uniform(g, args.n_reads, args.read_length,
                                          seed=args.seed)
            else:
                if args.rate is None:
                    log.error("--mode poisson requires --rate")
                    return 2
                rs = sample_reads_poisson(g, args.rate, args.read_length,
                                          seed=args.seed)
            write_reads_fasta(rs, args.output,
                              provenance=not args.no_provenance)
            log.info("wrote %d reads", len(rs))
        elif args.cmd == "stats":
            write_stats_csv(repeat_statistics(read_genome_fasta(args.genome)),
                            args.output)
        elif args.cmd == "assemble":
            return _cmd_assemble(args)
        elif args.cmd == "check":
            return _cmd_check(args)
        elif args.cmd == "feasibility":
            stats = read_stats_csv(args.stats)
            prof = profile_from_stats(stats)
            log.info("min read length: lower=%d greedy=%d dbg_k=%d",
                     min_read_length_lower_bound(stats),
                     min_read_length_greedy(stats), min_k_dbg(stats))
            pts = feasibility_curves(
                prof, range(args.L_min, args.L_max + 1, args.L_step),
                eps=args.eps)
            write_feasibility_csv(pts, args.output, stats=stats)
        elif args.cmd == "verify":
            return _cmd_verify(args)
    except DiploidLabError as e:
        log.error("%s: %s", type(e).__name__, e)
        return 1
    except OSError as e:
        log.error("%s", e)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
