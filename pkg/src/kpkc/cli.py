"""Command-line frontend: generation, solving, benchmarking, Tverberg
verification, and oracle cross-validation.

Exit codes are the machine contract: 0 success / verified / clique found as
requested, 1 no clique when one was requested (or a failed check),
2 usage or input errors, 3 timeout.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from .bitgraph import GraphFormatError, parse_graph, write_graph
from .chirotope import (
    B16FormatError,
    Chirotope,
    ChirotopeFormatError,
    b16_record_count,
    parse_chirotope,
    parse_points,
    read_b16,
    region,
)
from .engines import BruteForceRefused, SearchTimeout, clique_engine, has_kclique
from .geomoracle import (
    geometric_tverberg_partitions,
    orient,
    sample_config,
    true_vertex_signs,
)
from .randgen import GrunertParams, RareParams, gen_grunert, gen_rare
from .tverberg import (
    OrientationVertex,
    TverbergPartition,
    color_edge,
    determined_sign,
    enumerate_color_partitions,
    enumerate_orientation_vertices,
    ip_edge,
    tverberg_3322_at,
    tverberg_3331,
    verify_chirotope,
)

USAGE_ERROR = 2
TIMEOUT_ERROR = 3


def parse_duration(text: str) -> float:
    """A duration in seconds; accepts "90", "90s", "1500ms"."""
    t = text.strip().lower()
    try:
        if t.endswith("ms"):
            return float(t[:-2]) / 1000.0
        if t.endswith("s"):
            return float(t[:-1])
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad duration: {text!r}")


def parse_range(text: str) -> Tuple[int, int]:
    """An inclusive index range "A..B", or a single "N" meaning N..N."""
    t = text.strip()
    if ".." in t:
        lo, hi = t.split("..", 1)
        a, b = int(lo), int(hi)
    else:
        a = b = int(t)
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return a, b


# -- gen ----------------------------------------------------------------------


def _cmd_gen(args) -> int:
    if args.family == "grunert":
        params = GrunertParams(
            k=args.k, min_part=args.min_part, max_part=args.max_part, a=args.a, b=args.b
        )
        g = gen_grunert(params, args.seed)
    else:
        params = RareParams(k=args.k, max_part=args.max_part, a=args.a)
        g = gen_rare(params, args.seed)
    write_graph(g, args.output)
    print(f"wrote {args.output}: k={g.k} n={g.n} m={g.num_edges()}")
    return 0


# -- solve --------------------------------------------------------------------


def _cmd_solve(args) -> int:
    try:
        g = parse_graph(args.graph)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    deadline = None
    if args.timeout is not None:
        deadline = time.monotonic() + args.timeout
    if args.mode in ("first", "any"):
        status, witness = has_kclique(g, args.alg, timeout=args.timeout)
        if status == "timeout":
            print("timeout")
            return TIMEOUT_ERROR
        if status == "none":
            print("none")
            return 1
        if args.mode == "first":
            print(" ".join(map(str, witness)))
        else:
            print("clique")
        return 0
    count = 0
    try:
        for clique in clique_engine(g, args.alg, deadline):
            count += 1
            print(" ".join(map(str, clique)))
    except SearchTimeout:
        print("timeout")
        return TIMEOUT_ERROR
    print(f"cliques {count}")
    return 0 if count else 1


# -- bench --------------------------------------------------------------------


def run_search(g, algorithm: str, mode: str, timeout: Optional[float]):
    """One timed search.  Returns (outcome, millis, cliques): outcome in
    {first-found, none, timeout}; "none" means the search was exhausted."""
    if mode in ("first", "any"):
        t0 = time.perf_counter()
        status, _ = has_kclique(g, algorithm, timeout=timeout)
        millis = (time.perf_counter() - t0) * 1000.0
        outcome = {"clique": "first-found", "none": "none", "timeout": "timeout"}[status]
        return outcome, millis, 1 if status == "clique" else 0
    deadline = None if timeout is None else time.monotonic() + timeout
    count = 0
    t0 = time.perf_counter()
    try:
        for _ in clique_engine(g, algorithm, deadline):
            count += 1
        outcome = "none"
    except SearchTimeout:
        outcome = "timeout"
    millis = (time.perf_counter() - t0) * 1000.0
    return outcome, millis, count


def _bench_graph(family: str, params: dict, seed: int):
    if family == "grunert":
        return gen_grunert(GrunertParams(**params), seed)
    if family == "rare":
        return gen_rare(RareParams(**params), seed)
    raise ValueError(f"unknown generator family: {family}")


def _bench_task(task):
    label, family, params, seed, algorithm, mode, timeout = task
    g = _bench_graph(family, params, seed)
    outcome, millis, cliques = run_search(g, algorithm, mode, timeout)
    param_str = ";".join(f"{k}={v}" for k, v in params.items()) + f";seed={seed}"
    millis_str = "nan" if outcome == "timeout" else f"{millis:.3f}"
    return (
        f"{label}/s{seed}",
        family,
        param_str,
        algorithm,
        mode,
        outcome,
        millis_str,
        str(cliques),
    )


BENCH_HEADER = ["label", "family", "params", "algorithm", "mode", "outcome", "millis", "cliques"]


def _cmd_bench(args) -> int:
    try:
        with open(args.suite) as fh:
            suite = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: bad suite file: {exc}", file=sys.stderr)
        return USAGE_ERROR
    timeout = suite.get("timeout", 1000.0)
    seeds = suite.get("seeds", [1, 2, 3, 4, 5])
    tasks = []
    try:
        for row in suite["rows"]:
            for seed in seeds:
                for alg in row.get("algorithms", ["kpkc", "findclique"]):
                    tasks.append(
                        (
                            row["label"],
                            row["family"],
                            row["params"],
                            seed,
                            alg,
                            row.get("mode", "any"),
                            timeout,
                        )
                    )
        for task in tasks:  # fail early on bad parameters
            _bench_graph(task[1], task[2], task[3])
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad suite row: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_task, tasks))
    else:
        results = [_bench_task(t) for t in tasks]

    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(BENCH_HEADER)
        writer.writerows(results)
    finally:
        if args.csv:
            out.close()
    return 0


# -- tverberg -----------------------------------------------------------------


def _load_chirotope(args) -> List[Tuple[int, Chirotope]]:
    """(index, chirotope) pairs for the selected input; index -1 when the
    input is not a database record."""
    if args.convex10:
        return [(-1, Chirotope.convex(10))]
    if args.points:
        return [(-1, Chirotope.from_points(parse_points(args.points)))]
    if args.chirotope:
        return [(-1, parse_chirotope(args.chirotope))]
    if args.index is not None:
        lo = hi = args.index
    else:
        lo, hi = args.range
    out = []
    for idx in range(lo, hi + 1):
        out.append((idx, Chirotope.from_points(read_b16(args.b16, idx))))
    return out


def _tverberg_inputs_ok(args) -> bool:
    picked = sum(
        1 for x in (args.convex10, args.points, args.chirotope, args.b16) if x
    )
    if picked != 1:
        print(
            "error: pick exactly one of --convex10 / --points / --chirotope / --b16",
            file=sys.stderr,
        )
        return False
    if args.b16 and args.index is None and args.range is None:
        print("error: --b16 needs --index N or --range A..B", file=sys.stderr)
        return False
    return True


def _cmd_tverberg(args) -> int:
    if not _tverberg_inputs_ok(args):
        return USAGE_ERROR
    try:
        inputs = _load_chirotope(args)
    except (OSError, ChirotopeFormatError, B16FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.action == "build":
        from .tverberg import build_H

        status = 0
        for idx, chi in inputs:
            t0 = time.perf_counter()
            g, index = build_H(chi)
            build_ms = (time.perf_counter() - t0) * 1000.0
            if args.verbose:
                print(f"build {build_ms:.1f} ms", file=sys.stderr)
            print(f"parts={g.k} vertices={g.n} edges={g.num_edges()}")
            if args.output:
                write_graph(g, args.output)
        return status

    worst = 0
    for idx, chi in inputs:
        res = verify_chirotope(chi, engine=args.alg, timeout=args.timeout)
        if args.verbose:
            print(f"build {res.build_ms:.1f} ms", file=sys.stderr)
        millis = "nan" if res.status == "timeout" else f"{res.search_ms:.1f}"
        if idx >= 0:
            print(
                f"{idx} {res.status} {res.parts} {res.vertices} {res.edges} {millis}"
            )
        else:
            print(res.status)
            print(f"parts={res.parts} vertices={res.vertices} edges={res.edges}")
        if res.status == "counterexample":
            worst = max(worst, 1)
            if res.witness is not None:
                print(f"witness ids: {res.witness['ids']}", file=sys.stderr)
        elif res.status == "timeout":
            worst = max(worst, TIMEOUT_ERROR)
    return worst


# -- oracle crosscheck ----------------------------------------------------------


def _soundness_one_seed(seed: int) -> List[str]:
    """All soundness failures for one sampled configuration (empty = ok):
    chirotope-pipeline partitions vs exact geometry, true orientation
    vertices enumerated and pairwise connected, determined signs correct."""
    from .chirotope import valid_quads

    failures = []
    pts = sample_config(seed)
    chi = Chirotope.from_points(pts)
    geo = geometric_tverberg_partitions(pts)
    geo_3331 = {tv for tv in geo if tuple(map(len, tv)) == (3, 3, 3, 1)}
    comb = {tv.pieces for tv in tverberg_3331(chi)}
    if comb != geo_3331:
        failures.append("3331 partitions differ from geometric oracle")
    geo_3322 = {tv for tv in geo if tuple(map(len, tv)) == (3, 3, 2, 2)}
    comb_3322 = set()
    true_vertices = []
    for quad in valid_quads(chi):
        y, signs = true_vertex_signs(pts, quad)
        others = quad.others(10)
        regs = {h: region(chi, quad, h) for h in others}
        opp = tuple(
            (i, j)
            for i, j in itertools.combinations(others, 2)
            if regs[i][0] != regs[j][0] and regs[i][1] != regs[j][1]
        )
        tv = OrientationVertex(quad, opp, tuple(signs[p] for p in opp))
        if tv not in enumerate_orientation_vertices(chi, quad):
            failures.append(f"true vertex of {quad} not enumerated")
            continue
        true_vertices.append(tv)
        comb_3322 |= {t.pieces for t in tverberg_3322_at(chi, tv)}
        for i, j in itertools.combinations(range(10), 2):
            ds = determined_sign(chi, tv, i, j)
            if ds is not None and ds != orient(pts[i], pts[j], y):
                failures.append(f"determined_sign wrong at {quad} ({i},{j})")
    if comb_3322 != geo_3322:
        failures.append("3322 partitions differ from geometric oracle")
    for va, vb in itertools.combinations(true_vertices, 2):
        if not ip_edge(chi, va, vb):
            failures.append(f"true vertices {va.quad} / {vb.quad} not adjacent")
    # colourings with no rainbow partition in the geometry must keep their
    # colour edge at every true vertex (vacuous whenever the theorem holds,
    # but the implication is part of the contract)
    geo_masks = [TverbergPartition(tv).mask() for tv in geo]
    base_3331 = tverberg_3331(chi)
    for cp in enumerate_color_partitions():
        cpm = cp.mask()
        if any(m & cpm == 0 for m in geo_masks):
            continue
        for tv in true_vertices:
            if not color_edge(chi, tv, cp, base_3331):
                failures.append(f"colour edge dropped at true vertex of {tv.quad}")
    return failures


def _cmd_oracle(args) -> int:
    lo, hi = args.seeds
    bad = 0
    for seed in range(lo, hi + 1):
        failures = _soundness_one_seed(seed)
        if failures:
            bad += 1
            print(f"seed {seed} FAIL")
            for f in failures:
                print(f"  {f}", file=sys.stderr)
        else:
            print(f"seed {seed} ok")
    print("ok" if not bad else f"failed {bad} seeds")
    return 0 if not bad else 1


# -- chirotope check ------------------------------------------------------------


def _cmd_chirotope(args) -> int:
    try:
        chi = parse_chirotope(args.file)
    except (OSError, ChirotopeFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    problem = chi.check_axioms()
    if problem is not None:
        print(f"not a chirotope: {problem}")
        return 1
    if not chi.is_acyclic():
        print("chirotope but not acyclic")
        return 1
    print("ok")
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="kpkc", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random k-partite graph")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)
    for fam in ("grunert", "rare"):
        p = gen_sub.add_parser(fam)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--max-part", type=int, required=True)
        p.add_argument("--a", type=float, required=True)
        if fam == "grunert":
            p.add_argument("--min-part", type=int, required=True)
            p.add_argument("--b", type=float, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output", required=True)

    p_solve = sub.add_parser("solve", help="search a .kpg graph for k-cliques")
    p_solve.add_argument("--alg", choices=("kpkc", "findclique", "brute"), default="kpkc")
    mode = p_solve.add_mutually_exclusive_group(required=True)
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--any", dest="mode", action="store_const", const="any")
    p_solve.add_argument("--timeout", type=parse_duration, default=None)
    p_solve.add_argument("graph")

    p_bench = sub.add_parser("bench", help="run a benchmark suite, emit CSV")
    p_bench.add_argument("--suite", required=True)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--csv", default=None)

    p_tv = sub.add_parser("tverberg", help="build or verify H(chi)")
    p_tv.add_argument("action", choices=("build", "verify"))
    p_tv.add_argument("--convex10", action="store_true")
    p_tv.add_argument("--points")
    p_tv.add_argument("--chirotope")
    p_tv.add_argument("--b16")
    p_tv.add_argument("--index", type=int, default=None)
    p_tv.add_argument("--range", type=parse_range, default=None)
    p_tv.add_argument("--alg", choices=("kpkc", "findclique", "brute"), default="kpkc")
    p_tv.add_argument("--timeout", type=parse_duration, default=None)
    p_tv.add_argument("--verbose", action="store_true")
    p_tv.add_argument("-o", "--output", default=None)

    p_oracle = sub.add_parser("oracle", help="cross-validate against exact geometry")
    oracle_sub = p_oracle.add_subparsers(dest="action", required=True)
    p_cc = oracle_sub.add_parser("crosscheck")
    p_cc.add_argument("--seeds", type=parse_range, required=True)

    p_chi = sub.add_parser("chirotope", help="validate a chirotope file")
    chi_sub = p_chi.add_subparsers(dest="action", required=True)
    p_check = chi_sub.add_parser("check")
    p_check.add_argument("file")

    return top


_HANDLERS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "tverberg": _cmd_tverberg,
    "oracle": _cmd_oracle,
    "chirotope": _cmd_chirotope,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, BruteForceRefused) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
