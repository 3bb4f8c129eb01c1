"""Command-line surface and the experiment harness.

Subcommands: gen, analyze, solve, kpoly, en-check, sweep, bench,
kernel-bench.  Exit codes: 0 ok, 1 usage error, 2 computation failure.
The default prime can be overridden with the CRITGB_PRIME environment
variable.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import time
from dataclasses import dataclass, fields

from . import eagon_northcott as en
from . import grothendieck as gr
from . import series
from .algebra import PrimeField, format_poly
from .errors import CritgbError, GenericityError
from .groebner import fglm, quotient_dimension
from .kernels import BACKEND, backends
from .macaulay import dwit_empirical, solve
from .systems import ProblemShape, random_instance, read_instance, write_instance

# Desk-scale grid for the trend benchmark: cells ordered by log(A)/log(G),
# chosen so the heavier eliminations sit at the larger ratios.
FIG1_GRID = [
    (2, 1, (3, 2)),
    (3, 1, (3, 2)),
    (4, 1, (3, 3)),
    (3, 1, (3, 3)),
    (3, 2, (1, 2, 4)),
    (4, 3, (1, 2, 2, 4)),
    (3, 2, (1, 2, 5)),
    (3, 2, (1, 2, 6)),
]

FIG2_DEGREE = 3
FIG2_NS = (2, 3, 4)


def _default_prime():
    return int(os.environ.get("CRITGB_PRIME", "65521"))


@dataclass
class BenchRecord:
    seed: int
    n: int
    p: int
    degrees: str               # colon-separated
    delta: int
    dreg: int
    dwit_bound: int
    dwit_empirical: int
    A: str                     # exact fraction
    G: float
    logA_over_logG: float
    solve_time_seconds: float
    fglm_time_seconds: float
    status: str

    @staticmethod
    def columns():
        return [f.name for f in fields(BenchRecord)]


def bench_cell(shape, seed, prime):
    """Run the full pipeline on one (shape, seed) cell and time it."""
    prof = series.averages(shape)
    base = dict(seed=seed, n=shape.n, p=shape.p,
                degrees=":".join(map(str, shape.degrees)),
                delta=prof.delta, dreg=prof.dreg, dwit_bound=prof.dwit_bound,
                A=str(prof.A), G=prof.G, logA_over_logG=prof.log_ratio)
    sysm = random_instance(shape, PrimeField(prime), seed)
    try:
        solve(sysm)     # warm-up run; discard timing
        t0 = time.perf_counter()
        res = solve(sysm)
        t_solve = time.perf_counter() - t0
        t0 = time.perf_counter()
        lex_basis = fglm(res.basis, cap=10 * max(prof.delta, 1))
        t_fglm = time.perf_counter() - t0
        size = quotient_dimension(res.basis, cap=10 * max(prof.delta, 1))
        dwit = dwit_empirical(sysm)
        status = "ok"
        if size != prof.delta:
            status = "degree-mismatch"
        if quotient_dimension(lex_basis, cap=10 * max(prof.delta, 1)) != size:
            status = "fglm-mismatch"
        return BenchRecord(**base, dwit_empirical=dwit,
                           solve_time_seconds=t_solve,
                           fglm_time_seconds=t_fglm, status=status)
    except (GenericityError, CritgbError) as exc:
        return BenchRecord(**base, dwit_empirical=-1,
                           solve_time_seconds=0.0, fglm_time_seconds=0.0,
                           status=f"genericity-failure:{type(exc).__name__}")


def bench_grid(cells, seeds, prime, workers=1, progress=None):
    """BenchRecords for every (cell, seed), merged in deterministic order."""
    tasks = [(ProblemShape(n, p, degs), seed)
             for (n, p, degs) in cells for seed in range(seeds)]
    records = {}
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {pool.submit(bench_cell, sh, sd, prime): (sh, sd)
                    for sh, sd in tasks}
            for fut, key in futs.items():
                records[(key[0].label(), key[1])] = fut.result()
                if progress:
                    progress(key)
    else:
        for sh, sd in tasks:
            records[(sh.label(), sd)] = bench_cell(sh, sd, prime)
            if progress:
                progress((sh, sd))
    return [records[(sh.label(), sd)] for sh, sd in tasks]


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(BenchRecord.columns())
        for r in records:
            w.writerow([getattr(r, c) for c in BenchRecord.columns()])


def read_csv(path):
    out = []
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        for row in rd:
            out.append(BenchRecord(
                seed=int(row["seed"]), n=int(row["n"]), p=int(row["p"]),
                degrees=row["degrees"], delta=int(row["delta"]),
                dreg=int(row["dreg"]), dwit_bound=int(row["dwit_bound"]),
                dwit_empirical=int(row["dwit_empirical"]), A=row["A"],
                G=float(row["G"]),
                logA_over_logG=float(row["logA_over_logG"]),
                solve_time_seconds=float(row["solve_time_seconds"]),
                fglm_time_seconds=float(row["fglm_time_seconds"]),
                status=row["status"]))
    return out


def trend_points(records):
    """(log(A)/log(G), log(total time)/log(delta)) for ok records."""
    pts = []
    for r in records:
        if r.status != "ok" or r.delta < 2:
            continue
        t = max(r.solve_time_seconds + r.fglm_time_seconds, 1e-9)
        pts.append((r.logA_over_logG, math.log(t) / math.log(r.delta)))
    return pts


def least_squares_slope(points):
    if len(points) < 2:
        raise ValueError("need at least two points for a slope")
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in points)
    den = sum((x - mx) ** 2 for x in xs)
    if den == 0:
        raise ValueError("degenerate x values")
    return num / den


# -- subcommand implementations ---------------------------------------------

def _parse_shape(args):
    degrees = tuple(int(x) for x in args.degrees.replace(":", ",").split(","))
    return ProblemShape(args.n, args.p, degrees)


def cmd_gen(args):
    shape = _parse_shape(args)
    sysm = random_instance(shape, PrimeField(args.prime), args.seed)
    write_instance(sysm, args.output)
    print(f"wrote {args.output} ({shape.label()}, seed {args.seed})")
    return 0


def cmd_analyze(args):
    shape = _parse_shape(args)
    prof = series.averages(shape)
    hs = series.hs_critical(shape)
    print(f"shape {shape.label()}")
    print(f"delta {prof.delta}")
    print(f"dreg {prof.dreg}")
    print(f"dwit_bound {prof.dwit_bound}")
    print(f"A {prof.A} (~{float(prof.A):.5f})")
    print(f"G {prof.G_pow}^(1/{prof.G_root}) (~{prof.G:.5f})")
    print(f"logA_over_logG {prof.log_ratio:.5f}")
    print("hs_critical " + ",".join(str(c) for c in hs.coeffs))
    return 0


def cmd_solve(args):
    sysm = read_instance(args.instance)
    try:
        res = solve(sysm)
    except GenericityError as exc:
        print(f"instance {args.instance}")
        print("status genericity-failure")
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cap = 10 * max(series.algebraic_degree(sysm.shape), 1)
    delta = quotient_dimension(res.basis, cap=cap)
    dwit = dwit_empirical(sysm)
    print(f"instance {args.instance}")
    print("status ok")
    print(f"dwit_empirical {dwit}")
    print(f"delta {delta}")
    print("grevlex_basis:")
    for g in res.basis:
        print(format_poly(g))
    if not args.no_lex:
        lex_b = fglm(res.basis, cap=cap)
        print("lex_basis:")
        for g in lex_b:
            print(format_poly(g, lex_b.order))
    return 0


def _format_zmv(poly, names):
    if not poly:
        return "0"
    parts = []
    for m, c in sorted(poly.items(), reverse=True):
        factors = []
        if abs(c) != 1 or not any(m):
            factors.append(str(abs(c)))
        for nm, e in zip(names, m):
            if e == 1:
                factors.append(nm)
            elif e > 1:
                factors.append(f"{nm}^{e}")
        parts.append(("- " if c < 0 else "+ ") + "*".join(factors))
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def cmd_kpoly(args):
    shape = _parse_shape(args)
    w = gr.determinantal_permutation(shape)
    g = gr.grothendieck_poly(w)
    names = [f"t{i + 1}" for i in range(len(w))]
    print(f"permutation {','.join(map(str, w))}")
    print(f"grothendieck {_format_zmv(g, names)}")
    print(f"kpoly {gr.evaluate_kpoly(shape)!r}")
    return 0


def cmd_en_check(args):
    shape = _parse_shape(args)
    cx = en.build_complex(shape)
    report = en.verify_complex(cx)
    print(f"shape {shape.label()}")
    print("ranks " + ",".join(map(str, report.ranks)))
    for k, mod in enumerate(cx.modules):
        shift_counts = {}
        for s in mod.shifts:
            shift_counts[s] = shift_counts.get(s, 0) + 1
        pretty = " ".join(f"R({s})^{c}" if c > 1 else f"R({s})"
                          for s, c in sorted(shift_counts.items(), reverse=True))
        print(f"stage {k} {pretty}")
    print(f"numerator {en.alternating_numerator(shape)!r}")
    print(f"complex {'ok' if report.is_complex else 'FAIL'}")
    print(f"homogeneous {'ok' if report.homogeneous else 'FAIL'}")
    print(f"minors {'ok' if report.image_is_minors else 'FAIL'}")
    for msg in report.failures:
        print(f"failure {msg}")
    return 0 if report.ok else 2


def cmd_sweep(args):
    bad = 0
    for n in range(2, args.max_n + 1):
        for p in range(1, n):
            for degs in _degree_tuples(p, args.max_degree):
                shape = ProblemShape(n, p, degs)
                num = series.determinantal_numerator(shape)
                ok = (num == gr.evaluate_kpoly(shape)
                      == en.alternating_numerator(shape))
                hs = series.hs_critical(shape)
                ok = ok and hs(1) == series.algebraic_degree(shape)
                ok = ok and hs.degree() + 1 == series.degree_of_regularity(shape)
                status = "ok" if ok else "MISMATCH"
                bad += not ok
                if not ok or args.verbose:
                    print(f"{shape.label()} {status}")
    print(f"sweep {'ok' if not bad else f'{bad} mismatches'}")
    return 0 if not bad else 2


def _degree_tuples(p, max_degree):
    import itertools
    d0s = range(1, max_degree + 1)
    dis = range(2, max_degree + 1)
    for d0 in d0s:
        for rest in itertools.product(dis, repeat=p):
            yield (d0,) + rest


def cmd_bench(args):
    if args.fig2:
        d = args.fig2_degree
        cells = [(n, 1, (d, d)) for n in FIG2_NS]
    elif args.cells:
        cells = []
        for spec in args.cells.split(";"):
            n, p, degs = spec.split(",", 2)
            cells.append((int(n), int(p), tuple(int(x) for x in degs.split(":"))))
    else:
        cells = FIG1_GRID
    for n, p, degs in cells:
        if max(degs) < 3 and not args.allow_quadratic:
            print(f"cell n={n},p={p},d={degs} rejected: trend grid needs "
                  "max degree >= 3", file=sys.stderr)
            return 1
    records = bench_grid(cells, args.seeds, args.prime, workers=args.workers)
    write_csv(records, args.output)
    print(f"wrote {args.output} ({len(records)} records)")
    ok = [r for r in records if r.status == "ok"]
    print(f"ok {len(ok)}/{len(records)}")
    if args.fig2:
        pts = [(r.n, math.log(max(r.solve_time_seconds + r.fglm_time_seconds,
                                  1e-9)) / math.log(args.fig2_degree))
               for r in ok]
    else:
        pts = trend_points(records)
        if len(pts) >= 2:
            print(f"trend_slope {least_squares_slope(pts):.4f}")
    if args.plot_data:
        path = args.plot_data
        with open(path, "w") as fh:
            for x, y in pts:
                fh.write(f"{x} {y}\n")
        print(f"wrote {path}")
    return 0


def cmd_kernel_bench(args):
    import numpy as np
    avail = backends()
    print(f"active backend: {BACKEND}")
    if len(avail) < 2:
        print("compiled kernel not built; benchmarking the python backend only")
    rng = np.random.default_rng(0)
    p = _default_prime()
    print(f"{'task':<28}" + "".join(f"{name:>12}" for name, _ in avail))
    for rows, cols in [(120, 160), (300, 420), (600, 840)]:
        mat = rng.integers(0, p, size=(rows, cols), dtype=np.int64)
        times = []
        for _, mod in avail:
            work = mat.copy()
            t0 = time.perf_counter()
            mod.rref(work, p, True)
            times.append(time.perf_counter() - t0)
        print(f"{f'rref {rows}x{cols}':<28}"
              + "".join(f"{t:>11.4f}s" for t in times))
    for size in [200, 2000]:
        hc = -np.sort(-rng.choice(10 * size, size=size, replace=False).astype(np.int64))
        hv = rng.integers(1, p, size=size, dtype=np.int64)
        gc = -np.sort(-rng.choice(10 * size, size=size, replace=False).astype(np.int64))
        gv = rng.integers(1, p, size=size, dtype=np.int64)
        times = []
        reps = 2000
        for _, mod in avail:
            t0 = time.perf_counter()
            for _i in range(reps):
                mod.axpy_merge(hc, hv, gc, gv, 7, 12345, p)
            times.append(time.perf_counter() - t0)
        print(f"{f'axpy_merge {size} x{reps}':<28}"
              + "".join(f"{t:>11.4f}s" for t in times))
    return 0


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_shape_args(sp):
    sp.add_argument("--n", type=int, required=True, help="variable count")
    sp.add_argument("--p", type=int, required=True, help="constraint count")
    sp.add_argument("--degrees", required=True,
                    help="d0,d1,...,dp (comma or colon separated)")


def build_parser():
    ap = _Parser(prog="critgb",
                 description="critical-point ideals over GF(p): exact "
                             "solving and structural cross-checks")
    ap.add_argument("--prime", type=int, default=_default_prime(),
                    help="field modulus (default: CRITGB_PRIME or 65521)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="generate a random instance file")
    _add_shape_args(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("analyze", help="complexity indicators and Hilbert series")
    _add_shape_args(sp)
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("solve", help="solve an instance file")
    sp.add_argument("instance")
    sp.add_argument("--no-lex", action="store_true",
                    help="skip the FGLM order change")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("kpoly", help="Grothendieck polynomial and K-polynomial")
    _add_shape_args(sp)
    sp.set_defaults(fn=cmd_kpoly)

    sp = sub.add_parser("en-check", help="build and verify the Eagon-Northcott complex")
    _add_shape_args(sp)
    sp.set_defaults(fn=cmd_en_check)

    sp = sub.add_parser("sweep", help="formula three-way agreement over a shape grid")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("bench", help="grid of shapes x seeds -> CSV")
    sp.add_argument("--seeds", type=int, default=2)
    sp.add_argument("--cells", help="semicolon list: n,p,d0:d1:...")
    sp.add_argument("--fig2", action="store_true",
                    help="fixed-degree sweep over n instead of the trend grid")
    sp.add_argument("--fig2-degree", type=int, default=FIG2_DEGREE)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--allow-quadratic", action="store_true")
    sp.add_argument("--plot-data", help="write two-column plot data here")
    sp.add_argument("-o", "--output", default="bench.csv")
    sp.set_defaults(fn=cmd_bench)

    sp = sub.add_parser("kernel-bench",
                        help="compare compiled and python kernel backends")
    sp.set_defaults(fn=cmd_kernel_bench)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 1
    try:
        return args.fn(args)
    except (CritgbError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
