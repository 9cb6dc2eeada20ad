"""Command line interface.

Subcommands: gen (instance files), preprocess (state blobs), query (answer
files), verify (oracle campaigns), bench (scaling CSV).  Exit codes: 0 ok,
1 usage or bad input, 2 verification mismatch, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from . import _kernels as kernels
from .core import WorkCounters
from .errors import DomainError, ParseError, ResourceError, ThreesumError
from .fileio import read_integer_file, read_query_file, write_answers_file, write_integer_file
from .generators import MODES, Instance, generate_instance
from .registry import ALGOS, engine
from .bench import CSV_COLUMNS, run_bench
from .stateio import load_state, save_state
from .verify import run_verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_RESOURCE = 3


def _cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    inst = generate_instance(args.n, args.universe, args.mode, args.seed, with_c=args.with_c)
    write_integer_file(out / "A.txt", inst.a)
    write_integer_file(out / "B.txt", inst.b)
    files = ["A.txt", "B.txt"]
    if inst.c is not None:
        write_integer_file(out / "C.txt", inst.c)
        files.append("C.txt")
    print(f"wrote {', '.join(files)} to {out} (n={args.n}, universe={args.universe}, mode={args.mode})")
    return EXIT_OK


def _load_instance(path: str, *, need_c: bool) -> Instance:
    base = Path(path)
    a = read_integer_file(base / "A.txt")
    b = read_integer_file(base / "B.txt")
    c = None
    c_path = base / "C.txt"
    if c_path.exists():
        c = read_integer_file(c_path)
    elif need_c:
        raise DomainError(f"algorithm requires {c_path}, which does not exist")
    n = max(a.size, b.size, c.size if c is not None else 0)
    values = [int(arr.max()) for arr in (a, b, c) if arr is not None and arr.size]
    universe = max(values + [1])
    return Instance(n=n, universe=universe, a=a, b=b, c=c, mode="file", seed=0)


def _cmd_preprocess(args) -> int:
    eng = engine(args.algo)
    inst = _load_instance(args.instance, need_c=eng.needs_c)
    if args.universe is not None:
        inst.universe = args.universe
    kwargs = {}
    if args.force_modulus is not None:
        if eng.deterministic:
            raise DomainError("the deterministic engine takes no forced modulus")
        kwargs["force_modulus"] = args.force_modulus
    if args.memory_budget is not None and not eng.needs_c:
        kwargs["memory_budget"] = args.memory_budget
    t0 = time.perf_counter()
    state = eng.preprocess(inst, args.seed, **kwargs)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    save_state(args.out, state)
    stats = [f"wall={elapsed_ms:.1f}ms"]
    if hasattr(state, "fa"):
        stats.append(f"|F|={state.false_positive_count}")
        stats.append(f"restarts={state.restarts}")
    plan = getattr(state, "plan", None)
    if plan is not None:
        stats.append(f"#heavy={plan.heavy_positions.size}")
        stats.append(f"|M|={len(plan.moduli)}")
    print(f"{args.algo}: state written to {args.out} ({', '.join(stats)})")
    return EXIT_OK


def _cmd_query(args) -> int:
    state = load_state(args.state)
    from .registry import _ENGINES  # map state type back to its engine

    algo = {
        "KnownCState": "known-c",
        "UnknownCRandState": "unknown-c-rand",
        "UnknownCDetState": "unknown-c-det",
    }[type(state).__name__]
    eng = _ENGINES[algo]
    blocks = read_query_file(args.queries)
    counters = WorkCounters()
    answers = [eng.query(state, blk.a, blk.b, blk.c, counters=counters) for blk in blocks]
    write_answers_file(args.out, answers)
    print(
        f"{algo}: answered {len(blocks)} block(s) to {args.out} "
        f"(convolution={counters.convolution_length}, scans={counters.scan_total()})"
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    algos = args.algos.split(",") if args.algos else list(ALGOS)
    instance = None
    if args.instance:
        needs_c = any(engine(a).needs_c for a in algos)
        instance = _load_instance(args.instance, need_c=needs_c)
    report = run_verify(
        algos,
        trials=args.trials,
        seed=args.seed,
        instance=instance,
        n=args.n,
        universe=args.universe,
        mode=args.mode,
        inject_fault=args.inject_fault,
    )
    for rep in report.engines:
        print(
            f"{rep.algo}: {rep.queries} queries, {rep.mismatches} mismatches, "
            f"fp_scan mean={rep.fp_scan_mean:.1f} max={rep.fp_scan_max}, "
            f"restarts={rep.restarts}, |M|={rep.moduli_count}"
        )
    if report.total_mismatches:
        print(f"FAIL: {report.total_mismatches} mismatching queries", file=sys.stderr)
        return EXIT_MISMATCH
    print("ok: all engine answers equal the brute-force oracle")
    return EXIT_OK


def _cmd_bench(args) -> int:
    sizes = sorted(int(s) for s in args.sizes.split(","))
    if args.kernel:
        kernels.set_implementation(args.kernel)
    rows = run_bench(args.algo, sizes, args.trials, args.seed)
    out = args.out or "-"
    fh = sys.stdout if out == "-" else open(out, "w", newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_fields())
    finally:
        if fh is not sys.stdout:
            fh.close()
            print(f"{args.algo}: wrote {len(rows)} rows to {out} (kernel={kernels.implementation_name()})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="threesum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instance files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--universe", type=int, default=None, help="default n**3")
    p.add_argument("--mode", choices=MODES, default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--with-c", action="store_true", help="also write C.txt")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("preprocess", help="build and store an engine state")
    p.add_argument("instance", help="directory with A.txt, B.txt (and C.txt)")
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-modulus", type=int, default=None, help="test hook; must be prime")
    p.add_argument("--universe", type=int, default=None)
    p.add_argument("--memory-budget", type=int, default=None, help="bytes for quadratic structures")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("query", help="answer a query file against a stored state")
    p.add_argument("state")
    p.add_argument("queries")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("verify", help="compare engines against the brute-force oracle")
    p.add_argument("--algos", default=None, help=f"comma list from {ALGOS}; default all")
    p.add_argument("--instance", default=None, help="fixed instance directory")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--universe", type=int, default=None, help="default n**3")
    p.add_argument("--mode", choices=MODES, default="uniform")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help="corrupt one answer; must exit 2")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="work-counter scaling CSV")
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--sizes", default="64,256,1024", help="comma list, ascending")
    p.add_argument("--trials", type=int, default=5, help="queries per size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=("pure", "native"), default=None)
    p.add_argument("--out", default=None, help="CSV path; default stdout")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "gen" and args.universe is None:
        args.universe = args.n**3
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ThreesumError as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
