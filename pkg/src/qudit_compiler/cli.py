"""Command-line front end.

Exit codes: 0 success/equal, 1 verification mismatch, 2 parse or usage error,
3 search exhausted, 4 resource guard tripped.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench, formats
from .circuit import (
    Circuit,
    DimensionTooLarge,
    circuits_equal,
    extract,
    synthesize_clifford_diagonal,
    synthesize_cubic,
)
from .formats import FormatError
from .optimize import (
    LEGACY,
    MS,
    ResourceLimitExceeded,
    SearchExhausted,
    best_of_n,
    brute_force,
    merge_columns,
    substitute,
)
from .phasepoly import Implementation, SignatureTensor, signature_of

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_EXHAUSTED, EXIT_RESOURCE = range(5)


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def _load(path, *kinds):
    obj = formats.load(path)
    if kinds and not isinstance(obj, kinds):
        raise FormatError(f"expected {' or '.join(k.__name__ for k in kinds)}", None, str(path))
    return obj


def _tensor_from(path) -> SignatureTensor:
    obj = _load(path, SignatureTensor, Circuit)
    if isinstance(obj, SignatureTensor):
        return obj
    prof = extract(obj)
    if not prof.is_pure_cubic():
        print("warning: input circuit has linear/quadratic or non-identity E parts; compiling the cubic part only", file=sys.stderr)
    return prof.S


def cmd_compile(args) -> int:
    S = _tensor_from(args.input)
    if args.method == "bfs":
        imp = brute_force(S, args.m_max)
    else:
        imp = substitute(S, MS if args.method == "ms" else LEGACY)
    formats.dump(imp, args.output)
    print(f"m = {imp.m}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    imp = merge_columns(_load(args.input, Implementation))
    S = signature_of(imp)
    if args.dam:
        imp = best_of_n(S, N=args.best_of, master_seed=args.seed, start=imp)
    formats.dump(imp, args.output)
    print(f"m = {imp.m}")
    return EXIT_OK


def cmd_synth(args) -> int:
    imp = _load(args.input, Implementation)
    circ = synthesize_cubic(imp)
    formats.dump(circ, args.output)
    print(f"M-count = {circ.m_count}, gates = {len(circ)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    a = _load(args.a, Circuit)
    b = _load(args.b, Circuit)
    if (a.d, a.n) != (b.d, b.n):
        print("circuits act on different spaces")
        return EXIT_MISMATCH
    equal = circuits_equal(a, b)
    print("equal" if equal else "not equal")
    return EXIT_OK if equal else EXIT_MISMATCH


def cmd_extract(args) -> int:
    circ = _load(args.input, Circuit)
    prof = extract(circ)
    identity = np.array_equal(prof.E, np.eye(circ.n, dtype=np.int64))
    if not identity and not args.allow_linear:
        _err("circuit has a non-identity linear part E; rerun with --allow-linear")
        return EXIT_PARSE
    formats.dump(prof.S, args.output)
    if not identity:
        lin = Path(str(args.output) + ".lin")
        lin.write_text(formats.format_linear(prof.E, circ.d), encoding="utf-8")
        print(f"E written to {lin}")
    if prof.Q.any() or prof.L.any():
        diag = synthesize_clifford_diagonal(prof.Q, prof.L, circ.d)
        print(f"note: circuit also has a Clifford diagonal part ({len(diag)} Clifford gates)", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite != "table1":
        _err(f"unknown suite {args.suite!r}")
        return EXIT_PARSE
    rows = [r.strip() for r in args.rows.split(",") if r.strip()]
    unknown = set(rows) - set(bench.FAMILIES) - {"random"}
    if unknown:
        _err(f"unknown rows: {', '.join(sorted(unknown))}")
        return EXIT_PARSE
    result = bench.run_table1_subset(
        args.seed,
        rows,
        tuple(int(x) for x in args.d.split(",")),
        max_n=args.max_n,
        instances=args.instances,
        with_dam=not args.no_dam,
        threads=args.threads,
    )
    text = bench.rows_to_csv(result, times=not args.omit_times)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_stats(args) -> int:
    if not args.p_opt:
        _err("stats needs --p-opt")
        return EXIT_PARSE
    res = bench.measure_p_opt(args.instances, args.runs, args.seed)
    print(f"p_opt = {res.p_opt:.3f} +/- {res.stderr:.3f} over {len(res.fractions)} instances x {res.runs} runs")
    print(f"mu <= m held in {res.mu_checks - res.mu_violations}/{res.mu_checks} merge solves")
    print(f"N(p_conf={args.p_conf}) = {res.repetitions(args.p_conf)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qudit-compile", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compile", help="signature tensor (or circuit) -> implementation")
    c.add_argument("input")
    c.add_argument("--method", choices=("ms", "legacy", "bfs"), default="ms")
    c.add_argument("--m-max", type=int, default=4)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_compile)

    o = sub.add_parser("optimize", help="reduce the column count of an implementation")
    o.add_argument("input")
    o.add_argument("--dam", action="store_true")
    o.add_argument("--best-of", type=int, default=10)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("-o", "--output", required=True)
    o.set_defaults(func=cmd_optimize)

    s = sub.add_parser("synth", help="implementation -> circuit")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="exhaustive equality of two circuits")
    v.add_argument("a")
    v.add_argument("b")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extract", help="circuit -> signature tensor")
    e.add_argument("input")
    e.add_argument("-o", "--output", required=True)
    e.add_argument("--allow-linear", action="store_true")
    e.set_defaults(func=cmd_extract)

    b = sub.add_parser("bench", help="benchmark table rows as CSV")
    b.add_argument("--suite", default="table1")
    b.add_argument("--rows", default="ccz,ccz2,cczs2,random")
    b.add_argument("--d", default="5,7,11", help="comma-separated moduli")
    b.add_argument("--max-n", type=int, default=6)
    b.add_argument("--instances", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--no-dam", action="store_true")
    b.add_argument("--omit-times", action="store_true", help="write NA in timing columns")
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)

    st = sub.add_parser("stats", help="DAM optimality-rate experiment")
    st.add_argument("--p-opt", action="store_true")
    st.add_argument("--instances", type=int, default=20)
    st.add_argument("--runs", type=int, default=100)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--p-conf", type=float, default=0.95)
    st.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError) as e:
        _err(str(e))
        return EXIT_PARSE
    except SearchExhausted as e:
        _err(str(e))
        return EXIT_EXHAUSTED
    except (ResourceLimitExceeded, DimensionTooLarge) as e:
        _err(str(e))
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
