"""Command line front end.

Subcommands: classify (run the census up to a length and write class
databases), extend (distance-floor lengthening search), inspect (report on
one code), equiv (compare two codes), mass (verify the counting identity),
stats (census tables from a database file).

Exit codes: 0 success, 1 verification failure (mass mismatch, inequivalent
codes under --expect-equivalent, non-self-dual input to inspect), 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import classify as censusmod
from . import code as codemod
from .code import MatrixParseError
from .equivalence import are_equivalent, automorphism_group_order, canonical_code
from .standard_form import WeightedGraph, is_connected, to_standard_form


def _die_usage(msg: str) -> "NoReturn":  # noqa: F821
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _load_matrix(path):
    try:
        return codemod.load_generator_matrix(path)
    except OSError as e:
        _die_usage(str(e))
    except MatrixParseError as e:
        _die_usage(f"{path}: {e}")


def _require_self_dual(g, source: str):
    if not codemod.is_self_dual(g):
        print(f"error: {source} does not generate a self-dual code "
              f"(need n independent rows with all pairwise trace inner "
              f"products zero)", file=sys.stderr)
        raise SystemExit(1)


def _trits_to_graph(trits: str) -> WeightedGraph:
    m = len(trits)
    n = round((1 + (1 + 8 * m) ** 0.5) / 2)
    if n * (n - 1) // 2 != m:
        _die_usage(f"trit string length {m} is not a triangular number")
    try:
        return WeightedGraph.from_trits(n, trits)
    except ValueError as e:
        _die_usage(str(e))


def cmd_classify(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    progress = None
    if args.verbose:
        t0 = time.time()

        def progress(msg: str) -> None:
            print(f"[{time.time() - t0:7.1f}s] {msg}", file=sys.stderr, flush=True)

    by_n = censusmod.classify_range(args.n, workers=args.workers, progress=progress)
    if args.tsv:
        print("n\ti\tt")
    for n in range(1, args.n + 1):
        classes = by_n[n]
        censusmod.write_db(os.path.join(args.out, f"n{n}.sdac9"), classes, n)
        row = censusmod.tabulate(classes)
        if args.tsv:
            print(f"{n}\t{row.indecomposable}\t{row.total}")
        else:
            print(f"n={n} i={row.indecomposable} t={row.total}")
    return 0


def cmd_extend(args) -> int:
    try:
        n, classes = censusmod.read_db(args.db)
    except OSError as e:
        _die_usage(str(e))
    except ValueError as e:
        _die_usage(str(e))
    parents = [c for c in classes if c.d >= args.min_d]
    out = censusmod.extend_with_distance_floor(parents, args.min_d + 1,
                                               workers=args.workers)
    censusmod.write_db(args.out, out, n + 1)
    if args.tsv:
        print("n\td_floor\tparents\tclasses")
        print(f"{n + 1}\t{args.min_d + 1}\t{len(parents)}\t{len(out)}")
    else:
        print(f"n={n + 1} d>={args.min_d + 1}: {len(out)} classes "
              f"from {len(parents)} parents")
    return 0


def cmd_inspect(args) -> int:
    if args.matrix:
        g = _load_matrix(args.matrix)
        _require_self_dual(g, args.matrix)
        source = args.matrix
    else:
        graph = _trits_to_graph(args.trits)
        from .standard_form import graph_to_generator
        g = graph_to_generator(graph)
        source = "trit string"
    cc = canonical_code(g)
    d = codemod.minimum_distance(g)
    wd = codemod.weight_distribution(g)
    alpha = codemod.match_enumerator_family(g.n, wd)
    graph = to_standard_form(g)
    conn = is_connected(graph)
    rows = [
        ("source", source),
        ("n", g.n),
        ("connected", "yes" if conn else "no"),
        ("minimum distance", d),
        ("aut order", cc.aut_order),
        ("canonical trits", cc.trits or "(empty)"),
        ("weight distribution", ",".join(str(x) for x in wd)),
        ("alpha", alpha if alpha is not None else "-"),
    ]
    if args.tsv:
        for k, v in rows:
            print(f"{k.replace(' ', '_')}\t{v}")
    else:
        w = max(len(k) for k, _ in rows)
        for k, v in rows:
            print(f"{k:<{w}}  {v}")
    return 0


def cmd_equiv(args) -> int:
    ga = _load_matrix(args.a)
    gb = _load_matrix(args.b)
    _require_self_dual(ga, args.a)
    _require_self_dual(gb, args.b)
    if ga.n != gb.n:
        _die_usage(f"length mismatch: {ga.n} vs {gb.n}")
    same = are_equivalent(ga, gb)
    print("equivalent" if same else "inequivalent")
    if args.expect_equivalent and not same:
        return 1
    return 0


def cmd_mass(args) -> int:
    path = os.path.join(args.db, f"n{args.n}.sdac9")
    try:
        n, classes = censusmod.read_db(path)
    except OSError as e:
        _die_usage(str(e))
    except ValueError as e:
        _die_usage(str(e))
    if n != args.n:
        _die_usage(f"{path} holds length {n}, not {args.n}")
    try:
        report = censusmod.mass_check(n, classes)
    except ValueError as e:
        print(f"mass check: FAIL ({e})")
        return 1
    bound = censusmod.mass_lower_bound(n)
    if args.tsv:
        print("n\tclasses\tlhs\trhs\tequal\tlower_bound")
        print(f"{n}\t{len(classes)}\t{report.lhs}\t{report.rhs}"
              f"\t{report.equal}\t{bound}")
    else:
        print(f"n={n} classes={len(classes)}")
        print(f"distinct codes       = {report.lhs}")
        print(f"sum of orbit sizes   = {report.rhs}")
        print(f"class count bound    >= {bound}")
        print(f"mass check: {'PASS' if report.equal else 'FAIL'}")
    return 0 if report.equal else 1


def cmd_stats(args) -> int:
    try:
        n, classes = censusmod.read_db(args.db)
    except OSError as e:
        _die_usage(str(e))
    except ValueError as e:
        _die_usage(str(e))
    row = censusmod.tabulate(classes)
    out: list[tuple] = []
    if args.table == "distance":
        header = ("d", "indecomposable", "total")
        for d in sorted(row.by_distance_total):
            out.append((d, row.by_distance.get(d, 0), row.by_distance_total[d]))
        out.append(("all", row.indecomposable, row.total))
    elif args.table == "wd":
        header = ("d", "distinct_wd")
        counts = censusmod.wd_counts_by_distance(classes)
        for d, k in counts.items():
            out.append((d, k))
        out.append(("all", sum(counts.values())))
    elif args.table == "aut":
        header = ("aut_order", "count")
        out.extend(censusmod.aut_histogram(classes).items())
    elif args.table == "alpha-beta":
        header = ("alpha", "beta", "count")
        table = censusmod.alpha_beta_table(classes)
        out.extend((a, b, k) for (a, b), k in table.items())
        out.append(("all", "", sum(table.values())))
    else:
        _die_usage(f"unknown table {args.table!r}")
    if args.tsv:
        print("\t".join(header))
        for r in out:
            print("\t".join(str(x) for x in r))
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in out))
                  for i, h in enumerate(header)]
        print("  ".join(f"{h:>{w}}" for h, w in zip(header, widths)))
        for r in out:
            print("  ".join(f"{str(x):>{w}}" for x, w in zip(r, widths)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sdac9",
        description="Classification tools for trace-Hermitian self-dual "
                    "additive codes over GF(9).")
    sub = p.add_subparsers(dest="command", required=True)

    def add_workers(sp):
        sp.add_argument("--workers", type=int,
                        default=None,
                        help="worker processes (default: $SDAC9_WORKERS or 1)")

    sp = sub.add_parser("classify", help="census of all classes up to a length")
    sp.add_argument("--n", type=int, required=True, help="largest length")
    sp.add_argument("--out", required=True, help="output directory for databases")
    add_workers(sp)
    sp.add_argument("--tsv", action="store_true")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("extend", help="lengthen classes keeping a distance floor")
    sp.add_argument("--db", required=True, help="input class database")
    sp.add_argument("--min-d", type=int, required=True,
                    help="distance floor of the input classes")
    sp.add_argument("--out", required=True, help="output database path")
    add_workers(sp)
    sp.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("inspect", help="report on one code")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="generator matrix file")
    src.add_argument("--trits", help="standard form graph as trit string")
    sp.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("equiv", help="test two codes for equivalence")
    sp.add_argument("--a", required=True, help="first generator matrix file")
    sp.add_argument("--b", required=True, help="second generator matrix file")
    sp.add_argument("--expect-equivalent", action="store_true",
                    help="exit 1 when the codes are inequivalent")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("mass", help="verify the counting identity for a length")
    sp.add_argument("--db", required=True, help="database directory")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_mass)

    sp = sub.add_parser("stats", help="census tables from a database")
    sp.add_argument("--db", required=True, help="class database file")
    sp.add_argument("--table", default="distance",
                    choices=["distance", "wd", "aut", "alpha-beta"])
    sp.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        _die_usage("--n must be >= 1")
    if getattr(args, "min_d", None) is not None and args.min_d < 1:
        _die_usage("--min-d must be >= 1")
    if getattr(args, "workers", None) is not None and args.workers < 1:
        _die_usage("--workers must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
