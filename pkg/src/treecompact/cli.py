"""Command-line front end.

Subcommands: sample, compact, cbst (build/search/unfold), analyze
(weights/series/roots), verify (all/oracles/lemmas), experiment
(scaling/fig5/lemmas).  JSON goes to stdout, diagnostics to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage/input error.

The environment variable TREECOMP_SEED, when set, overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analytics, cbst, enumerator, experiments
from .compactor import compact
from .sampler import sample_bst, sample_recursive
from .trees import (PLANE, POLYA, BinaryTree, TreeError, parse, serialize,
                    signature)

_MODE_FAMILY = {POLYA: "recursive", PLANE: "bst"}


def _resolve_seed(seed: int) -> int:
    env = os.environ.get("TREECOMP_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise SystemExit(f"error: bad TREECOMP_SEED {env!r}")
    return seed


def _read_text(path: str) -> str:
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _load_tree(path: str):
    try:
        return parse(_read_text(path))
    except TreeError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _load_cbst(path: str) -> cbst.CompactedBst:
    """Accept either the binary format or a JSON BST (built on the fly)."""
    data = _read_bytes(path)
    if data[:5] == b"CBST1":
        try:
            return cbst.from_bytes(data)
        except (cbst.CorruptStructureError, ValueError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            raise SystemExit(2)
    try:
        tree = parse(data.decode())
        if not isinstance(tree, BinaryTree):
            raise TreeError("cbst commands need a binary tree")
        return cbst.build(tree)
    except (TreeError, UnicodeDecodeError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _cmd_sample(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.family == "recursive":
        tree = sample_recursive(args.n, seed)
    else:
        tree = sample_bst(args.n, seed)
    text = serialize(tree)
    if args.json:
        text = json.dumps(json.loads(text), indent=2)
    print(text)
    return 0


def _cmd_compact(args) -> int:
    tree = _load_tree(args.infile)
    try:
        dag = compact(tree, args.mode)
    except TreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)
    print(dag.to_json())
    return 0


def _cmd_cbst(args) -> int:
    if args.action == "build":
        tree = _load_tree(args.infile)
        if not isinstance(tree, BinaryTree):
            print("error: cbst build needs a binary tree", file=sys.stderr)
            return 2
        try:
            compacted = cbst.build(tree)
        except TreeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        blob = cbst.to_bytes(compacted)
        if args.out:
            with open(args.out, "wb") as handle:
                handle.write(blob)
            print(json.dumps({"n": compacted.n, "retained": len(compacted),
                              "redirects": len(compacted.redirects),
                              "bytes": len(blob), "out": args.out}))
        else:
            sys.stdout.buffer.write(blob)
        return 0
    compacted = _load_cbst(args.infile)
    if args.action == "search":
        if args.query is None:
            print("error: cbst search needs --query", file=sys.stderr)
            return 2
        out = cbst.search(compacted, args.query)
        print(json.dumps({"found": out.found, "comparisons": out.comparisons,
                          "additions": out.additions}))
        return 0
    # unfold
    try:
        print(serialize(cbst.unfold(compacted)))
    except cbst.CorruptStructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _weight_rows(mode: str, k: int):
    rows = []
    for shape in enumerator.enumerate_shapes(mode, k):
        ws = analytics.weight(shape)
        rows.append((ws.w, signature(shape), ws.ell))
    rows.sort(key=lambda r: (-r[0], r[1]))
    return rows


def _cmd_analyze(args) -> int:
    mode = args.mode
    family = _MODE_FAMILY[mode]
    try:
        if args.what == "weights":
            rows = _weight_rows(mode, args.k)
            total = sum(r[0] for r in rows)
            print(json.dumps({
                "mode": mode, "k": args.k,
                "shapes": [{"signature": sig, "ell": ell, "w": str(w)}
                           for w, sig, ell in rows],
                "weight_sum": str(total)}))
        elif args.what == "series":
            order = args.n if args.n is not None else 20
            groups = []
            seen = set()
            for shape in enumerator.enumerate_shapes(mode, args.k):
                w = analytics.weight(shape).w
                if w in seen:
                    continue
                seen.add(w)
                series = analytics.series_S_t(family, shape, order)
                groups.append({"w": str(w),
                               "coefficients": [str(analytics.as_fraction(c))
                                                for c in series.coeffs]})
            groups.sort(key=lambda g: Fraction(g["w"]))
            t_series = analytics.series_T(family, order)
            print(json.dumps({
                "mode": mode, "k": args.k, "order": order,
                "T": [str(analytics.as_fraction(c)) for c in t_series.coeffs],
                "S_t_by_weight": groups}))
        elif args.what == "roots":
            tol = args.precision or "1e-30"
            rows = []
            for w in sorted({analytics.weight(s).w
                             for s in enumerator.enumerate_shapes(mode, args.k)}):
                if mode == POLYA:
                    res = analytics.g_root_kw(args.k, w, tol)
                    normalized = float(res.epsilon) * args.k / float(w)
                else:
                    res = analytics.u_root(k=args.k, w=w, tol=tol)
                    normalized = (float(res.epsilon) * args.k * args.k
                                  / (2 * float(w)))
                rows.append({"w": str(w), "rho": str(res.rho),
                             "epsilon": str(res.epsilon),
                             "normalized": normalized,
                             "residual": str(res.residual)})
            print(json.dumps({"mode": mode, "k": args.k, "roots": rows}))
    except (enumerator.GuardError, analytics.RootFindingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _verify_oracles(report) -> bool:
    ok = True
    for family, n_hi in (("recursive", 6), ("bst", 6)):
        good = all(analytics.expected_size_series(family, n)
                   == enumerator.expected_size_bruteforce(family, n)
                   for n in range(1, n_hi + 1))
        ok &= report(f"expected size series == brute force ({family}, "
                     f"n<={n_hi})", good)
    for mode in (POLYA, PLANE):
        good = all(analytics.weight(s).ell == enumerator.labelings_bruteforce(s)
                   for k in range(1, 7)
                   for s in enumerator.enumerate_shapes(mode, k))
        ok &= report(f"labeling counts == brute force ({mode}, k<=6)", good)
    good = all(sum(analytics.weight(s).w
                   for s in enumerator.enumerate_shapes(POLYA, k))
               == Fraction(1, k) for k in range(1, 9))
    ok &= report("polya weight sum == 1/k (k<=8)", good)
    good = all(sum(analytics.weight(s).w
                   for s in enumerator.enumerate_shapes(PLANE, k)) == 1
               for k in range(1, 9))
    ok &= report("plane weight sum == 1 (k<=8)", good)
    table = [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 8),
             Fraction(1, 15), Fraction(1, 36), Fraction(1, 63)]
    good = [analytics.max_plane_weight(k) for k in range(1, 8)] == table
    ok &= report("max plane weights k=1..7", good)
    for family in ("recursive", "bst"):
        leaf = analytics.series_S_t(
            family, enumerator.enumerate_shapes(
                POLYA if family == "recursive" else PLANE, 1).__next__(), 50)
        ok &= report(f"leaf shape S_t == 0 ({family})",
                     all(c == 0 for c in leaf.coeffs))
    a = analytics.u_series(k=5, w=analytics.max_plane_weight(5), order=80,
                           method="bessel")
    b = analytics.u_series(k=5, w=analytics.max_plane_weight(5), order=80,
                           method="ode")
    ok &= report("u series: bessel == ode (k=5, order 80)",
                 a.coeffs == b.coeffs)
    return ok


def _verify_lemmas(report) -> bool:
    ok = True
    rows = experiments.run_lemma_sweep(POLYA, range(2, 7))
    ok &= report("polya bound epsilon < 2w/k (k<=6)",
                 all(r[-1] is True for r in rows))
    from .trees import path_shape
    norms = []
    for k in (8, 16):
        ws = analytics.weight(path_shape(POLYA, k))
        res = analytics.g_root_kw(k, ws.w, "1e-35")
        norms.append(float(res.epsilon) * k / float(ws.w))
    ok &= report("polya path epsilon*k/w increasing toward 1 (k=8,16)",
                 norms[0] < norms[1] < 1)
    res = analytics.u_root(k=8, w=analytics.max_plane_weight(8), tol="1e-35")
    norm = float(res.epsilon) * 64 / (2 * float(analytics.max_plane_weight(8)))
    ok &= report("plane max-weight epsilon*k^2/(2w) in [0.7,1.3] (k=8)",
                 0.7 <= norm <= 1.3)
    return ok


def _cmd_verify(args) -> int:
    failures = []

    def report(name: str, good: bool) -> bool:
        print(f"{'ok  ' if good else 'FAIL'}  {name}")
        if not good:
            failures.append(name)
        return good

    if args.suite in ("all", "oracles"):
        _verify_oracles(report)
    if args.suite in ("all", "lemmas"):
        _verify_lemmas(report)
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    print("all checks passed", file=sys.stderr)
    return 0


def _parse_sizes(text: str):
    return [int(part) for part in text.split(",") if part]


def _cmd_experiment(args) -> int:
    seed = _resolve_seed(args.seed)
    os.makedirs(args.out, exist_ok=True)
    if args.kind == "scaling":
        sizes = _parse_sizes(args.sizes) if args.sizes else \
            [1 << p for p in range(10, 15)]
        for family in ("recursive", "bst"):
            records = experiments.run_scaling(family, sizes, args.trials,
                                              seed, jobs=args.jobs)
            path = os.path.join(args.out, f"scaling_{family}.csv")
            experiments.write_csv(path, experiments.SCALING_HEADER, records)
            print(f"wrote {path} ({len(records)} records)", file=sys.stderr)
    elif args.kind == "fig5":
        sizes = _parse_sizes(args.sizes) if args.sizes else None
        records = experiments.run_fig5(sizes, args.trials, seed,
                                       args.queries, jobs=args.jobs)
        path = os.path.join(args.out, "fig5.csv")
        experiments.write_csv(path, experiments.FIG5_HEADER, records)
        print(f"wrote {path} ({len(records)} records)", file=sys.stderr)
    else:  # lemmas
        records = []
        records += experiments.run_lemma_sweep(POLYA, range(2, args.kmax + 1))
        records += experiments.run_lemma_sweep(PLANE, range(2, args.kmax + 1))
        path = os.path.join(args.out, "lemma.csv")
        experiments.write_csv(path, experiments.LEMMA_HEADER, records)
        print(f"wrote {path} ({len(records)} records)", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecompact",
        description="Compaction of random recursive trees and BSTs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a random tree as JSON")
    p.add_argument("--family", choices=("recursive", "bst"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true",
                   help="pretty-print the JSON output")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("compact", help="compact a JSON tree into its shape DAG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", choices=(POLYA, PLANE), required=True)
    p.set_defaults(func=_cmd_compact)

    p = sub.add_parser("cbst", help="compacted BST operations")
    p.add_argument("action", choices=("build", "search", "unfold"))
    p.add_argument("--in", dest="infile", required=True,
                   help="JSON BST, or CBST1 binary for search/unfold")
    p.add_argument("--query", type=int)
    p.add_argument("--out", help="output path for build (binary)")
    p.set_defaults(func=_cmd_cbst)

    p = sub.add_parser("analyze", help="weights, series and singularities")
    p.add_argument("what", choices=("weights", "series", "roots"))
    p.add_argument("--mode", choices=(POLYA, PLANE), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="series truncation order")
    p.add_argument("--precision", help="root residual tolerance, e.g. 1e-30")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", help="run the exact-oracle check suites")
    p.add_argument("suite", choices=("all", "oracles", "lemmas"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", help="batch studies writing CSV")
    p.add_argument("kind", choices=("scaling", "fig5", "lemmas"))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--sizes", help="comma-separated size list")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes; output is independent of it")
    p.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
