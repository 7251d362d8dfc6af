"""Command-line front end.

Data goes to stdout (or ``--output``), diagnostics to stderr. ``isocheck``
exits 0 for isomorphic, 1 for non-isomorphic, 2 on error; ``validate`` exits
0 iff the requested strength holds; ``conjecture`` exits 1 on a counterexample.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import secrets
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .design import (
    are_isomorphic_exact,
    check_strength,
    counting_vector,
    enumerate_oas,
    max_strength,
    orbit_size,
    pmf,
    reduce_to_classes,
)
from .io import DesignFormatError, read_design, read_designs, write_design
from .isocheck import SearchMode, classification_experiment, conjecture_scan, iso_check
from .metrics import MatchingMode, d1_wasserstein, d2_wasserstein, diagrams_equal
from .topology import diagram_of

log = logging.getLogger("oaiso")


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    d: int | None = None
    N: int | None = None
    t: int | None = None
    T: list[int] | int | None = None
    seed: int | None = None
    mode: str = MatchingMode.DIAGONAL.value
    output: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _resolve_seed(seed: int | None) -> int:
    if seed is None:
        seed = secrets.randbits(63)
        log.info("no --seed given, using %d", seed)
    return seed


def _emit(args, text: str, default_name: str | None = None) -> None:
    if args.output:
        out = Path(args.output)
        if out.is_dir() and default_name:
            out = out / default_name
        out.write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_validate(args) -> int:
    f = read_design(args.path)
    v = counting_vector(f)
    ok = check_strength(v, args.t)
    report = {"path": args.path, "N": f.N, "d": f.d, "max_strength": max_strength(v), "t": args.t, "pass": ok}
    if args.format == "csv":
        _emit(args, "path,N,d,max_strength,t,pass\n" + ",".join(str(report[k]) for k in report) + "\n")
    else:
        _emit(args, _dumps(report))
    return 0 if ok else 1


def cmd_dgm(args) -> int:
    dgm = diagram_of(read_design(args.path))
    _emit(args, _dumps(dgm.to_json(include_zero=args.include_zero)))
    return 0


def _pair(args):
    f1, f2 = read_design(args.path1), read_design(args.path2)
    if f1.d != f2.d:
        raise ValueError(f"dimension mismatch: {f1.d} vs {f2.d}")
    return f1, f2


def cmd_dist(args) -> int:
    f1, f2 = _pair(args)
    if args.which == "pmf":
        val = d1_wasserstein(pmf(counting_vector(f1)), pmf(counting_vector(f2)))
        out = {"which": "pmf", "value": _frac(val), "value_f": float(val), "exact_zero": val == 0}
    else:
        D1, D2 = diagram_of(f1), diagram_of(f2)
        strict = MatchingMode(args.mode) is MatchingMode.STRICT
        out = {
            "which": "dgm",
            "mode": args.mode,
            "value": d2_wasserstein(D1, D2, args.mode),
            "exact_zero": diagrams_equal(D1, D2, include_zero=strict),
        }
    _emit(args, _dumps(out))
    return 0


def cmd_isocheck(args) -> int:
    f1, f2 = _pair(args)
    seed = _resolve_seed(args.seed)
    verdict = iso_check(f1, f2, args.T, np.random.default_rng(seed), args.search)
    config = RunConfig("isocheck", [args.path1, args.path2], f1.d, f1.N, None, args.T, seed, args.mode, args.output,
                       args.format, {"search": args.search})
    _emit(args, _dumps({"config": asdict(config), "verdict": verdict.to_json()}))
    return 0 if verdict.isomorphic else 1


def cmd_matrix(args) -> int:
    named = read_designs(args.paths)
    if len(named) < 2:
        raise ValueError("need at least two designs")
    dims = {f.d for _, f in named}
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions: {sorted(dims)}")
    names = [n for n, _ in named]
    vs = [counting_vector(f) for _, f in named]
    n = len(vs)
    if args.which == "pmf":
        ps = [pmf(v) for v in vs]
        vals = [[d1_wasserstein(ps[i], ps[j]) for j in range(n)] for i in range(n)]
        cells = [[_frac(x) for x in row] for row in vals]
        zero = [[x == 0 for x in row] for row in vals]
    else:
        dgms = [diagram_of(v) for v in vs]
        strict = MatchingMode(args.mode) is MatchingMode.STRICT
        cells = [[repr(d2_wasserstein(dgms[i], dgms[j], args.mode)) for j in range(n)] for i in range(n)]
        zero = [[diagrams_equal(dgms[i], dgms[j], include_zero=strict) for j in range(n)] for i in range(n)]
    flagged = 0
    if args.expect_distinct:
        for i in range(n):
            for j in range(i + 1, n):
                if zero[i][j] and not are_isomorphic_exact(vs[i], vs[j]):
                    flagged += 1
                    log.warning("%s and %s are not isomorphic but their %s distance is 0", names[i], names[j], args.which)
        log.info("%d non-isomorphic pairs at distance 0", flagged)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + names)
    for name, row in zip(names, cells):
        w.writerow([name] + row)
    _emit(args, buf.getvalue(), f"matrix_{args.which}.csv")
    return 0


def cmd_enumerate(args) -> int:
    arrays = enumerate_oas(args.d, args.N, args.t)
    classes = reduce_to_classes(arrays)
    summary = {
        "d": args.d,
        "N": args.N,
        "t": args.t,
        "n_arrays": len(arrays),
        "n_classes": len(classes),
        "class_sizes": [size for _, size in classes],
        "orbit_sizes": [orbit_size(rep) for rep, _ in classes],
    }
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        items = [rep for rep, _ in classes] if args.classes else arrays
        stem = "class" if args.classes else "oa"
        width = max(2, len(str(len(items) - 1)))
        for k, v in enumerate(items):
            write_design(out / f"{stem}_{k:0{width}d}.txt", v, f"OA N={args.N} d={args.d} t={args.t}")
        summary["written"] = len(items)
    _emit(args, _dumps(summary))
    return 0


def _classes(paths: Sequence[str]):
    named = read_designs(paths)
    vs = [counting_vector(f) for _, f in named]
    names = [n for n, _ in named]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if are_isomorphic_exact(vs[i], vs[j]):
                raise ValueError(f"{names[i]} and {names[j]} are isomorphic; class representatives must be distinct")
    return names, vs


def cmd_experiment(args) -> int:
    names, vs = _classes(args.classes)
    seed = _resolve_seed(args.seed)
    t = args.t
    if t is None and vs:
        t = min(max_strength(v) for v in vs)
    rows, reports = [], []
    for T in args.T:
        report = classification_experiment(vs, args.pairs, T, seed, t)
        config = RunConfig("experiment", list(args.classes), report.d, report.N, t, T, seed, args.mode, args.output,
                           args.format, {"classes": names, "pairs": args.pairs})
        reports.append({"config": asdict(config), "payload": report.payload(), "wall_clock_s": report.wall_clock_s})
        rows.append([T, seed, args.pairs, report.tp, report.fn, report.fp, report.tn, report.errors])
        log.info("T=%d: %d misclassified out of %d", T, report.errors, args.pairs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "seed", "n_pairs", "tp", "fn", "fp", "tn", "errors"])
    w.writerows(rows)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for T, rep in zip(args.T, reports):
            (out / f"report_T{T}.json").write_text(_dumps(rep))
        (out / "confusion.csv").write_text(buf.getvalue())
    elif args.format == "csv":
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_dumps(reports))
    return 0


def cmd_conjecture(args) -> int:
    names, vs = _classes(args.classes)
    report = conjecture_scan(vs, args.mode)
    report["names"] = names
    _emit(args, _dumps(report))
    if report["counterexamples"]:
        for i, j in report["counterexamples"]:
            print(f"CONJECTURE COUNTEREXAMPLE: {names[i]} and {names[j]} have identical diagrams", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (generated and recorded if omitted)")
    common.add_argument("--mode", choices=[m.value for m in MatchingMode], default="diagonal",
                        help="diagram matching: diagonal-augmented or strict bijection")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", "-o", default=None, help="output file (or directory for experiment)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="oaiso", description="Isomorphism checks for 2-level orthogonal arrays via persistence diagrams.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the strength of a design")
    p.add_argument("path")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dgm", parents=[common], help="persistence diagram of a design as JSON")
    p.add_argument("path")
    p.add_argument("--include-zero", action="store_true", help="also list zero-persistence pairs")
    p.set_defaults(func=cmd_dgm)

    p = sub.add_parser("dist", parents=[common], help="distance between two designs")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--which", choices=["pmf", "dgm"], default="dgm")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("isocheck", parents=[common], help="randomized or exhaustive isomorphism test")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--T", type=int, default=150, help="iterations in random search")
    p.add_argument("--search", choices=[m.value for m in SearchMode], default="random")
    p.set_defaults(func=cmd_isocheck)

    p = sub.add_parser("matrix", parents=[common], help="pairwise distance matrix as CSV")
    p.add_argument("paths", nargs="+", help="design files or directories")
    p.add_argument("--which", choices=["pmf", "dgm"], default="dgm")
    p.add_argument("--expect-distinct", action="store_true",
                   help="flag zero distances between non-isomorphic designs")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate small orthogonal arrays")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--classes", action="store_true", help="write one canonical representative per class")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("experiment", parents=[common], help="classification experiment against the exact oracle")
    p.add_argument("classes", nargs="+", help="class representative files or directories")
    p.add_argument("--pairs", type=int, default=500)
    p.add_argument("--T", type=int, nargs="+", default=[75, 150])
    p.add_argument("--t", type=int, default=None, help="strength recorded in the report")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("conjecture", parents=[common], help="pairwise diagram scan of class representatives")
    p.add_argument("classes", nargs="+")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except (DesignFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
