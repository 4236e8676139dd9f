"""Command-line front end: ``glq <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 budget, refinement or guard limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import InvalidParameter, RefinementExhausted
from .gflinear import DEFAULT_BUDGET, BudgetExceeded, prime_power
from .measure import (SIGNED, STANDARD, MeasureParams, SizeLimitExceeded,
                      measure_value, normalized_weight, path_sum)
from .oracle import (FIXED_DIM, NILPOTENT_RANK, STATISTICS, UNIPOTENT_PARTITION,
                     CacheError, cache_path, census, compare, default_cache_dir,
                     fixed_dim_of_unipotents, read_cache_file, table_to_json)
from .partition import MalformedTableau, Partition, enumerate_partitions
from .qseries import TruncationExceeded, verify_identity
from .sampler import GuardExceeded, SamplerConfig, sample_parallel
from .theorems import (GL, GroupSpec, lusztig_nilpotent,
                       lusztig_unitary_unipotent, p_gl_n, p_u_n, rr_check,
                       unipotent_class_count, unipotent_count)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

SERIES_IDENTITIES = {"sizegen": "sizegen", "sizegen-signed": "sizegen-signed",
                     "interp": "interp", "hw": "hw", "stong": "stong",
                     "prodgl": "prodgl-specialized", "produn": "produn-specialized"}
IDENTITY_CHOICES = sorted(SERIES_IDENTITIES) + ["weight-dp", "rr"]


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """Exact rational from "3/2", "0.5" or "1e-9"."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _prime_power_int(text: str) -> int:
    try:
        q = int(text)
        prime_power(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be a prime power, got {text!r}")
    return q


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _params(args, mode: str = STANDARD) -> MeasureParams:
    try:
        return MeasureParams(args.u, args.q, mode)
    except InvalidParameter as exc:
        raise UsageError(str(exc))


def _spec(args) -> GroupSpec:
    return GroupSpec(args.group.upper(), args.n, args.q)


def cmd_sample(args, out) -> int:
    cfg = SamplerConfig(_params(args), args.seed, args.stream_id, args.max_size_guard)
    records = sample_parallel(cfg, args.count, args.workers)
    if args.format == "jsonl":
        for rec in records:
            out.write(rec.to_jsonl() + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "partition", "size", "k", "h"])
        for i, rec in enumerate(records):
            j = rec.to_json()
            w.writerow([i, str(rec.partition), j["size"], j["k"],
                        " ".join(map(str, j["h"]))])
    return EXIT_OK


def cmd_measure(args, out) -> int:
    params = _params(args, args.mode)
    try:
        lam = Partition.parse(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc))
    w = normalized_weight(lam, params)
    enc = measure_value(lam, params, args.eps)
    out.write(json.dumps({"partition": str(lam), "mode": params.mode,
                          "u": _frac_str(params.u), "q": _frac_str(params.q),
                          "weight": _frac_str(w), "measure": str(enc),
                          "width": _frac_str(enc.width)}) + "\n")
    return EXIT_OK


def _weight_dp_report(args) -> dict:
    modes = [STANDARD, SIGNED] if args.mode == "both" else [args.mode]
    bad = []
    checked = 0
    for mode in modes:
        params = _params(args, mode)
        for lam in enumerate_partitions(args.max_size):
            checked += 1
            if path_sum(lam, params) != normalized_weight(lam, params):
                bad.append({"mode": mode, "partition": str(lam)})
    return {"identity": "weight-dp", "q": _frac_str(args.q), "u": _frac_str(args.u),
            "max_size": args.max_size, "checked": checked,
            "mismatches": bad, "pass": not bad}


def cmd_verify(args, out) -> int:
    name = args.identity
    if name in SERIES_IDENTITIES:
        if name in ("interp", "hw") and args.k is None:
            raise UsageError(f"--identity {name} needs --k")
        report = verify_identity(SERIES_IDENTITIES[name], args.q, args.D, args.k).to_json()
    elif name == "weight-dp":
        report = _weight_dp_report(args)
    else:
        k = 2 if args.k is None else args.k
        report = rr_check(k, args.q, args.B, args.eps).to_json()
    out.write(json.dumps(report) + "\n")
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def _closed_form_rows(spec: GroupSpec, what: str) -> list[tuple[object, Fraction]]:
    n, q = spec.n, spec.q
    if what == "fixed-space":
        p = p_gl_n if spec.kind == GL else p_u_n
        return [(k, p(k, n, q)) for k in range(n + 1)]
    if what == "unipotent":
        if spec.kind == GL:
            by_k = {k: 0 for k in range(n + 1)}
            for lam in enumerate_partitions(n, size=n):
                by_k[len(lam)] += unipotent_class_count(lam, n, q, GL)
            rows = sorted(by_k.items())
        else:
            rows = [(k, lusztig_unitary_unipotent(n, k, q)) for k in range(n + 1)]
        rows.append(("total", unipotent_count(spec)))
        return [(k, Fraction(v)) for k, v in rows]
    if what == "nilpotent-rank":
        if spec.kind != GL:
            raise UsageError("nilpotent-rank is defined for --group gl only")
        if n == 0:
            return [(0, Fraction(1))]
        # keyed by rank r = n - k
        return [(n - k, Fraction(lusztig_nilpotent(n, k, q))) for k in range(n, -1, -1)]
    raise UsageError(f"unknown --what {what!r}")


def _oracle_check(spec: GroupSpec, what: str, rows, args) -> dict:
    expected = dict(rows)
    cache_dir = args.cache_dir
    if what == "fixed-space":
        table = census(spec, FIXED_DIM, args.budget, args.workers, cache_dir=cache_dir)
        rep = compare(table, {k: spec.order * v for k, v in expected.items()})
    elif what == "unipotent":
        table = census(spec, UNIPOTENT_PARTITION, args.budget, args.workers,
                       cache_dir=cache_dir)
        counts = fixed_dim_of_unipotents(table)
        counts["total"] = table.total
        rep = compare(table, expected, keys=list(expected), counts=counts)
    else:
        table = census(spec, NILPOTENT_RANK, args.budget, args.workers,
                       cache_dir=cache_dir)
        rep = compare(table, expected)
    return rep.to_json()


def cmd_count(args, out) -> int:
    spec = _spec(args)
    rows = _closed_form_rows(spec, args.what)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["kind", "n", "q", "k", "value_num", "value_den"])
    for k, v in rows:
        w.writerow([spec.kind, spec.n, spec.q, k, v.numerator, v.denominator])
    if not args.oracle:
        return EXIT_OK
    report = _oracle_check(spec, args.what, rows, args)
    status = "verified" if report["pass"] else "MISMATCH"
    sys.stderr.write(f"oracle: {status} {json.dumps(report)}\n")
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def _predictor(spec: GroupSpec, statistic: str):
    n, q = spec.n, spec.q
    if statistic == FIXED_DIM:
        p = p_gl_n if spec.kind == GL else p_u_n
        return {k: spec.order * p(k, n, q) for k in range(n + 1)}
    if statistic == UNIPOTENT_PARTITION:
        return {lam: unipotent_class_count(lam, n, q, spec.kind)
                for lam in enumerate_partitions(n, size=n)}
    if n == 0:
        return {0: 1}
    return {n - k: lusztig_nilpotent(n, k, q) for k in range(n + 1)}


def cmd_oracle(args, out) -> int:
    spec = _spec(args)
    if args.statistic == NILPOTENT_RANK and spec.kind != GL:
        raise UsageError("nilpotent_rank census needs --group gl")
    table = census(spec, args.statistic, args.budget, args.workers,
                   cache_dir=args.cache_dir)
    report = compare(table, _predictor(spec, args.statistic)).to_json()
    report["provenance"] = table.provenance
    report["total"] = table.total
    report["counts"] = json.loads(table_to_json(table))["counts"]
    out.write(json.dumps(report) + "\n")
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def cmd_cache(args, out) -> int:
    cache_dir = args.cache_dir or default_cache_dir()
    if args.action == "path":
        out.write(f"{cache_dir}\n")
        return EXIT_OK
    if args.action == "list":
        if cache_dir.exists():
            for p in sorted(cache_dir.glob("*.csv")):
                out.write(f"{p}\n")
        return EXIT_OK
    if args.action == "build":
        spec = _spec(args)
        table = census(spec, args.statistic, args.budget, args.workers,
                       cache_dir=cache_dir)
        out.write(f"{cache_path(spec, args.statistic, cache_dir)} "
                  f"({table.provenance}, total {table.total})\n")
        return EXIT_OK
    # show / verify a file
    if args.file is None:
        raise UsageError(f"cache {args.action} needs a file path")
    table = read_cache_file(args.file)
    if args.action == "show":
        out.write(table_to_json(table) + "\n")
        return EXIT_OK
    report = compare(table, _predictor(table.spec, table.statistic)).to_json()
    out.write(json.dumps(report) + "\n")
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def _add_params(p, group: bool = False):
    if group:
        p.add_argument("--group", choices=["gl", "u", "GL", "U"], required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=_prime_power_int, required=True)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache-dir", type=_path, default=None)
    else:
        p.add_argument("--q", type=rational, required=True)
        p.add_argument("--u", type=rational, default=Fraction(1))


def _path(text: str):
    from pathlib import Path
    return Path(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glq", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw partitions with the tableau algorithm")
    _add_params(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream-id", type=int, default=0)
    p.add_argument("--max-size-guard", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("measure", help="exact weight and enclosure of M(lam)")
    _add_params(p)
    p.add_argument("--partition", required=True, help='e.g. "3,1,1"; "-" for empty')
    p.add_argument("--mode", choices=[STANDARD, SIGNED], default=STANDARD)
    p.add_argument("--eps", type=rational, default=Fraction(1, 10**9))
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", help="check an identity exactly")
    _add_params(p)
    p.add_argument("--identity", choices=IDENTITY_CHOICES, required=True)
    p.add_argument("--D", type=int, default=12)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--B", type=int, default=40)
    p.add_argument("--eps", type=rational, default=Fraction(1, 10**6))
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--mode", choices=[STANDARD, SIGNED, "both"], default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="closed-form counts, optionally checked by census")
    _add_params(p, group=True)
    p.add_argument("--what", choices=["unipotent", "fixed-space", "nilpotent-rank"],
                   required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="exhaustive census compared to the closed form")
    _add_params(p, group=True)
    p.add_argument("--statistic", choices=STATISTICS, default=FIXED_DIM)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("cache", help="inspect or build cached census tables")
    p.add_argument("action", choices=["path", "list", "build", "show", "verify"])
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--group", choices=["gl", "u", "GL", "U"])
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=_prime_power_int)
    p.add_argument("--statistic", choices=STATISTICS, default=FIXED_DIM)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache-dir", type=_path, default=None)
    p.set_defaults(func=cmd_cache)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "cache" and args.action == "build" and None in (args.group, args.n, args.q):
        sys.stderr.write("glq: cache build needs --group, --n and --q\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, InvalidParameter, MalformedTableau, SizeLimitExceeded) as exc:
        sys.stderr.write(f"glq: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, RefinementExhausted, GuardExceeded, TruncationExceeded) as exc:
        sys.stderr.write(f"glq: limit exceeded: {exc}\n")
        return EXIT_LIMIT
    except CacheError as exc:
        sys.stderr.write(f"glq: cache error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"glq: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
