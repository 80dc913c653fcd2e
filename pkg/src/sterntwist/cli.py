"""Command-line front end: sequence and series emission, verification
suites, scans, kernel probes, conjecture evidence, pattern counting, and
b-file cross-checks.

Exit codes: 0 all checks pass / output produced; 1 a verification found a
counterexample outside conjectures and flagged typos; 2 usage or input
error.  All numeric output is decimal strings; nothing is ever a float.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .config import DEFAULTS, ORDER_ENV_VAR
from . import ratwords, regularity, verify
from .sequences import stern, twisted, weighted_even, weighted_stern
from .series import (
    carlitz_series,
    psi,
    stern_series,
    twisted_series,
)


# ---------------------------------------------------------------------------
# b-files.
# ---------------------------------------------------------------------------


class BFileFormatError(ValueError):
    pass


@dataclass(frozen=True)
class BFile:
    """Parsed OEIS-style b-file: `index value` lines, strictly increasing
    indices, # comments allowed."""

    oeis_id: str | None
    entries: tuple[tuple[int, int], ...]


def parse_bfile(text: str, oeis_id: str | None = None) -> BFile:
    entries = []
    last = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileFormatError(f"line {lineno}: expected 'index value'")
        try:
            idx = int(parts[0])
            val = int(parts[1])
        except ValueError as exc:
            raise BFileFormatError(f"line {lineno}: {exc}") from None
        if idx < 0:
            raise BFileFormatError(f"line {lineno}: negative index")
        if last is not None and idx <= last:
            raise BFileFormatError(f"line {lineno}: indices must be strictly increasing")
        last = idx
        entries.append((idx, val))
    return BFile(oeis_id, tuple(entries))


#: Per-id comparison defaults: index cap and how a file index maps onto ours.
_OEIS_TARGETS = {
    "A002487": {"limit": 1 << 16, "describe": "Stern values s(n)"},
    "A163659": {"limit": 2048, "describe": "log-derivative series coefficients"},
    "A000123": {"limit": 2048, "describe": "binary partition counts at doubled index"},
}


def _oeis_reference_values(oeis_id: str, max_index: int):
    """index -> expected value, for indices up to max_index."""
    if oeis_id == "A002487":
        return lambda i: stern(i)
    if oeis_id == "A163659":
        coeffs = regularity.h_series(max_index).coeffs
        return lambda i: coeffs[i]
    # A000123: entry n counts partitions of 2n into powers of two, which is
    # our coefficient at index 2n.
    coeffs = regularity.binary_partition_series(2 * max_index).coeffs
    return lambda i: coeffs[2 * i]


# ---------------------------------------------------------------------------
# Output helpers.
# ---------------------------------------------------------------------------


def _emit_reports(reports, fmt: str) -> None:
    if fmt == "json":
        for r in reports:
            print(r.to_json())
    else:
        for r in reports:
            print(r.summary_line())


def _default_order() -> int:
    env = os.environ.get(ORDER_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
            if value >= 0:
                return value
        except ValueError:
            pass
    return DEFAULTS.truncation_order


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _cmd_seq(args) -> int:
    if args.start < 0 or args.end < args.start:
        print("seq: need 0 <= from <= to", file=sys.stderr)
        return 2
    producers = {
        "s": stern,
        "t": twisted,
        "S": weighted_stern,
        "Se": weighted_even,
    }
    produce = producers[args.kind]
    values = [(n, produce(n)) for n in range(args.start, args.end + 1)]
    if args.format == "json":
        if args.kind in ("s", "t"):
            payload = [str(v) for _, v in values]
        else:
            payload = [[str(c) for c in v.coeffs] for _, v in values]
        print(
            json.dumps(
                {
                    "kind": args.kind,
                    "from": args.start,
                    "to": args.end,
                    "values": payload,
                },
                sort_keys=True,
            )
        )
    elif args.format == "csv":
        for n, v in values:
            print(f"{n},{v}")
    else:
        for n, v in values:
            print(f"{n} {v}")
    return 0


def _series_by_name(name: str, order: int, e: int | None):
    if name == "stern":
        return stern_series(order)
    if name == "twisted":
        return twisted_series(order)
    if name == "carlitz":
        return carlitz_series(order)
    if name == "psi":
        if e is None:
            raise ValueError("series psi needs --e")
        poly = psi(e)
        return poly.to_series(poly.degree)
    if name == "H":
        return regularity.h_series(order)
    if name == "C":
        return regularity.c_series(order)
    if name == "u":
        return verify.gen_quotient_series(order)
    if name == "A":
        return verify.ab_quotient_series(order)[0]
    if name == "B":
        return verify.ab_quotient_series(order)[1]
    if name == "binpart":
        return regularity.binary_partition_series(order)
    raise ValueError(f"unknown series {name!r}")


def _cmd_series(args) -> int:
    order = args.order if args.order is not None else _default_order()
    if order < 0:
        print("series: order must be a natural number", file=sys.stderr)
        return 2
    try:
        result = _series_by_name(args.name, order, args.e)
    except ValueError as exc:
        print(f"series: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(
            json.dumps(
                {
                    "name": args.name,
                    "order": result.order,
                    "ring": result.ring.value,
                    "coefficients": result.to_json_coeffs(),
                },
                sort_keys=True,
            )
        )
    else:
        print(result.to_text())
    return 0


def _cmd_verify(args) -> int:
    n_limit = args.max_n if args.max_n is not None else _default_order()
    reports = verify.run_suite(args.suite, args.max_e, n_limit, jobs=args.jobs)
    _emit_reports(reports, args.format)
    return 1 if any(r.blocking for r in reports) else 0


def _cmd_scan(args) -> int:
    if args.identity not in verify.REGISTRY:
        print(f"scan: unknown identity {args.identity!r}", file=sys.stderr)
        return 2
    report = verify.check_identity(args.identity, args.e, verify.SCAN)
    _emit_reports([report], args.format)
    return 0


def _cmd_kernel(args) -> int:
    order = args.order if args.order is not None else _default_order()
    try:
        if args.target == "stern":
            values = [stern(n) for n in range(order)]
        elif args.target == "H":
            values = regularity.h_series(order - 1).coeffs
        elif args.target == "C":
            values = regularity.c_series(order - 1).coeffs
        else:
            values = regularity.binary_partition_series(order - 1).coeffs
        report = regularity.kernel_rank(args.target, values, args.k, args.depth, order)
    except ValueError as exc:
        print(f"kernel: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(report.to_json())
    else:
        ranks = ", ".join(str(r) for r in report.ranks)
        stability = "stable" if report.stable else "UNSTABLE"
        print(
            f"{report.target}: k={report.k} order={report.order} "
            f"ranks by depth [{ranks}] ({stability} against half order)"
        )
    return 0


def _cmd_conjecture(args) -> int:
    order = args.order if args.order is not None else _default_order()
    try:
        if args.which == "gen":
            reports = [verify.check_conjecture_gen(args.max_e, order)]
        else:
            reports = [verify.check_conjecture_ab(args.max_e, order)]
    except ValueError as exc:
        print(f"conjecture: {exc}", file=sys.stderr)
        return 2
    _emit_reports(reports, args.format)
    return 0


def _cmd_count(args) -> int:
    if args.weighted and args.pattern != "admissible":
        print("count: --weighted only applies to the admissible pattern", file=sys.stderr)
        return 2
    if args.pattern == "admissible":
        rep = ratwords.subsequence_transform(
            ratwords.admissible_representation(weighted=args.weighted)
        )
    elif args.pattern == "ones":
        rep = ratwords.subsequence_transform(ratwords.word_indicator((1,), 2))
    else:  # factor11
        rep = ratwords.subfactor_transform(ratwords.word_indicator((1, 1), 2))
    value = ratwords.count_in_expansion(rep, args.n, 2)
    print(str(value))
    return 0


def _cmd_oeis_check(args) -> int:
    target = _OEIS_TARGETS[args.oeis_id]
    limit = args.limit if args.limit is not None else target["limit"]
    try:
        with open(args.bfile, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"oeis-check: {exc}", file=sys.stderr)
        return 2
    try:
        bfile = parse_bfile(text, args.oeis_id)
    except BFileFormatError as exc:
        print(f"oeis-check: {exc}", file=sys.stderr)
        return 2
    usable = [(i, v) for i, v in bfile.entries if i <= limit]
    if not usable:
        print(f"oeis-check: no entries with index <= {limit}", file=sys.stderr)
        return 2
    reference = _oeis_reference_values(args.oeis_id, max(i for i, _ in usable))
    mismatches = [(i, v, reference(i)) for i, v in usable if reference(i) != v]
    checked = len(usable)
    if mismatches:
        i, got, want = mismatches[0]
        print(
            f"{args.oeis_id}: {len(mismatches)}/{checked} mismatches "
            f"(first at index {i}: file {got}, computed {want})"
        )
        return 1
    print(f"{args.oeis_id}: {checked} entries match ({target['describe']})")
    return 0


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sterntwist",
        description="Exact sequences, series and verification sweeps for the "
        "Stern diatomic sequence and its sign-twisted companion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="emit sequence values")
    p.add_argument("--kind", choices=["s", "t", "S", "Se"], required=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("series", help="emit a named series")
    p.add_argument(
        "--name",
        choices=["stern", "twisted", "carlitz", "psi", "H", "C", "u", "A", "B", "binpart"],
        required=True,
    )
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=list(verify.SUITES), default="all")
    p.add_argument("--max-e", dest="max_e", type=int, default=DEFAULTS.max_e)
    p.add_argument("--max-n", dest="max_n", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="scan an identity for its true n-range")
    p.add_argument("--identity", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("kernel", help="probe section ranks of a sequence")
    p.add_argument("--target", choices=["stern", "H", "C", "binpart"], required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("conjecture", help="run a conjecture evidence sweep")
    p.add_argument("--which", choices=["gen", "ab"], required=True)
    p.add_argument("--max-e", dest="max_e", type=int, default=6)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("count", help="count patterns in a binary expansion")
    p.add_argument("--pattern", choices=["admissible", "ones", "factor11"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("oeis-check", help="cross-check a local b-file")
    p.add_argument("--id", dest="oeis_id", choices=sorted(_OEIS_TARGETS), required=True)
    p.add_argument("--bfile", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=_cmd_oeis_check)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
