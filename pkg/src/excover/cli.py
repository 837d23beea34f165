"""Command-line interface.

stdout carries only machine-readable payload (systems, catalogs, reports);
progress and summaries go to stderr so output can be piped, e.g. into
`excover catalog diff`.

Exit codes: 0 success / valid / empty diff; 1 invalid system, nonempty diff
or infeasible multiset; 2 usage or parse error; 3 resource cap exceeded
(overflow or lcm cap).  The environment variable ECS_LCM_CAP overrides the
default lcm cap.
"""

from __future__ import annotations

import argparse
import os
import sys

from .arith import CapExceeded
from .catalog import diff, format_compact, format_json, golden, parse_json
from .search import (
    DEFAULT_LCM_CAP,
    INFEASIBLE,
    UNDECIDED,
    SearchConfig,
    residue_witness,
    run_search,
)
from .systems import (
    double_system,
    format_system,
    first_common,
    parse_moduli,
    parse_system,
    trivial_power_system,
    verify,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _lcm_cap() -> int:
    value = os.environ.get("ECS_LCM_CAP")
    if value is None:
        return DEFAULT_LCM_CAP
    try:
        cap = int(value)
        if cap < 1:
            raise ValueError
    except ValueError:
        raise SystemExit(EXIT_USAGE)
    return cap


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        r_min=args.r_min,
        r_max=args.r_max,
        max_modulus=args.max_modulus,
        min_modulus=args.min_modulus,
        lcm_cap=_lcm_cap(),
        enable_nz_prune=args.nz_prune,
        jobs=args.jobs,
        checkpoint_path=args.checkpoint,
    )
    cat = run_search(cfg)
    if args.format == "json":
        sys.stdout.write(format_json(cat))
    else:
        sys.stdout.write(format_compact(cat))
    counts = " ".join(f"{r}:{n}" for r, n in sorted(cat.counts().items()))
    print(f"counts {counts}", file=sys.stderr)
    if cat.undecided:
        print(f"undecided {len(cat.undecided)} profiles", file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        system = parse_system(args.system)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = verify(system)
    if report.valid:
        print(f"VALID density {report.density}")
        return EXIT_OK
    detail = f"INVALID density {report.density}"
    if report.first_conflict is not None:
        i, j = report.first_conflict
        ci, cj = system.classes[i], system.classes[j]
        detail += f" conflict ({ci}) with ({cj}) at {first_common(ci, cj)}"
    print(detail)
    return EXIT_INVALID


def _cmd_witness(args) -> int:
    try:
        moduli = parse_moduli(args.moduli)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = residue_witness(moduli, lcm_cap=_lcm_cap())
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if result is INFEASIBLE:
        print("INFEASIBLE")
        return EXIT_INVALID
    if result is UNDECIDED:
        print("UNDECIDED")
        return EXIT_CAP
    print(format_system(result))
    return EXIT_OK


def _cmd_trivial(args) -> int:
    if args.r < 1:
        print("r must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    system = trivial_power_system(args.r)
    if not verify(system).valid:
        raise AssertionError("construction failed verification")
    print(format_system(system))
    return EXIT_OK


def _cmd_double(args) -> int:
    try:
        system = parse_system(args.system)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not verify(system).valid:
        print("input is not a valid covering system", file=sys.stderr)
        return EXIT_INVALID
    doubled = double_system(system)
    if not verify(doubled).valid:
        raise AssertionError("construction failed verification")
    print(format_system(doubled))
    return EXIT_OK


def _cmd_catalog(args) -> int:
    gold = golden()
    if args.catalog_cmd == "show":
        if args.r is not None:
            if args.r not in gold.results:
                print(f"no catalog data for r={args.r}", file=sys.stderr)
                return EXIT_USAGE
            from .search import Catalog

            sub = Catalog(
                results={args.r: gold.results[args.r]},
                config=gold.config,
                undecided=[],
            )
            sys.stdout.write(format_compact(sub))
        else:
            sys.stdout.write(format_compact(gold))
        return EXIT_OK
    # diff
    try:
        if args.run_json == "-":
            text = sys.stdin.read()
        else:
            with open(args.run_json, "r", encoding="utf-8") as fh:
                text = fh.read()
        run_cat = parse_json(text)
    except (OSError, ValueError) as exc:
        print(f"cannot read run catalog: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = diff(run_cat, gold)
    if report.empty:
        print("identical")
        return EXIT_OK
    for p in report.missing:
        mods = ",".join(str(d) for d in p.base + (p.top,))
        print(f"missing r={p.repeats}: {mods}")
    for p in report.extra:
        mods = ",".join(str(d) for d in p.base + (p.top,))
        print(f"extra r={p.repeats}: {mods}")
    return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excover",
        description="Search and verify exact covering systems whose moduli "
        "are distinct except the largest, repeated r times.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("search", help="run the catalog search")
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=int, default=32)
    p.add_argument("--max-modulus", type=int, default=450)
    p.add_argument("--min-modulus", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--format", choices=("compact", "json"), default="compact")
    p.add_argument("--nz-prune", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", help="verify a system given as 'A mod M, ...'")
    p.add_argument("system")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("witness", help="find residues for a moduli multiset like '3 6^4'")
    p.add_argument("moduli")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("trivial", help="emit the power-of-two tower for r")
    p.add_argument("r", type=int)
    p.set_defaults(func=_cmd_trivial)

    p = sub.add_parser("double", help="double a system and prepend 0 mod 2")
    p.add_argument("system")
    p.set_defaults(func=_cmd_double)

    p = sub.add_parser("catalog", help="reference catalog tools")
    csub = p.add_subparsers(dest="catalog_cmd", required=True)
    ps = csub.add_parser("show", help="print reference catalog entries")
    ps.add_argument("--r", type=int, default=None)
    ps.set_defaults(func=_cmd_catalog)
    pd = csub.add_parser("diff", help="diff a JSON run catalog against the reference")
    pd.add_argument("run_json")
    pd.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (CapExceeded, OverflowError) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
