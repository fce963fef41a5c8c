"""Command line front end.

Exit codes: 0 success, 1 a verification reported failures, 2 invalid
(or too large) input, 3 a resource cap was hit, 4 the cone did not stabilize.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from hfroots.errors import CapExceeded, InvalidInput, StabilizationError
from hfroots.seifert import DEFAULT_ENUMERATION_CAP, SeifertParams, n0, solve_diophantine

CACHE_ENV = "HFROOTS_CACHE_DIR"


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _params(values: list[int]) -> SeifertParams:
    return SeifertParams.of(*values)


def cmd_solve(args) -> int:
    params = _params(args.p)
    sol = solve_diophantine(params)
    print(_dump({"e0": sol.e0, "pprime": list(sol.pprime), "N0": n0(params)}))
    return 0


def cmd_root(args) -> int:
    from hfroots.roots import h_red, root_for

    params = _params(args.p)
    root = root_for(params, cap=args.cap)
    summary = h_red(root)
    if args.dot:
        Path(args.dot).write_text(root.to_dot())
    print(
        _dump(
            {
                "params": list(params.p),
                "hf_red_rank_by_grading": {str(g): r for g, r in summary.rank_by_grading.items()},
                "rank": summary.rank,
                "u_order": summary.u_order,
            }
        )
    )
    return 0


def cmd_obstruct(args) -> int:
    from hfroots.obstruction.bounds import ObstructionQuery, obstruct

    params = _params(args.p)
    verdict = obstruct(ObstructionQuery(args.genus, params, args.g4), cap=args.cap)
    record = {"params": list(params.p), "genus": args.genus, "g4": args.g4 if args.g4 is not None else args.genus}
    record.update(verdict.to_record())
    print(_dump(record))
    return 0


def cmd_verify_tables(args) -> int:
    from hfroots.obstruction.catalog import TABLE_IDS
    from hfroots.obstruction.verify import verify_tables

    tables = args.table or None
    if tables and any(t not in TABLE_IDS for t in tables):
        raise InvalidInput(f"unknown table id(s); choose from {list(TABLE_IDS)}")
    reports = verify_tables(tables, n=args.samples, seed=args.seed)
    for r in reports:
        rec = r.to_record()
        rec["seed"] = args.seed
        print(_dump(rec))
    status = {}
    for r in reports:
        status[r.status] = status.get(r.status, 0) + 1
    print(_dump({"summary": dict(sorted(status.items())), "rows": len(reports), "seed": args.seed}))
    return 0 if all(r.ok for r in reports) else 1


def cmd_scan(args) -> int:
    from hfroots.obstruction.scan import dumps, scan_families

    records = scan_families(args.max_product, args.fibers, args.threads)
    text = "".join(dumps(r) + "\n" for r in records)
    out = args.output
    if out is None and os.environ.get(CACHE_ENV):
        out = Path(os.environ[CACHE_ENV]) / f"scan-l{args.fibers}-max{args.max_product}.jsonl"
        out.parent.mkdir(parents=True, exist_ok=True)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        bad = sum(r["verdict"] != "ok" for r in records)
        print(_dump({"tuples": len(records), "failures": bad, "output": str(out)}))
    return 0 if all(r["verdict"] == "ok" for r in records) else 1


def _slope(text: str) -> Fraction:
    try:
        s = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"cannot parse slope {text!r}") from None
    if s == 0:
        raise InvalidInput("slope 0 does not give a homology sphere")
    return s


def cmd_surgery(args) -> int:
    from hfroots.cone.cone import build_truncated_cone, surgery_homology
    from hfroots.cone.knot import load_input

    s = _slope(args.slope)
    if s.numerator not in (1, -1):
        raise InvalidInput("only slopes 1/n and -1/n (integral homology spheres) are exposed here")
    record = {"slope": args.slope}
    if s < 0:
        if not args.mirror:
            raise InvalidInput("negative slopes need --mirror: S^3_{-1/n}(K) = -S^3_{1/n}(mirror K)")
        knot = load_input(args.mirror)
        record["computed_on"] = "mirror, slope reversed; HF_red reported up to orientation"
    else:
        knot = load_input(args.input)
    cone = build_truncated_cone(knot, 1, abs(s.denominator))
    h = surgery_homology(cone, ceiling=args.ceiling)
    result = {"red_rank": h.red_rank, "u_order": h.u_order}
    if s > 0:
        result.update({k: v for k, v in h.to_record().items() if k not in result})
    result.update(record)
    print(_dump(result))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="Diophantine data (e0, p') and N0 of a Seifert tuple")
    p.add_argument("p", type=int, nargs="+")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("root", help="graded root and HF_red summary")
    p.add_argument("p", type=int, nargs="+")
    p.add_argument("--dot", help="write the truncated root as Graphviz DOT to this path")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="enumeration cap on N0")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("obstruct", help="can surgery on a genus-g knot give this manifold?")
    p.add_argument("p", type=int, nargs="+")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--g4", type=int, default=None, help="four-ball genus (default: the genus)")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="enumeration cap on N0")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("verify-tables", help="check the residue-class probe tables on sampled (p, q)")
    p.add_argument("--table", type=int, action="append", help="table id (repeatable; default all)")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("scan", help="sweep all tuples with bounded product")
    p.add_argument("--fibers", type=int, required=True)
    p.add_argument("--max-product", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", type=Path, help=f"write records here (default: ${CACHE_ENV} or stdout)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("surgery", help="HF of 1/n surgery from knot Floer input")
    p.add_argument("--input", help="knot input JSON")
    p.add_argument("--mirror", help="input for the mirror knot (needed for negative slopes)")
    p.add_argument("--slope", required=True, help="1/n, or -1/n written as --slope=-1/n")
    p.add_argument("--ceiling", type=int, default=None, help="initial tower ceiling (twice-levels)")
    p.set_defaults(func=cmd_surgery)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "surgery" and args.input is None and not args.slope.startswith("-"):
        parser.error("surgery needs --input")
    try:
        return args.func(args)
    except (InvalidInput, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
