"""stirlab command-line interface.

Usage::

    stirlab compute fubini --from 1 --to 10
    stirlab compute assoc-bell --m 4 --from 1 --to 11 --format csv
    stirlab table restricted-stirling2 --m 3 --n-max 8
    stirlab verify --all --n-max 500
    stirlab verify fubini_period4_mod10 --n-max 100 --format json
    stirlab detect assoc-fubini --m 2 --mod 10 --n-max 300 --max-period 60
    stirlab oracle triangles --n-max 10
    stirlab families list | formulas list | claims list

Exit codes: 0 success, 1 a verification or audit failed, 2 bad arguments or
unknown id, 3 a table cap or enumeration guard was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from . import __version__
from .audit import audit_sequences, audit_triangles
from .cache import RowCache
from .closed_forms import check_form, eval_closed_form, list_forms
from .congruences import detect_period, get_claim, list_claims, verify_claim
from .errors import CapExceededError, StirlabError
from .oracle import PARTITION_GUARD, PERMUTATION_GUARD
from .sequences import FAMILY_DESCRIPTIONS, Family, FamilySpec, sequence_values, weighted_row_sum
from .triangles import TriangleKind, get_triangle

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SEQUENCE_SCHEMA = "stirlab.sequence/1"
TRIANGLE_SCHEMA = "stirlab.triangle/1"

TRIANGLES = {
    "stirling2": (TriangleKind.stirling2, None),
    "stirling1": (TriangleKind.stirling1, None),
    "r-stirling2": (TriangleKind.r_stirling2, "r"),
    "restricted-stirling2": (TriangleKind.restricted2, "m"),
    "restricted-stirling1": (TriangleKind.restricted1, "m"),
    "assoc-stirling2": (TriangleKind.associated2, "m"),
}


class UsageError(StirlabError):
    pass


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _param(args, name: Optional[str], what: str) -> Optional[int]:
    if name is None:
        for other in ("m", "r"):
            if getattr(args, other, None) is not None:
                raise UsageError(f"{what} takes no --{other}")
        return None
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"{what} requires --{name}")
    other = "r" if name == "m" else "m"
    if getattr(args, other, None) is not None:
        raise UsageError(f"{what} takes --{name}, not --{other}")
    return val


def _family_spec(args) -> FamilySpec:
    try:
        fam = Family(args.family)
    except ValueError:
        raise UsageError(f"unknown family {args.family!r}; see 'stirlab families list'") from None
    return FamilySpec(fam, _param(args, fam.param_name, fam.value))


def _triangle(spec_kind: TriangleKind, cache: Optional[RowCache]):
    tri = get_triangle(spec_kind)
    if cache is not None:
        cache.warm(tri)
    return tri


def _index_range(args) -> range:
    if args.n is not None:
        if args.start is not None or args.stop is not None:
            raise UsageError("use either --n or --from/--to")
        return range(args.n, args.n + 1)
    if args.start is None or args.stop is None:
        raise UsageError("give --n, or both --from and --to")
    if args.stop < args.start:
        raise UsageError("--to must be >= --from")
    return range(args.start, args.stop + 1)


# commands ----------------------------------------------------------------


def cmd_compute(args, cache) -> int:
    spec = _family_spec(args)
    idx = _index_range(args)
    if idx.start < 0:
        raise UsageError("indices must be >= 0")
    if args.method == "triangle-memo":
        tri = _triangle(spec.triangle_kind, cache)
        values = [weighted_row_sum(spec, tri.row(n + spec.shift)) for n in idx]
        if cache is not None:
            cache.save(tri)
    else:
        values = sequence_values(spec, idx.stop - 1, method=args.method)[idx.start :]

    if args.format == "json":
        _emit_json(
            {
                "schema": SEQUENCE_SCHEMA,
                "family": spec.family.value,
                "params": spec.params(),
                "start": idx.start,
                "values": [str(v) for v in values],
            }
        )
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in zip(idx, values):
            w.writerow([n, v])
    else:
        for v in values:
            print(v)
    return EXIT_OK


def cmd_table(args, cache) -> int:
    try:
        make, pname = TRIANGLES[args.triangle]
    except KeyError:
        raise UsageError(f"unknown triangle {args.triangle!r}; choose from {', '.join(TRIANGLES)}") from None
    p = _param(args, pname, args.triangle)
    kind = make() if pname is None else make(p)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    tri = _triangle(kind, cache)
    rows = [tri.row(n) for n in range(args.n_max + 1)]
    if cache is not None:
        cache.save(tri)
    if args.format == "json":
        _emit_json({"schema": TRIANGLE_SCHEMA, "triangle": kind.key, "rows": [[str(v) for v in r] for r in rows]})
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "k", "value"])
        for n, r in enumerate(rows):
            for k, v in enumerate(r):
                w.writerow([n, k, v])
    else:
        for r in rows:
            print(" ".join(map(str, r)))
    return EXIT_OK


def _verify_filters(args) -> dict:
    return {k: getattr(args, k) for k in ("m", "r", "p") if getattr(args, k) is not None}


def cmd_verify(args, cache) -> int:
    if args.all == bool(args.claim):
        raise UsageError("give a claim id or --all")
    ids = [c.id for c in list_claims()] if args.all else [get_claim(args.claim).id]
    filters = _verify_filters(args)
    if args.all and filters:
        raise UsageError("parameter filters apply to a single claim")
    reports = [verify_claim(cid, args.n_max, **filters) for cid in ids]
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit_json(reports[0].to_dict() if len(reports) == 1 and not args.all else [r.to_dict() for r in reports])
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["claim", "group", "n_max", "result", "counterexamples"])
        for r in reports:
            w.writerow([r.claim.id, r.claim.group, r.n_max, "pass" if r.passed else "fail", len(r.counterexamples)])
    else:
        for r in reports:
            tag = "PASS" if r.passed else "FAIL"
            print(f"{tag}  {r.claim.id:<28} {r.claim.group:<36} n <= {r.n_max}")
            for ce in r.counterexamples[:20]:
                print(f"      counterexample {ce}")
            if len(r.counterexamples) > 20:
                print(f"      ... {len(r.counterexamples) - 20} more")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_detect(args, cache) -> int:
    spec = _family_spec(args)
    rep = detect_period(spec, args.mod, args.n_max, args.max_period, args.max_preperiod)
    if args.format == "json":
        _emit_json(rep.to_dict())
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["family", "params", "modulus", "found", "preperiod", "period", "verified_up_to"])
        w.writerow([spec.family.value, json.dumps(spec.params()), rep.modulus, rep.found,
                    "" if rep.preperiod is None else rep.preperiod,
                    "" if rep.period is None else rep.period, rep.verified_up_to])
    else:
        if rep.found:
            print(f"{spec} mod {rep.modulus}: period {rep.period}, preperiod {rep.preperiod} "
                  f"(verified on 0..{rep.verified_up_to})")
        else:
            print(f"{spec} mod {rep.modulus}: none found <= period {rep.max_period}, "
                  f"preperiod {rep.max_preperiod} (window 0..{rep.verified_up_to})")
    return EXIT_OK


def cmd_oracle(args, cache) -> int:
    run = audit_triangles if args.check == "triangles" else audit_sequences
    cases = run(args.n_max, args.perm_n_max)
    bad = [c for c in cases if not c.ok]
    if args.format == "json":
        _emit_json({"schema": "stirlab.audit/1", "check": args.check, "cases": len(cases),
                    "result": "pass" if not bad else "fail", "failures": [c.to_dict() for c in bad]})
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["case", "n", "ok"])
        for c in cases:
            w.writerow([c.name, c.n, c.ok])
    else:
        for c in bad:
            print(f"FAIL  {c.name} n={c.n}: oracle {c.expected} engine {c.got}")
        print(f"{'PASS' if not bad else 'FAIL'}  oracle {args.check}: {len(cases) - len(bad)}/{len(cases)} cases agree")
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_families(args, cache) -> int:
    rows = [(f.value, f.param_name or "", FAMILY_DESCRIPTIONS[f]) for f in Family]
    if args.format == "json":
        _emit_json([{"family": a, "param": b or None, "description": c} for a, b, c in rows])
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["family", "param", "description"])
        w.writerows(rows)
    else:
        for a, b, c in rows:
            print(f"{a:<22} {('--' + b) if b else '':<5} {c}")
        print()
        print("triangles (stirlab table): " + ", ".join(TRIANGLES))
    return EXIT_OK


def cmd_formulas(args, cache) -> int:
    forms = list_forms()
    if args.action == "eval":
        if not args.id or args.n is None:
            raise UsageError("formulas eval needs an id and --n")
        params = {k: getattr(args, k) for k in ("m", "r") if getattr(args, k) is not None}
        print(eval_closed_form(args.id, args.n, **params))
        return EXIT_OK
    if args.action == "check":
        bad_any = False
        for f in forms:
            bad = check_form(f, args.upto)
            if f.quarantine:
                tag = "QUARANTINED"
            else:
                tag = "PASS" if not bad else "FAIL"
                bad_any |= bool(bad)
            print(f"{tag:<11}  {f.id:<18} mismatches={len(bad)}")
        return EXIT_FAIL if bad_any else EXIT_OK
    if args.format == "json":
        _emit_json([f.to_dict() for f in forms])
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["id", "target", "formula", "validity", "quarantine"])
        for f in forms:
            w.writerow([f.id, f.target, f.formula, f.threshold_note, f.quarantine or ""])
    else:
        for f in forms:
            q = "  [quarantined]" if f.quarantine else ""
            print(f"{f.id:<18} {f.target:<14} = {f.formula}   ({f.threshold_note}){q}")
    return EXIT_OK


def cmd_claims(args, cache) -> int:
    claims = list_claims()
    if args.format == "json":
        _emit_json([c.to_dict() for c in claims])
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["id", "group", "status", "statement", "parameters"])
        for c in claims:
            w.writerow([c.id, c.group, c.status.value, c.statement, json.dumps(c.ranges)])
    else:
        for c in claims:
            rng = "; ".join(f"{k}: {v}" for k, v in c.ranges.items())
            print(f"{c.id:<28} {c.group:<36} {c.statement}" + (f"   [{rng}]" if rng else ""))
    return EXIT_OK


# parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--m", type=int, help="block/cycle size bound (restricted, associated)")
    params.add_argument("--r", type=int, help="number of separated elements (r-families)")

    parser = argparse.ArgumentParser(
        prog="stirlab",
        description="Exact Stirling-type triangles, Fubini/Bell families and last-digit congruences.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--cache-dir", help="row cache directory (default: $STIRLAB_CACHE_DIR or ~/.cache/stirlab)")
    parser.add_argument("--no-cache", action="store_true", help="neither read nor write the row cache")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[fmt, params], help="sequence values")
    p.add_argument("family", help="family name, see 'families list'")
    p.add_argument("--n", type=int)
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="stop", type=int)
    p.add_argument(
        "--method",
        choices=("triangle-memo", "triangle", "recurrence", "auto"),
        default="triangle-memo",
        help="triangle-memo (default) sums rows of the cached triangle; "
        "triangle streams rows without keeping them; recurrence uses the direct recurrence",
    )
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", parents=[fmt, params], help="triangle rows")
    p.add_argument("triangle", help=", ".join(TRIANGLES))
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[fmt, params], help="check congruence claims")
    p.add_argument("claim", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--n-max", type=int, default=1000)
    p.add_argument("--p", type=int, help="restrict a prime-indexed claim to this prime")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("detect", parents=[fmt, params], help="eventual period modulo M")
    p.add_argument("family")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--max-period", type=int, default=50)
    p.add_argument("--max-preperiod", type=int, help="default: --max-period")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser(
        "oracle",
        parents=[fmt],
        help="brute-force audit",
        description=f"Compare engines with exhaustive enumeration. Guards: n <= {PARTITION_GUARD} "
        f"for partitions, n <= {PERMUTATION_GUARD} for permutations; exceeding one is an error.",
    )
    p.add_argument("check", choices=("triangles", "sequences"))
    p.add_argument("--n-max", type=int, default=10, help=f"partition bound (<= {PARTITION_GUARD})")
    p.add_argument(
        "--perm-n-max", type=int, help=f"permutation bound (<= {PERMUTATION_GUARD}; default min(n-max, 9))"
    )
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("families", parents=[fmt], help="family catalog")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("formulas", parents=[fmt, params], help="closed-form registry")
    p.add_argument("action", choices=("list", "eval", "check"))
    p.add_argument("id", nargs="?")
    p.add_argument("--n", type=int, help="running variable (n, or m for m-indexed forms)")
    p.add_argument("--upto", type=int, default=200)
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("claims", parents=[fmt], help="congruence registry")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_claims)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = None if args.no_cache else RowCache(args.cache_dir)
    try:
        return args.func(args, cache)
    except CapExceededError as e:
        print(f"stirlab: error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (StirlabError, ValueError, KeyError) as e:
        print(f"stirlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
