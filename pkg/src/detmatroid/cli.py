"""Command-line interface.

Subcommands expose the library's decision procedures with stable, scriptable
I/O: stdout carries exactly one JSON document or one CSV table per run,
diagnostics go to stderr, and the exit code is 0 for a positive answer, 1 for
a negative answer, 2 for contract, capacity, or parse errors.  All commands
accept --seed and are bit-reproducible given it.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .census import known_facts_crosscheck, verify_conjecture
from .errors import ContractError, DetmatroidError, GenericityError, ParseError
from .fields import DEFAULT_PRIME, PrimeField, Rationals
from .grassmann import complete_matrix
from .oracle import DEFAULT_TRIALS, is_base
from .partition import parse_certificate, partition_search, validate_certificate
from .patterns import Slmf, parse_pattern, reduce_pattern
from .slmf import (RelaxedParams, is_relaxed_slmf, is_slmf,
                   is_slmf_via_matching)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _load_pattern(args):
    return parse_pattern(_read(args.pattern))


def cmd_check_slmf(args) -> int:
    pattern = _load_pattern(args)
    phi = Slmf.from_pattern(pattern, args.r)
    direct, bad_cols = is_slmf(phi)
    matched, bad_rows = is_slmf_via_matching(phi)
    payload = {
        "slmf": direct,
        "via_matching": matched,
        "agree": direct == matched,
        "witness_columns": list(bad_cols) if bad_cols is not None else None,
        "witness_rows": list(bad_rows) if bad_rows is not None else None,
    }
    if direct != matched:
        payload["bug"] = ("the direct union-bound checker and the matching "
                          "checker disagreed; please report this pattern")
        _emit_json(payload)
        print("checker disagreement on %dx%d pattern" % (pattern.m, pattern.n),
              file=sys.stderr)
        return 2
    _emit_json(payload)
    return 0 if direct else 1


def cmd_check_relaxed(args) -> int:
    pattern = _load_pattern(args)
    nu = args.nu if args.nu is not None else args.r
    ok, witness = is_relaxed_slmf(pattern, RelaxedParams(nu, args.r))
    _emit_json({
        "relaxed": ok,
        "nu": nu,
        "r": args.r,
        "witness": witness.as_dict() if witness is not None else None,
    })
    return 0 if ok else 1


def cmd_partition(args) -> int:
    pattern = _load_pattern(args)
    if args.certificate is not None:
        cert = parse_certificate(_read(args.certificate))
        validate_certificate(pattern, cert)
        _emit_json({"valid": True, "certificate": cert.as_dict()})
        return 0
    cert = partition_search(pattern, args.r,
                            prefer_same_phi=args.prefer_same_phi)
    if cert is None:
        _emit_json({"found": False})
        return 1
    _emit_json({"found": True, "certificate": cert.as_dict()})
    return 0


def cmd_certify(args) -> int:
    pattern = _load_pattern(args)
    r = args.r
    m, n = pattern.m, pattern.n
    size = pattern.size()
    dim = r * (m + n - r)
    stages: dict = {"size": {"ok": size == dim, "size": size, "dimension": dim}}
    payload = {"m": m, "n": n, "r": r, "stages": stages}
    if size != dim:
        payload["certified"] = False
        payload["reason"] = "size"
        _emit_json(payload)
        return 1

    relaxed_ok, violation = is_relaxed_slmf(pattern, RelaxedParams(r, r))
    stages["relaxed"] = {
        "ok": relaxed_ok,
        "witness": violation.as_dict() if violation is not None else None,
    }

    reduced, log = reduce_pattern(pattern, r)
    stages["reduction"] = {
        "steps": [list(step) for step in log],
        "reduced_m": reduced.m,
        "reduced_n": reduced.n,
        "reduced_size": reduced.size(),
    }

    cert = partition_search(pattern, r)
    part_on = "input"
    if cert is None and log:
        if reduced.size() == 0:
            part_on = "trivial"
        elif r < reduced.m and r <= reduced.n:
            cert = partition_search(reduced, r)
            if cert is not None:
                part_on = "reduced"
    partition_ok = cert is not None or part_on == "trivial"
    stages["partition"] = {
        "ok": partition_ok,
        "on": part_on if partition_ok else None,
        "certificate": cert.as_dict() if cert is not None else None,
    }

    verdict = is_base(pattern, r, args.prime, args.trials, args.seed)
    oracle_ok = verdict.verdict == "base"
    stages["oracle"] = verdict.as_dict()

    if oracle_ok and not relaxed_ok:
        payload["bug"] = ("oracle certifies a base but the necessary relaxed "
                          "counting condition fails; please report")
        _emit_json(payload)
        print("necessity contradiction at r=%d" % r, file=sys.stderr)
        return 2
    if partition_ok and not oracle_ok:
        payload["bug"] = ("a partition certificate exists but the rank oracle "
                          "refutes the base; please report")
        _emit_json(payload)
        print("sufficiency contradiction at r=%d" % r, file=sys.stderr)
        return 2

    certified = relaxed_ok and partition_ok and oracle_ok
    payload["certified"] = certified
    if not certified:
        payload["reason"] = ("relaxed" if not relaxed_ok
                             else "partition" if not partition_ok
                             else "oracle")
    _emit_json(payload)
    return 0 if certified else 1


def _parse_observations(text: str, field) -> dict:
    observed = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ParseError("observations line %d: expected i,j,value" % lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("observations line %d: bad indices" % lineno) from None
        if (i, j) in observed:
            raise ParseError("observations line %d: duplicate entry (%d,%d)"
                             % (lineno, i, j))
        observed[(i, j)] = field.parse(parts[2])
    return observed


def cmd_complete(args) -> int:
    pattern = _load_pattern(args)
    field = Rationals() if args.rationals else PrimeField(args.prime)
    cert = parse_certificate(_read(args.certificate))
    observed = _parse_observations(_read(args.observations), field)
    matrix = complete_matrix(pattern, args.r, cert, observed, field)
    out = csv.writer(sys.stdout, lineterminator="\n")
    for row in matrix:
        out.writerow([field.to_str(x) for x in row])
    return 0


CENSUS_FIELDS = ["m", "n", "r", "columns", "is_relaxed_rrm", "has_partition",
                 "oracle_base", "consistent", "reduction_log", "witness"]


def cmd_verify_conjecture(args) -> int:
    report = verify_conjecture(args.m, args.n, args.r, prime=args.prime,
                               trials=args.trials, seed=args.seed,
                               col_size=args.col_size, filter=args.filter,
                               jobs=args.jobs)
    if args.format == "json":
        _emit_json({
            "m": args.m,
            "n": args.n,
            "r": args.r,
            "consistent": report.consistent,
            "rows": [row.as_dict() for row in report.rows],
            "counterexamples": list(report.counterexamples),
        })
    else:
        out = csv.writer(sys.stdout, lineterminator="\n")
        out.writerow(CENSUS_FIELDS)
        for row in report.rows:
            d = row.as_dict()
            out.writerow([
                d["m"], d["n"], d["r"], json.dumps(d["columns"]),
                json.dumps(d["is_relaxed_rrm"]), json.dumps(d["has_partition"]),
                json.dumps(d["oracle_base"]), json.dumps(row.consistent),
                json.dumps(d["reduction_log"]), json.dumps(d["witness"]),
            ])
    if not report.consistent:
        print("%d counterexample candidate(s) survived re-verification"
              % len(report.counterexamples), file=sys.stderr)
        return 1
    return 0


def cmd_crosscheck(args) -> int:
    report = known_facts_crosscheck(args.m, args.n, args.r, prime=args.prime,
                                    trials=args.trials, seed=args.seed)
    _emit_json(report.as_dict())
    return 0 if report.consistent else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detmatroid",
        description="Decide, certify, and exploit membership in the algebraic "
                    "matroid of bounded-rank matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pattern=True, rank=True, oracle=False):
        p.add_argument("--seed", type=int, default=0,
                       help="root seed for all randomness (default 0)")
        if pattern:
            p.add_argument("--pattern", required=True,
                           help="pattern file (indicator grid or JSON)")
        if rank:
            p.add_argument("--r", type=int, required=True, help="target rank")
        if oracle:
            p.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                           help="field modulus (default 2^31-1)")
            p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                           help="rank oracle attempts (default %d)"
                                % DEFAULT_TRIALS)

    p = sub.add_parser("check-slmf", help="decide the union lower bounds for "
                                          "a column-size-(r+1) pattern")
    common(p)
    p.set_defaults(func=cmd_check_slmf)

    p = sub.add_parser("check-relaxed", help="decide the relaxed (nu,r,m) "
                                             "counting condition")
    common(p)
    p.add_argument("--nu", type=int, default=None,
                   help="slack parameter (default: r)")
    p.set_defaults(func=cmd_check_relaxed)

    p = sub.add_parser("partition", help="search for a partition into r "
                                         "relaxed (1,r,m) groups, or validate "
                                         "a given certificate")
    common(p)
    p.add_argument("--certificate", default=None,
                   help="validate this certificate instead of searching")
    p.add_argument("--prefer-same-phi", action="store_true",
                   help="prefer a partition whose induced columns all agree")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("certify", help="run the full pipeline: size, relaxed "
                                       "condition, reduction, partition, "
                                       "rank oracle")
    common(p, oracle=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("complete", help="uniquely complete observed entries "
                                        "to a rank-r matrix")
    common(p, oracle=True)
    p.add_argument("--certificate", required=True,
                   help="partition certificate JSON file")
    p.add_argument("--observations", required=True,
                   help="CSV file of observed entries: i,j,value")
    p.add_argument("--rationals", action="store_true",
                   help="work over the rationals instead of GF(prime)")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("verify-conjecture", help="census a small grid and "
                                                 "compare all three "
                                                 "classifications")
    common(p, pattern=False, rank=False, oracle=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--col-size", type=int, default=None,
                   help="pin every column support size")
    p.add_argument("--filter", choices=["base_size_and_mindeg", "all"],
                   default="base_size_and_mindeg")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for classification")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_verify_conjecture)

    p = sub.add_parser("crosscheck", help="compare the rank oracle with the "
                                          "closed-form characterizations at "
                                          "r=1 and r=min(m,n)-1")
    common(p, pattern=False, rank=False, oracle=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except GenericityError as exc:
        detail = "" if exc.phi is None else " (phi=%s)" % (list(exc.phi),)
        print("not generic: %s%s" % (exc, detail), file=sys.stderr)
        return 1
    except DetmatroidError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
