"""Command-line frontend.

Subcommands::

    prove       run the full case pipeline for (k, t) and emit certificates
    coeff       compute one integer coefficient of a factor-list product
    qs          rank quotient sequencings for a type
    scan        brute-force sequenceability scan of small cyclic groups
    verify      cross-check a certificate's conclusion by exhaustion
    applicable  coverage checker for a modulus/size pair
    table1      recompute the curated coefficient fixtures and compare

Output is line-delimited JSON on stdout (or ``--output``).  Exit status:
0 success, 1 for unresolved/failed cases, 2 for usage errors.

Settings priority: command-line flags, then the environment variables
``NULLSEQ_WORKERS`` and ``NULLSEQ_CHECKPOINT_DIR``, then the JSON config
file given with ``--config``, then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog, reports
from .applicability import applicability
from .certify import CaseConfig, assemble_case, factorize, _checkpoint_path
from .engine import (
    EngineAbort,
    coefficient_of,
    load_checkpoint,
    multiply_factors,
    save_checkpoint,
)
from .factors import (
    FULL,
    REDUCED,
    InfeasibleFixing,
    bounding_monomial,
    build_p,
    build_q,
    degree,
)
from .groups import SymbolicArithmeticError
from .oracle import (
    AUTO,
    InfeasibleVerification,
    scan_group,
    verify_nonvanishing_conclusion,
)
from .quotient import NotQuotientSequencing, search_quotient, validate_quotient

_CONFIG_KEYS = {
    "workers": int,
    "term_cap": int,
    "op_cap": int,
    "checkpoint_dir": str,
    "qs_limit": int,
    "qs_budget": int,
    "max_candidates": int,
    "max_degree": int,
    "seed": int,
    "variant": str,
}

_DEFAULTS = {
    "workers": 1,
    "term_cap": 200_000_000,
    "op_cap": None,
    "checkpoint_dir": None,
    "qs_limit": 8,
    "qs_budget": 10**6,
    "max_candidates": 24,
    "max_degree": 60,
    "seed": 0,
    "variant": FULL,
}


class UsageError(Exception):
    pass


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    settings = {}
    for key, value in data.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} in {path}")
        if value is not None:
            try:
                value = _CONFIG_KEYS[key](value)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for config key {key!r}: {value!r}") from exc
        settings[key] = value
    return settings


def resolve_settings(args: argparse.Namespace) -> dict:
    """defaults < config file < environment < explicit flags."""
    settings = dict(_DEFAULTS)
    if getattr(args, "config", None):
        settings.update(_load_config_file(args.config))
    env_workers = os.environ.get("NULLSEQ_WORKERS")
    if env_workers:
        try:
            settings["workers"] = int(env_workers)
        except ValueError as exc:
            raise UsageError(f"NULLSEQ_WORKERS must be an integer: {env_workers!r}") from exc
    env_ckpt = os.environ.get("NULLSEQ_CHECKPOINT_DIR")
    if env_ckpt:
        settings["checkpoint_dir"] = env_ckpt
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if settings["workers"] < 1:
        raise UsageError("worker count must be at least 1")
    return settings


def _parse_vector(text: str, name: str) -> tuple[int, ...]:
    try:
        return reports.parse_exponents(text)
    except ValueError as exc:
        raise UsageError(f"--{name} must be comma-separated integers: {text!r}") from exc


def _writer(args):
    path = getattr(args, "output", None)
    if path and path != "-":
        return open(path, "w", encoding="utf-8"), True
    return sys.stdout, False


def _emit(records, args) -> None:
    stream, close = _writer(args)
    try:
        reports.write_records(records, stream)
    finally:
        if close:
            stream.close()
        else:
            stream.flush()


# ---------------------------------------------------------------------------
# subcommand handlers (return the exit status)


def _cmd_prove(args) -> int:
    settings = resolve_settings(args)
    config = CaseConfig(
        qs_limit=settings["qs_limit"],
        qs_budget=settings["qs_budget"],
        max_candidates=settings["max_candidates"],
        term_cap=settings["term_cap"],
        op_cap=settings["op_cap"],
        max_degree=settings["max_degree"],
        workers=settings["workers"],
        seed=settings["seed"],
        variant=settings["variant"],
        use_greedy_fixes=not args.no_greedy_fixes,
        checkpoint_dir=settings["checkpoint_dir"],
    )
    start = time.monotonic()
    report = assemble_case(args.k, args.t, config)
    _emit(reports.case_records(report, elapsed=time.monotonic() - start), args)
    return 0 if report.complete else 1


def _coeff_inputs(args):
    k = args.k
    t = args.t if args.t is not None else 1
    if getattr(args, "lam", None) is not None:
        lam = _parse_vector(args.lam, "lambda")
    elif t == 1:
        lam = (k,)
    else:
        raise UsageError("--lambda is required when t > 1")
    if getattr(args, "a", None) is not None:
        a = _parse_vector(args.a, "a")
    elif t == 1:
        a = (0,) * k
    else:
        raise UsageError("--a is required when t > 1")
    fixes = _parse_vector(args.fixes, "fixes") if args.fixes else ()
    return k, t, lam, a, fixes


def _cmd_coeff(args) -> int:
    settings = resolve_settings(args)
    k, t, lam, a, fixes = _coeff_inputs(args)
    qs = validate_quotient(a, lam)
    build = build_p if settings["variant"] == FULL else build_q
    fl = build(qs, fixes)
    bound = bounding_monomial(lam, qs, fixes)
    if args.monomial:
        monomial = _parse_vector(args.monomial, "monomial")
        if len(monomial) != k:
            raise UsageError(f"--monomial must have {k} entries")
    else:
        from .certify import candidate_monomials

        candidates = candidate_monomials(bound, degree(fl), 1)
        if not candidates:
            raise UsageError("bounding monomial has smaller degree than the product")
        monomial = candidates[0]
    resume = None
    if args.resume:
        try:
            resume = load_checkpoint(args.resume)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load checkpoint {args.resume}: {exc}") from exc
    start = time.monotonic()
    try:
        poly = multiply_factors(
            fl,
            bound=bound,
            target=monomial,
            term_cap=settings["term_cap"],
            op_cap=settings["op_cap"],
            workers=settings["workers"],
            resume=resume,
        )
    except EngineAbort as exc:
        record = reports.coefficient_record(
            k=k, t=t, lam=lam, a=a, fixes=fixes, variant=settings["variant"],
            monomial=monomial, coefficient=0, degree=degree(fl), bound=bound,
            elapsed=time.monotonic() - start,
        )
        record["outcome"] = "aborted"
        record["note"] = str(exc)
        del record["coefficient"]
        if settings["checkpoint_dir"] and exc.checkpoint is not None:
            os.makedirs(settings["checkpoint_dir"], exist_ok=True)
            path = _checkpoint_path(
                settings["checkpoint_dir"], k, t, lam, a, monomial
            )
            save_checkpoint(path, exc.checkpoint)
            record["checkpoint"] = path
        _emit([record], args)
        return 1
    value = coefficient_of(poly, monomial)
    record = reports.coefficient_record(
        k=k, t=t, lam=lam, a=a, fixes=fixes, variant=settings["variant"],
        monomial=monomial, coefficient=value,
        factorization=factorize(value, split_budget=args.split_budget)
        if value else None,
        degree=degree(fl), bound=bound, terms=poly.num_terms(),
        elapsed=time.monotonic() - start,
    )
    record["outcome"] = "nonzero" if value else "zero"
    _emit([record], args)
    return 0 if value else 1


def _cmd_qs(args) -> int:
    settings = resolve_settings(args)
    lam = _parse_vector(args.lam, "lambda")
    start = time.monotonic()
    result = search_quotient(
        lam,
        objective=args.objective,
        limit=settings["qs_limit"] if args.limit is None else args.limit,
        budget=settings["qs_budget"],
        seed=settings["seed"],
    )
    elapsed = time.monotonic() - start
    records = [
        reports.quotient_record(
            rank=i,
            t=len(lam),
            lam=lam,
            a=sc.qs.a,
            b=sc.qs.b,
            degree=sc.degree,
            max_multiplicity=sc.max_multiplicity,
            feasible=sc.feasible,
            exhaustive=result.exhaustive,
            scanned=result.scanned,
            elapsed=elapsed,
        )
        for i, sc in enumerate(result.candidates)
    ]
    _emit(records, args)
    return 0 if any(sc.feasible for sc in result.candidates) else 1


def _cmd_scan(args) -> int:
    settings = resolve_settings(args)
    start = time.monotonic()
    report = scan_group(
        args.n,
        args.k,
        kind=args.scan_kind,
        count=args.count,
        seed=settings["seed"],
        reduce=not args.no_reduce,
        workers=settings["workers"],
        max_failures=args.max_failures,
    )
    _emit([reports.scan_record(report, elapsed=time.monotonic() - start)], args)
    return 0 if report.all_sequenceable else 1


def _cmd_verify(args) -> int:
    lam = _parse_vector(args.lam, "lambda")
    a = _parse_vector(args.a, "a")
    start = time.monotonic()
    report = verify_nonvanishing_conclusion(
        args.p, args.t, lam, a, max_subsets=args.max_subsets
    )
    _emit([reports.verification_record(report, elapsed=time.monotonic() - start)], args)
    return 0 if report.ok else 1


def _cmd_applicable(args) -> int:
    subset = _parse_vector(args.subset, "subset") if args.subset else None
    start = time.monotonic()
    result = applicability(
        args.n, args.k, subset=subset, effort_bits=args.effort_bits
    )
    _emit(
        [reports.applicability_record(result, elapsed=time.monotonic() - start)], args
    )
    return 0 if result.verdict in ("yes", "conditional") else 1


def _cmd_table1(args) -> int:
    settings = resolve_settings(args)
    if args.name:
        try:
            targets = (catalog.by_name(args.name),)
        except KeyError:
            raise UsageError(f"unknown fixture {args.name!r}") from None
    else:
        pool = catalog.TABLE1 if args.table_only else catalog.ALL_FIXTURES
        tiers = {
            "light": (catalog.LIGHT,),
            "heavy": (catalog.LIGHT, catalog.HEAVY),
            "massive": (catalog.LIGHT, catalog.HEAVY, catalog.MASSIVE),
        }[args.tier]
        targets = tuple(f for f in pool if f.tier in tiers)
    failures = 0
    stream, close = _writer(args)
    try:
        for fx in targets:
            qs = validate_quotient(fx.a, fx.lam)
            fl = build_p(qs, fx.fixes)
            bound = bounding_monomial(fx.lam, qs, fx.fixes)
            start = time.monotonic()
            try:
                poly = multiply_factors(
                    fl,
                    bound=bound,
                    target=fx.monomial,
                    term_cap=settings["term_cap"],
                    op_cap=settings["op_cap"],
                    workers=settings["workers"],
                )
            except EngineAbort as exc:
                record = reports.coefficient_record(
                    k=fx.k, t=fx.t, lam=fx.lam, a=fx.a, fixes=fx.fixes,
                    variant=FULL, monomial=fx.monomial, coefficient=0,
                    degree=fx.degree, bound=bound,
                    elapsed=time.monotonic() - start,
                )
                del record["coefficient"]
                record.update(name=fx.name, outcome="aborted", note=str(exc))
                failures += 1
                reports.write_records([record], stream)
                continue
            value = coefficient_of(poly, fx.monomial)
            record = reports.coefficient_record(
                k=fx.k, t=fx.t, lam=fx.lam, a=fx.a, fixes=fx.fixes,
                variant=FULL, monomial=fx.monomial, coefficient=value,
                factorization=factorize(value) if value else None,
                degree=fx.degree, bound=bound,
                elapsed=time.monotonic() - start,
            )
            record.update(
                name=fx.name,
                expected=str(fx.coefficient),
                match=value == fx.coefficient,
            )
            if value != fx.coefficient:
                failures += 1
            reports.write_records([record], stream)
    finally:
        if close:
            stream.close()
        else:
            stream.flush()
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON settings file")
    common.add_argument("--output", default="-", help="write records here ('-' = stdout)")
    common.add_argument("--workers", type=int, help="parallel worker processes")
    common.add_argument("--term-cap", dest="term_cap", type=int,
                        help="abort when an intermediate exceeds this many terms")
    common.add_argument("--op-cap", dest="op_cap", type=int,
                        help="abort after this many term operations")
    common.add_argument("--checkpoint-dir", dest="checkpoint_dir",
                        help="directory for engine checkpoints")
    common.add_argument("--seed", type=int, help="seed for randomized searches")

    parser = argparse.ArgumentParser(
        prog="nullseq",
        description="Sequenceability certificates for subsets of Z_p x Z_t.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("prove", parents=[common],
                       help="certify every type for a given (k, t)")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--t", type=int, required=True, help="quotient order (1..5)")
    p.add_argument("--variant", choices=(FULL, REDUCED))
    p.add_argument("--max-degree", dest="max_degree", type=int,
                   help="skip types whose product degree exceeds this")
    p.add_argument("--max-candidates", dest="max_candidates", type=int,
                   help="monomials tried per arrangement")
    p.add_argument("--qs-limit", dest="qs_limit", type=int,
                   help="arrangements tried per type")
    p.add_argument("--qs-budget", dest="qs_budget", type=int,
                   help="exhaustive-search cutoff for arrangements")
    p.add_argument("--no-greedy-fixes", action="store_true",
                   help="skip the greedy fixing pass")
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("coeff", parents=[common],
                       help="one coefficient of one factor-list product")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--t", type=int, help="quotient order (default 1)")
    p.add_argument("--lambda", dest="lam", help="type vector (default k,0,... for t=1)")
    p.add_argument("--a", help="arrangement (default all zeros for t=1)")
    p.add_argument("--fixes", help="positions fixed to zero, comma-separated")
    p.add_argument("--monomial", help="target monomial exponents")
    p.add_argument("--variant", choices=(FULL, REDUCED))
    p.add_argument("--resume", help="resume from an engine checkpoint file")
    p.add_argument("--split-budget", dest="split_budget", type=int,
                   help="bit budget for factoring the coefficient")
    p.set_defaults(func=_cmd_coeff)

    p = sub.add_parser("qs", parents=[common],
                       help="rank quotient sequencings for a type")
    p.add_argument("--lambda", dest="lam", required=True, help="type vector")
    p.add_argument("--objective", default="min-degree",
                   choices=("min-degree", "min-max-multiplicity"))
    p.add_argument("--limit", type=int, help="number of candidates to keep")
    p.add_argument("--qs-budget", dest="qs_budget", type=int)
    p.set_defaults(func=_cmd_qs)

    p = sub.add_parser("scan", parents=[common],
                       help="brute-force scan of subsets of Z_n")
    p.add_argument("--n", type=int, required=True, help="cyclic group order")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--kind", dest="scan_kind", default=AUTO,
                   choices=("linear", "rotational", AUTO))
    p.add_argument("--count", type=int, help="sample this many subsets instead")
    p.add_argument("--no-reduce", action="store_true",
                   help="scan all subsets, not one per unit-multiple class")
    p.add_argument("--max-failures", dest="max_failures", type=int, default=20)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", parents=[common],
                       help="exhaustively check a certificate's conclusion")
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.add_argument("--t", type=int, required=True, help="quotient order")
    p.add_argument("--lambda", dest="lam", required=True, help="type vector")
    p.add_argument("--a", required=True, help="arrangement")
    p.add_argument("--max-subsets", dest="max_subsets", type=int,
                   help="refuse if more subsets than this")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("applicable", parents=[common],
                       help="does the covered range include (n, k)?")
    p.add_argument("--n", type=int, required=True, help="group order")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--subset", help="concrete subset of Z_n, comma-separated")
    p.add_argument("--effort-bits", dest="effort_bits", type=int, default=256,
                   help="factoring effort cap (bits)")
    p.set_defaults(func=_cmd_applicable)

    p = sub.add_parser("table1", parents=[common],
                       help="recompute curated fixtures and compare")
    p.add_argument("--tier", default="light",
                   choices=("light", "heavy", "massive"),
                   help="include fixtures up to this cost tier")
    p.add_argument("--table-only", action="store_true",
                   help="only the size-10 quotient-2 table rows")
    p.add_argument("--name", help="run a single fixture by name")
    p.set_defaults(func=_cmd_table1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nullseq: error: {exc}", file=sys.stderr)
        return 2
    except (
        NotQuotientSequencing,
        InfeasibleFixing,
        InfeasibleVerification,
        SymbolicArithmeticError,
        ValueError,
    ) as exc:
        print(f"nullseq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
