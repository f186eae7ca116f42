"""Line-delimited report records and the text formats they share.

Every command emits UTF-8 JSON objects, one per line.  Records are flat
key-value maps so they stay diff-able and stream-appendable; repeated
sub-structures (certificate entries, scan failures, splits) are indexed
fields like ``entry0_monomial``.  Integers that can grow beyond 64 bits
(coefficients, moduli, cofactors) are encoded as decimal strings.

Shared text formats:

* exponent vectors: comma-separated decimals, ``"8,9,9"``;
* factorizations: ``±p1^e1*p2^e2[*C<cofactor>]`` with the sign always
  present, ``^1`` omitted, and the unit values rendered ``+1`` / ``-1``;
* point sets in Z_p x Z_t: ``x:v`` pairs, comma-separated.

Each ``*_record`` builder has a matching ``*_from_record`` parser; parsing
re-runs the dataclass validators, so a round-trip reproduces (and
re-checks) the in-memory object.
"""

from __future__ import annotations

import json
import re
from typing import IO, Iterable, Iterator

from .applicability import (
    DEFAULT_TABLE,
    ApplicabilityResult,
    SplitEvaluation,
)
from .certify import (
    AttemptRecord,
    CaseReport,
    Certificate,
    CertificateEntry,
    Factorization,
    TypeResult,
    UnresolvedType,
)
from .oracle import ScanReport, VerificationReport

ENGINE_VERSION = "nullseq 0.1.0"

_FACTOR_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


# ---------------------------------------------------------------------------
# scalar text formats


def format_exponents(vec: Iterable[int]) -> str:
    return ",".join(str(v) for v in vec)


def parse_exponents(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def format_points(points: Iterable[tuple[int, int]]) -> str:
    return ",".join(f"{x}:{v}" for x, v in points)


def parse_points(text: str) -> tuple[tuple[int, int], ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for part in text.split(","):
        x, _, v = part.partition(":")
        out.append((int(x), int(v)))
    return tuple(out)


def format_factorization(f: Factorization) -> str:
    sign = "+" if f.sign > 0 else "-"
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in f.primes]
    if f.cofactor is not None:
        parts.append(f"C{f.cofactor}")
    if not parts:
        return sign + "1"
    return sign + "*".join(parts)


def parse_factorization(text: str) -> Factorization:
    text = text.strip()
    if not text or text[0] not in "+-":
        raise ValueError(f"factorization must start with an explicit sign: {text!r}")
    sign = 1 if text[0] == "+" else -1
    body = text[1:]
    if body == "1":
        return Factorization(sign, ())
    primes: list[tuple[int, int]] = []
    cofactor: int | None = None
    parts = body.split("*")
    for idx, part in enumerate(parts):
        if part.startswith("C"):
            if idx != len(parts) - 1 or cofactor is not None:
                raise ValueError(f"cofactor must be the single last term: {text!r}")
            cofactor = int(part[1:])
            continue
        m = _FACTOR_RE.match(part)
        if not m:
            raise ValueError(f"bad factor {part!r} in {text!r}")
        primes.append((int(m.group(1)), int(m.group(2) or 1)))
    return Factorization(sign, tuple(primes), cofactor)


def _tri(state: bool | None) -> str:
    if state is None:
        return "unknown"
    return "true" if state else "false"


def _parse_tri(text: str) -> bool | None:
    return {"true": True, "false": False, "unknown": None}[text]


# ---------------------------------------------------------------------------
# record streams


def dumps_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def loads_record(line: str) -> dict:
    record = json.loads(line)
    if not isinstance(record, dict):
        raise ValueError("report records must be JSON objects")
    return record


def write_records(records: Iterable[dict], stream: IO[str]) -> int:
    count = 0
    for record in records:
        stream.write(dumps_record(record) + "\n")
        count += 1
    return count


def read_records(stream: IO[str]) -> Iterator[dict]:
    for line in stream:
        line = line.strip()
        if line:
            yield loads_record(line)


def _base(kind: str, elapsed: float | None) -> dict:
    record = {"kind": kind, "engine": ENGINE_VERSION}
    if elapsed is not None:
        record["elapsed"] = round(elapsed, 3)
    return record


# ---------------------------------------------------------------------------
# certificate records


def _put_attempts(record: dict, attempts: tuple[AttemptRecord, ...]) -> None:
    record["attempts"] = len(attempts)
    for i, at in enumerate(attempts):
        record[f"attempt{i}_a"] = format_exponents(at.a)
        record[f"attempt{i}_fixes"] = format_exponents(at.fixes)
        record[f"attempt{i}_monomial"] = (
            "" if at.monomial is None else format_exponents(at.monomial)
        )
        record[f"attempt{i}_outcome"] = at.outcome
        record[f"attempt{i}_coefficient"] = (
            "" if at.coefficient is None else str(at.coefficient)
        )
        record[f"attempt{i}_note"] = at.note


def _get_attempts(record: dict) -> tuple[AttemptRecord, ...]:
    out = []
    for i in range(record.get("attempts", 0)):
        monomial = record[f"attempt{i}_monomial"]
        coefficient = record[f"attempt{i}_coefficient"]
        out.append(
            AttemptRecord(
                a=parse_exponents(record[f"attempt{i}_a"]),
                fixes=parse_exponents(record[f"attempt{i}_fixes"]),
                monomial=parse_exponents(monomial) if monomial else None,
                outcome=record[f"attempt{i}_outcome"],
                coefficient=int(coefficient) if coefficient else None,
                note=record[f"attempt{i}_note"],
            )
        )
    return tuple(out)


def certificate_record(
    cert: Certificate,
    *,
    elapsed: float | None = None,
    attempts: tuple[AttemptRecord, ...] = (),
    orbit: tuple[tuple[int, ...], ...] = (),
    derived_from: tuple[int, ...] | None = None,
) -> dict:
    record = _base("certificate", elapsed)
    record.update(
        k=cert.k,
        t=cert.t,
        lam=format_exponents(cert.lam),
        a=format_exponents(cert.a),
        fixes=format_exponents(cert.fixes),
        variant=cert.variant,
        degree=cert.degree,
        bound=format_exponents(cert.bound),
        exceptional=format_exponents(cert.exceptional),
        entries=len(cert.entries),
    )
    for i, entry in enumerate(cert.entries):
        record[f"entry{i}_monomial"] = format_exponents(entry.monomial)
        record[f"entry{i}_coefficient"] = str(entry.coefficient)
        record[f"entry{i}_factorization"] = format_factorization(entry.factorization)
    if orbit:
        record["orbit"] = ";".join(format_exponents(lam) for lam in orbit)
    if derived_from is not None:
        record["derived_from"] = format_exponents(derived_from)
    if attempts:
        _put_attempts(record, attempts)
    return record


def certificate_from_record(record: dict) -> Certificate:
    entries = tuple(
        CertificateEntry(
            monomial=parse_exponents(record[f"entry{i}_monomial"]),
            coefficient=int(record[f"entry{i}_coefficient"]),
            factorization=parse_factorization(record[f"entry{i}_factorization"]),
        )
        for i in range(record["entries"])
    )
    return Certificate(
        k=record["k"],
        t=record["t"],
        lam=parse_exponents(record["lam"]),
        a=parse_exponents(record["a"]),
        fixes=parse_exponents(record["fixes"]),
        variant=record["variant"],
        degree=record["degree"],
        bound=parse_exponents(record["bound"]),
        entries=entries,
        exceptional=parse_exponents(record["exceptional"]),
    )


def unresolved_record(
    k: int,
    t: int,
    unresolved: UnresolvedType,
    *,
    elapsed: float | None = None,
    attempts: tuple[AttemptRecord, ...] = (),
    orbit: tuple[tuple[int, ...], ...] = (),
    derived_from: tuple[int, ...] | None = None,
) -> dict:
    record = _base("unresolved", elapsed)
    record.update(
        k=k,
        t=t,
        lam=format_exponents(unresolved.lam),
        reason=unresolved.reason,
    )
    if orbit:
        record["orbit"] = ";".join(format_exponents(lam) for lam in orbit)
    if derived_from is not None:
        record["derived_from"] = format_exponents(derived_from)
    if attempts:
        _put_attempts(record, attempts)
    return record


def case_records(report: CaseReport, *, elapsed: float | None = None) -> list[dict]:
    """One summary record followed by one record per type."""
    certified = sum(1 for r in report.results if r.certificate is not None)
    summary = _base("case", elapsed)
    summary.update(
        k=report.k,
        t=report.t,
        types=len(report.results),
        certified=certified,
        unresolved=len(report.results) - certified,
        complete=report.complete,
    )
    records = [summary]
    for result in report.results:
        orbit = result.orbit
        if result.certificate is not None:
            records.append(
                certificate_record(
                    result.certificate,
                    attempts=result.attempts,
                    orbit=orbit,
                    derived_from=result.derived_from,
                )
            )
        else:
            records.append(
                unresolved_record(
                    report.k,
                    report.t,
                    result.unresolved,
                    attempts=result.attempts,
                    orbit=orbit,
                    derived_from=result.derived_from,
                )
            )
    return records


def case_from_records(records: Iterable[dict]) -> CaseReport:
    records = list(records)
    summaries = [r for r in records if r["kind"] == "case"]
    if len(summaries) != 1:
        raise ValueError("expected exactly one case summary record")
    summary = summaries[0]
    results = []
    for record in records:
        if record["kind"] not in ("certificate", "unresolved"):
            continue
        orbit = tuple(
            parse_exponents(part) for part in record.get("orbit", "").split(";") if part
        )
        derived = record.get("derived_from")
        common = dict(
            orbit=orbit,
            attempts=_get_attempts(record),
            derived_from=parse_exponents(derived) if derived is not None else None,
        )
        if record["kind"] == "certificate":
            cert = certificate_from_record(record)
            results.append(
                TypeResult(
                    lam=cert.lam, certificate=cert, unresolved=None, **common
                )
            )
        else:
            results.append(
                TypeResult(
                    lam=parse_exponents(record["lam"]),
                    certificate=None,
                    unresolved=UnresolvedType(
                        lam=parse_exponents(record["lam"]), reason=record["reason"]
                    ),
                    **common,
                )
            )
    return CaseReport(k=summary["k"], t=summary["t"], results=tuple(results))


# ---------------------------------------------------------------------------
# coefficient / quotient records


def coefficient_record(
    *,
    k: int,
    t: int,
    lam: tuple[int, ...],
    a: tuple[int, ...],
    fixes: tuple[int, ...],
    variant: str,
    monomial: tuple[int, ...],
    coefficient: int,
    factorization: Factorization | None = None,
    degree: int | None = None,
    bound: tuple[int, ...] | None = None,
    terms: int | None = None,
    elapsed: float | None = None,
) -> dict:
    record = _base("coefficient", elapsed)
    record.update(
        k=k,
        t=t,
        lam=format_exponents(lam),
        a=format_exponents(a),
        fixes=format_exponents(fixes),
        variant=variant,
        monomial=format_exponents(monomial),
        coefficient=str(coefficient),
    )
    if factorization is not None:
        record["factorization"] = format_factorization(factorization)
    if degree is not None:
        record["degree"] = degree
    if bound is not None:
        record["bound"] = format_exponents(bound)
    if terms is not None:
        record["terms"] = terms
    return record


def quotient_record(
    *,
    rank: int,
    t: int,
    lam: tuple[int, ...],
    a: tuple[int, ...],
    b: tuple[int, ...],
    degree: int,
    max_multiplicity: int,
    feasible: bool,
    exhaustive: bool,
    scanned: int,
    elapsed: float | None = None,
) -> dict:
    record = _base("quotient", elapsed)
    record.update(
        rank=rank,
        t=t,
        lam=format_exponents(lam),
        a=format_exponents(a),
        b=format_exponents(b),
        degree=degree,
        max_multiplicity=max_multiplicity,
        feasible=feasible,
        exhaustive=exhaustive,
        scanned=scanned,
    )
    return record


# ---------------------------------------------------------------------------
# scan / verification / applicability records


def scan_record(report: ScanReport, *, elapsed: float | None = None) -> dict:
    record = _base("scan", elapsed)
    record.update(
        n=report.n,
        k=report.k,
        scan_kind=report.kind,
        scanned=report.scanned,
        sequenceable=report.sequenceable,
        reduced=report.reduced,
        sampled=report.sampled,
        seed="" if report.seed is None else str(report.seed),
        all_sequenceable=report.all_sequenceable,
        failures=len(report.failures),
    )
    for i, subset in enumerate(report.failures):
        record[f"failure{i}"] = format_exponents(subset)
    return record


def scan_from_record(record: dict) -> ScanReport:
    seed = record["seed"]
    return ScanReport(
        n=record["n"],
        k=record["k"],
        kind=record["scan_kind"],
        scanned=record["scanned"],
        sequenceable=record["sequenceable"],
        failures=tuple(
            parse_exponents(record[f"failure{i}"]) for i in range(record["failures"])
        ),
        reduced=record["reduced"],
        sampled=record["sampled"],
        seed=int(seed) if seed != "" else None,
    )


def verification_record(
    report: VerificationReport, *, elapsed: float | None = None
) -> dict:
    record = _base("verification", elapsed)
    record.update(
        p=report.p,
        t=report.t,
        lam=format_exponents(report.lam),
        a=format_exponents(report.a),
        subsets_checked=report.subsets_checked,
        ok=report.ok,
        failures=len(report.failures),
    )
    for i, subset in enumerate(report.failures):
        record[f"failure{i}"] = format_points(subset)
    return record


def verification_from_record(record: dict) -> VerificationReport:
    return VerificationReport(
        p=record["p"],
        t=record["t"],
        lam=parse_exponents(record["lam"]),
        a=parse_exponents(record["a"]),
        subsets_checked=record["subsets_checked"],
        failures=tuple(
            parse_points(record[f"failure{i}"]) for i in range(record["failures"])
        ),
    )


def applicability_record(
    result: ApplicabilityResult, *, elapsed: float | None = None
) -> dict:
    record = _base("applicability", elapsed)
    record.update(
        n=str(result.n),
        k=result.k,
        verdict=result.verdict,
        unconditional=result.unconditional,
        subset="" if result.subset is None else format_exponents(result.subset),
        splits=len(result.splits),
    )
    for i, split in enumerate(result.splits):
        record[f"split{i}_t"] = split.t
        record[f"split{i}_m"] = str(split.m)
        record[f"split{i}_prime_ok"] = _tri(split.prime_ok)
        record[f"split{i}_caveat"] = split.caveat
        record[f"split{i}_caveat_ok"] = _tri(split.caveat_ok)
        record[f"split{i}_lam0"] = "" if split.lam0 is None else str(split.lam0)
        record[f"split{i}_verdict"] = split.verdict
    return record


def applicability_from_record(record: dict, table=DEFAULT_TABLE) -> ApplicabilityResult:
    k = record["k"]
    splits = []
    for i in range(record["splits"]):
        t = record[f"split{i}_t"]
        row = next(row for row in table if row.matches(k, t))
        lam0 = record[f"split{i}_lam0"]
        splits.append(
            SplitEvaluation(
                t=t,
                m=int(record[f"split{i}_m"]),
                row=row,
                prime_ok=_parse_tri(record[f"split{i}_prime_ok"]),
                caveat=record[f"split{i}_caveat"],
                caveat_ok=_parse_tri(record[f"split{i}_caveat_ok"]),
                lam0=int(lam0) if lam0 != "" else None,
            )
        )
    subset = record["subset"]
    return ApplicabilityResult(
        n=int(record["n"]),
        k=k,
        verdict=record["verdict"],
        unconditional=record["unconditional"],
        splits=tuple(splits),
        subset=parse_exponents(subset) if subset else None,
    )
