"""Certificates: nonzero integer coefficients that prove sequenceability.

A certificate fixes an arrangement (and possibly some fixed positions) for a
type lam, and records one or more monomials dividing the bounding monomial
whose integer coefficients in the factor product are nonzero.  For a prime p
with p > k, gcd(p, t) = 1 and p not dividing every recorded coefficient, at
least one coefficient stays nonzero mod p, so every subset of that type in
Z_p x Z_t admits a sequencing with that arrangement pattern.

The primes that divide the gcd of all recorded coefficients, are larger than
k and are coprime to t are the exceptional primes: the certificate is silent
for them (smaller primes and divisors of t are outside the usable range
anyway).  An empty exceptional set means the certificate covers every
admissible prime.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field, replace

import sympy

from .engine import EngineAbort, multiply_factors, save_checkpoint
from .factors import (
    FULL,
    InfeasibleFixing,
    bounding_monomial,
    build_p,
    build_q,
    choose_fixes,
)
from .groups import canonical_type, enumerate_types, type_orbit
from .quotient import QuotientSequencing, search_quotient, validate_quotient


@dataclass(frozen=True)
class Factorization:
    """sign * product(p^e) * cofactor, cofactor None when fully factored."""

    sign: int
    primes: tuple[tuple[int, int], ...]
    cofactor: int | None = None

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        ps = [p for p, _ in self.primes]
        if ps != sorted(set(ps)):
            raise ValueError("primes must be distinct and ascending")
        if any(e < 1 for _, e in self.primes):
            raise ValueError("prime exponents must be positive")
        for p in ps:
            if not sympy.isprime(p):
                raise ValueError(f"{p} is listed as prime but is not")
        if self.cofactor is not None and self.cofactor < 2:
            raise ValueError("cofactor must be an integer >= 2 or None")

    @property
    def complete(self) -> bool:
        return self.cofactor is None

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.primes:
            v *= p**e
        if self.cofactor is not None:
            v *= self.cofactor
        return v


def factorize(n: int, trial_limit: int = 10**6, split_budget: int | None = None) -> Factorization:
    """Factor n into the Factorization record.

    split_budget=None: full factorization (no cofactor).  split_budget=0:
    trial division up to trial_limit only; any remaining composite part is
    reported as a cofactor.  split_budget=b>0: composite remainders of at
    most b bits are factored fully, larger ones become the cofactor.

    The budget caps effort, not completeness: if the factors happen to be
    found cheaply (for example from an earlier call in the same process),
    the result may be complete even when a cofactor would have been allowed.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    a = abs(n)
    if a == 1:
        return Factorization(sign, ())
    if split_budget is None:
        fac = sympy.factorint(a)
        return Factorization(sign, tuple(sorted(fac.items())))
    fac = sympy.factorint(a, limit=trial_limit, multiple=False)
    primes: dict[int, int] = {}
    cof = 1
    for q, e in fac.items():
        if sympy.isprime(q):
            primes[q] = primes.get(q, 0) + e
        elif split_budget > 0 and q.bit_length() <= split_budget:
            for p2, e2 in sympy.factorint(q).items():
                primes[p2] = primes.get(p2, 0) + e2 * e
        else:
            cof *= q**e
    return Factorization(sign, tuple(sorted(primes.items())), None if cof == 1 else cof)


def exceptional_primes(coefficients, k: int, t: int) -> tuple[int, ...]:
    """Primes > k, coprime to t, dividing every given (nonzero) coefficient.

    These are exactly the admissible moduli the coefficients cannot speak
    for.  Primes <= k or sharing a factor with t are excluded because no
    admissible modulus is of that kind.
    """
    coeffs = [abs(c) for c in coefficients]
    if not coeffs or any(c == 0 for c in coeffs):
        raise ValueError("coefficients must be nonzero and nonempty")
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g == 1:
        return ()
    return tuple(
        q for q in sorted(sympy.factorint(g)) if q > k and math.gcd(q, t) == 1
    )


@dataclass(frozen=True)
class CertificateEntry:
    monomial: tuple[int, ...]
    coefficient: int
    factorization: Factorization

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("certificate entries must have nonzero coefficients")
        if self.factorization.value != self.coefficient:
            raise ValueError(
                f"factorization {self.factorization} does not multiply back to "
                f"{self.coefficient}"
            )


@dataclass(frozen=True)
class Certificate:
    """A verified-structure record for one type and arrangement."""

    k: int
    t: int
    lam: tuple[int, ...]
    a: tuple[int, ...]
    fixes: tuple[int, ...]
    variant: str
    degree: int
    bound: tuple[int, ...]
    entries: tuple[CertificateEntry, ...]
    exceptional: tuple[int, ...]

    def __post_init__(self):
        qs = validate_quotient(self.a, self.lam)
        build = build_p if self.variant == FULL else build_q
        fl = build(qs, self.fixes)
        if fl.degree != self.degree:
            raise ValueError(
                f"declared degree {self.degree} but the factor list has "
                f"degree {fl.degree}"
            )
        if bounding_monomial(self.lam, qs, self.fixes) != tuple(self.bound):
            raise ValueError("declared bound does not match the arrangement")
        if self.degree > sum(self.bound):
            raise ValueError("degree exceeds the bound: certificate unusable")
        if not self.entries:
            raise ValueError("a certificate needs at least one entry")
        for entry in self.entries:
            if len(entry.monomial) != self.k:
                raise ValueError("entry monomial has wrong arity")
            if sum(entry.monomial) != self.degree:
                raise ValueError("entry monomial degree must equal the product degree")
            if any(m > b for m, b in zip(entry.monomial, self.bound)):
                raise ValueError("entry monomial must divide the bound")
        expect = exceptional_primes(
            [e.coefficient for e in self.entries], self.k, self.t
        )
        if tuple(self.exceptional) != expect:
            raise ValueError(
                f"declared exceptional primes {self.exceptional} but the "
                f"entries give {expect}"
            )

    @property
    def validity_condition(self) -> str:
        """Human-readable statement of when the certificate applies."""
        base = (
            f"all primes p with p > {self.k} (covering the at most "
            f"{self.k + 1}-fold partial-sum residue repeats) and gcd(p, {self.t}) = 1"
        )
        if self.exceptional:
            return base + f", excluding p in {{{', '.join(map(str, self.exceptional))}}}"
        return base

    def is_valid_for(self, p: int) -> bool:
        """Does this certificate prove the conclusion in Z_p x Z_t?"""
        return (
            sympy.isprime(p)
            and p > self.k
            and math.gcd(p, self.t) == 1
            and p not in self.exceptional
        )

    def witness_for(self, p: int) -> CertificateEntry:
        if not self.is_valid_for(p):
            raise ValueError(f"certificate does not apply to p={p}")
        for entry in self.entries:
            if entry.coefficient % p != 0:
                return entry
        raise AssertionError("exceptional-prime bookkeeping is inconsistent")


@dataclass(frozen=True)
class AttemptRecord:
    a: tuple[int, ...]
    fixes: tuple[int, ...]
    monomial: tuple[int, ...] | None
    outcome: str  # nonzero | zero | aborted | infeasible | skipped-degree
    coefficient: int | None = None
    note: str = ""


@dataclass(frozen=True)
class UnresolvedType:
    lam: tuple[int, ...]
    reason: str


@dataclass(frozen=True)
class TypeResult:
    lam: tuple[int, ...]
    orbit: tuple[tuple[int, ...], ...]
    certificate: Certificate | None
    unresolved: UnresolvedType | None
    attempts: tuple[AttemptRecord, ...]
    derived_from: tuple[int, ...] | None = None  # orbit representative reused


@dataclass(frozen=True)
class CaseReport:
    k: int
    t: int
    results: tuple[TypeResult, ...]

    @property
    def complete(self) -> bool:
        return all(r.certificate is not None for r in self.results)

    def certificates(self) -> tuple[Certificate, ...]:
        return tuple(r.certificate for r in self.results if r.certificate)


@dataclass(frozen=True)
class CaseOverride:
    """Manual control for one type: pin the arrangement, fixes or monomials."""

    a: tuple[int, ...] | None = None
    fixes: tuple[int, ...] | None = None
    monomials: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class CaseConfig:
    qs_limit: int = 8
    qs_budget: int = 10**6
    max_candidates: int = 24
    term_cap: int | None = 200_000_000
    op_cap: int | None = None
    max_degree: int = 60
    workers: int = 1
    seed: int = 0
    variant: str = FULL
    use_greedy_fixes: bool = True
    checkpoint_dir: str | None = None
    overrides: dict = field(default_factory=dict)


def candidate_monomials(bound, degree: int, limit: int):
    """Monomials of the given total degree dividing bound.

    Enumerated by distributing the total deficit sum(bound) - degree over
    positions left to right, each position taking as much as possible first:
    the first monomial shorts the first position the most.
    """
    bound = tuple(bound)
    total = sum(bound) - degree
    if total < 0:
        return []
    k = len(bound)
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] + bound[i]
    out: list[tuple[int, ...]] = []

    def rec(i: int, rem: int, cur: list[int]) -> None:
        if len(out) >= limit:
            return
        if i == k:
            if rem == 0:
                out.append(tuple(b - d for b, d in zip(bound, cur)))
            return
        top = min(bound[i], rem)
        for d in range(top, -1, -1):
            if rem - d <= suffix[i + 1]:
                cur.append(d)
                rec(i + 1, rem - d, cur)
                cur.pop()
            if len(out) >= limit:
                return

    rec(0, total, [])
    return out


def _checkpoint_path(directory, k, t, lam, a, monomial):
    name = (
        f"ckpt_k{k}_t{t}"
        f"_lam{'-'.join(map(str, lam))}"
        f"_a{''.join(map(str, a))}"
        f"_m{'-'.join(map(str, monomial))}.bin"
    )
    return os.path.join(directory, re.sub(r"[^A-Za-z0-9_.\-]", "", name))


def _attempt(lam, qs, fixes, monomials, config, attempts, t):
    """Try one (arrangement, fixes) pair; return a Certificate or None."""
    k = qs.k
    build = build_p if config.variant == FULL else build_q
    try:
        fl = build(qs, fixes)
        bound = bounding_monomial(lam, qs, fixes)
    except InfeasibleFixing as exc:
        attempts.append(
            AttemptRecord(qs.a, tuple(sorted(fixes)), None, "infeasible", note=str(exc))
        )
        return None
    if fl.degree > sum(bound):
        attempts.append(
            AttemptRecord(
                qs.a,
                tuple(sorted(fixes)),
                None,
                "infeasible",
                note=f"degree {fl.degree} exceeds bound degree {sum(bound)}",
            )
        )
        return None
    if fl.degree > config.max_degree:
        attempts.append(
            AttemptRecord(
                qs.a,
                tuple(sorted(fixes)),
                None,
                "skipped-degree",
                note=f"degree {fl.degree} above budget {config.max_degree}",
            )
        )
        return None
    if monomials is None:
        monomials = candidate_monomials(bound, fl.degree, config.max_candidates)
    entries: list[CertificateEntry] = []
    for mono in monomials:
        try:
            poly = multiply_factors(
                fl,
                bound=bound,
                target=mono,
                term_cap=config.term_cap,
                op_cap=config.op_cap,
                workers=config.workers,
            )
        except EngineAbort as abort:
            note = str(abort)
            if config.checkpoint_dir and abort.checkpoint is not None:
                path = _checkpoint_path(config.checkpoint_dir, k, t, lam, qs.a, mono)
                save_checkpoint(path, abort.checkpoint)
                note += f"; checkpoint saved to {path}"
            attempts.append(
                AttemptRecord(qs.a, tuple(sorted(fixes)), mono, "aborted", note=note)
            )
            continue
        coeff = poly.coefficient(mono)
        if coeff == 0:
            attempts.append(
                AttemptRecord(qs.a, tuple(sorted(fixes)), mono, "zero", coefficient=0)
            )
            continue
        attempts.append(
            AttemptRecord(qs.a, tuple(sorted(fixes)), mono, "nonzero", coefficient=coeff)
        )
        entries.append(CertificateEntry(mono, coeff, factorize(coeff)))
        if not exceptional_primes([e.coefficient for e in entries], k, t):
            break
    if not entries:
        return None
    return Certificate(
        k=k,
        t=t,
        lam=tuple(lam),
        a=qs.a,
        fixes=tuple(sorted(fixes)),
        variant=config.variant,
        degree=fl.degree,
        bound=bound,
        entries=tuple(entries),
        exceptional=exceptional_primes([e.coefficient for e in entries], k, t),
    )


def certify_type(lam, t: int, config: CaseConfig | None = None) -> TypeResult:
    """Search a certificate for one type.

    Arrangements come ranked by induced degree; for each, the greedy fixing
    is tried first (when enabled), then no fixes.  The first certificate
    with no exceptional primes wins; otherwise the one with the fewest
    exceptional primes (ties: fewer entries) is kept.
    """
    if config is None:
        config = CaseConfig()
    lam = tuple(lam)
    if len(lam) != t:
        raise ValueError(f"type {lam} does not have {t} parts")
    k = sum(lam)
    attempts: list[AttemptRecord] = []
    best: Certificate | None = None

    override: CaseOverride | None = config.overrides.get(lam)
    if override is not None and override.a is not None:
        ranked = [validate_quotient(override.a, lam)]
    else:
        ranked = [
            s.qs
            for s in search_quotient(
                lam, "min-degree", limit=config.qs_limit,
                budget=config.qs_budget, seed=config.seed,
            ).candidates
        ]

    for qs in ranked:
        build = build_p if config.variant == FULL else build_q
        if override is not None and override.fixes is not None:
            fix_plans = [tuple(override.fixes)]
        elif config.use_greedy_fixes:
            greedy = tuple(sorted(choose_fixes(build(qs), lam, qs)))
            fix_plans = [greedy, ()] if greedy else [()]
        else:
            fix_plans = [()]
        monos = override.monomials if override is not None else None
        for fixes in fix_plans:
            cert = _attempt(lam, qs, fixes, monos, config, attempts, t)
            if cert is not None:
                if not cert.exceptional:
                    return TypeResult(
                        lam, type_orbit(lam), cert, None, tuple(attempts)
                    )
                if best is None or (
                    (len(cert.exceptional), len(cert.entries))
                    < (len(best.exceptional), len(best.entries))
                ):
                    best = cert
    if best is not None:
        return TypeResult(lam, type_orbit(lam), best, None, tuple(attempts))
    outcomes = {rec.outcome for rec in attempts}
    if "aborted" in outcomes or "skipped-degree" in outcomes:
        reason = "work budget exhausted before a nonzero coefficient was found"
    elif "zero" in outcomes:
        reason = "every candidate monomial tried had coefficient zero"
    else:
        reason = "no arrangement satisfied the degree condition"
    return TypeResult(
        lam, type_orbit(lam), None, UnresolvedType(lam, reason), tuple(attempts)
    )


def _rescale_type(lam, u: int) -> tuple[int, ...]:
    t = len(lam)
    out = [0] * t
    for v, c in enumerate(lam):
        out[(u * v) % t] = c
    return tuple(out)


def transfer_certificate(cert: Certificate, u: int) -> Certificate:
    """Certificate for the unit-rescaled type u * lam.

    Multiplying second coordinates by a unit of Z_t is a group automorphism,
    and it preserves the equality pattern of both the arrangement and its
    partial sums, so the factor list, bound and coefficients carry over
    verbatim; only the residue labels change.
    """
    if math.gcd(u, cert.t) != 1:
        raise ValueError(f"{u} is not a unit modulo {cert.t}")
    return replace(
        cert,
        lam=_rescale_type(cert.lam, u),
        a=tuple((u * v) % cert.t for v in cert.a),
    )


def assemble_case(k: int, t: int, config: CaseConfig | None = None) -> CaseReport:
    """Certificates for every type of size-k subsets of Z_p x Z_t.

    One representative per orbit under unit rescaling of the second
    coordinate is computed from scratch; the other orbit members reuse its
    certificate with relabeled residues (the underlying factor product is
    identical), marked with derived_from.
    """
    if config is None:
        config = CaseConfig()
    if not 1 <= t <= 5:
        raise ValueError(f"supported envelope is 1 <= t <= 5, got t={t}")
    if not 1 <= k <= 15:
        raise ValueError(f"supported envelope is 1 <= k <= 15, got k={k}")
    computed: dict[tuple[int, ...], TypeResult] = {}
    results = []
    for lam in enumerate_types(k, t):
        rep = canonical_type(lam)
        if rep == lam:
            res = certify_type(lam, t, config)
            computed[lam] = res
            results.append(res)
            continue
        base = computed[rep]
        unit = next(
            u
            for u in range(1, t)
            if math.gcd(u, t) == 1 and _rescale_type(rep, u) == lam
        )
        results.append(
            TypeResult(
                lam,
                base.orbit,
                None
                if base.certificate is None
                else transfer_certificate(base.certificate, unit),
                None
                if base.unresolved is None
                else UnresolvedType(lam, base.unresolved.reason),
                (),
                derived_from=rep,
            )
        )
    return CaseReport(k, t, tuple(results))
