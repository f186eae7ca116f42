"""Certifying a whole case: every type at once.

A *case* (k, t) covers all subsets of size k in Z_p x Z_t.  Subsets split
by type, so the engine certifies one type at a time: rank arrangements,
plan fixes, try candidate monomials until a nonzero coefficient lands.
Types related by relabeling the quotient (multiplying second coordinates
by a unit of Z_t) are equivalent, so only one representative per orbit is
computed; siblings receive transferred certificates.

This demo assembles the full k=5, t=2 case, shows the certificates, and
then brute-force checks the conclusion inside the concrete group
Z_11 x Z_2.

Run:  python demos/04_full_case.py
"""

from nullseq.certify import assemble_case
from nullseq.oracle import verify_nonvanishing_conclusion
from nullseq.reports import format_factorization


def main():
    report = assemble_case(5, 2)
    print(f"case k=5, t=2: {len(report.results)} types, "
          f"complete={report.complete}\n")
    for res in report.results:
        cert = res.certificate
        entry = cert.entries[0]
        origin = (
            f"transferred from {res.derived_from}"
            if res.derived_from
            else f"{len(res.attempts)} attempt(s)"
        )
        print(f"  lam={cert.lam}  a={cert.a}  fixes={cert.fixes or '-'}")
        print(f"    monomial {entry.monomial}  coefficient "
              f"{entry.coefficient} = {format_factorization(entry.factorization)}"
              f"  [{origin}]")
    print()

    print("cross-check: does the promised ordering really exist in "
          "Z_11 x Z_2?")
    for cert in report.certificates():
        ver = verify_nonvanishing_conclusion(11, 2, cert.lam, cert.a)
        print(f"  lam={cert.lam}: {ver.subsets_checked} subsets of that "
              f"type checked -> {'all sequenceable' if ver.ok else 'FAILURE'}")

    # Z_2 has no unit other than 1, so every type above was computed
    # directly; with t = 3 the unit 2 pairs up types and half the case
    # comes from transfers
    print("\norbit transfer at work (k=4, t=3):")
    report3 = assemble_case(4, 3)
    derived = [r for r in report3.results if r.derived_from is not None]
    print(f"  {len(report3.results)} types, {len(derived)} obtained by "
          f"relabeling instead of recomputation:")
    for res in derived:
        print(f"    lam={res.lam} <- computed representative "
              f"{res.derived_from}")


if __name__ == "__main__":
    main()
