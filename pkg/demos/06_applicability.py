"""Which cyclic groups do the certificates reach?

A certificate family for subsets of size k in Z_p x Z_t transfers to the
cyclic group Z_n whenever n = m * t with every prime factor of m larger
than k!/2.  Subsets of size k <= 9 are covered for every abelian group
with no conditions at all.  For k in {13, 14, 15} the covered rows carry a
side condition on how many subset elements land inside the order-m
subgroup, so without a concrete subset the verdict is "conditional".

Run:  python demos/06_applicability.py
"""

import math

import sympy

from nullseq.applicability import applicability


def show(n, k, subset=None, label=""):
    res = applicability(n, k, subset=subset)
    extra = f"  [{label}]" if label else ""
    print(f"  applicability(n={n}, k={k}"
          f"{', subset=...' if subset else ''}) -> {res.verdict}{extra}")
    for s in res.splits:
        if s.verdict == res.verdict:
            note = "" if s.lam0 is None else f", {s.lam0} elements inside"
            print(f"      via n = {s.m} * {s.t}{note}")
            break


def main():
    print("small subsets: covered everywhere, nothing to check")
    show(123456, 9)
    print()

    threshold10 = math.factorial(10) // 2
    p = sympy.nextprime(threshold10)
    print(f"k = 10 needs prime factors above 10!/2 = {threshold10}")
    show(2 * p, 10, label=f"m = {p} is prime and big enough")
    show(22, 10, label="m = 11 is far below the threshold")
    print()

    print("a near miss at k = 11: 11!/2 + 1 looks prime but is not")
    m = math.factorial(11) // 2 + 1
    print(f"  {m} = {' * '.join(str(q) for q in sympy.factorint(m))}")
    show(2 * m, 11, label="both factors below 11!/2")
    show(2 * sympy.nextprime(m), 11, label="the next prime works")
    print()

    print("k = 13: covered only conditionally without a concrete subset")
    q = sympy.nextprime(math.factorial(13) // 2)
    show(2 * q, 13)
    evens = tuple(range(2, 28, 2))
    show(2 * q, 13, subset=evens,
         label="all 13 elements inside the subgroup: excluded")
    mixed = evens[:12] + (3,)
    show(2 * q, 13, subset=mixed, label="one element outside: covered")


if __name__ == "__main__":
    main()
