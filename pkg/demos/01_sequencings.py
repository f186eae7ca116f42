"""Sequencing basics.

A subset S of a finite abelian group (0 excluded) is *sequenceable* when its
elements can be ordered so that the walk of partial sums never revisits a
point.  Two flavors exist, dictated by the total sum:

* linear    — sum(S) != 0: all k+1 partial sums are pairwise distinct;
* rotational — sum(S) == 0: the walk must return to 0 at the last step, and
  that closing collision is the only one allowed.

This demo finds explicit sequencings in small cyclic groups with the
exhaustive oracle and double-checks the classification.

Run:  python demos/01_sequencings.py
"""

from nullseq.groups import Cyclic, classify_sequencing, partial_sums, subset_sum
from nullseq.oracle import all_sequencings, find_sequencing


def show(subset, n):
    group = Cyclic(n)
    total = subset_sum(subset, group)
    seq = find_sequencing(subset, group)
    kind = classify_sequencing(subset, seq, group)
    print(f"S = {set(subset)} in Z_{n}   (sum = {total})")
    print(f"  ordering       : {seq}")
    print(f"  partial sums   : {partial_sums(seq, group)}")
    print(f"  classification : {kind}")
    print()


def main():
    print("== linear: the sum is nonzero, so the walk never returns ==\n")
    show((1, 2, 3), 7)
    show((1, 3, 4, 5), 9)

    print("== rotational: the sum is zero, so the walk closes at 0 ==\n")
    show((1, 2, 3), 6)
    show((2, 3, 5, 8), 9)

    print("== how many orderings work? ==\n")
    import math

    group = Cyclic(8)
    subset = (1, 2, 5)
    seqs = all_sequencings(subset, group)
    print(f"S = {set(subset)} in Z_8 has {len(seqs)} valid orderings "
          f"out of {math.factorial(len(subset))} permutations:")
    for seq in seqs:
        print(f"  {seq}  sums {partial_sums(seq, group)}")


if __name__ == "__main__":
    main()
