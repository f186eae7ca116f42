"""Quotient sequencings: arrangements of second coordinates whose partial sums
keep every residue's multiplicity within a bound.

An arrangement a = (a_1 .. a_k) over Z_t has partial sums b = (b_0 .. b_k)
with b_0 = 0.  It is a quotient sequencing with respect to r when no value of
Z_t occurs more than r times in b.  The pipeline uses r = p: subsets whose
second coordinates arrange this way can have all their full partial sums
distinct, because each residue class has at most p slots.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from sympy.utilities.iterables import multiset_permutations


class NotQuotientSequencing(ValueError):
    """The multiplicity bound on partial sums is violated."""


@dataclass(frozen=True)
class QuotientSequencing:
    """An arrangement of second coordinates together with its partial sums.

    r is the multiplicity bound; r=None leaves it symbolic (any prime larger
    than the arrangement length works, since b has k+1 entries).
    """

    a: tuple[int, ...]
    t: int
    r: int | None = None
    b: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be positive")
        a = tuple(self.a)
        if any(not (0 <= v < self.t) for v in a):
            raise ValueError("arrangement entries must lie in 0 .. t-1")
        object.__setattr__(self, "a", a)
        acc = 0
        b = [0]
        for v in a:
            acc = (acc + v) % self.t
            b.append(acc)
        object.__setattr__(self, "b", tuple(b))
        if self.r is not None and self.max_multiplicity > self.r:
            raise NotQuotientSequencing(
                f"some residue appears {self.max_multiplicity} times in the "
                f"partial sums, exceeding the bound r={self.r}"
            )

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def max_multiplicity(self) -> int:
        return max(Counter(self.b).values())

    def type_vector(self) -> tuple[int, ...]:
        lam = [0] * self.t
        for v in self.a:
            lam[v] += 1
        return tuple(lam)


def validate_quotient(a, lam, r=None) -> QuotientSequencing:
    """Build a QuotientSequencing for arrangement a of a type lam.

    Raises ValueError when the multiset of a does not match lam, and
    NotQuotientSequencing when the multiplicity bound fails.
    """
    t = len(lam)
    qs = QuotientSequencing(tuple(a), t, r)
    if qs.type_vector() != tuple(lam):
        raise ValueError(f"arrangement {a} is not an arrangement of type {tuple(lam)}")
    return qs


def window_pair_count(b) -> int:
    """Number of pairs i < j with b_i = b_j, j != i+1 and (i, j) != (0, k)."""
    k = len(b) - 1
    counts = Counter(b)
    total = sum(c * (c - 1) // 2 for c in counts.values())
    adjacent = sum(1 for i in range(k) if b[i] == b[i + 1])
    wrap = 1 if k >= 2 and b[0] == b[k] else 0
    return total - adjacent - wrap


def induced_degree(lam, b) -> int:
    """Exact degree of the distinctness polynomial an arrangement induces.

    Difference factors contribute C(lam_v, 2) per residue v; window factors
    are counted by window_pair_count.
    """
    return sum(c * (c - 1) // 2 for c in lam) + window_pair_count(b)


def bounding_degree(lam) -> int:
    """Degree of the unfixed bounding monomial: sum of lam_v * (lam_v - 1)."""
    return sum(c * (c - 1) for c in lam)


def arrangement_count(lam) -> int:
    """Number of distinct arrangements of the multiset described by lam."""
    k = sum(lam)
    total = 1
    seen = 0
    for c in lam:
        for i in range(1, c + 1):
            seen += 1
            total = total * seen // i
    return total


def enumerate_arrangements(lam):
    """Yield all distinct arrangements of the type multiset, lexicographically."""
    pool = []
    for v, c in enumerate(lam):
        pool.extend([v] * c)
    if not pool:
        yield ()
        return
    for perm in multiset_permutations(pool):
        yield tuple(perm)


@dataclass(frozen=True)
class ScoredSequencing:
    qs: QuotientSequencing
    degree: int
    max_multiplicity: int
    feasible: bool  # degree <= bounding monomial degree (reported, not enforced)


@dataclass(frozen=True)
class QuotientSearchResult:
    candidates: tuple[ScoredSequencing, ...]
    exhaustive: bool
    scanned: int


def _score_key(objective, degree, mult, a):
    if objective == "min-degree":
        return (degree, mult, a)
    if objective == "min-max-multiplicity":
        return (mult, degree, a)
    raise ValueError(f"unknown objective {objective!r}")


def search_quotient(lam, objective="min-degree", limit=10, budget=10**6, seed=0):
    """Rank arrangements of a type by induced degree or by multiplicity.

    Exhaustive when the number of distinct arrangements fits the budget;
    otherwise randomized hill climbing with restarts (pairwise swaps,
    first-improvement), deterministic for a given seed, and the result is
    flagged non-exhaustive.  Ties break toward smaller max multiplicity
    (or degree, for the multiplicity objective), then the smallest
    arrangement lexicographically.
    """
    lam = tuple(lam)
    if any(c < 0 for c in lam) or sum(lam) == 0:
        raise ValueError("type must be nonnegative with positive size")
    bdeg = bounding_degree(lam)

    def score(a):
        qs = QuotientSequencing(a, len(lam))
        return qs, induced_degree(lam, qs.b), qs.max_multiplicity

    if arrangement_count(lam) <= budget:
        best = []
        scanned = 0
        for a in enumerate_arrangements(lam):
            qs, deg, mult = score(a)
            scanned += 1
            best.append((_score_key(objective, deg, mult, a), qs, deg, mult))
        best.sort(key=lambda item: item[0])
        top = tuple(
            ScoredSequencing(qs, deg, mult, deg <= bdeg)
            for _, qs, deg, mult in best[:limit]
        )
        return QuotientSearchResult(top, True, scanned)

    # heuristic: random restarts + first-improvement swap climbing
    rng = random.Random(seed)
    pool = []
    for v, c in enumerate(lam):
        pool.extend([v] * c)
    k = len(pool)
    found = {}
    evals = 0
    while evals < budget:
        cur = pool[:]
        rng.shuffle(cur)
        a = tuple(cur)
        qs, deg, mult = score(a)
        evals += 1
        improved = True
        while improved and evals < budget:
            improved = False
            for i in range(k - 1):
                for j in range(i + 1, k):
                    if cur[i] == cur[j]:
                        continue
                    cur[i], cur[j] = cur[j], cur[i]
                    cand = tuple(cur)
                    cqs, cdeg, cmult = score(cand)
                    evals += 1
                    if _score_key(objective, cdeg, cmult, cand) < _score_key(
                        objective, deg, mult, a
                    ):
                        a, qs, deg, mult = cand, cqs, cdeg, cmult
                        improved = True
                        break
                    cur[i], cur[j] = cur[j], cur[i]
                    if evals >= budget:
                        break
                if improved or evals >= budget:
                    break
        found[a] = (qs, deg, mult)
    ranked = sorted(
        found.values(), key=lambda item: _score_key(objective, item[1], item[2], item[0].a)
    )
    top = tuple(
        ScoredSequencing(qs, deg, mult, deg <= bdeg) for qs, deg, mult in ranked[:limit]
    )
    return QuotientSearchResult(top, False, evals)
