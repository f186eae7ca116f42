"""Factor lists for the distinctness polynomials.

Given an arrangement a with partial sums b, the full polynomial is a product
of two families of degree-1 factors over the first coordinates x_1 .. x_k:

* difference factors (x_j - x_i) for i < j with a_i = a_j, ensuring elements
  in the same coset are distinct;
* window factors x_{i+1} + ... + x_j for b-index pairs i < j with b_i = b_j,
  j != i+1 and (i, j) != (0, k), ensuring partial sums in the same coset are
  distinct (y_j - y_i telescopes to that window of consecutive variables).

The reduced variant drops window factors for pairs with j = i+2 as well,
which is sound when no two chosen elements may be mutual inverses.

Fixing a position substitutes a constant for its variable: difference factors
touching a fixed position are removed, window factors drop the fixed variable
(additive constants are irrelevant to top-degree coefficients, and the drop
is recorded).  Fixed positions must never be adjacent, so every window keeps
at least one variable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quotient import QuotientSequencing

FULL = "full"
REDUCED = "reduced"


class InfeasibleFixing(ValueError):
    """A fixing request breaks the rules or kills the bounding monomial."""


@dataclass(frozen=True)
class Difference:
    """Factor (x_j - x_i) with 1-based positions i < j."""

    i: int
    j: int

    def variables(self) -> tuple[int, ...]:
        return (self.i, self.j)

    def terms(self) -> tuple[tuple[int, int], ...]:
        return ((self.i, -1), (self.j, 1))

    def label(self) -> str:
        return f"x{self.j}-x{self.i}"


@dataclass(frozen=True)
class Window:
    """Factor x_{i+1} + ... + x_j for the partial-sum pair (i, j).

    vars lists the live (unfixed) positions; dropped records positions whose
    variables were replaced by constants and removed, since only top-degree
    terms are of interest.
    """

    pair: tuple[int, int]
    vars: tuple[int, ...]
    dropped: tuple[int, ...] = ()

    @property
    def offset_dropped(self) -> bool:
        return bool(self.dropped)

    def variables(self) -> tuple[int, ...]:
        return self.vars

    def terms(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, 1) for v in self.vars)

    def label(self) -> str:
        return "+".join(f"x{v}" for v in self.vars)


@dataclass(frozen=True)
class FactorList:
    """An ordered product of degree-1 factors in k variables."""

    k: int
    factors: tuple[Difference | Window, ...]
    fixed: frozenset[int]
    variant: str

    @property
    def degree(self) -> int:
        return len(self.factors)

    def labels(self) -> tuple[str, ...]:
        return tuple(f.label() for f in self.factors)


def degree(fl: FactorList) -> int:
    """Total degree of the product: every factor is homogeneous of degree 1."""
    return fl.degree


def validate_fixes(fixes, k) -> frozenset[int]:
    out = sorted(set(fixes))
    if len(out) != len(list(fixes)):
        raise InfeasibleFixing(f"fixed positions must be distinct: {sorted(fixes)}")
    for pos in out:
        if not 1 <= pos <= k:
            raise InfeasibleFixing(f"fixed position {pos} out of range 1 .. {k}")
    for prev, cur in zip(out, out[1:]):
        if cur - prev == 1:
            raise InfeasibleFixing(
                f"positions {prev} and {cur} are adjacent; a factor could "
                f"collapse to a pure constant"
            )
    return frozenset(out)


def _emit(qs: QuotientSequencing, variant: str):
    """Factors in the canonical interleaved emission order: for each pair
    (i, j) with 1 <= i < j <= k, the difference factor (when a_i = a_j)
    followed by the window for the partial-sum pair (i-1, j) (when
    admissible).  The early pairs touch few variables, keeping intermediate
    products small."""
    k = qs.k
    a, b = qs.a, qs.b
    for i in range(1, k):
        for j in range(i + 1, k + 1):
            if a[i - 1] == a[j - 1]:
                yield Difference(i, j)
            lo = i - 1  # partial-sum pair (i-1, j) covers variables i .. j
            if b[lo] == b[j] and (lo, j) != (0, k):
                if variant == REDUCED and j == lo + 2:
                    continue
                yield Window((lo, j), tuple(range(i, j + 1)))


def apply_fixes(fl: FactorList, fixes) -> FactorList:
    """Substitute constants for the given positions.

    Difference factors touching a fixed position are deleted outright (the
    distinctness they encode is delegated to choosing distinct constants).
    Window factors lose the fixed variables and record the drop.  A window
    losing every variable would let a constants-only relation slip through,
    so it is an error - impossible anyway while no two fixed positions are
    adjacent.
    """
    combined = validate_fixes(frozenset(fl.fixed) | frozenset(fixes), fl.k)
    if combined == fl.fixed:
        return fl
    out: list[Difference | Window] = []
    for factor in fl.factors:
        if isinstance(factor, Difference):
            if factor.i in combined or factor.j in combined:
                continue
            out.append(factor)
        else:
            live = tuple(v for v in factor.vars if v not in combined)
            gone = tuple(v for v in factor.vars if v in combined) + factor.dropped
            if not live:
                raise InfeasibleFixing(
                    f"window over partial-sum pair {factor.pair} loses every variable"
                )
            out.append(Window(factor.pair, live, tuple(sorted(gone))))
    return FactorList(fl.k, tuple(out), combined, fl.variant)


def build_p(qs: QuotientSequencing, fixes=()) -> FactorList:
    """Full factor list (differences plus all admissible windows)."""
    fl = FactorList(qs.k, tuple(_emit(qs, FULL)), frozenset(), FULL)
    return apply_fixes(fl, fixes) if fixes else fl


def build_q(qs: QuotientSequencing, fixes=()) -> FactorList:
    """Reduced factor list: windows for pairs (i, i+2) are omitted.

    Sound only for subsets that never contain both x and -x, where
    consecutive-but-one partial sums cannot collide.
    """
    fl = FactorList(qs.k, tuple(_emit(qs, REDUCED)), frozenset(), REDUCED)
    return apply_fixes(fl, fixes) if fixes else fl


def fix_counts(qs: QuotientSequencing, fixes) -> list[int]:
    """Number of fixed positions per residue class."""
    counts = [0] * qs.t
    for pos in fixes:
        counts[qs.a[pos - 1]] += 1
    return counts


def bounding_monomial(lam, qs: QuotientSequencing, fixes=()) -> tuple[int, ...]:
    """Exponents gamma_i of the bounding monomial, one per position.

    Position i draws its value from the coset of residue a_i, which holds
    lam_{a_i} elements minus one per fixed position in that coset; the
    admissible exponent is one less than the remaining choices.  Fixed
    positions get exponent 0.  Raises InfeasibleFixing when any unfixed
    position is left without enough choices.
    """
    lam = tuple(lam)
    if qs.type_vector() != lam:
        raise ValueError(f"arrangement {qs.a} does not have type {lam}")
    fixed = validate_fixes(fixes, qs.k)
    counts = fix_counts(qs, fixed)
    gamma = []
    for pos in range(1, qs.k + 1):
        if pos in fixed:
            gamma.append(0)
            continue
        v = qs.a[pos - 1]
        g = lam[v] - counts[v] - 1
        if g < 0:
            raise InfeasibleFixing(
                f"position {pos} draws from residue class {v} with "
                f"{lam[v]} elements but {counts[v]} are already fixed"
            )
        gamma.append(g)
    return tuple(gamma)


def choose_fixes(fl: FactorList, lam, qs: QuotientSequencing) -> frozenset[int]:
    """Greedily fix positions while the degree condition survives.

    Repeatedly picks the unfixed, non-adjacent position removing the most
    difference factors (ties toward the lowest position) such that the fixed
    product's degree still does not exceed the fixed bounding monomial's
    degree and no factor dies.  Zero-gain fixes are taken too: they still
    shrink the bound.  Stops when no position qualifies; may return the
    empty set.
    """
    lam = tuple(lam)
    current = fl
    fixes: set[int] = set(fl.fixed)
    while True:
        candidates = []
        for pos in range(1, fl.k + 1):
            if pos in fixes or (pos - 1) in fixes or (pos + 1) in fixes:
                continue
            gain = sum(
                1
                for f in current.factors
                if isinstance(f, Difference) and pos in f.variables()
            )
            candidates.append((-gain, pos))
        candidates.sort()
        chosen = None
        for _, pos in candidates:
            trial = fixes | {pos}
            try:
                fixed_fl = apply_fixes(fl, trial)
                gamma = bounding_monomial(lam, qs, trial)
            except InfeasibleFixing:
                continue
            if fixed_fl.degree <= sum(gamma):
                chosen = pos
                current = fixed_fl
                break
        if chosen is None:
            return frozenset(fixes)
        fixes.add(chosen)
