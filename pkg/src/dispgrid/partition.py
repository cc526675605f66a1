"""Grouping of large boxes by per-axis shape on a dyadic grid.

Every axis-parallel box with volume above 2^-k is grouped, per axis, by a
length bucket ``span`` (side length in (span/2^k, (span+1)/2^k]) and an
``anchor`` grid value just above its infimum (inf in [anchor - 2^-k,
anchor)). The groups partition the family of large boxes. All members of one
group contain the group's closed *core box*

    prod_axes [anchor, anchor + (span - 1)/2^k],

whose grid section has exactly prod(span) points. Hitting every core box
with a point set therefore certifies that no box of volume above 2^-k is
empty. This module provides the classification, feasibility, enumeration,
and the counting formulas entering the union-bound failure estimates.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .empty_box import Box
from .grid import GridParams, exact_fraction, require_k
from .guards import DEFAULT_ENUMERATION_LIMIT, check_enumeration


@dataclass(frozen=True)
class CoreBox:
    """Closed grid-aligned box shared by every member of a box class.

    Bounds are inclusive integer numerators over 2^k; axes with lo == hi are
    degenerate (a single grid slice), which is the common case.
    """

    k: int
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        m = 2**require_k(self.k)
        for lo, hi in zip(self.lo, self.hi):
            if not (1 <= lo <= hi <= m - 1):
                raise ValueError(f"core bounds {lo}..{hi} outside the grid 1..{m - 1}")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def grid_point_count(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in zip(self.lo, self.hi))

    def contains_numerators(self, nums) -> bool:
        return all(lo <= a <= hi for a, lo, hi in zip(nums, self.lo, self.hi))

    def iter_grid_points(self) -> Iterator[tuple[int, ...]]:
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lo, self.hi)]
        return itertools.product(*ranges)

    def lower_values(self) -> tuple[Fraction, ...]:
        m = 2**self.k
        return tuple(Fraction(a, m) for a in self.lo)

    def upper_values(self) -> tuple[Fraction, ...]:
        m = 2**self.k
        return tuple(Fraction(a, m) for a in self.hi)


@dataclass(frozen=True)
class BoxClass:
    """One group of large boxes: per-axis anchors and length buckets.

    ``anchor`` holds grid numerators in 1 .. 2^k - 1, ``span`` holds length
    buckets in 0 .. 2^k - 1. A class is *feasible* when it actually contains
    a box of volume above 2^-k.
    """

    k: int
    anchor: tuple[int, ...]
    span: tuple[int, ...]

    def __post_init__(self):
        m = 2**require_k(self.k)
        if len(self.anchor) != len(self.span) or not self.anchor:
            raise ValueError("anchor and span must be nonempty vectors of equal length")
        for a in self.anchor:
            if not (1 <= a <= m - 1):
                raise ValueError(f"anchor numerator {a} outside 1 .. {m - 1}")
        for s in self.span:
            if not (0 <= s <= m - 1):
                raise ValueError(f"span {s} outside 0 .. {m - 1}")

    @property
    def dim(self) -> int:
        return len(self.anchor)

    @property
    def short_sides(self) -> int:
        """Number of axes whose length bucket is below the maximal 2^k - 1."""
        m = 2**self.k
        return sum(1 for s in self.span if s < m - 1)

    def anchor_values(self) -> tuple[Fraction, ...]:
        m = 2**self.k
        return tuple(Fraction(a, m) for a in self.anchor)

    def max_volume(self) -> Fraction:
        """Largest volume attainable by a member box, as an exact rational.

        Per axis the length is capped both by the bucket, (span+1)/2^k, and
        by the room left of 1 from the lowest infimum, (2^k - anchor + 1)/2^k.
        """
        m = 2**self.k
        num = math.prod(min(s + 1, m - a + 1) for a, s in zip(self.anchor, self.span))
        return Fraction(num, m**self.dim)

    def is_feasible(self) -> bool:
        """Whether the class contains any box of volume above 2^-k.

        Requires every span to be at least 1, every anchor to leave room for
        a side longer than span/2^k inside [0,1] (anchor <= 2^k - span), and
        the attainable maximum volume to exceed 2^-k strictly.
        """
        m = 2**self.k
        for a, s in zip(self.anchor, self.span):
            if s < 1 or a > m - s:
                return False
        return self.max_volume() > Fraction(1, m)

    def core_box(self) -> CoreBox:
        """The closed box [anchor, anchor + (span-1)/2^k] per axis."""
        if not self.is_feasible():
            raise ValueError(f"infeasible class has no core box: {self}")
        hi = tuple(a + s - 1 for a, s in zip(self.anchor, self.span))
        return CoreBox(k=self.k, lo=self.anchor, hi=hi)


def short_side_threshold(k) -> float:
    """Strict upper bound ln(2) * k * 2^k on the short-side count of any feasible class."""
    kk = require_k(k)
    return math.log(2) * kk * 2**kk


def classify_box(box: Box, k) -> BoxClass:
    """The unique class whose per-axis length and infimum conditions the box satisfies.

    Endpoints are taken at their exact rational values (floats contribute
    their exact binary value). Rejects boxes with volume <= 2^-k, which
    belong to no class.
    """
    kk = require_k(k)
    m = 2**kk
    lower = [exact_fraction(x) for x in box.lower]
    upper = [exact_fraction(x) for x in box.upper]
    volume = math.prod(u - l for l, u in zip(lower, upper))
    if not volume > Fraction(1, m):
        raise ValueError(f"box volume {volume} is not above 2^-{kk}; no class matches")
    anchor = []
    span = []
    for lo, hi in zip(lower, upper):
        length = hi - lo
        s = math.ceil(length * m) - 1
        a = math.floor(lo * m) + 1
        if a >= m:
            raise AssertionError(
                "infimum within 2^-k of 1 cannot occur for a box of volume above 2^-k"
            )
        anchor.append(a)
        span.append(s)
    return BoxClass(k=kk, anchor=tuple(anchor), span=tuple(span))


def enumerate_feasible_classes(
    k, d: int, *, prune_short_sides: bool = False, limit: int | None = None
) -> Iterator[BoxClass]:
    """All feasible classes at resolution k in dimension d.

    With ``prune_short_sides`` set, span vectors with short-side count at or
    above the ln(2)*k*2^k threshold are skipped before the anchor loop; every
    feasible class satisfies the threshold strictly, so the yielded set is
    identical either way.
    """
    kk = require_k(k)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    m = 2**kk
    check_enumeration(
        "box-class enumeration", (m**d) * ((m - 1) ** d), limit, DEFAULT_ENUMERATION_LIMIT
    )
    threshold = short_side_threshold(kk)
    vol_floor = m ** (d - 1)
    for span in itertools.product(range(1, m), repeat=d):
        if prune_short_sides:
            short = sum(1 for s in span if s < m - 1)
            if short >= threshold:
                continue
        anchor_ranges = [range(1, m - s + 1) for s in span]
        for anchor in itertools.product(*anchor_ranges):
            num = 1
            for a, s in zip(anchor, span):
                num *= min(s + 1, m - a + 1)
            if num > vol_floor:
                yield BoxClass(k=kk, anchor=anchor, span=span)


def anchor_count(span, k) -> int:
    """Per-axis anchor count prod(2^k - span) paired with one span vector."""
    m = 2**require_k(k)
    for s in span:
        if not (0 <= s <= m - 1):
            raise ValueError(f"span {s} outside 0 .. {m - 1}")
    return math.prod(m - s for s in span)


def anchor_formula_count(k, d: int) -> int:
    """Sum of the per-axis anchor counts over all spans with every side >= 1.

    Factorizes as (sum_{s=1}^{2^k-1} (2^k - s))^d = (2^(k-1) (2^k - 1))^d.
    Counts (anchor, span) pairs by the per-axis rule alone; spans whose
    classes all fail the volume condition are still included, so this may
    exceed the exact feasible-class count in dimension 2 and up.
    """
    kk = require_k(k)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    m = 2**kk
    return (m * (m - 1) // 2) ** d


def ln_span_count_bound(k, d: int) -> float:
    """Natural log of the span-count bound (4d/k)^(ln(2) k 2^k)."""
    kk = require_k(k)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return short_side_threshold(kk) * math.log(4 * d / kk)


def ln_class_count_bound(k, d: int) -> float:
    """Natural log of the class-count bound 2^(k 2^k log2(2^(k+1) d))."""
    kk = require_k(k)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return math.log(2) * kk * 2**kk * math.log2(2 ** (kk + 1) * d)


@dataclass(frozen=True)
class CountAudit:
    """Exact feasible-class count against the per-axis formula and the log-space bound."""

    k: int
    d: int
    exact_feasible_count: int
    anchor_formula_count: int
    ln_class_count_bound: float


def count_audit(k, d: int, *, limit: int | None = None) -> CountAudit:
    exact = sum(1 for _ in enumerate_feasible_classes(k, d, limit=limit))
    return CountAudit(
        k=require_k(k),
        d=d,
        exact_feasible_count=exact,
        anchor_formula_count=anchor_formula_count(k, d),
        ln_class_count_bound=ln_class_count_bound(k, d),
    )
