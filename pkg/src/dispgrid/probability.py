"""Hit probabilities, failure bounds, and their exact desk-scale oracles.

A point drawn uniformly from the grid lands in a class's core box with
probability prod(span/(2^k - 1)), which is bounded below by 2^-(k+4)
uniformly over feasible classes. Chaining that bound through a union over
all classes gives computable failure bounds for random point sets; this
module evaluates them in log space and, for instances small enough to
enumerate, computes the exact failure probability as a rational number.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .empty_box import has_empty_box_above
from .grid import PointSet, require_k
from .guards import DEFAULT_OUTCOME_LIMIT, check_enumeration
from .partition import BoxClass, enumerate_feasible_classes

CHAIN_SLACK = 1e-12


def hit_probability(cls: BoxClass) -> Fraction:
    """Chance that one uniform grid point lands in the class's core box.

    Equals prod(span / (2^k - 1)); axes with maximal span contribute 1.
    """
    if not cls.is_feasible():
        raise ValueError(f"hit probability undefined for infeasible class {cls}")
    g = 2**cls.k - 1
    num = math.prod(cls.span)
    return Fraction(num, g**cls.dim)


def min_hit_probability_bound(k) -> Fraction:
    """Uniform lower bound 2^-(k+4) on the hit probability of feasible classes."""
    kk = require_k(k)
    return Fraction(1, 2 ** (kk + 4))


def class_miss_probability_bound(k) -> float:
    """Upper bound exp(-2^-(k+4)) on the chance of missing some class's core."""
    kk = require_k(k)
    return math.exp(-(2.0 ** -(kk + 4)))


@dataclass(frozen=True)
class HitProbabilityAudit:
    """Result of sweeping every feasible class at one (k, d)."""

    k: int
    d: int
    classes_checked: int
    min_hit_probability: Fraction | None
    argmin_class: BoxClass | None
    lower_bound: Fraction
    passed: bool
    violations: tuple


def audit_hit_probabilities(k, d: int, *, limit: int | None = None) -> HitProbabilityAudit:
    """Verify the hit-probability bounds over every feasible class.

    Checks three claims per class: the exact hit probability exceeds
    2^-(k+4); it dominates the intermediate chain value
    (1 - 1/(k 2^k))^short_sides * V^(k/(k-1)) with V the class's attainable
    maximum volume (float comparison with 1e-12 slack); and the complementary
    miss probability stays below exp(-2^-(k+4)). Violations are reported, not
    raised.
    """
    kk = require_k(k)
    bound = min_hit_probability_bound(kk)
    miss_bound = class_miss_probability_bound(kk)
    shrink = 1.0 - 1.0 / (kk * 2**kk)
    exponent = kk / (kk - 1)

    count = 0
    min_hit: Fraction | None = None
    argmin: BoxClass | None = None
    violations = []
    for cls in enumerate_feasible_classes(kk, d, limit=limit):
        count += 1
        hp = hit_probability(cls)
        if min_hit is None or hp < min_hit:
            min_hit, argmin = hp, cls
        if not hp > bound:
            violations.append((cls, "hit probability not above 2^-(k+4)"))
        chain = shrink**cls.short_sides * float(cls.max_volume()) ** exponent
        if not float(hp) >= chain - CHAIN_SLACK:
            violations.append((cls, "intermediate chain inequality"))
        if not 1.0 - float(hp) < miss_bound:
            violations.append((cls, "miss probability bound"))
    return HitProbabilityAudit(
        k=kk,
        d=d,
        classes_checked=count,
        min_hit_probability=min_hit,
        argmin_class=argmin,
        lower_bound=bound,
        passed=count > 0 and not violations,
        violations=tuple(violations),
    )


def hit_factor_lhs(k, j: int) -> float:
    """Per-axis factor j / (j+1)^(k/(k-1)) entering the hit-probability bound."""
    kk = require_k(k)
    return j / (j + 1.0) ** (kk / (kk - 1.0))


@dataclass(frozen=True)
class FactorInequalityCheck:
    """Outcome of the per-axis factor inequality at one resolution."""

    k: int
    holds: bool
    min_j: int
    lhs_min: float
    rhs: float
    margin: float


def check_hit_factor_inequality(k) -> FactorInequalityCheck:
    """Check min_j j/(j+1)^(k/(k-1)) >= (2^k - 1) 2^(-k^2/(k-1)) (1 - 1/(k 2^k)).

    Evaluates the left side for every j = 1 .. 2^k - 2 (the minimum sits at
    one of the endpoints, since the map is unimodal with an interior
    maximum) and reports the minimizing j and the margin.
    """
    kk = require_k(k)
    exponent = kk / (kk - 1.0)
    j = np.arange(1, 2**kk - 1, dtype=np.float64)
    lhs = j / (j + 1.0) ** exponent
    i = int(np.argmin(lhs))
    lhs_min = float(lhs[i])
    rhs = (2**kk - 1) * 2.0 ** (-(kk * kk) / (kk - 1.0)) * (1.0 - 1.0 / (kk * 2**kk))
    margin = lhs_min - rhs
    return FactorInequalityCheck(
        k=kk, holds=margin >= 0.0, min_j=i + 1, lhs_min=lhs_min, rhs=rhs, margin=margin
    )


def ln_union_failure_bound(k, d: int, n: int) -> float:
    """Natural log of the union failure bound for n random grid points.

    The bound multiplies the class-count bound 2^(k 2^k log2(2^(k+1) d)) by
    the per-class miss bound exp(-n 2^-(k+4)):

        ln bound = ln(2) k 2^k log2(2^(k+1) d) - n 2^-(k+4).

    Negative means a point set intersecting every large box exists.
    """
    kk = require_k(k)
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return math.log(2) * kk * 2**kk * math.log2(2 ** (kk + 1) * d) - n * 2.0 ** -(kk + 4)


def ln_union_failure_bound_crude(k, d: int, n: int) -> float:
    """Natural log of the crude variant 2^(2kd) exp(-n 2^-(k+4)).

    Counts every (anchor, span) pair instead of only spans with few short
    sides; smaller than the main bound once the short-side threshold
    exceeds d.
    """
    kk = require_k(k)
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return 2.0 * kk * d * math.log(2) - n * 2.0 ** -(kk + 4)


@dataclass(frozen=True)
class FailureBoundReport:
    """Both failure bounds at one (k, d, n), with the n making each drop below 1."""

    k: int
    d: int
    n: int
    ln_union_bound: float
    ln_crude_bound: float
    n_union_below_one: int
    n_crude_below_one: int


def failure_bound_report(k, d: int, n: int) -> FailureBoundReport:
    kk = require_k(k)
    scale = 2.0 ** (kk + 4)
    union_at_zero = ln_union_failure_bound(kk, d, 0)
    crude_at_zero = ln_union_failure_bound_crude(kk, d, 0)
    return FailureBoundReport(
        k=kk,
        d=d,
        n=n,
        ln_union_bound=ln_union_failure_bound(kk, d, n),
        ln_crude_bound=ln_union_failure_bound_crude(kk, d, n),
        n_union_below_one=math.floor(union_at_zero * scale) + 1,
        n_crude_below_one=math.floor(crude_at_zero * scale) + 1,
    )


def exact_failure_probability(k, d: int, n: int, *, limit: int | None = None) -> Fraction:
    """Exact chance that n i.i.d. uniform grid points leave some box of volume > 2^-k empty.

    Enumerates the ordered outcome space of size (2^k - 1)^(d n) (grouped by
    point multiset with multinomial weights, which leaves the value
    unchanged) and tests each outcome with the exact empty-box search.
    """
    kk = require_k(k)
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    g = 2**kk - 1
    total = (g**d) ** n
    check_enumeration("failure-probability outcomes", total, limit, DEFAULT_OUTCOME_LIMIT)

    grid_points = list(itertools.product(range(1, 2**kk), repeat=d))
    threshold = Fraction(1, 2**kk)
    n_factorial = math.factorial(n)

    failures = 0
    for combo in itertools.combinations_with_replacement(grid_points, n):
        weight = n_factorial
        for mult in Counter(combo).values():
            weight //= math.factorial(mult)
        pts = PointSet.from_numerators(kk, d, combo)
        if has_empty_box_above(pts, threshold, limit=limit).found:
            failures += weight
    return Fraction(failures, total)
