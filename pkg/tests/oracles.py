"""Independent oracles used by the test suite.

Each oracle recomputes a quantity by a different route than the library:
shrunken closed-box scans for the dispersion, inclusion-exclusion surjection
counts for exact failure probabilities, grid enumeration for hit
probabilities, and classification of a fine mesh of boxes for the feasible
class set.
"""

import itertools
import math
from fractions import Fraction

from dispgrid import Box, PointSet, classify_box


def shrink_oracle_dispersion(points: PointSet, delta: float = 1e-12) -> float:
    """Float dispersion oracle: closed candidate boxes shrunk by delta per face.

    Scans all per-axis endpoint pairs drawn from the coordinates plus {0, 1}
    and takes the largest volume whose delta-shrunken closed box contains no
    point.
    """
    d = points.dim
    rows = list(points.values())
    cols = [[float(row[axis]) for row in rows] for axis in range(d)]
    cands = [sorted({0.0, 1.0, *col}) for col in cols]
    best = 0.0
    axis_pairs = [
        [(lo, hi) for i, lo in enumerate(c) for hi in c[i + 1 :]] for c in cands
    ]
    for combo in itertools.product(*axis_pairs):
        vol = math.prod(hi - lo for lo, hi in combo)
        if vol <= best:
            continue
        empty = True
        for row in rows:
            inside = all(
                lo + delta <= float(x) <= hi - delta for x, (lo, hi) in zip(row, combo)
            )
            if inside:
                empty = False
                break
        if empty:
            best = vol
    return best


def surjection_count(values: int, draws: int) -> int:
    """Number of surjections from `draws` labelled draws onto `values` values."""
    return sum(
        (-1) ** i * math.comb(values, i) * (values - i) ** draws
        for i in range(values + 1)
    )


def coverage_failure_probability(k: int, n: int) -> Fraction:
    """Exact failure probability in dimension 1 via the surjection count.

    In dimension 1 a set of draws leaves an interval of volume above 2^-k
    empty exactly when some grid value is missed.
    """
    g = 2**k - 1
    return 1 - Fraction(surjection_count(g, n), g**n)


def brute_force_hit_probability(core, k: int, d: int) -> Fraction:
    """Fraction of all grid points lying in the core box, by enumeration."""
    g = 2**k - 1
    hits = sum(
        1
        for p in itertools.product(range(1, 2**k), repeat=d)
        if core.contains_numerators(p)
    )
    return Fraction(hits, g**d)


def classes_from_fine_mesh(k: int, d: int) -> set:
    """Distinct classes of every box with endpoints on the 2^-(k+2) mesh and volume > 2^-k."""
    q = 2 ** (k + 2)
    endpoints = [Fraction(i, q) for i in range(q + 1)]
    pairs = [
        (lo, hi) for i, lo in enumerate(endpoints) for hi in endpoints[i + 1 :]
    ]
    threshold = Fraction(1, 2**k)
    found = set()
    for combo in itertools.product(pairs, repeat=d):
        vol = math.prod(hi - lo for lo, hi in combo)
        if vol <= threshold:
            continue
        box = Box.closed_box([lo for lo, _ in combo], [hi for _, hi in combo])
        cls = classify_box(box, k)
        found.add((cls.anchor, cls.span))
    return found


def box_in_class(box: Box, cls) -> bool:
    """Whether the box satisfies the class's per-axis length and infimum conditions."""
    m = 2**cls.k
    for lo, hi, a, s in zip(box.lower, box.upper, cls.anchor, cls.span):
        length = Fraction(hi) - Fraction(lo)
        if not (Fraction(s, m) < length <= Fraction(s + 1, m)):
            return False
        if not (Fraction(a - 1, m) <= Fraction(lo) < Fraction(a, m)):
            return False
    return True
