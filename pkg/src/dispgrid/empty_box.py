"""Exact largest-empty-box search over a finite point set in [0,1]^d.

The dispersion of a point set is the supremum volume of an axis-parallel box
containing none of its points. The supremum is insensitive to endpoint
openness, so we fix a convention that attains it on a finite candidate
family: per-axis candidate endpoints are the input coordinates plus the
domain boundary 0 and 1; a candidate face sitting on a point coordinate is
open, a face on an untouched domain boundary is closed. Under that
convention a point lies in a candidate box exactly when it is strictly
inside on every axis, and the maximum over candidates equals the supremum
over all boxes.

For grid-valued inputs the whole search runs on integer numerators and the
result is exact (an arbitrary-precision integer over 2^(k*d)); real-valued
inputs use float arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .grid import GRID_REPR, PointSet, exact_fraction
from .guards import DEFAULT_ENUMERATION_LIMIT, check_enumeration


@dataclass(frozen=True)
class Box:
    """Axis-parallel box in [0,1]^d with per-face openness flags."""

    lower: tuple
    upper: tuple
    open_lower: tuple[bool, ...]
    open_upper: tuple[bool, ...]

    def __post_init__(self):
        d = len(self.lower)
        if d < 1:
            raise ValueError("box dimension must be at least 1")
        if not (len(self.upper) == len(self.open_lower) == len(self.open_upper) == d):
            raise ValueError("box field lengths disagree")
        for lo, hi in zip(self.lower, self.upper):
            if not (0 <= lo < hi <= 1):
                raise ValueError(f"need 0 <= {lo} < {hi} <= 1 on every axis")

    @classmethod
    def open_box(cls, lower, upper) -> "Box":
        lo, hi = _coerce_endpoints(lower), _coerce_endpoints(upper)
        d = len(lo)
        return cls(lo, hi, (True,) * d, (True,) * d)

    @classmethod
    def closed_box(cls, lower, upper) -> "Box":
        lo, hi = _coerce_endpoints(lower), _coerce_endpoints(upper)
        d = len(lo)
        return cls(lo, hi, (False,) * d, (False,) * d)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def side_lengths(self) -> tuple:
        return tuple(hi - lo for lo, hi in zip(self.lower, self.upper))

    def volume(self):
        """Product of side lengths; openness flags do not affect volume."""
        vol = None
        for side in self.side_lengths():
            vol = side if vol is None else vol * side
        return vol

    def contains(self, point) -> bool:
        """Membership respecting per-face openness; exact for rational inputs."""
        if len(point) != self.dim:
            raise ValueError(f"point dimension {len(point)} != box dimension {self.dim}")
        for x, lo, hi, olo, ohi in zip(
            point, self.lower, self.upper, self.open_lower, self.open_upper
        ):
            if (x <= lo if olo else x < lo):
                return False
            if (x >= hi if ohi else x > hi):
                return False
        return True

    def format_text(self) -> str:
        """Per-axis interval text, e.g. ``[0,1/4) x (1/2,1]``."""
        parts = []
        for lo, hi, olo, ohi in zip(self.lower, self.upper, self.open_lower, self.open_upper):
            left = "(" if olo else "["
            right = ")" if ohi else "]"
            parts.append(f"{left}{lo},{hi}{right}")
        return " x ".join(parts)


def _coerce_endpoints(values) -> tuple:
    out = []
    for v in values:
        out.append(Fraction(v) if isinstance(v, int) else v)
    return tuple(out)


@dataclass(frozen=True)
class DispersionResult:
    """Maximum empty-box volume together with a witness box attaining it."""

    volume: object
    witness: Box


class ThresholdWitness(NamedTuple):
    found: bool
    witness: Box | None


def _scaled_instance(points: PointSet):
    """Coordinates in scan units: integer numerators over `scale` for grid, floats otherwise."""
    if points.repr == GRID_REPR:
        scale = 2**points.k
        return points.points, scale, True
    return points.points, 1.0, False


def _axis_pairs(rows, d, scale):
    """Per axis: sorted candidate endpoints, coordinate set, and interval masks.

    Each pair (lo, hi, mask) has bit i of mask set when point i lies strictly
    inside (lo, hi) on that axis.
    """
    axes = []
    for axis in range(d):
        col = [row[axis] for row in rows]
        if isinstance(scale, int):
            cands = sorted({0, scale, *col})
        else:
            cands = sorted({0.0, 1.0, *col})
        coordset = set(col)
        pairs = []
        for i, lo in enumerate(cands):
            for hi in cands[i + 1 :]:
                mask = 0
                for idx, x in enumerate(col):
                    if lo < x < hi:
                        mask |= 1 << idx
                pairs.append((lo, hi, mask))
        axes.append((cands, coordset, pairs))
    return axes


def _witness_box(endpoints, axes, scale, is_grid) -> Box:
    lower, upper, olo, ohi = [], [], [], []
    for (lo, hi), (_, coordset, _) in zip(endpoints, axes):
        if is_grid:
            lower.append(Fraction(lo, scale))
            upper.append(Fraction(hi, scale))
        else:
            lower.append(lo)
            upper.append(hi)
        olo.append(lo in coordset)
        ohi.append(hi in coordset)
    return Box(tuple(lower), tuple(upper), tuple(olo), tuple(ohi))


def _candidate_count(axes) -> int:
    total = 1
    for _, _, pairs in axes:
        total *= len(pairs)
    return total


def largest_empty_box(
    points: PointSet, *, limit: int | None = None, prune: bool = False
) -> DispersionResult:
    """Exact dispersion of a point set with a witness box.

    Scans every candidate box (per-axis endpoint pairs drawn from the
    coordinates plus {0, 1}); refuses when the candidate count exceeds the
    enumeration limit. The reference mode scans exhaustively in lexicographic
    endpoint order, so ties resolve to the lexicographically smallest witness
    endpoint vector. With ``prune=True`` subtrees that cannot strictly beat
    the current best are skipped; the returned volume is identical, the
    witness may be a different maximizer.
    """
    d = points.dim
    rows, scale, is_grid = _scaled_instance(points)
    axes = _axis_pairs(rows, d, scale)
    check_enumeration("candidate boxes", _candidate_count(axes), limit, DEFAULT_ENUMERATION_LIMIT)

    full_mask = (1 << len(rows)) - 1
    best_vol = None
    best_endpoints = None
    unit = scale if is_grid else 1.0

    if not prune:
        def scan(axis, vol, mask, chosen):
            nonlocal best_vol, best_endpoints
            if axis == d:
                if mask == 0 and (best_vol is None or vol > best_vol):
                    best_vol = vol
                    best_endpoints = list(chosen)
                return
            for lo, hi, pmask in axes[axis][2]:
                chosen.append((lo, hi))
                scan(axis + 1, vol * (hi - lo), mask & pmask, chosen)
                chosen.pop()

        scan(0, 1 if is_grid else 1.0, full_mask, [])
    else:
        # widest intervals first so the best volume is found early
        sorted_pairs = [
            sorted(pairs, key=lambda p: p[1] - p[0], reverse=True) for _, _, pairs in axes
        ]

        def scan(axis, vol, mask, chosen):
            nonlocal best_vol, best_endpoints
            remaining = d - axis
            if best_vol is not None and vol * unit**remaining <= best_vol:
                return
            if mask == 0:
                # no surviving point: complete with full-range intervals
                total = vol * unit**remaining
                if best_vol is None or total > best_vol:
                    best_vol = total
                    full = (0, scale) if is_grid else (0.0, 1.0)
                    best_endpoints = list(chosen) + [full] * remaining
                return
            if axis == d:
                return
            for lo, hi, pmask in sorted_pairs[axis]:
                chosen.append((lo, hi))
                scan(axis + 1, vol * (hi - lo), mask & pmask, chosen)
                chosen.pop()

        scan(0, 1 if is_grid else 1.0, full_mask, [])

    witness = _witness_box(best_endpoints, axes, scale, is_grid)
    volume = Fraction(best_vol, scale**d) if is_grid else best_vol
    return DispersionResult(volume=volume, witness=witness)


def has_empty_box_above(
    points: PointSet, threshold, *, limit: int | None = None
) -> ThresholdWitness:
    """Whether some candidate box with volume strictly above `threshold` is empty.

    Equivalent to ``largest_empty_box(points).volume > threshold`` but stops
    at the first witness.
    """
    d = points.dim
    rows, scale, is_grid = _scaled_instance(points)
    axes = _axis_pairs(rows, d, scale)
    check_enumeration("candidate boxes", _candidate_count(axes), limit, DEFAULT_ENUMERATION_LIMIT)

    if is_grid:
        # compare integer volume numerators against threshold * 2^(k*d)
        thr = exact_fraction(threshold) * scale**d
    else:
        thr = float(threshold)

    full_mask = (1 << len(rows)) - 1

    def scan(axis, vol, mask, chosen):
        if axis == d:
            if mask == 0 and vol > thr:
                return list(chosen)
            return None
        for lo, hi, pmask in axes[axis][2]:
            chosen.append((lo, hi))
            hit = scan(axis + 1, vol * (hi - lo), mask & pmask, chosen)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    endpoints = scan(0, 1 if is_grid else 1.0, full_mask, [])
    if endpoints is None:
        return ThresholdWitness(False, None)
    return ThresholdWitness(True, _witness_box(endpoints, axes, scale, is_grid))
