"""Dyadic grids in the unit cube and the accuracy/resolution correspondence.

The grid at resolution k consists of the 2^k - 1 interior multiples of 2^-k.
Grid coordinates are stored as integer numerators over the shared denominator
2^k, so every containment and volume comparison is an exact integer
comparison. A target empty-box volume eps in (0, 1/2) selects the resolution
k with 2^-k <= eps < 2^-(k-1), i.e. k = ceil(log2(1/eps)) >= 2.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .guards import DEFAULT_ENUMERATION_LIMIT, check_enumeration

MIN_K = 2

GRID_REPR = "grid"
REAL_REPR = "real"


@dataclass(frozen=True)
class GridParams:
    """Grid resolution exponent k; numerators run over 1 .. 2^k - 1."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < MIN_K:
            raise ValueError(f"grid resolution k must be an integer >= {MIN_K}, got {self.k!r}")

    @property
    def m(self) -> int:
        """The denominator 2^k."""
        return 2**self.k


def require_k(k) -> int:
    """Coerce an int or GridParams to a validated resolution exponent."""
    if isinstance(k, GridParams):
        return k.k
    return GridParams(k).k


def exact_fraction(x) -> Fraction:
    """Exact rational value of x; floats contribute their exact binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def k_from_epsilon(eps) -> GridParams:
    """Resolution whose cells are finer than the accuracy eps in (0, 1/2).

    Returns the unique k with 2^-k <= eps < 2^-(k-1). The comparison is made
    against exact dyadic thresholds rather than through floating-point
    logarithms, so eps == 2^-k maps to k itself.
    """
    e = exact_fraction(eps)
    if not (0 < e < Fraction(1, 2)):
        raise ValueError(f"eps must lie in (0, 1/2), got {eps!r}")
    k = MIN_K
    while e < Fraction(1, 2**k):
        k += 1
    return GridParams(k)


def epsilon_range(k) -> tuple[Fraction, Fraction]:
    """Half-open interval [2^-k, 2^-(k-1)) of accuracies mapping to resolution k."""
    kk = require_k(k)
    return Fraction(1, 2**kk), Fraction(1, 2 ** (kk - 1))


def grid_values(k, *, limit: int | None = None) -> list[Fraction]:
    """The 2^k - 1 grid values a/2^k in increasing order."""
    kk = require_k(k)
    m = 2**kk
    check_enumeration("grid values", m - 1, limit, DEFAULT_ENUMERATION_LIMIT)
    return [Fraction(a, m) for a in range(1, m)]


@dataclass(frozen=True)
class PointSet:
    """Finite multiset of points in [0,1]^d.

    Grid-valued sets store each coordinate as an integer numerator over the
    shared denominator 2^k; real-valued sets store float coordinates in
    [0, 1]. Duplicates are kept; `distinct_count` reports the deduplicated
    size. Instances are immutable.
    """

    dim: int
    points: tuple[tuple, ...]
    repr: str
    k: int | None = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.repr not in (GRID_REPR, REAL_REPR):
            raise ValueError(f"repr must be {GRID_REPR!r} or {REAL_REPR!r}, got {self.repr!r}")
        if self.repr == GRID_REPR:
            kk = require_k(self.k)
            m = 2**kk
            for row in self.points:
                if len(row) != self.dim:
                    raise ValueError(f"point {row!r} does not have dimension {self.dim}")
                for a in row:
                    if not isinstance(a, int) or not (1 <= a <= m - 1):
                        raise ValueError(
                            f"grid numerator {a!r} outside 1 .. {m - 1} (k={kk})"
                        )
        else:
            if self.k is not None:
                raise ValueError("real-valued point sets carry no grid resolution")
            for row in self.points:
                if len(row) != self.dim:
                    raise ValueError(f"point {row!r} does not have dimension {self.dim}")
                for x in row:
                    if not (0.0 <= x <= 1.0):
                        raise ValueError(f"coordinate {x!r} outside [0, 1]")

    @classmethod
    def from_numerators(cls, k, dim: int, rows) -> "PointSet":
        kk = require_k(k)
        pts = tuple(tuple(int(a) for a in row) for row in rows)
        return cls(dim=dim, points=pts, repr=GRID_REPR, k=kk)

    @classmethod
    def from_reals(cls, dim: int, rows) -> "PointSet":
        pts = tuple(tuple(float(x) for x in row) for row in rows)
        return cls(dim=dim, points=pts, repr=REAL_REPR, k=None)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def distinct_count(self) -> int:
        return len(set(self.points))

    def values(self) -> Iterator[tuple]:
        """Point coordinates as values: Fractions a/2^k for grid, floats for real."""
        if self.repr == GRID_REPR:
            m = 2**self.k
            for row in self.points:
                yield tuple(Fraction(a, m) for a in row)
        else:
            yield from self.points
