"""Randomized grid constructions with a sufficient dispersion certificate.

Sampling draws every coordinate independently and uniformly from the 2^k - 1
grid values, using numpy's PCG64 generator whose bounded-integer sampling is
rejection-based and therefore exactly uniform. Reproducibility contract:
every derived stream is obtained as

    SeedSequence(master_seed, spawn_key=(index,))

so per-trial and per-attempt results depend only on (master_seed, index) and
are identical regardless of execution order or thread count. The scheme is
recorded in output metadata as the ``rng`` tag.

The certificate checks that the point set intersects the core box of every
feasible box class; a pass implies every box of volume above 2^-k contains a
point, i.e. dispersion at most 2^-k. The certificate is sufficient, not
necessary: a fail does not imply the dispersion exceeds 2^-k.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .grid import GRID_REPR, PointSet, require_k
from .guards import DEFAULT_ENUMERATION_LIMIT, check_enumeration
from .partition import BoxClass, CoreBox, enumerate_feasible_classes

RNG_SCHEME = "pcg64-seedsequence-v1"

WILSON_Z_95 = 1.959963984540054


class CertificationError(RuntimeError):
    """All attempts at a certified point set failed."""

    def __init__(self, message: str, attempts: int, best):
        super().__init__(message)
        self.attempts = attempts
        self.best = best


class SearchLimitExceeded(RuntimeError):
    """The doubling search hit its sample-size cap before reaching the target."""


@dataclass(frozen=True)
class CertificateResult:
    """Outcome of the core-box certificate.

    ``passed`` is true exactly when no witness exists; ``classes_checked``
    counts classes examined (the scan stops at the first miss).
    """

    passed: bool
    classes_checked: int
    witness: BoxClass | None


@dataclass(frozen=True)
class GeneratedSet:
    points: PointSet
    attempts: int


@dataclass(frozen=True)
class MonteCarloSummary:
    """Certificate success statistics over independently seeded trials."""

    k: int
    d: int
    n: int
    trials: int
    successes: int
    success_rate: float
    ci_low: float
    ci_high: float
    master_seed: int


@dataclass(frozen=True)
class MinNSearch:
    """Smallest sample size whose estimated certificate success reaches the target."""

    n_star: int
    rate_at_n_star: float
    rate_below: float | None
    n_required: int
    within_required: bool


def _generator(seed: int, index: int | None = None) -> np.random.Generator:
    if index is None:
        seq = np.random.SeedSequence(seed)
    else:
        seq = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(seq))


def _sample(rng: np.random.Generator, k: int, d: int, n: int) -> PointSet:
    # high endpoint exclusive: numerators 1 .. 2^k - 1, unbiased
    nums = rng.integers(1, 2**k, size=(n, d))
    return PointSet.from_numerators(k, d, nums.tolist())


def sample_grid_points(k, d: int, n: int, seed: int) -> PointSet:
    """n points with i.i.d. coordinates uniform on the grid, determined by the seed."""
    kk = require_k(k)
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    return _sample(_generator(seed), kk, d, n)


def full_grid(k, d: int, *, limit: int | None = None) -> PointSet:
    """Every grid point exactly once: (2^k - 1)^d points."""
    kk = require_k(k)
    if d < 1:
        raise ValueError(f"need d >= 1, got d={d}")
    g = 2**kk - 1
    check_enumeration("full grid", g**d, limit, DEFAULT_ENUMERATION_LIMIT)
    rows = itertools.product(range(1, 2**kk), repeat=d)
    return PointSet.from_numerators(kk, d, rows)


def _hits_core(core: CoreBox, rows, row_set, n: int) -> bool:
    # whichever side is smaller: enumerate the core's grid points, or scan the set
    if core.grid_point_count <= n:
        return any(g in row_set for g in core.iter_grid_points())
    return any(core.contains_numerators(row) for row in rows)


def certify_dispersion(points: PointSet, k, *, limit: int | None = None) -> CertificateResult:
    """Sufficient certificate that the dispersion is at most 2^-k.

    Scans all feasible classes and requires a point inside every core box.
    Pass implies dispersion <= 2^-k exactly; fail carries the first missed
    class as witness and implies nothing about the true dispersion.
    """
    kk = require_k(k)
    if points.repr != GRID_REPR:
        raise ValueError("certificate requires a grid-valued point set")
    if points.k != kk:
        raise ValueError(f"point set has resolution k={points.k}, certificate asked for k={kk}")
    rows = points.points
    row_set = set(rows)
    n = len(rows)
    checked = 0
    for cls in enumerate_feasible_classes(kk, points.dim, limit=limit):
        checked += 1
        if not _hits_core(cls.core_box(), rows, row_set, n):
            return CertificateResult(passed=False, classes_checked=checked, witness=cls)
    return CertificateResult(passed=True, classes_checked=checked, witness=None)


def generate_certified(
    k, d: int, n: int, seed: int, max_attempts: int = 64, *, limit: int | None = None
) -> GeneratedSet:
    """Sample until the certificate passes; attempt i uses spawn index i.

    Raises CertificationError after max_attempts failures, carrying the best
    attempt's certificate (the one that got past the most classes).
    """
    kk = require_k(k)
    if max_attempts < 1:
        raise ValueError(f"need max_attempts >= 1, got {max_attempts}")
    best: CertificateResult | None = None
    for attempt in range(max_attempts):
        pts = _sample(_generator(seed, attempt), kk, d, n)
        cert = certify_dispersion(pts, kk, limit=limit)
        if cert.passed:
            return GeneratedSet(points=pts, attempts=attempt + 1)
        if best is None or cert.classes_checked > best.classes_checked:
            best = cert
    raise CertificationError(
        f"no certified set in {max_attempts} attempts "
        f"(best attempt missed class {best.witness})",
        attempts=max_attempts,
        best=best,
    )


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if not (0 <= successes <= trials) or trials < 1:
        raise ValueError(f"need 0 <= successes <= trials, got {successes}/{trials}")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom
    # at the extremes the interval touches the boundary exactly
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def monte_carlo_success(
    k,
    d: int,
    n: int,
    trials: int,
    master_seed: int,
    *,
    threads: int = 1,
    limit: int | None = None,
) -> MonteCarloSummary:
    """Certificate success rate over independently seeded trials.

    Trial i samples with spawn index i, so the summary is a pure function of
    (master_seed, k, d, n, trials); the reduction counts successes and is
    insensitive to execution order, making any thread count produce the
    identical summary.
    """
    kk = require_k(k)
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")

    def one_trial(index: int) -> bool:
        pts = _sample(_generator(master_seed, index), kk, d, n)
        return certify_dispersion(pts, kk, limit=limit).passed

    if threads <= 1:
        successes = sum(one_trial(i) for i in range(trials))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            successes = sum(pool.map(one_trial, range(trials)))

    low, high = wilson_interval(successes, trials)
    return MonteCarloSummary(
        k=kk,
        d=d,
        n=n,
        trials=trials,
        successes=successes,
        success_rate=successes / trials,
        ci_low=low,
        ci_high=high,
        master_seed=master_seed,
    )


def _per_n_seed(seed: int, n: int) -> int:
    seq = np.random.SeedSequence(seed, spawn_key=(n,))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def empirical_min_n(
    k,
    d: int,
    target_rate: float,
    trials: int,
    seed: int,
    *,
    max_n: int = 1 << 20,
    limit: int | None = None,
) -> MinNSearch:
    """Doubling search then bisection for the smallest n reaching the target rate.

    Each candidate n gets its own derived master seed, so the per-n estimate
    is fixed across the search. On return the estimate at n_star reaches the
    target while the estimate at n_star - 1 (when n_star > 1) does not.
    """
    from .bounds import n_required as _n_required

    kk = require_k(k)
    if not (0.0 < target_rate < 1.0):
        raise ValueError(f"target rate must lie in (0, 1), got {target_rate}")

    rates: dict[int, float] = {}

    def rate(n: int) -> float:
        if n not in rates:
            rates[n] = monte_carlo_success(
                kk, d, n, trials, _per_n_seed(seed, n), limit=limit
            ).success_rate
        return rates[n]

    n = 1
    while rate(n) < target_rate:
        n *= 2
        if n > max_n:
            raise SearchLimitExceeded(
                f"no n <= {max_n} reached target rate {target_rate} (trials={trials})"
            )
    if n == 1:
        lo, hi = 0, 1
    else:
        lo, hi = n // 2, n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if rate(mid) >= target_rate:
                hi = mid
            else:
                lo = mid
    req = _n_required(kk, d)
    return MinNSearch(
        n_star=hi,
        rate_at_n_star=rate(hi),
        rate_below=rate(lo) if lo >= 1 else None,
        n_required=req,
        within_required=hi <= req,
    )
