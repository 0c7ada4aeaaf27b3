"""Seeded Monte Carlo estimators for order probabilities on the simplex.

Sampling uses the counter-based Philox4x64 generator so that runs are
reproducible from a (seed, worker) pair alone: worker ``w`` of a run with
seed ``s`` draws from ``Philox(key=[s, w])``, and results are reduced in
worker order.  A fixed chunk size bounds memory and pins the accumulation
order, so repeated runs with the same configuration produce bit-identical
estimates.  Changing the worker count redistributes trials across streams
and may change the estimate, but never its distribution.

Uniform points of the simplex come from normalized exponentials: draw
``n + 1`` standard exponential variates, then scale the vector to sum to
``u``.  Pair estimators draw ``2(n + 1)`` variates per trial from a single
stream in a fixed order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import (
    DomainError,
    OrderKind,
    OrderRelation,
    Scalar,
    SimplexPoint,
    SizeLimitError,
)
from .orders import compare
from .reporting import canonical_json

GENERATOR_ID = "philox4x64"
Z95 = 1.959964
CHUNK = 1 << 16
GRID_POINT_LIMIT = 10_000_000


@dataclass(frozen=True)
class SamplerConfig:
    """Run parameters for one estimator invocation."""

    n: int
    samples: int
    seed: int
    u: float = 1.0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"dimension index must be >= 1, got {self.n}")
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")
        if not self.u > 0:
            raise DomainError(f"size u must be positive, got {self.u!r}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class EstimateResult:
    """A Monte Carlo estimate with its precision and the run that made it."""

    estimate: float
    std_error: float
    ci95_low: float
    ci95_high: float
    samples: int
    seed: int
    workers: int
    generator_id: str
    wall_time_ms: float

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "ci95": [self.ci95_low, self.ci95_high],
            "samples": self.samples,
            "seed": self.seed,
            "workers": self.workers,
            "generator_id": self.generator_id,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())


def worker_stream(seed: int, worker: int) -> np.random.Generator:
    """The Philox substream a given worker draws from."""
    key = np.array([seed, worker], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_uniform(config: SamplerConfig, stream: np.random.Generator) -> SimplexPoint:
    """One uniform point of the simplex, drawn from the given stream."""
    g = stream.standard_exponential(config.n + 1)
    return SimplexPoint(tuple(g * (config.u / g.sum())), config.u)


def _sample_rows(
    gen: np.random.Generator, count: int, dim: int, u: float
) -> np.ndarray:
    g = gen.standard_exponential((count, dim))
    return g * (u / g.sum(axis=1))[:, None]


def _sample_row_pairs(
    gen: np.random.Generator, count: int, dim: int, u: float
) -> tuple[np.ndarray, np.ndarray]:
    g = gen.standard_exponential((count, 2 * dim))
    g1, g2 = g[:, :dim], g[:, dim:]
    x1 = g1 * (u / g1.sum(axis=1))[:, None]
    x2 = g2 * (u / g2.sum(axis=1))[:, None]
    return x1, x2


def _tails(x: np.ndarray) -> np.ndarray:
    return np.cumsum(x[:, ::-1], axis=1)[:, ::-1]


def _fosd_dominates_rows(x: np.ndarray, a_tails: Sequence[float]) -> np.ndarray:
    """Rows of ``x`` that FOSD-dominate the point with the given tail sums.

    The k = 0 tails are both u by construction, so the test starts at k = 1.
    """
    t = _tails(x)
    ok = np.ones(len(x), dtype=bool)
    for k in range(1, x.shape[1]):
        ok &= t[:, k] >= a_tails[k]
    return ok


def _mlr_dominates_rows(x: np.ndarray, a: Sequence[float]) -> np.ndarray:
    """Rows of ``x`` that MLR-dominate the point ``a``."""
    dim = x.shape[1]
    ok = np.ones(len(x), dtype=bool)
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            ok &= x[:, i] * a[j] <= a[i] * x[:, j]
    return ok


def _fosd_comparable_rows(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    d = _tails(x1)[:, 1:] - _tails(x2)[:, 1:]
    return (d <= 0).all(axis=1) | (d >= 0).all(axis=1)


def _mlr_comparable_rows(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    dim = x1.shape[1]
    le = np.ones(len(x1), dtype=bool)
    ge = np.ones(len(x1), dtype=bool)
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            lhs = x2[:, i] * x1[:, j]
            rhs = x1[:, i] * x2[:, j]
            le &= lhs <= rhs
            ge &= rhs <= lhs
    return le | ge


def _split_samples(total: int, workers: int) -> list[int]:
    base, rem = divmod(total, workers)
    return [base + (1 if w < rem else 0) for w in range(workers)]


def _map_workers(config: SamplerConfig, work: Callable[[int, int], object]) -> list:
    quotas = _split_samples(config.samples, config.workers)
    if config.workers == 1:
        return [work(0, quotas[0])]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(work, range(config.workers), quotas))


def _indicator_result(
    config: SamplerConfig, hits_in_chunk: Callable[[np.random.Generator, int], int]
) -> EstimateResult:
    start = time.perf_counter()

    def work(worker: int, quota: int) -> int:
        gen = worker_stream(config.seed, worker)
        hits = 0
        left = quota
        while left > 0:
            m = min(CHUNK, left)
            hits += int(hits_in_chunk(gen, m))
            left -= m
        return hits

    hits = sum(_map_workers(config, work))
    n = config.samples
    p = hits / n
    se = math.sqrt(p * (1.0 - p) / n)
    wall = (time.perf_counter() - start) * 1000.0
    return EstimateResult(
        estimate=p,
        std_error=se,
        ci95_low=max(0.0, p - Z95 * se),
        ci95_high=min(1.0, p + Z95 * se),
        samples=n,
        seed=config.seed,
        workers=config.workers,
        generator_id=GENERATOR_ID,
        wall_time_ms=wall,
    )


def _mean_result(
    config: SamplerConfig,
    values_in_chunk: Callable[[np.random.Generator, int], np.ndarray],
    clamp: tuple[float, float] = (0.0, 1.0),
) -> EstimateResult:
    start = time.perf_counter()

    def work(worker: int, quota: int) -> tuple[float, float]:
        gen = worker_stream(config.seed, worker)
        s = 0.0
        s2 = 0.0
        left = quota
        while left > 0:
            m = min(CHUNK, left)
            vals = values_in_chunk(gen, m)
            s += float(vals.sum())
            s2 += float((vals * vals).sum())
            left -= m
        return s, s2

    parts = _map_workers(config, work)
    s = 0.0
    s2 = 0.0
    for ps, ps2 in parts:
        s += ps
        s2 += ps2
    n = config.samples
    mean = s / n
    var = max(0.0, (s2 - n * mean * mean) / (n - 1)) if n > 1 else 0.0
    se = math.sqrt(var / n)
    wall = (time.perf_counter() - start) * 1000.0
    lo, hi = clamp
    return EstimateResult(
        estimate=mean,
        std_error=se,
        ci95_low=max(lo, mean - Z95 * se),
        ci95_high=min(hi, mean + Z95 * se),
        samples=n,
        seed=config.seed,
        workers=config.workers,
        generator_id=GENERATOR_ID,
        wall_time_ms=wall,
    )


def _check_point_config(a: SimplexPoint, config: SamplerConfig) -> None:
    if a.n != config.n:
        raise DomainError(
            f"point has dimension index {a.n} but the config says {config.n}"
        )
    if abs(float(a.u) - config.u) > 1e-12 * config.u:
        raise DomainError(f"point size {a.u!r} does not match config u={config.u!r}")


def estimate_dominance(
    a: SimplexPoint, order: OrderKind | str, config: SamplerConfig
) -> EstimateResult:
    """Estimate the probability that a uniform point dominates ``a``."""
    order = OrderKind(order) if not isinstance(order, OrderKind) else order
    _check_point_config(a, config)
    dim = config.n + 1
    af = [float(c) for c in a.coords]
    if order is OrderKind.FOSD:
        a_tails = [math.fsum(af[k:]) for k in range(dim)]

        def hits(gen: np.random.Generator, m: int) -> int:
            return _fosd_dominates_rows(
                _sample_rows(gen, m, dim, config.u), a_tails
            ).sum()

    else:

        def hits(gen: np.random.Generator, m: int) -> int:
            return _mlr_dominates_rows(_sample_rows(gen, m, dim, config.u), af).sum()

    return _indicator_result(config, hits)


def estimate_dominance_restricted(
    a: SimplexPoint, b: float, config: SamplerConfig
) -> EstimateResult:
    """Estimate the probability of MLR-dominating ``a`` with last coordinate
    at most ``b``.

    A cap at or above ``u`` is vacuous and reproduces the unrestricted
    estimator variate for variate.
    """
    _check_point_config(a, config)
    dim = config.n + 1
    af = [float(c) for c in a.coords]
    bf = float(b)
    vacuous = bf >= config.u

    def hits(gen: np.random.Generator, m: int) -> int:
        x = _sample_rows(gen, m, dim, config.u)
        ok = _mlr_dominates_rows(x, af)
        if not vacuous:
            ok &= x[:, dim - 1] <= bf
        return ok.sum()

    return _indicator_result(config, hits)


def estimate_comparability(
    order: OrderKind | str, config: SamplerConfig
) -> EstimateResult:
    """Estimate the probability that two independent uniform points are
    comparable under the given order."""
    order = OrderKind(order) if not isinstance(order, OrderKind) else order
    dim = config.n + 1
    rows = (
        _fosd_comparable_rows if order is OrderKind.FOSD else _mlr_comparable_rows
    )

    def hits(gen: np.random.Generator, m: int) -> int:
        x1, x2 = _sample_row_pairs(gen, m, dim, config.u)
        return rows(x1, x2).sum()

    return _indicator_result(config, hits)


def _integrand_rows(x: np.ndarray) -> np.ndarray:
    # Drop the last coordinate; the remaining block is uniform on the solid
    # simplex.  The integrand is the product of a_i over its suffix sums.
    a = x[:, :-1]
    s = np.cumsum(a[:, ::-1], axis=1)[:, ::-1]
    return np.prod(a / s, axis=1)


def estimate_integral_mean(config: SamplerConfig) -> EstimateResult:
    """Estimate the mean of the dominance product over the solid simplex.

    The exact mean is ``1 / n!`` for every ``u``: the integral is
    ``u^n / n!^2`` over a region of volume ``u^n / n!``.
    """
    dim = config.n + 1

    def values(gen: np.random.Generator, m: int) -> np.ndarray:
        return _integrand_rows(_sample_rows(gen, m, dim, config.u))

    return _mean_result(config, values)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def classify_grid(
    a: SimplexPoint, resolution: int, order: OrderKind | str
) -> list[tuple[SimplexPoint, OrderRelation]]:
    """Classify every lattice point of the simplex against ``a``.

    The lattice has spacing ``u / resolution``; coordinates are built as
    exact rationals so that classifications carry no float artifacts when
    ``a`` is exact.  Returns ``(point, relation)`` pairs where the relation
    is that of the lattice point relative to ``a``.  Raises SizeLimitError
    when the lattice would exceed ten million points.
    """
    order = OrderKind(order) if not isinstance(order, OrderKind) else order
    if resolution < 1:
        raise DomainError(f"resolution must be >= 1, got {resolution}")
    n = a.n
    count = math.comb(resolution + n, n)
    if count > GRID_POINT_LIMIT:
        raise SizeLimitError(
            f"lattice would hold {count} points, above the "
            f"{GRID_POINT_LIMIT} ceiling"
        )
    u = a.u if isinstance(a.u, Fraction) else Fraction(float(a.u))
    step = u / resolution
    out = []
    for comp in _compositions(resolution, n + 1):
        point = SimplexPoint(tuple(step * c for c in comp), u)
        out.append((point, compare(point, a, order)))
    return out


def comparable_fraction(rows: Sequence[tuple[SimplexPoint, OrderRelation]]) -> float:
    """Share of classified points that are comparable (not INCOMPARABLE)."""
    if not rows:
        return 0.0
    bad = sum(1 for _, rel in rows if rel is OrderRelation.INCOMPARABLE)
    return 1.0 - bad / len(rows)
