"""Random equal-weight arrays, local-lemma resampling, and Monte Carlo checks.

Randomness comes from numpy's PCG64 bit generator seeded with a 64-bit
integer. Columns are shuffled with an explicit Fisher-Yates pass whose swap
positions are drawn by ``Generator.integers``, so a given seed yields the
same arrays on every platform and with either kernel backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .arrays import CoveringArray, coverage_deficiencies, scan_first_deficient
from .combinatorics import check_supported, min_rows_for_coverage, rows_for_multiplicity

__all__ = [
    "GenerationError",
    "GenerationResult",
    "MonteCarloEstimate",
    "DEFAULT_MAX_ROUNDS",
    "MC_SHARD_TRIALS",
    "make_rng",
    "equal_weight_columns",
    "sample_equal_weight_array",
    "generate_covering",
    "monte_carlo_missing_prob",
]

DEFAULT_MAX_ROUNDS = 100_000
MC_SHARD_TRIALS = 1 << 17
_U64_MAX = (1 << 64) - 1


class GenerationError(RuntimeError):
    def __init__(self, message: str, rounds: int, deficiencies: Optional[int] = None):
        super().__init__(message)
        self.rounds = rounds
        self.deficiencies = deficiencies


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _U64_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, shard: Optional[int] = None) -> np.random.Generator:
    """PCG64 stream for ``seed``; shard streams come from ``SeedSequence(seed, spawn_key=(shard,))``."""
    seed = _check_seed(seed)
    if shard is None:
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(shard,))))


def equal_weight_columns(rng: np.random.Generator, q: int, k: int, count: int) -> np.ndarray:
    """``count`` independent uniform shuffles of ``k/q`` copies of each symbol.

    Returns shape ``(count, k)``, int8 for small alphabets.
    """
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if k < 1 or k % q:
        raise ValueError(f"row count k={k} must be a positive multiple of q={q}")
    dtype = np.int8 if q <= 127 else np.int64
    base = np.repeat(np.arange(q, dtype=dtype), k // q)
    cols = np.tile(base, (count, 1))
    if k == 1 or count == 0:
        return cols
    # Fisher-Yates, vectorized across columns: position i swaps with j in [0, i]
    swaps = rng.integers(0, np.arange(k, 1, -1), size=(count, k - 1))
    rows = np.arange(count)
    for step, i in enumerate(range(k - 1, 0, -1)):
        j = swaps[:, step]
        tmp = cols[rows, i].copy()
        cols[rows, i] = cols[rows, j]
        cols[rows, j] = tmp
    return cols


def sample_equal_weight_array(q: int, n: int, k: int, seed: int) -> CoveringArray:
    if n < 1:
        raise ValueError(f"column count must be >= 1, got {n}")
    rng = make_rng(seed)
    return CoveringArray(q, equal_weight_columns(rng, q, k, n).T)


@dataclass(frozen=True)
class GenerationResult:
    array: CoveringArray
    rounds: int


def generate_covering(
    q: int,
    t: int,
    n: int,
    k: Optional[int] = None,
    seed: int = 0,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    kernels=None,
) -> GenerationResult:
    """Resample the first deficient t-subset until the array covers.

    Without ``k`` the row count comes from :func:`min_rows_for_coverage`.
    ``rounds`` in the result is the number of resamplings performed.
    """
    if t < 1 or t > n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    if k is None:
        check_supported(q, t)
        k = min_rows_for_coverage(n, q, t)
    if k % q:
        raise ValueError(f"row count k={k} must be a multiple of q={q}")
    if k < q**t:
        raise GenerationError(
            f"k={k} rows cannot show all {q**t} words of length {t}", rounds=0
        )

    rng = make_rng(seed)
    cells = equal_weight_columns(rng, q, k, n).T.copy()
    rounds = 0
    while True:
        arr = CoveringArray(q, cells)
        cols, _, _ = scan_first_deficient(arr, t, kernels=kernels)
        if cols is None:
            return GenerationResult(arr, rounds)
        if rounds >= max_rounds:
            remaining = len(coverage_deficiencies(arr, t, kernels=kernels))
            raise GenerationError(
                f"still {remaining} missing (subset, word) pairs after {rounds} rounds",
                rounds=rounds,
                deficiencies=remaining,
            )
        cells[:, list(cols)] = equal_weight_columns(rng, q, k, t).T
        rounds += 1


@dataclass(frozen=True)
class MonteCarloEstimate:
    trials: int
    hits: int
    seed: int

    @property
    def estimate(self) -> float:
        return self.hits / self.trials

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.trials)


def monte_carlo_missing_prob(
    q: int, t: int, m: int, trials: int, seed: int, kernels=None
) -> MonteCarloEstimate:
    """Fraction of random equal-weight t-tuples of columns missing the word 11...1.

    Trials run in shards of :data:`MC_SHARD_TRIALS`; shard ``s`` draws from
    ``make_rng(seed, shard=s)``.
    """
    check_supported(q, t)
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seed = _check_seed(seed)
    kern = kernels or _kernels.backend
    k = rows_for_multiplicity(q, t, m)
    hits = 0
    for shard, begin in enumerate(range(0, trials, MC_SHARD_TRIALS)):
        size = min(MC_SHARD_TRIALS, trials - begin)
        rng = make_rng(seed, shard=shard)
        cols = equal_weight_columns(rng, q, k, size * t).reshape(size, t, k)
        hits += kern.count_missing_all_ones(cols)
    return MonteCarloEstimate(trials=trials, hits=hits, seed=seed)
