"""Exact missing-word probabilities and the finite-n local lemma condition.

All probabilities are exact rationals built from Python integers. The only
inexact step is the final comparison ``e * pi * d < 1``, which is evaluated
with :mod:`decimal` at 40 significant digits after exact assembly of
``pi * d``.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "ExactProbability",
    "LLLInstance",
    "binomial",
    "missing_word_prob_t3",
    "missing_word_prob_t4_q2",
    "missing_word_prob",
    "union_bound_pi",
    "dependence_count",
    "rows_for_multiplicity",
    "check_supported",
    "lll_condition",
    "min_rows_for_coverage",
]

# 40 decimal digits is about 133 bits of mantissa.
_PRECISION = 40


@dataclass(frozen=True)
class ExactProbability:
    """A probability stored as a reduced fraction."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator <= self.denominator:
            raise ValueError(
                f"{self.numerator}/{self.denominator} is not a probability"
            )
        if math.gcd(self.numerator, self.denominator) != 1:
            raise ValueError("fraction is not in lowest terms")

    @classmethod
    def from_ratio(cls, numerator: int, denominator: int) -> "ExactProbability":
        f = Fraction(numerator, denominator)
        return cls(f.numerator, f.denominator)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ExactProbability":
        return cls(value.numerator, value.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_decimal(self, digits: int = _PRECISION) -> decimal.Decimal:
        """Correctly rounded decimal value."""
        with decimal.localcontext() as ctx:
            ctx.prec = digits
            return decimal.Decimal(self.numerator) / decimal.Decimal(self.denominator)

    def log(self) -> float:
        """Natural log, accurate even when the value underflows a double."""
        if self.numerator == 0:
            return -math.inf
        return math.log(self.numerator) - math.log(self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class LLLInstance:
    """Inputs and outcome of one local lemma test ``e * pi * d < 1``."""

    n: int
    q: int
    t: int
    m: int
    pi: ExactProbability
    d: int
    condition_value: decimal.Decimal

    @property
    def k(self) -> int:
        return rows_for_multiplicity(self.q, self.t, self.m)

    @property
    def holds(self) -> bool:
        return self.condition_value < 1


def binomial(N: int, K: int) -> int:
    """C(N, K), zero outside ``0 <= K <= N``."""
    if K < 0 or K > N:
        return 0
    return math.comb(N, K)


def check_supported(q: int, t: int) -> None:
    """Raise unless closed-form probabilities exist for ``(q, t)``."""
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if t == 3 or (t == 4 and q == 2):
        return
    raise ValueError(
        f"no exact probability formula for q={q}, t={t} "
        "(supported: t=3 with any q, t=4 with q=2)"
    )


def rows_for_multiplicity(q: int, t: int, m: int) -> int:
    """Row count k for multiplicity m: ``q*m`` for t=3, ``4*m`` for binary t=4."""
    check_supported(q, t)
    return q * m if t == 3 else 4 * m


def missing_word_prob_t3(q: int, m: int) -> ExactProbability:
    """Probability that three random equal-weight columns of length ``q*m`` miss 11...1.

    Counts placements of the ones in column 2 relative to column 1 (``j``
    overlaps), then requires the ones of column 3 to avoid the ``j`` rows
    where columns 1 and 2 both read 1.
    """
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    total = 0
    for j in range(m + 1):
        total += (
            binomial(m, j) * binomial((q - 1) * m, m - j) * binomial(q * m - j, m)
        )
    return ExactProbability.from_ratio(total, binomial(q * m, m) ** 2)


def missing_word_prob_t4_q2(m: int) -> ExactProbability:
    """Probability that four random balanced binary columns of length ``4*m`` miss 1111."""
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    half, k = 2 * m, 4 * m
    total = 0
    for j in range(half + 1):
        inner = 0
        for i in range(j + 1):
            inner += binomial(j, i) * binomial(k - j, half - i) * binomial(k - i, half)
        total += binomial(half, j) ** 2 * inner
    return ExactProbability.from_ratio(total, binomial(k, half) ** 3)


def missing_word_prob(q: int, t: int, m: int) -> ExactProbability:
    check_supported(q, t)
    if t == 3:
        return missing_word_prob_t3(q, m)
    return missing_word_prob_t4_q2(m)


def union_bound_pi(p: ExactProbability, q: int, t: int) -> ExactProbability:
    """``min(1, q**t * p)``: chance that some word is missing from a t-subset."""
    bound = min(Fraction(1), q**t * p.value)
    return ExactProbability.from_fraction(bound)


def dependence_count(n: int, t: int) -> int:
    """Number of other t-subsets of n columns sharing a column with a given one."""
    if t < 1:
        raise ValueError(f"strength must be >= 1, got {t}")
    if n < t:
        raise ValueError(f"need n >= t, got n={n}, t={t}")
    return binomial(n, t) - binomial(n - t, t) - 1


def _e() -> decimal.Decimal:
    return decimal.Decimal(1).exp()


def lll_condition(n: int, q: int, t: int, m: int) -> LLLInstance:
    """Assemble pi, d and ``e * pi * d`` for an array with multiplicity m."""
    check_supported(q, t)
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    d = dependence_count(n, t)
    pi = union_bound_pi(missing_word_prob(q, t, m), q, t)
    with decimal.localcontext() as ctx:
        ctx.prec = _PRECISION
        load = pi.value * d
        value = _e() * (decimal.Decimal(load.numerator) / decimal.Decimal(load.denominator))
    return LLLInstance(n=n, q=q, t=t, m=m, pi=pi, d=d, condition_value=value)


def min_rows_for_coverage(
    n: int, q: int, t: int, max_m: int = 1 << 20, search: str = "gallop"
) -> int:
    """Smallest row count k for which the local lemma guarantees a covering array.

    The condition is monotone in m because p strictly decreases, so the
    default doubles m until the condition holds and then bisects.
    ``search="linear"`` scans m = 1, 2, ... instead; both return the same k.
    """
    check_supported(q, t)
    dependence_count(n, t)  # validates n >= t

    def holds(m: int) -> bool:
        return lll_condition(n, q, t, m).holds

    if search == "linear":
        for m in range(1, max_m + 1):
            if holds(m):
                return rows_for_multiplicity(q, t, m)
        raise RuntimeError(f"condition not met for any m <= {max_m}")
    if search != "gallop":
        raise ValueError(f"unknown search {search!r}")

    failing, m = 0, 1
    while not holds(m):
        failing, m = m, 2 * m
        if m > max_m:
            raise RuntimeError(f"condition not met for any m <= {max_m}")
    while m - failing > 1:
        mid = (failing + m) // 2
        if holds(mid):
            m = mid
        else:
            failing = mid
    return rows_for_multiplicity(q, t, m)
